// Relation templates for the case analysis of basic-move relations:
// per-step bad subgroups, backward-translated target subgroups, intersection
// verification against the stated claims, short-relation conjugations, and
// the containment-argument property checks. JSON reports for the harness.
#ifndef FGV_RELATIONS_HPP
#define FGV_RELATIONS_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "automorphism.hpp"
#include "certificates.hpp"
#include "stallings.hpp"
#include "surface.hpp"
#include "word.hpp"

#include "json.hpp"

namespace fgv {

// ---- expected intersection claims ----

struct ExpectedClaim {
  enum class Kind { Trivial, Cyclic, Subgroup, AtMost };
  Kind kind = Kind::Trivial;
  std::vector<Word> words;  // Cyclic: exactly one; Subgroup/AtMost: generators
  std::string quote;        // claim text of the argument being replayed
  bool inferred = false;    // transcribed by analogy; mismatch is informational
  std::string known_discrepancy;  // recorded deviation; mismatch is non-fatal
  bool has_sharper = false;
  std::vector<Word> sharper;  // sharper value noted but not relied upon
                              // (empty list = trivial)
};

struct RelationStep {
  MoveDescriptor factor;
  std::vector<Word> bad;  // bad subgroup generators of this factor
  ExpectedClaim claim;
};

struct RelationTemplate {
  std::string case_id;
  std::string variant;  // "" or "lambda"/"rho" for the dual n-move variants
  SurfaceModel surface;
  MoveDescriptor target;
  std::vector<Word> b_gens;  // bad subgroup of the target move
  std::vector<RelationStep> steps;
  std::vector<std::string> notes;  // transcription caveats, surfaced in reports

  std::vector<MoveDescriptor> factors() const {
    std::vector<MoveDescriptor> out;
    out.reserve(steps.size());
    for (const RelationStep& s : steps) out.push_back(s.factor);
    return out;
  }
};

// ---- role-environment helpers for instantiating fixtures ----

namespace detail {

inline MoveDescriptor role_move(const SurfaceModel& s, const RoleEnv& env, std::string text) {
  std::string orig = text;
  int exp = 1;
  if (text.size() >= 3 && text.substr(text.size() - 3) == "^-1") {
    exp = -1;
    text = text.substr(0, text.size() - 3);
  }
  if (text.size() < 4 || text.back() != ')' || text[1] != '(')
    throw std::invalid_argument("bad role move syntax: " + orig);
  char k = text[0];
  std::string inner = text.substr(2, text.size() - 3);
  MoveDescriptor d;
  d.exponent = exp;
  auto resolve = [&](const std::string& tok) {
    Letter l = resolve_role(s, env, tok);
    if (l.sign < 0) throw std::invalid_argument("move letter must be positive: " + orig);
    return l.gen;
  };
  auto comma = inner.find(',');
  if (k == 'i') {
    if (comma != std::string::npos)
      throw std::invalid_argument("i() takes one letter: " + orig);
    d.kind = MoveDescriptor::Kind::Invert;
    d.x = resolve(inner);
    return d;
  }
  if (comma == std::string::npos)
    throw std::invalid_argument("role move needs two letters: " + orig);
  d.kind = (k == 'r')   ? MoveDescriptor::Kind::RightMult
           : (k == 'l') ? MoveDescriptor::Kind::LeftMult
                        : throw std::invalid_argument("unknown move kind: " + orig);
  d.x = resolve(inner.substr(0, comma));
  d.y = resolve(inner.substr(comma + 1));
  if (d.x == d.y) throw std::invalid_argument("move letters must differ: " + orig);
  return d;
}

inline void require_genus(const SurfaceModel& s, int g_needed, const std::string& case_id) {
  if (s.genus() < g_needed)
    throw std::invalid_argument("case " + case_id + " needs genus >= " +
                                std::to_string(g_needed) +
                                " so the auxiliary letters are separated from the "
                                "active letters and from each other");
}

// fixture builder shared by all cases
struct CaseBuilder {
  const SurfaceModel& S;
  RoleEnv env;
  RelationTemplate t;

  CaseBuilder(const SurfaceModel& s, std::string id, std::string variant)
      : S(s), t{std::move(id), std::move(variant), s, {}, {}, {}, {}} {}

  void role(const std::string& name, int pair, bool hat) {
    env[name] = S.pair_letter(pair, hat);
  }
  Word W(const std::string& text) { return role_word(S, env, text); }
  std::vector<Word> WS(const std::vector<std::string>& texts) {
    return role_words(S, env, texts);
  }
  void target(const std::string& mv) { t.target = role_move(S, env, mv); }
  void b(const std::vector<std::string>& gens) { t.b_gens = WS(gens); }
  void step(const std::string& mv, const std::vector<std::string>& bad, ExpectedClaim c) {
    t.steps.push_back({role_move(S, env, mv), WS(bad), std::move(c)});
  }

  ExpectedClaim trivial(std::string quote, bool inferred = false) {
    ExpectedClaim c;
    c.kind = ExpectedClaim::Kind::Trivial;
    c.quote = std::move(quote);
    c.inferred = inferred;
    return c;
  }
  ExpectedClaim cyclic(const std::string& wtext, std::string quote, bool inferred = false) {
    ExpectedClaim c;
    c.kind = ExpectedClaim::Kind::Cyclic;
    c.words = {W(wtext)};
    c.quote = std::move(quote);
    c.inferred = inferred;
    return c;
  }
  ExpectedClaim subgroup(const std::vector<std::string>& gens, std::string quote,
                         bool inferred = false) {
    ExpectedClaim c;
    c.kind = ExpectedClaim::Kind::Subgroup;
    c.words = WS(gens);
    c.quote = std::move(quote);
    c.inferred = inferred;
    return c;
  }
  ExpectedClaim atmost(const std::vector<std::string>& gens, std::string quote,
                       bool inferred = false) {
    ExpectedClaim c;
    c.kind = ExpectedClaim::Kind::AtMost;
    c.words = WS(gens);
    c.quote = std::move(quote);
    c.inferred = inferred;
    return c;
  }
  ExpectedClaim sharper(ExpectedClaim c, const std::vector<std::string>& gens) {
    c.has_sharper = true;
    c.sharper = WS(gens);
    return c;
  }
  ExpectedClaim kd(ExpectedClaim c, std::string why) {
    c.known_discrepancy = std::move(why);
    return c;
  }
};

}  // namespace detail

// Case ids: "1" plus the nonorientable variants "2","2a","2b","2c","3","3a",
// "3b","3c","4","5","5a" (a/b/c = the primed variants, in order).
inline std::vector<std::string> all_case_ids() {
  return {"1", "2", "2a", "2b", "2c", "3", "3a", "3b", "3c", "4", "5", "5a"};
}

inline SurfaceModel default_surface(const std::string& case_id) {
  return case_id == "1" ? SurfaceModel::orientable(7) : SurfaceModel::nonorientable(9);
}

// Variants per case: the relation displays with a right n-move while the step
// checks reference the left one, so both are built ("lambda" carries the
// transcribed check data; "rho" substitutes the table's right-move bad
// subgroups and marks the affected steps as inferred).
inline std::vector<std::string> case_variants(const std::string& case_id) {
  if (case_id == "1" || case_id == "4" || case_id == "5" || case_id == "5a") return {""};
  return {"lambda", "rho"};
}

namespace detail {

inline RelationTemplate build_case_1(const SurfaceModel& S) {
  if (!S.orientable_kind())
    throw std::invalid_argument("case 1 is the orientable-basis case");
  require_genus(S, 7, "1");
  CaseBuilder b(S, "1", "");
  b.role("xh", 1, true);
  b.role("x", 1, false);
  b.role("yh", 2, true);
  b.role("y", 2, false);
  b.role("a3h", 3, true);
  b.role("uh", 4, true);
  b.role("u", 4, false);
  b.role("zh", 6, true);
  b.role("z", 6, false);
  b.target("r(x,y)");
  b.b({"y", "yh", "x' xh x", "rot(yh)"});
  b.step("r(yh,u)^-1", {"u", "uh", "y", "rot(y')"},
         b.subgroup({"y", "rot(y')"}, "it is the full intersection <y, d_{y^-1}>"));
  b.step("r(y,z)^-1", {"z", "zh", "y' yh y", "rot(a3h)"},
         b.trivial("the remaining groups have no conjugacy classes in common"));
  b.step("r(x,y)", {"y", "yh", "x' xh x", "rot(yh)"},
         b.kd(b.cyclic("xh", "Hence, the intersection is <x^>"),
              "the computed intersection is a rank-2 class containing <x^>: the "
              "boundary commutator product missing the second handle's factor lies "
              "in both subgroups (it equals a bounded product of generators on each "
              "side), so the stated certificate-based drop of the translated "
              "generators is unsupported - the translated boundary petal covers "
              "their petals, leaving them no exclusive certificate"));
  b.step("r(x,z)", {"z", "zh", "x' xh x", "rot(yh)"},
         b.cyclic("xh", "whose intersection is clearly <x^>"));
  b.step("r(y,z)", {"z", "zh", "y' yh y", "rot(a3h)"}, b.trivial("is trivial"));
  b.step("r(yh,u)", {"u", "uh", "y", "rot(y')"},
         b.kd(b.cyclic("y", "to find in <y>"),
              "the computed intersection is a rank-2 class containing <y>; as at "
              "the third step, a boundary-derived element is common to both "
              "subgroups and the analogous generator drop lacks a certificate"));
  return std::move(b.t);
}

// common role setup for the nonorientable cases (active pair p_act for x or
// y, auxiliaries on pairs 5,7,9 as needed)
inline void non_or_roles(CaseBuilder& b) {
  b.env["n"] = 0;
  b.role("uh", 5, true);
  b.role("u", 5, false);
  b.role("zh", 7, true);
  b.role("z", 7, false);
}

inline RelationTemplate build_case_2_family(const SurfaceModel& S, const std::string& id,
                                            const std::string& variant) {
  if (S.orientable_kind())
    throw std::invalid_argument("case " + id + " needs a nonorientable basis");
  require_genus(S, 9, id);
  bool rho = variant == "rho";
  bool hatted_x = (id == "2b" || id == "2c");   // x = the hatted linked letter
  bool left_target = (id == "2a" || id == "2c");  // lambda_{x,y} instead of rho
  CaseBuilder b(S, id, variant);
  non_or_roles(b);
  b.role("xh", 1, !hatted_x);
  b.role("x", 1, hatted_x);
  b.role("yh", 3, true);
  b.role("y", 3, false);
  b.role("wh", 9, true);
  b.role("w", 9, false);
  b.role("xhp", 2, true);
  b.role("yhp", 4, true);

  std::string nm = rho ? "r(n,w)" : "l(n,w)";
  // table-derived bads for the right n-move; the left one is transcribed from
  // the step checks (the inverse left move has its own bad subgroup there)
  std::vector<std::string> n_bad_inv, n_bad_fwd;
  if (!hatted_x) {
    n_bad_inv = rho ? std::vector<std::string>{"w", "wh", "xh", "x xh' n", "rot(xh)"}
                    : std::vector<std::string>{"n xh", "x' xh'", "w", "wh'", "rot(n)"};
    n_bad_fwd = rho ? n_bad_inv
                    : std::vector<std::string>{"n xh", "x xh'", "w", "wh'", "rot(x)"};
  } else {
    n_bad_inv = rho ? std::vector<std::string>{"w", "wh", "x", "xh x' n", "rot(x)"}
                    : std::vector<std::string>{"w", "wh", "xh x'", "n x", "rot(n)"};
    n_bad_fwd = n_bad_inv;
  }
  // 2b/2c claims carried over by analogy; the transcribed checks use the left
  // n-move, so the right-variant run is inferred throughout
  bool inf = hatted_x || rho;
  bool n_inf = inf;

  if (id == "2") b.b({"y", "yh", "x' n' xh", "x' xh x", "rot(xhp)"});
  if (id == "2a") b.b({"xh", "y", "yh", "x xh' n", "rot(x)"});
  if (id == "2b") b.b({"y", "yh", "xh", "x' n x", "rot(xh)"});
  if (id == "2c") b.b({"y", "yh", "n", "x xh x'", "rot(n)"});
  b.target(left_target ? "l(x,y)" : "r(x,y)");

  auto b_texts = [&]() -> std::vector<std::string> {
    if (id == "2") return {"y", "yh", "x' n' xh", "x' xh x", "rot(xhp)"};
    if (id == "2a") return {"xh", "y", "yh", "x xh' n", "rot(x)"};
    if (id == "2b") return {"y", "yh", "xh", "x' n x", "rot(xh)"};
    return {"y", "yh", "n", "x xh x'", "rot(n)"};
  }();

  b.step("r(yh,u)^-1", {"u", "uh", "y", "rot(y')"},
         b.subgroup({"y", "rot(y')"}, "intersects B in <y, d_{y^-1}>", inf));
  b.step("r(y,z)^-1", {"z", "zh", "y' yh y", "rot(yhp)"}, b.trivial("trivially", inf));
  // stated "in <x^> up to conjugation", but the accompanying Abelianisation
  // argument concludes that the reduced overlap is trivial, so the statement
  // is read as an upper bound
  b.step(nm + "^-1", n_bad_inv, b.atmost({"xh"}, "in <x^> up to conjugation", n_inf));
  if (!left_target) {
    b.step("r(x,y)", b_texts,
           b.cyclic(id == "2" ? "x' xh x" : "xh", "in <x^-1 x^ x>", inf));
    b.step("r(x,z)",
           id == "2" ? std::vector<std::string>{"z", "zh", "x n' xh", "x' xh x", "rot(xhp)"}
                     : std::vector<std::string>{"z", "zh", "xh", "x' n x", "rot(xh)"},
           b.cyclic("xh", "in <x^> up to conjugation", inf));
  } else {
    // the displayed relation lists the two middle left-moves in the other
    // order, which does not compose; the step checks fix the order used here
    b.step("l(x,z)",
           id == "2a" ? std::vector<std::string>{"xh", "z", "zh", "x xh' n", "rot(x)"}
                      : std::vector<std::string>{"z", "zh", "n", "x xh x'", "rot(n)"},
           b.cyclic("xh", "intersects ... in <x^>", inf));
    b.step("l(x,y)", b_texts, b.cyclic("xh", "in <x^>", inf));
    b.t.notes.push_back(
        "middle left-multiplication factors ordered as in the step checks; the "
        "displayed relation lists them in the opposite order, which does not "
        "compose to the target");
  }
  auto f_claim = b.trivial("trivially", n_inf);
  if (!n_inf)
    f_claim = b.kd(std::move(f_claim),
                   "the class of (x x^')w(n x^) - a product of three generators of "
                   "the move's bad subgroup - is common to both sides; the stated "
                   "reduced form of the translated subgroup transposes n and w");
  b.step(nm, n_bad_fwd, std::move(f_claim));
  b.step("r(y,z)", {"z", "zh", "y' yh y", "rot(yhp)"}, b.trivial("trivially", inf));
  auto h_claim = b.cyclic("y", "in <y>", inf);
  if (!inf)
    h_claim = b.kd(std::move(h_claim),
                   "a boundary-derived class is common in addition to <y>, exactly "
                   "as in the first step; the statement omits it");
  b.step("r(yh,u)", {"u", "uh", "y", "rot(y')"}, std::move(h_claim));
  return std::move(b.t);
}

inline RelationTemplate build_case_3_family(const SurfaceModel& S, const std::string& id,
                                            const std::string& variant) {
  if (S.orientable_kind())
    throw std::invalid_argument("case " + id + " needs a nonorientable basis");
  require_genus(S, 9, id);
  bool rho = variant == "rho";
  bool hatted_x = (id == "3b" || id == "3c");  // x = the hatted general letter
  bool hatted_y = (id == "3a" || id == "3c");  // y = the hatted linked letter
  bool long_form = (id == "3" || id == "3b");  // 8 factors; primed forms use 5
  CaseBuilder b(S, id, variant);
  non_or_roles(b);
  b.role("yh", 1, !hatted_y);
  b.role("y", 1, hatted_y);
  b.role("xh", 3, !hatted_x);
  b.role("x", 3, hatted_x);
  b.role("vh", 9, true);
  b.role("v", 9, false);
  b.role("yhp", 2, true);
  b.role("xhp", 4, true);
  b.role("hp4", 4, true);

  std::string nm = rho ? "r(n,u)" : "l(n,u)";
  // n-move bad; the linked pair is (y, yh) here
  std::vector<std::string> n_bad =
      !hatted_y
          ? (rho ? std::vector<std::string>{"u", "uh", "yh", "y yh' n", "rot(yh)"}
                 : std::vector<std::string>{"n yh", "y yh'", "u", "uh", "rot(n)"})
          : (rho ? std::vector<std::string>{"u", "uh", "y", "yh y' n", "rot(y)"}
                 : std::vector<std::string>{"u", "uh", "yh y'", "n y", "rot(n)"});
  // the long-form checks are transcribed with the left n-move, the short-form
  // ones with the right n-move; the opposite variant runs as inferred, as do
  // the variant cases whose claims are carried over by reference
  bool off_variant = (variant != (long_form ? "lambda" : "rho"));
  bool inf = (id != "3") || off_variant;
  bool n_inf = inf;

  std::vector<std::string> b_texts;
  if (id == "3") b_texts = {"y", "n yh y yh'", "x' xh x", "rot(x')"};
  if (id == "3a") b_texts = {"yh", "n y", "x' xh x", "rot(x')"};
  if (id == "3b") b_texts = {"y", "n yh y yh'", "xh", "rot(xh')"};
  if (id == "3c") b_texts = {"y", "n yh", "xh", "rot(xh')"};
  b.b(b_texts);
  b.target("r(x,y)");
  if (id == "3c")
    b.t.notes.push_back(
        "the stated generator list abbreviates the third generator of B to a "
        "single letter; it is read as the unhatted partner of x");

  std::vector<std::string> outer_bad =
      hatted_x ? std::vector<std::string>{"z", "zh", "xh' x xh", "rot(hp4)"}
               : std::vector<std::string>{"z", "zh", "x", "rot(x')"};
  std::vector<std::string> atmost_gens =
      hatted_x ? std::vector<std::string>{"xh", "rot(xh')"}
               : std::vector<std::string>{"x", "rot(x')"};
  std::string mid_gen = id == "3" ? "n yh y yh'"
                        : id == "3b" ? "n yh y yh'"
                        : id == "3a" ? "n y"
                                     : "n yh";

  auto a_claim = b.atmost(atmost_gens, "intersects B at most in <x, d_{x^-1}>", inf);
  if (id == "3")
    a_claim = b.sharper(a_claim, {"rot(x')"});  // "in fact <d_{x^-1}>, not needed"
  b.step("r(xh,z)^-1", outer_bad, a_claim);
  b.step(nm + "^-1", n_bad,
         b.cyclic(mid_gen, "intersects ... in <n y^ y y^-1>", n_inf));
  if (long_form) {
    b.step("r(y,v)^-1", {"v", "vh", "y' n' yh", "y' yh y", "rot(yhp)"},
           b.trivial("trivally", inf));
    b.step("r(x,y)", b_texts, b.trivial("trivially", inf));
    b.step("r(y,v)", {"v", "vh", "y' n' yh", "y' yh y", "rot(yhp)"},
           b.trivial("trivially", inf));
    b.step("r(x,v)",
           hatted_x ? std::vector<std::string>{"v", "vh", "xh", "rot(xh')"}
                    : std::vector<std::string>{"v", "vh", "x' xh x", "rot(xhp)"},
           b.cyclic("xh", "in the conjugacy class <x^>", inf));
  } else {
    auto mid_claim = b.cyclic(mid_gen,
                              "the overlap of the bad factor for r(x,y) and the "
                              "translated B is <n y>",
                              off_variant || id != "3a");
    if (!mid_claim.inferred)
      mid_claim = b.kd(std::move(mid_claim),
                       "the visibly common class is <y^> - a generator of both "
                       "sides - while the stated <n y> is not in the translated "
                       "subgroup, where its image is <n u y>");
    b.step("r(x,y)", b_texts, std::move(mid_claim));
  }
  auto h_claim = b.atmost(atmost_gens, "at most in <x, d_{x^-1}>", inf);
  if (id == "3") h_claim = b.sharper(h_claim, {});  // "in fact trivial, not needed"
  if (!inf)
    h_claim = b.kd(std::move(h_claim),
                   "the class of z^-1 x d_{x^-1} z x^-1 - visibly a product of "
                   "generators of the move's bad subgroup - is common to both "
                   "sides (it represents the translated boundary generator of "
                   "the other side) and lies in no conjugate of <x, d_{x^-1}>");
  auto g_claim = b.trivial("trivially", n_inf);
  if (!n_inf)
    g_claim = b.kd(std::move(g_claim),
                   "the class of u(n y^)(y y^') - a product of three generators "
                   "of the move's bad subgroup - is common to both sides");
  b.step(nm, n_bad, std::move(g_claim));
  b.step("r(xh,z)", outer_bad, std::move(h_claim));
  return std::move(b.t);
}

inline RelationTemplate build_case_4(const SurfaceModel& S) {
  if (S.orientable_kind())
    throw std::invalid_argument("case 4 needs a nonorientable basis");
  require_genus(S, 9, "4");
  CaseBuilder b(S, "4", "");
  non_or_roles(b);
  b.env["y"] = 0;  // y is the one-sided letter
  b.role("ah", 1, true);
  b.role("a", 1, false);
  b.role("xh", 3, true);
  b.role("x", 3, false);
  b.role("xhp", 4, true);
  b.b({"y", "a' y' ah a ah' y a", "x' xh x", "rot(x')"});
  b.target("r(x,y)");
  b.step("r(y,u)^-1", {"ah", "a ah' y", "u", "uh", "rot(ah)"},
         b.cyclic("rot(ah)", "intersects B in <d_{a^}>"));
  b.step("r(xh,z)^-1", {"z", "zh", "x", "rot(x')"}, b.trivial("trivially"));
  b.step("r(x,y)", {"y", "a' y' ah a ah' y a", "x' xh x", "rot(x')"},
         b.kd(b.trivial("trivially"),
              "the conjugacy class of a is visibly common: both the bad subgroup "
              "and the translated subgroup contain a conjugate of a as a "
              "generator, so the intersection cannot be trivial"));
  b.step("r(x,u)", {"u", "uh", "x' xh x", "rot(xhp)"}, b.trivial("trivially"));
  b.step("r(xh,z)", {"z", "zh", "x", "rot(x')"}, b.trivial("trivially"));
  b.step("r(y,u)", {"u", "uh", "a ah' y", "ah", "rot(ah)"},
         b.kd(b.trivial("trivially"),
              "the image of the boundary class under the move itself (the "
              "boundary word with u inserted after each occurrence of the "
              "one-sided letter) is common to both sides; the stated drops of "
              "the boundary words lack supporting certificates"));
  return std::move(b.t);
}

inline RelationTemplate build_case_5_family(const SurfaceModel& S, const std::string& id) {
  if (S.orientable_kind())
    throw std::invalid_argument("case " + id + " needs a nonorientable basis");
  require_genus(S, 9, id);
  bool left_target = id == "5a";
  CaseBuilder b(S, id, "");
  non_or_roles(b);
  b.env["x"] = 0;  // x is the one-sided letter
  b.role("ah", 1, true);
  b.role("a", 1, false);
  b.role("yh", 3, true);
  b.role("y", 3, false);
  b.role("wh", 9, true);
  b.role("w", 9, false);
  b.role("yhp", 4, true);

  if (!left_target) {
    b.b({"y", "yh", "ah", "a ah' x", "rot(ah)"});
    b.target("r(x,y)");
    b.step("r(yh,u)^-1", {"u", "uh", "y", "rot(y')"},
           b.subgroup({"y", "rot(y')"}, "intersects B in <y, d_{y^-1}>"));
    b.step("r(y,z)^-1", {"z", "zh", "y' yh y", "rot(yhp)"}, b.trivial("trivially"));
    b.step("l(ah,w)^-1", {"ah a ah'", "x", "w", "wh", "rot(n)"},
           b.cyclic("ah a ah' x", "in <a^ a a^-1 x>"));
    b.step("r(x,y)", {"y", "yh", "ah", "a ah' x", "rot(ah)"}, b.trivial("trivially"));
    b.step("r(x,z)", {"ah", "a ah' x", "z", "zh", "rot(ah)"}, b.trivial("trivially"));
    b.step("l(ah,w)", {"ah a ah'", "x", "w", "wh", "rot(n)"},
           b.cyclic("w ah a ah' w' x", "the intersection is <w a^ a a^-1 w^-1 x>"));
    b.step("r(y,z)", {"z", "zh", "y' yh y", "rot(yhp)"}, b.trivial("trivially"));
    b.step("r(yh,u)", {"u", "uh", "y", "rot(y')"},
           b.kd(b.cyclic("y", "in <y>"),
                "a boundary-derived class is common in addition to <y>, exactly "
                "as in the first step; the statement omits it"));
  } else {
    b.b({"x ah", "a ah'", "y", "yh", "rot(n)"});
    b.target("l(x,y)");
    b.step("r(yh,u)^-1", {"u", "uh", "y", "rot(y')"},
           b.subgroup({"y", "rot(y')"}, "intersects B in <y, d_{y^-1}>"));
    b.step("r(y,z)^-1", {"z", "zh", "y' yh y", "rot(yhp)"}, b.trivial("trivially"));
    b.step("r(ah,w)^-1", {"w", "wh", "a", "ah' x ah", "rot(a)"},
           b.cyclic("a ah' x ah", "in <a a^-1 x a^>"));
    b.step("l(x,z)", {"x ah", "a ah'", "z", "zh", "rot(n)"}, b.trivial("trivially"));
    b.step("l(x,y)", {"x ah", "a ah'", "y", "yh", "rot(n)"}, b.trivial("trivially"));
    b.step("r(ah,w)", {"w", "wh", "a", "ah' x ah", "rot(a)"},
           b.cyclic("a w' ah' x ah w", "in <a w^-1 a^-1 x a^ w>"));
    b.step("r(y,z)", {"z", "zh", "y' yh y", "rot(yhp)"}, b.trivial("trivially"));
    b.step("r(yh,u)", {"u", "uh", "y", "rot(y')"},
           b.kd(b.cyclic("y", "in <y>"),
                "a boundary-derived class is common in addition to <y>, exactly "
                "as in the first step; the statement omits it"));
  }
  return std::move(b.t);
}

}  // namespace detail

inline RelationTemplate case_template(const std::string& case_id, const SurfaceModel& S,
                                      const std::string& variant = "") {
  std::string v = variant;
  if (v.empty() && case_variants(case_id).front() != "") v = "lambda";
  if (case_id == "1") return detail::build_case_1(S);
  if (case_id == "2" || case_id == "2a" || case_id == "2b" || case_id == "2c")
    return detail::build_case_2_family(S, case_id, v);
  if (case_id == "3" || case_id == "3a" || case_id == "3b" || case_id == "3c")
    return detail::build_case_3_family(S, case_id, v);
  if (case_id == "4") return detail::build_case_4(S);
  if (case_id == "5" || case_id == "5a") return detail::build_case_5_family(S, case_id);
  throw std::invalid_argument("unknown case id: " + case_id);
}

inline std::vector<RelationTemplate> case_templates(const std::string& case_id,
                                                    const SurfaceModel& S) {
  std::vector<RelationTemplate> out;
  for (const std::string& v : case_variants(case_id))
    out.push_back(case_template(case_id, S, v));
  return out;
}

// ---- composition and per-step verification ----

inline Automorphism compose_factors(const RelationTemplate& t, bool leftmost_first = false) {
  int n = t.surface.rank();
  Automorphism acc = Automorphism::identity(n);
  for (const RelationStep& s : t.steps) {
    Automorphism f = Automorphism::basic(s.factor, n);
    acc = leftmost_first ? compose(f, acc) : compose(acc, f);
  }
  return acc;
}

inline bool verify_composition(const RelationTemplate& t, bool leftmost_first = false) {
  return compose_factors(t, leftmost_first) ==
         Automorphism::basic(t.target, t.surface.rank());
}

// bad subgroup of the target, pulled back through the factors preceding step i
// (1-based): (f_1 ... f_{i-1})^-1 applied to each generator of B
inline std::vector<Word> translated_target_bad(const RelationTemplate& t, int i) {
  int n = t.surface.rank();
  Automorphism inv = Automorphism::identity(n);
  for (int j = i - 2; j >= 0; --j)
    inv = compose(inv, Automorphism::basic(
                           t.steps[static_cast<std::size_t>(j)].factor.inverse(), n));
  std::vector<Word> out;
  out.reserve(t.b_gens.size());
  for (const Word& g : t.b_gens) out.push_back(inv.apply(g));
  return out;
}

enum class Verdict { Match, WithinAtMost, Mismatch };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "Match";
    case Verdict::WithinAtMost: return "WithinAtMost";
    case Verdict::Mismatch: return "Mismatch";
  }
  return "?";
}

struct StepReport {
  int index = 0;  // 1-based
  std::string factor_text;
  ExpectedClaim claim;
  IntersectionResult computed;
  std::vector<int> component_ranks;
  std::vector<std::vector<std::string>> component_generators;
  Verdict verdict = Verdict::Mismatch;
  bool fatal = false;  // mismatch on an exact stated claim without a recorded note
  std::vector<std::string> certificates_used;
  bool reduction_consistent = true;  // drop-lemma shortcut agreed with direct result
  std::string sharper_note;
  std::string match_note;          // e.g. split-conjugacy-class realisation
  bool claim_lower_bound = true;   // claimed classes occur in the computed result
};

namespace detail {

// multiset equality of intersection components under core isomorphism
inline bool same_components(const IntersectionResult& a, const IntersectionResult& b) {
  if (a.components.size() != b.components.size()) return false;
  std::vector<bool> used(b.components.size(), false);
  for (const SubgroupGraph& ca : a.components) {
    bool found = false;
    for (std::size_t j = 0; j < b.components.size(); ++j) {
      if (!used[j] && cores_isomorphic(ca, b.components[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// is component c (a baseless core) conjugate-included in the subgroup with
// graph m? true iff the fiber product reproduces c itself
inline bool conjugate_included(const SubgroupGraph& c, const SubgroupGraph& m) {
  for (const SubgroupGraph& comp : conjugacy_intersection(c, m).components)
    if (cores_isomorphic(comp, c)) return true;
  return false;
}

// is the conjugacy class of w represented among the computed components?
inline bool class_present(const Word& w, const std::vector<SubgroupGraph>& comps,
                          int alphabet) {
  if (w.empty()) return true;
  SubgroupGraph wc = from_generators({w}, alphabet).cyclic_core();
  for (const SubgroupGraph& c : comps)
    if (conjugate_included(wc, c)) return true;
  return false;
}

inline bool matches_expected(const IntersectionResult& got, const ExpectedClaim& claim,
                             int alphabet, std::string* note = nullptr) {
  switch (claim.kind) {
    case ExpectedClaim::Kind::Trivial:
      return got.trivial();
    case ExpectedClaim::Kind::Cyclic:
    case ExpectedClaim::Kind::Subgroup: {
      SubgroupGraph expect = from_generators(claim.words, alphabet).cyclic_core();
      if (got.components.size() == 1 &&
          cores_isomorphic(got.components.front(), expect))
        return true;
      if (claim.kind == ExpectedClaim::Kind::Cyclic) return false;
      // A multi-generator claim may be realised as several separate conjugacy
      // classes: accept when every computed component sits inside the claimed
      // subgroup up to conjugacy and every claimed generator's class occurs.
      if (got.components.empty()) return false;
      SubgroupGraph m = from_generators(claim.words, alphabet);
      for (const SubgroupGraph& c : got.components)
        if (!conjugate_included(c, m)) return false;
      for (const Word& w : claim.words)
        if (!class_present(w, got.components, alphabet)) return false;
      if (note)
        *note = "claimed subgroup realised as separate conjugacy classes";
      return true;
    }
    case ExpectedClaim::Kind::AtMost: {
      if (claim.words.empty()) return got.trivial();
      SubgroupGraph m = from_generators(claim.words, alphabet);
      for (const SubgroupGraph& c : got.components)
        if (!conjugate_included(c, m)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline StepReport step_intersection(const RelationTemplate& t, int i,
                                    bool use_certificates = true) {
  if (i < 1 || i > static_cast<int>(t.steps.size()))
    throw std::invalid_argument("step index out of range");
  const RelationStep& st = t.steps[static_cast<std::size_t>(i - 1)];
  int n = t.surface.rank();
  const Basis& basis = t.surface.basis();

  std::vector<Word> tb = translated_target_bad(t, i);
  IntersectionResult direct =
      conjugacy_intersection(from_generators(st.bad, n), from_generators(tb, n));

  StepReport r;
  r.index = i;
  r.factor_text = st.factor.format(basis);
  r.claim = st.claim;
  for (const SubgroupGraph& c : direct.components) {
    r.component_ranks.push_back(c.rank());
    std::vector<std::string> gens;
    for (const Word& w : graph_generators(c)) gens.push_back(basis.format(w));
    r.component_generators.push_back(std::move(gens));
  }

  if (use_certificates) {
    ReductionTrace tr = reduce_pair(st.bad, tb, n, basis);
    r.certificates_used = tr.steps;
    IntersectionResult reduced =
        conjugacy_intersection(from_generators(tr.a, n), from_generators(tr.b, n));
    r.reduction_consistent = detail::same_components(direct, reduced);
  }

  bool ok = detail::matches_expected(direct, st.claim, n, &r.match_note);
  if (st.claim.kind == ExpectedClaim::Kind::AtMost) {
    r.verdict = ok ? Verdict::WithinAtMost : Verdict::Mismatch;
  } else if (ok) {
    r.verdict = Verdict::Match;
  } else {
    // a computed intersection strictly inside the stated one is the safe
    // direction for the covering argument, so it is not treated as a failure
    bool within = false;
    if (!st.claim.words.empty() && !direct.components.empty()) {
      within = true;
      SubgroupGraph m = from_generators(st.claim.words, n);
      for (const SubgroupGraph& c : direct.components)
        if (!detail::conjugate_included(c, m)) within = false;
    } else if (direct.trivial() && !st.claim.words.empty()) {
      within = true;
    }
    if (within) {
      r.verdict = Verdict::WithinAtMost;
      r.match_note = "computed intersection is strictly contained in the stated one";
    } else {
      r.verdict = Verdict::Mismatch;
    }
  }
  if (r.verdict == Verdict::Mismatch)
    // reported for transparency: do the stated classes at least occur?
    for (const Word& w : st.claim.words)
      if (!detail::class_present(w, direct.components, n)) r.claim_lower_bound = false;
  r.fatal = r.verdict == Verdict::Mismatch && !st.claim.inferred &&
            st.claim.known_discrepancy.empty();

  if (st.claim.has_sharper) {
    ExpectedClaim sharp;
    sharp.kind = st.claim.sharper.empty() ? ExpectedClaim::Kind::Trivial
                                          : ExpectedClaim::Kind::Subgroup;
    sharp.words = st.claim.sharper;
    bool sharp_ok = detail::matches_expected(direct, sharp, n);
    r.sharper_note = std::string("sharper value ") +
                     (st.claim.sharper.empty() ? "trivial" : "stated subgroup") +
                     (sharp_ok ? " confirmed" : " not confirmed");
  }
  r.computed = std::move(direct);
  return r;
}

struct CaseReport {
  std::string case_id;
  std::string variant;
  Basis basis;  // names the claim/component words in reports
  int rank = 0;
  std::string convention = "rightmost-first";
  bool composition_ok = false;
  bool composition_ok_leftmost = false;  // diagnostic, only probed on failure
  std::vector<StepReport> steps;
  std::vector<std::string> discrepancies;

  bool passed() const {
    if (!composition_ok) return false;
    for (const StepReport& s : steps)
      if (s.fatal || !s.reduction_consistent) return false;
    return true;
  }
};

inline CaseReport verify_case(const RelationTemplate& t, bool use_certificates = true) {
  CaseReport r;
  r.case_id = t.case_id;
  r.variant = t.variant;
  r.basis = t.surface.basis();
  r.rank = t.surface.rank();
  for (const std::string& n : t.notes) r.discrepancies.push_back("note: " + n);
  r.composition_ok = verify_composition(t);
  if (!r.composition_ok) {
    r.composition_ok_leftmost = verify_composition(t, true);
    r.discrepancies.push_back(
        std::string("relation does not compose rightmost-first; leftmost-first ") +
        (r.composition_ok_leftmost ? "succeeds" : "also fails"));
    return r;
  }
  for (int i = 1; i <= static_cast<int>(t.steps.size()); ++i) {
    StepReport s = step_intersection(t, i, use_certificates);
    if (s.verdict == Verdict::Mismatch) {
      std::string d = "step " + std::to_string(i) + " (" + s.factor_text +
                      "): computed intersection does not match the stated claim \"" +
                      s.claim.quote + "\"";
      if (s.claim.inferred) d += " [claim transcribed by analogy; informational]";
      if (!s.claim.known_discrepancy.empty())
        d += " [recorded: " + s.claim.known_discrepancy + "]";
      r.discrepancies.push_back(d);
    }
    if (!s.reduction_consistent)
      r.discrepancies.push_back("step " + std::to_string(i) +
                                ": drop-lemma reduction disagrees with the direct "
                                "fiber product");
    r.steps.push_back(std::move(s));
  }
  return r;
}

inline nlohmann::json report_to_json(const CaseReport& r) {
  nlohmann::json j;
  j["case"] = r.case_id;
  j["variant"] = r.variant;
  j["rank"] = r.rank;
  j["convention"] = r.convention;
  j["composition_ok"] = r.composition_ok;
  j["steps"] = nlohmann::json::array();
  for (const StepReport& s : r.steps) {
    nlohmann::json js;
    js["index"] = s.index;
    js["factor"] = s.factor_text;
    js["claim_quote"] = s.claim.quote;
    switch (s.claim.kind) {
      case ExpectedClaim::Kind::Trivial: js["claim_kind"] = "Trivial"; break;
      case ExpectedClaim::Kind::Cyclic: js["claim_kind"] = "Cyclic"; break;
      case ExpectedClaim::Kind::Subgroup: js["claim_kind"] = "Subgroup"; break;
      case ExpectedClaim::Kind::AtMost: js["claim_kind"] = "AtMost"; break;
    }
    js["claim_words"] = nlohmann::json::array();
    for (const Word& w : s.claim.words) js["claim_words"].push_back(r.basis.format(w));
    js["verdict"] = verdict_name(s.verdict);
    js["fatal"] = s.fatal;
    js["reduction_consistent"] = s.reduction_consistent;
    js["computed_components"] = nlohmann::json::array();
    for (std::size_t c = 0; c < s.component_ranks.size(); ++c) {
      nlohmann::json jc;
      jc["rank"] = s.component_ranks[c];
      jc["generators"] = s.component_generators[c];
      js["computed_components"].push_back(std::move(jc));
    }
    if (!s.certificates_used.empty()) js["certificates_used"] = s.certificates_used;
    if (!s.sharper_note.empty()) js["sharper_note"] = s.sharper_note;
    if (!s.match_note.empty()) js["match_note"] = s.match_note;
    j["steps"].push_back(std::move(js));
  }
  j["discrepancies"] = r.discrepancies;
  j["passed"] = r.passed();
  return j;
}

// ---- short-relation conjugators (case 1 steps with problematic groups) ----

struct ShortRelationReport {
  bool applicable = false;
  bool inferred = false;  // step f is transcribed from the a)-pattern
  std::string conjugator;
  bool commutes = false;
  bool intersection_as_stated = false;
  bool whitehead_certificate = false;  // boundary word has no Whitehead cut vertex
  bool partner_words_good = false;     // modified letters stay out of the bad subgroups
  std::vector<std::string> details;
};

inline ShortRelationReport short_relation_check(char step, const std::vector<Word>& e_gens,
                                                const SurfaceModel& S) {
  ShortRelationReport r;
  if (step != 'a' && step != 'c' && step != 'f') {
    r.details.push_back("no conjugator needed for this step");
    return r;
  }
  if (!S.orientable_kind())
    throw std::invalid_argument("short-relation conjugators are set up for case 1");
  detail::require_genus(S, 7, "1 (short relations)");
  int n = S.rank();
  const Basis& basis = S.basis();
  if (!e_gens.empty()) {
    SubgroupGraph e = from_generators(e_gens, n);
    if (e.rank() >= n)
      throw std::invalid_argument("free factor E must be proper (rank < basis rank)");
  }
  RoleEnv env;
  env["xh"] = S.pair_letter(1, true);
  env["x"] = S.pair_letter(1, false);
  env["yh"] = S.pair_letter(2, true);
  env["y"] = S.pair_letter(2, false);
  env["u"] = S.pair_letter(4, false);
  env["uh"] = S.pair_letter(4, true);
  env["w"] = S.pair_letter(5, false);
  env["wh"] = S.pair_letter(5, true);

  auto not_bad_for = [&](const Word& w, const std::vector<Word>& bad) {
    Word core = w.cyclic_reduce().first;
    return !from_generators(bad, n).cyclic_core().traces_loop(core);
  };

  r.applicable = true;
  r.whitehead_certificate = whitehead_no_cut_vertex(S.boundary(), n);
  r.details.push_back(
      "Whitehead certificate: the boundary word lies in no proper free factor, so "
      "<d> meets every proper free factor trivially");

  if (step == 'a' || step == 'f') {
    r.inferred = step == 'f';
    MoveDescriptor conj = detail::role_move(S, env, "l(y,w)");
    MoveDescriptor partner = detail::role_move(
        S, env, step == 'a' ? "r(yh,u)^-1" : "r(yh,u)");
    r.conjugator = conj.format(basis);
    Automorphism cA = Automorphism::basic(conj, n);
    Automorphism pA = Automorphism::basic(partner, n);
    r.commutes = compose(cA, pA) == compose(pA, cA);

    std::vector<Word> conj_bad = bad_subgroup(S, conj);
    std::vector<Word> problematic =
        step == 'a' ? role_words(S, env, {"y", "rot(y')"})
                    : role_words(S, env, {"y"});
    IntersectionResult inter = conjugacy_intersection(
        from_generators(conj_bad, n), from_generators(problematic, n));
    if (step == 'a') {
      SubgroupGraph expect =
          from_generators({role_word(S, env, "rot(y')")}, n).cyclic_core();
      r.intersection_as_stated = inter.components.size() == 1 &&
                                 cores_isomorphic(inter.components.front(), expect);
      r.details.push_back("bad(l(y,w)) meets <y, d_{y^-1}> in <d_{y^-1}>: " +
                          std::string(r.intersection_as_stated ? "yes" : "NO"));
    } else {
      r.intersection_as_stated = inter.trivial();
      r.details.push_back("bad(l(y,w)) meets <y> trivially: " +
                          std::string(r.intersection_as_stated ? "yes" : "NO"));
    }
    // the conjugated letter w y must stay out of the partner's bad subgroup
    Word wy = cA.apply(role_word(S, env, "y"));
    MoveDescriptor base = partner;
    base.exponent = 1;
    r.partner_words_good = not_bad_for(wy, bad_subgroup(S, base));
    r.details.push_back("image of y under the conjugator avoids bad(r(yh,u)): " +
                        std::string(r.partner_words_good ? "yes" : "NO"));
  } else {  // step c
    MoveDescriptor conj = detail::role_move(S, env, "r(xh,w)");
    MoveDescriptor partner = detail::role_move(S, env, "r(x,y)");
    r.conjugator = conj.format(basis);
    Automorphism cA = Automorphism::basic(conj, n);
    Automorphism pA = Automorphism::basic(partner, n);
    r.commutes = compose(cA, pA) == compose(pA, cA);
    std::vector<Word> conj_bad = bad_subgroup(S, conj);
    std::vector<Word> target_bad = bad_subgroup(S, partner);
    bool xh_ok = not_bad_for(role_word(S, env, "xh"), conj_bad);
    bool xhw_ok = not_bad_for(cA.apply(role_word(S, env, "xh")), target_bad);
    r.partner_words_good = xh_ok && xhw_ok;
    r.intersection_as_stated = r.partner_words_good;  // no intersection is stated here
    r.details.push_back("x^ avoids bad(r(xh,w)): " + std::string(xh_ok ? "yes" : "NO"));
    r.details.push_back("x^ w avoids bad(r(x,y)): " + std::string(xhw_ok ? "yes" : "NO"));
  }
  return r;
}

// ---- containment-argument property checks ----

struct ContainmentReport {
  bool fixes_all_but_w = false;     // (1)
  bool avoids_e = false;            // (2)
  AbelianVector theta_w_class;      // (3) [theta(w)]
  bool homology_shift = false;      //     equals [w]+[z]
  bool outside_h1e = false;         //     and lies outside H_1(E)
  bool dw_fixes_all_but_w = false;  // (5)
  bool relation_holds = false;      // phi == theta . phi . D_w . theta^-1
  Automorphism dw;
};

inline ContainmentReport containment_checks(const Automorphism& theta,
                                            const MoveDescriptor& phi,
                                            const std::vector<Word>& e_gens,
                                            const RoleEnv& roles, int rank) {
  for (const char* key : {"x", "y", "z", "w", "e"})
    if (!roles.count(key))
      throw std::invalid_argument(std::string("missing role letter: ") + key);
  {
    std::vector<int> vals;
    for (const auto& kv : roles) vals.push_back(kv.second);
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
      throw std::invalid_argument("role letters must be pairwise distinct");
  }
  int w = roles.at("w"), z = roles.at("z"), e = roles.at("e");

  ContainmentReport r;
  std::set<int> fixed = theta.fixed_letters();
  r.fixes_all_but_w = true;
  for (int i = 0; i < rank; ++i)
    if (i != w && !fixed.count(i)) r.fixes_all_but_w = false;
  r.avoids_e = !theta.letters_used(w).count(e);

  r.theta_w_class = abelianize(theta.image(w), rank);
  AbelianVector expect(static_cast<std::size_t>(rank), 0);
  expect[static_cast<std::size_t>(w)] += 1;
  expect[static_cast<std::size_t>(z)] += 1;
  r.homology_shift = r.theta_w_class == expect;
  std::vector<AbelianVector> h1e;
  for (const Word& g : e_gens) h1e.push_back(abelianize(g, rank));
  r.outside_h1e = !IntegerLattice(std::move(h1e), rank).contains(r.theta_w_class);

  Automorphism phiA = Automorphism::basic(phi, rank);
  Automorphism phiInv = Automorphism::basic(phi.inverse(), rank);
  Automorphism thetaInv = theta.inverse();
  r.dw = compose(compose(compose(phiInv, thetaInv), phiA), theta);
  r.dw_fixes_all_but_w = true;
  std::set<int> dw_fixed = r.dw.fixed_letters();
  for (int i = 0; i < rank; ++i)
    if (i != w && !dw_fixed.count(i)) r.dw_fixes_all_but_w = false;
  r.relation_holds =
      compose(compose(compose(theta, phiA), r.dw), thetaInv) == phiA;
  return r;
}

// ---- conjugated relations ----

struct GeneralRelation {
  Automorphism target;  // the original target as an automorphism
  std::vector<Automorphism> factors;

  Automorphism composed() const {
    Automorphism acc = Automorphism::identity(target.rank());
    for (const Automorphism& f : factors) acc = compose(acc, f);
    return acc;
  }
  bool composes_to_target() const { return composed() == target; }
};

// conjugate every factor by c; the product becomes c^-1 (target) c, so the
// relation still composes to the target exactly when c commutes with it
inline GeneralRelation conjugate_relation(const RelationTemplate& t, const Automorphism& c) {
  int n = t.surface.rank();
  Automorphism cinv = c.inverse();
  GeneralRelation g;
  g.target = Automorphism::basic(t.target, n);
  for (const RelationStep& s : t.steps)
    g.factors.push_back(
        compose(compose(cinv, Automorphism::basic(s.factor, n)), c));
  return g;
}

}  // namespace fgv

#endif
