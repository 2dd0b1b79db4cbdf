// Standard geometric bases of surfaces with one boundary component,
// boundary words and rotations, the bad-subgroup tables, and the
// Whitehead-graph no-cut-vertex test.
#ifndef FGV_SURFACE_HPP
#define FGV_SURFACE_HPP

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "automorphism.hpp"
#include "bad_subgroup_table.hpp"
#include "word.hpp"

namespace fgv {

class SurfaceModel {
 public:
  enum class Kind { Orientable, Nonorientable };

  static SurfaceModel orientable(int g) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
    return SurfaceModel(Kind::Orientable, g, Basis::orientable(g));
  }
  static SurfaceModel nonorientable(int g) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
    return SurfaceModel(Kind::Nonorientable, g, Basis::nonorientable(g));
  }

  Kind kind() const { return kind_; }
  int genus() const { return genus_; }
  int rank() const { return basis_.rank(); }
  const Basis& basis() const { return basis_; }
  bool orientable_kind() const { return kind_ == Kind::Orientable; }

  bool one_sided(int i) const { return kind_ == Kind::Nonorientable && i == 0; }
  bool hatted(int i) const {
    if (one_sided(i)) return false;
    return kind_ == Kind::Orientable ? (i % 2 == 0) : (i % 2 == 1);
  }
  // partner of a two-sided letter; -1 for n
  int hat(int i) const {
    if (one_sided(i)) return -1;
    if (kind_ == Kind::Orientable) return hatted(i) ? i + 1 : i - 1;
    return hatted(i) ? i + 1 : i - 1;
  }
  // 1-based pair index; 0 for n
  int pair_index(int i) const {
    if (one_sided(i)) return 0;
    return kind_ == Kind::Orientable ? i / 2 + 1 : (i + 1) / 2;
  }
  bool linked_with_n(int i) const {
    return kind_ == Kind::Nonorientable && !one_sided(i) && pair_index(i) == 1;
  }
  // letter of pair p (1-based); hatted or not
  int pair_letter(int p, bool hat_letter) const {
    int base = kind_ == Kind::Orientable ? 2 * (p - 1) : 2 * p - 1;  // hat index
    return hat_letter ? base : base + 1;
  }

  bool intersecting(int i, int j) const {
    if (i == j) return true;
    if (!one_sided(i) && !one_sided(j) && hat(i) == j) return true;
    if (kind_ == Kind::Nonorientable) {
      if ((one_sided(i) && linked_with_n(j)) || (one_sided(j) && linked_with_n(i)))
        return true;
    }
    return false;
  }

  // orientable: prod [ha_i, a_i^-1]; nonorientable (linked pair first):
  // (n ha1 a1 ha1' n a1) prod_{i>=2} [ha_i, a_i^-1]
  Word boundary() const {
    std::vector<Letter> raw;
    auto commutator = [&](int h, int a) {
      raw.push_back(pos(h));
      raw.push_back(neg(a));
      raw.push_back(neg(h));
      raw.push_back(pos(a));
    };
    if (kind_ == Kind::Orientable) {
      for (int p = 1; p <= genus_; ++p) commutator(2 * (p - 1), 2 * (p - 1) + 1);
    } else {
      int h1 = 1, a1 = 2;
      raw.push_back(pos(0));
      raw.push_back(pos(h1));
      raw.push_back(pos(a1));
      raw.push_back(neg(h1));
      raw.push_back(pos(0));
      raw.push_back(pos(a1));
      for (int p = 2; p <= genus_; ++p) commutator(2 * p - 1, 2 * p);
    }
    return Word(std::move(raw));
  }

 private:
  SurfaceModel(Kind k, int g, Basis b) : kind_(k), genus_(g), basis_(std::move(b)) {}
  Kind kind_;
  int genus_;
  Basis basis_;
};

inline Word cyclic_permutation(const Word& d, Letter start) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == start) {
      std::vector<Letter> raw(d.begin() + static_cast<long>(i), d.end());
      raw.insert(raw.end(), d.begin(), d.begin() + static_cast<long>(i));
      return Word(std::move(raw));
    }
  }
  throw std::invalid_argument("cyclic_permutation: signed letter does not occur");
}

// ---- role environments: symbolic letters used by table/case fixtures ----

using RoleEnv = std::map<std::string, int>;

namespace detail {

inline Letter resolve_role(const SurfaceModel& s, const RoleEnv& env, std::string tok) {
  int sign = +1;
  if (!tok.empty() && tok.back() == '\'') {
    sign = -1;
    tok.pop_back();
  }
  auto it = env.find(tok);
  if (it != env.end()) return {it->second, sign};
  if (tok == "nexthat") {
    auto xit = env.find("x");
    if (xit == env.end()) throw std::invalid_argument("nexthat needs role x");
    int p = s.pair_index(xit->second) + 1;
    if (p > s.genus())
      throw std::invalid_argument("nexthat: no pair above x (genus too small)");
    int idx = s.orientable_kind() ? 2 * (p - 1) : 2 * p - 1;  // hat-type letter
    return {idx, sign};
  }
  throw std::invalid_argument("unknown role token: " + tok);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace detail

// role word: whitespace-separated role tokens, or rot(<token>) for a
// rotation of the boundary word
inline Word role_word(const SurfaceModel& s, const RoleEnv& env, const std::string& text) {
  std::string t = text;
  // trim
  auto b = t.find_first_not_of(" \t");
  auto e = t.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty role word");
  t = t.substr(b, e - b + 1);
  if (t.rfind("rot(", 0) == 0 && t.back() == ')') {
    Letter l = detail::resolve_role(s, env, t.substr(4, t.size() - 5));
    return cyclic_permutation(s.boundary(), l);
  }
  std::vector<Letter> raw;
  for (const std::string& tok : detail::split_ws(t))
    raw.push_back(detail::resolve_role(s, env, tok));
  return Word(std::move(raw));
}

inline std::vector<Word> role_words(const SurfaceModel& s, const RoleEnv& env,
                                    const std::vector<std::string>& texts) {
  std::vector<Word> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(role_word(s, env, t));
  return out;
}

// ---- bad-subgroup table lookup ----

namespace detail {

inline const std::map<std::string, std::vector<std::string>>& bad_table() {
  static const std::map<std::string, std::vector<std::string>> table = [] {
    std::map<std::string, std::vector<std::string>> t;
    std::istringstream is(kBadSubgroupTable);
    std::string line;
    while (std::getline(is, line)) {
      auto h = line.find_first_not_of(" \t");
      if (h == std::string::npos || line[h] == '#') continue;
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string tag = line.substr(0, colon);
      auto te = tag.find_last_not_of(" \t");
      tag = tag.substr(h, te - h + 1);
      std::vector<std::string> gens;
      std::string rest = line.substr(colon + 1);
      std::size_t p = 0;
      while (p <= rest.size()) {
        auto q = rest.find(';', p);
        std::string piece = rest.substr(p, q == std::string::npos ? q : q - p);
        auto pb = piece.find_first_not_of(" \t");
        if (pb != std::string::npos) {
          auto pe = piece.find_last_not_of(" \t");
          gens.push_back(piece.substr(pb, pe - pb + 1));
        }
        if (q == std::string::npos) break;
        p = q + 1;
      }
      t[tag] = gens;
    }
    return t;
  }();
  return table;
}

// "g1 = a" rows: returns the right-hand side role word text
inline std::string g1g2_rhs(const std::string& row_piece) {
  auto eq = row_piece.find('=');
  if (eq == std::string::npos)
    throw std::logic_error("malformed g1/g2 table row: " + row_piece);
  return row_piece.substr(eq + 1);
}

}  // namespace detail

// Bad subgroup of a basic move (table row instantiated over S). The bad
// subsurface of an inverse move is that of the base move.
inline std::vector<Word> bad_subgroup(const SurfaceModel& s, const MoveDescriptor& m) {
  const auto& table = detail::bad_table();
  RoleEnv env;
  env["x"] = m.x;
  if (!s.one_sided(m.x)) env["xh"] = s.hat(m.x);
  if (s.kind() == SurfaceModel::Kind::Nonorientable) {
    env["n"] = 0;
    env["ah"] = 1;
    env["a"] = 2;
  }

  std::string tag;
  if (m.kind == MoveDescriptor::Kind::Invert) {
    if (s.one_sided(m.x) || s.linked_with_n(m.x))
      throw std::invalid_argument("invert move tabulated only for unlinked two-sided x");
    tag = std::string("inv.") + (s.hatted(m.x) ? "hatted" : "unhatted");
  } else {
    if (s.intersecting(m.x, m.y))
      throw std::invalid_argument("bad_subgroup: move on an intersecting pair");
    env["y"] = m.y;
    if (!s.one_sided(m.y)) env["yh"] = s.hat(m.y);
    std::string rl = m.kind == MoveDescriptor::Kind::RightMult ? "r" : "l";
    if (s.one_sided(m.x)) {
      tag = "xN." + rl;
    } else if (s.linked_with_n(m.x)) {
      tag = "xL." + rl + "." + (s.hatted(m.x) ? "hatted" : "unhatted");
    } else if (s.one_sided(m.y) || s.linked_with_n(m.y)) {
      tag = "xU.yL." + rl + "." + (s.hatted(m.x) ? "hatted" : "unhatted");
    } else {
      tag = "xU.yU." + rl + "." + (s.hatted(m.x) ? "hatted" : "unhatted");
    }
  }

  const auto& row = table.at(tag);
  std::vector<Word> gens;
  for (const std::string& piece : row) {
    if (piece == "g1" || piece == "g2") {
      std::string which = s.one_sided(m.y) ? "n" : (s.hatted(m.y) ? "ah" : "a");
      const auto& grow = table.at("g1g2.y=" + which);
      const std::string& rhs = detail::g1g2_rhs(piece == "g1" ? grow.at(0) : grow.at(1));
      gens.push_back(role_word(s, env, rhs));
    } else {
      gens.push_back(role_word(s, env, piece));
    }
  }
  return gens;
}

// ---- Whitehead graph ----

struct WhiteheadGraph {
  int n = 0;                                   // rank; 2n signed vertices
  std::vector<std::vector<int>> adj;           // adjacency lists (multi)
  std::vector<int> degree;
};

// one edge {u, v^-1} per cyclic adjacency u v of w
inline WhiteheadGraph whitehead_graph(const Word& w, int rank) {
  if (w.empty()) throw std::invalid_argument("whitehead_graph: empty word");
  WhiteheadGraph g;
  g.n = rank;
  g.adj.assign(static_cast<std::size_t>(2 * rank), {});
  g.degree.assign(static_cast<std::size_t>(2 * rank), 0);
  std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i) {
    Letter u = w[i];
    Letter v = w[(i + 1) % len];
    int a = u.code();
    int b = v.inverse().code();
    g.adj[static_cast<std::size_t>(a)].push_back(b);
    g.adj[static_cast<std::size_t>(b)].push_back(a);
    ++g.degree[static_cast<std::size_t>(a)];
    ++g.degree[static_cast<std::size_t>(b)];
  }
  return g;
}

// true iff the Whitehead graph spans all 2n vertices, is connected, and has
// no articulation point — certifying w is in no proper free factor
inline bool whitehead_no_cut_vertex(const Word& w, int rank) {
  WhiteheadGraph g = whitehead_graph(w, rank);
  int nv = 2 * rank;
  for (int v = 0; v < nv; ++v)
    if (g.degree[static_cast<std::size_t>(v)] == 0) return false;
  // connectivity
  std::vector<bool> seen(static_cast<std::size_t>(nv), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int t : g.adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        stack.push_back(t);
      }
  }
  for (int v = 0; v < nv; ++v)
    if (!seen[static_cast<std::size_t>(v)]) return false;
  // articulation points (parallel edges collapse to simple adjacency)
  std::vector<std::set<int>> simple(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v)
    for (int t : g.adj[static_cast<std::size_t>(v)])
      if (t != v) simple[static_cast<std::size_t>(v)].insert(t);
  std::vector<int> disc(static_cast<std::size_t>(nv), -1), low(static_cast<std::size_t>(nv), 0);
  int timer = 0;
  bool has_cut = false;
  // iterative DFS with articulation detection
  struct Frame {
    int v, parent;
    std::set<int>::const_iterator it;
    int children = 0;
  };
  std::vector<Frame> fs;
  disc[0] = low[0] = timer++;
  fs.push_back({0, -1, simple[0].begin(), 0});
  while (!fs.empty()) {
    Frame& f = fs.back();
    if (f.it != simple[static_cast<std::size_t>(f.v)].end()) {
      int t = *f.it;
      ++f.it;
      if (t == f.parent) continue;
      if (disc[static_cast<std::size_t>(t)] != -1) {
        low[static_cast<std::size_t>(f.v)] =
            std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(t)]);
      } else {
        ++f.children;
        disc[static_cast<std::size_t>(t)] = low[static_cast<std::size_t>(t)] = timer++;
        fs.push_back({t, f.v, simple[static_cast<std::size_t>(t)].begin(), 0});
      }
    } else {
      int v = f.v, parent = f.parent, children = f.children;
      fs.pop_back();
      if (!fs.empty()) {
        Frame& pf = fs.back();
        low[static_cast<std::size_t>(pf.v)] =
            std::min(low[static_cast<std::size_t>(pf.v)], low[static_cast<std::size_t>(v)]);
        if (pf.parent != -1 && low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(pf.v)])
          has_cut = true;
      }
      if (parent == -1 && children > 1) has_cut = true;
    }
  }
  return !has_cut;
}

}  // namespace fgv

#endif
