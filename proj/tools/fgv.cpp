// Command-line front end: folding, membership, conjugacy intersections,
// Whitehead tests, surface boundaries, and the relation verification harness.
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fgv/relations.hpp"

using namespace fgv;

namespace {

// ---- basis selection shared by the word-level subcommands ----

struct BasisOpts {
  std::string kind = "plain";  // plain | orientable | nonorientable
  int genus = 0;               // surface bases
  int rank = 0;                // plain basis; 0 = infer from the input words
};

void add_basis_opts(CLI::App* cmd, BasisOpts& o) {
  cmd->add_option("--kind", o.kind, "letter basis: plain, orientable or nonorientable")
      ->check(CLI::IsMember({"plain", "orientable", "nonorientable"}));
  cmd->add_option("--genus", o.genus, "genus of the surface basis");
  cmd->add_option("--rank", o.rank, "rank of the plain basis (default: inferred)");
}

int infer_plain_rank(const std::vector<std::string>& words) {
  int best = 0;
  for (const std::string& w : words) {
    std::size_t i = 0;
    while (i < w.size()) {
      while (i < w.size() && std::isspace(static_cast<unsigned char>(w[i]))) ++i;
      std::size_t j = i;
      while (j < w.size() && !std::isspace(static_cast<unsigned char>(w[j]))) ++j;
      std::string tok = w.substr(i, j - i);
      if (!tok.empty() && tok.back() == '\'') tok.pop_back();
      if (tok.size() >= 2 && tok[0] == 'a') {
        try {
          best = std::max(best, std::stoi(tok.substr(1)));
        } catch (...) {
        }
      }
      i = j;
    }
  }
  return best;
}

Basis make_basis(const BasisOpts& o, const std::vector<std::string>& words) {
  if (o.kind == "orientable") {
    if (o.genus < 1) throw std::invalid_argument("--genus must be >= 1 for a surface basis");
    return Basis::orientable(o.genus);
  }
  if (o.kind == "nonorientable") {
    if (o.genus < 1) throw std::invalid_argument("--genus must be >= 1 for a surface basis");
    return Basis::nonorientable(o.genus);
  }
  int r = o.rank > 0 ? o.rank : infer_plain_rank(words);
  if (r < 1)
    throw std::invalid_argument(
        "cannot infer the basis rank; pass --rank N or use a surface basis");
  return Basis::plain(r);
}

std::vector<Word> parse_words(const Basis& b, const std::vector<std::string>& texts) {
  std::vector<Word> out;
  for (const std::string& t : texts) out.push_back(b.parse(t));
  return out;
}

void print_components(const IntersectionResult& r, const Basis& b) {
  if (r.trivial()) {
    std::printf("trivial (0 components)\n");
    return;
  }
  std::printf("%zu component(s)\n", r.components.size());
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const SubgroupGraph& c = r.components[i];
    std::printf("  component %zu: rank %d, generators:", i + 1, c.rank());
    for (const Word& w : graph_generators(c)) std::printf(" <%s>", b.format(w).c_str());
    std::printf("\n");
  }
}

// split argv-style args at the literal "--" separator (CLI11 would swallow
// it, so member/intersect are parsed by hand)
struct SplitArgs {
  BasisOpts basis;
  std::vector<std::string> before, after;
  bool saw_sep = false;
};

SplitArgs split_on_separator(const std::vector<std::string>& args) {
  SplitArgs s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--") {
      if (s.saw_sep) throw std::invalid_argument("duplicate '--' separator");
      s.saw_sep = true;
      continue;
    }
    auto value_of = [&](const char* flag) -> std::string {
      if (i + 1 >= args.size())
        throw std::invalid_argument(std::string(flag) + " needs a value");
      return args[++i];
    };
    if (!s.saw_sep && a == "--kind") {
      s.basis.kind = value_of("--kind");
      if (s.basis.kind != "plain" && s.basis.kind != "orientable" &&
          s.basis.kind != "nonorientable")
        throw std::invalid_argument("--kind must be plain, orientable or nonorientable");
    } else if (!s.saw_sep && a == "--genus") {
      s.basis.genus = std::stoi(value_of("--genus"));
    } else if (!s.saw_sep && a == "--rank") {
      s.basis.rank = std::stoi(value_of("--rank"));
    } else {
      (s.saw_sep ? s.after : s.before).push_back(a);
    }
  }
  return s;
}

int run_member(const std::vector<std::string>& args) {
  SplitArgs s = split_on_separator(args);
  if (!s.saw_sep || s.before.empty() || s.after.empty())
    throw std::invalid_argument("usage: member [basis options] <gens...> -- <word>");
  std::string word_text;
  for (const std::string& t : s.after) {
    if (!word_text.empty()) word_text += ' ';
    word_text += t;
  }
  std::vector<std::string> all = s.before;
  all.push_back(word_text);
  Basis b = make_basis(s.basis, all);
  std::vector<Word> gens = parse_words(b, s.before);
  Word w = b.parse(word_text);
  SubgroupGraph g = from_generators(gens, b.rank());
  bool in = g.accepts(w);
  std::printf("member: %s\n", in ? "true" : "false");
  return 0;
}

int run_intersect(const std::vector<std::string>& args) {
  SplitArgs s = split_on_separator(args);
  if (!s.saw_sep || s.before.empty() || s.after.empty())
    throw std::invalid_argument("usage: intersect [basis options] <gensA...> -- <gensB...>");
  std::vector<std::string> all = s.before;
  all.insert(all.end(), s.after.begin(), s.after.end());
  Basis b = make_basis(s.basis, all);
  IntersectionResult r =
      conjugacy_intersection(from_generators(parse_words(b, s.before), b.rank()),
                             from_generators(parse_words(b, s.after), b.rank()));
  print_components(r, b);
  return 0;
}

// ---- verification ----

SurfaceModel surface_for(const std::string& case_id, int rank_override) {
  if (rank_override <= 0) return default_surface(case_id);
  if (case_id == "1") {
    if (rank_override % 2 != 0 || rank_override < 14)
      throw std::invalid_argument(
          "case 1 needs an even rank >= 14 (orientable basis, rank 2g)");
    return SurfaceModel::orientable(rank_override / 2);
  }
  if (rank_override % 2 != 1 || rank_override < 19)
    throw std::invalid_argument(
        "nonorientable cases need an odd rank >= 19 (rank 2g+1)");
  return SurfaceModel::nonorientable((rank_override - 1) / 2);
}

void print_case_report(const CaseReport& r) {
  std::printf("case %s%s%s: rank %d, %s, composition %s\n", r.case_id.c_str(),
              r.variant.empty() ? "" : " variant ", r.variant.c_str(), r.rank,
              r.convention.c_str(), r.composition_ok ? "ok" : "FAILED");
  for (const StepReport& s : r.steps) {
    std::printf("  step %d (%s): %s%s", s.index, s.factor_text.c_str(),
                verdict_name(s.verdict), s.fatal ? " [FATAL]" : "");
    if (!s.match_note.empty()) std::printf(" (%s)", s.match_note.c_str());
    if (!s.sharper_note.empty()) std::printf(" (%s)", s.sharper_note.c_str());
    std::printf("\n");
    if (!s.claim.quote.empty())
      std::printf("    claim: \"%s\"%s\n", s.claim.quote.c_str(),
                  s.claim.inferred ? " [inferred by analogy]" : "");
    for (std::size_t c = 0; c < s.component_ranks.size(); ++c) {
      std::printf("    component rank %d:", s.component_ranks[c]);
      for (const std::string& g : s.component_generators[c]) std::printf(" <%s>", g.c_str());
      std::printf("\n");
    }
    if (!s.reduction_consistent)
      std::printf("    WARNING: drop-lemma reduction disagrees with direct result\n");
  }
  for (const std::string& d : r.discrepancies)
    std::printf("  discrepancy: %s\n", d.c_str());
  std::printf("  result: %s\n", r.passed() ? "passed" : "FAILED");
}

int run_verify(const std::string& case_id, const std::string& variant, int rank_override,
               bool json) {
  SurfaceModel S = surface_for(case_id, rank_override);
  std::vector<std::string> variants =
      variant.empty() ? case_variants(case_id) : std::vector<std::string>{variant};
  std::vector<CaseReport> reports;
  for (const std::string& v : variants)
    reports.push_back(verify_case(case_template(case_id, S, v)));
  bool all_passed = true;
  for (const CaseReport& r : reports) all_passed = all_passed && r.passed();
  if (json) {
    if (reports.size() == 1) {
      std::printf("%s\n", report_to_json(reports.front()).dump(2).c_str());
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const CaseReport& r : reports) arr.push_back(report_to_json(r));
      std::printf("%s\n", arr.dump(2).c_str());
    }
  } else {
    for (const CaseReport& r : reports) print_case_report(r);
  }
  return all_passed ? 0 : 1;
}

int run_verify_all(bool json) {
  // report assembly is order-stable: cases sorted by id, variants in order
  bool all_passed = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const std::string& id : all_case_ids()) {
    SurfaceModel S = default_surface(id);
    for (const std::string& v : case_variants(id)) {
      CaseReport r = verify_case(case_template(id, S, v));
      all_passed = all_passed && r.passed();
      if (json)
        arr.push_back(report_to_json(r));
      else
        print_case_report(r);
    }
  }
  if (json) std::printf("%s\n", arr.dump(2).c_str());
  return all_passed ? 0 : 1;
}

// ---- brute-force oracle ----

std::set<std::vector<int>> loop_words(const SubgroupGraph& g, int maxlen) {
  std::set<std::vector<int>> out;
  std::vector<int> codes;
  for (int start = 0; start < g.num_vertices(); ++start) {
    struct Frame {
      int v;
      int code;
    };
    std::vector<Frame> st{{start, 0}};
    codes.clear();
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.code >= 2 * g.alphabet) {
        st.pop_back();
        if (!codes.empty()) codes.pop_back();
        continue;
      }
      int c = f.code++;
      if (!codes.empty() && (codes.back() ^ 1) == c) continue;
      int t = g.next[static_cast<std::size_t>(f.v)][static_cast<std::size_t>(c)];
      if (t < 0) continue;
      codes.push_back(c);
      if (t == start && (codes.front() ^ 1) != codes.back()) out.insert(codes);
      if (static_cast<int>(codes.size()) < maxlen)
        st.push_back({t, 0});
      else
        codes.pop_back();
    }
  }
  return out;
}

int run_oracle(int max_len, int samples) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> rk(2, 4), cnt(1, 3);
  int bad = 0;
  for (int s = 0; s < samples; ++s) {
    int rank = rk(rng);
    std::vector<Word> a, b;
    for (int i = cnt(rng); i > 0; --i) {
      std::uniform_int_distribution<int> gen(0, rank - 1), sgn(0, 1), len(1, 5);
      std::vector<Letter> raw;
      for (int j = len(rng); j > 0; --j) raw.push_back({gen(rng), sgn(rng) ? 1 : -1});
      Word w(raw);
      if (!w.empty()) a.push_back(w);
    }
    for (int i = cnt(rng); i > 0; --i) {
      std::uniform_int_distribution<int> gen(0, rank - 1), sgn(0, 1), len(1, 5);
      std::vector<Letter> raw;
      for (int j = len(rng); j > 0; --j) raw.push_back({gen(rng), sgn(rng) ? 1 : -1});
      Word w(raw);
      if (!w.empty()) b.push_back(w);
    }
    if (a.empty() || b.empty()) continue;
    SubgroupGraph ga = from_generators(a, rank);
    SubgroupGraph gb = from_generators(b, rank);
    IntersectionResult r = conjugacy_intersection(ga, gb);
    std::set<std::vector<int>> la = loop_words(ga.cyclic_core(), max_len);
    std::set<std::vector<int>> lb = loop_words(gb.cyclic_core(), max_len);
    std::set<std::vector<int>> expect;
    for (const auto& w : la)
      if (lb.count(w)) expect.insert(w);
    std::set<std::vector<int>> got;
    for (const SubgroupGraph& c : r.components)
      for (const auto& w : loop_words(c, max_len)) got.insert(w);
    if (got != expect) {
      ++bad;
      std::printf("sample %d: DISAGREEMENT\n", s);
    }
  }
  std::printf("oracle: %d/%d samples agree\n", samples - bad, samples);
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  // member/intersect need the literal '--' separator, which CLI11 consumes;
  // they are dispatched before CLI11 sees the arguments
  if (argc >= 2) {
    std::string sub = argv[1];
    if (sub == "member" || sub == "intersect") {
      std::vector<std::string> rest(argv + 2, argv + argc);
      try {
        return sub == "member" ? run_member(rest) : run_intersect(rest);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
      }
    }
  }

  CLI::App app{"free-group machinery: folding, intersections, relation verification"};
  app.require_subcommand(1);

  // fold
  BasisOpts fold_basis;
  std::vector<std::string> fold_gens;
  bool fold_json = false;
  CLI::App* fold = app.add_subcommand("fold", "fold generators into a subgroup graph");
  add_basis_opts(fold, fold_basis);
  fold->add_option("gens", fold_gens, "generator words")->required();
  fold->add_flag("--json", fold_json, "emit JSON instead of DOT");

  // whitehead
  BasisOpts wh_basis;
  std::string wh_word;
  CLI::App* wh = app.add_subcommand("whitehead", "Whitehead no-cut-vertex test");
  add_basis_opts(wh, wh_basis);
  wh->add_option("word", wh_word, "word to test")->required();

  // boundary
  std::string bd_kind = "orientable";
  int bd_genus = 1;
  CLI::App* bd = app.add_subcommand("boundary", "print the surface boundary word");
  bd->add_option("--kind", bd_kind, "orientable or nonorientable")
      ->check(CLI::IsMember({"orientable", "nonorientable"}));
  bd->add_option("--genus", bd_genus, "genus")->required();

  // verify
  std::string v_case, v_variant;
  int v_rank = 0;
  bool v_json = false;
  CLI::App* vf = app.add_subcommand("verify", "replay one case's relation and steps");
  vf->add_option("--case", v_case, "case id (1, 2, 2a, ..., 5a)")->required();
  vf->add_option("--variant", v_variant, "restrict to one n-move variant (lambda/rho)");
  vf->add_option("--rank", v_rank, "ambient rank override");
  vf->add_flag("--json", v_json, "emit the JSON report");

  // verify-all
  bool va_json = false;
  CLI::App* va = app.add_subcommand("verify-all", "replay every case");
  va->add_flag("--json", va_json, "emit the JSON report array");

  // oracle
  int o_max_len = 8, o_samples = 200;
  CLI::App* oc = app.add_subcommand("oracle", "randomized intersection cross-check");
  oc->add_option("--max-len", o_max_len, "maximum loop word length");
  oc->add_option("--samples", o_samples, "number of random pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*fold) {
      Basis b = make_basis(fold_basis, fold_gens);
      FoldResult fr = fold_generators(parse_words(b, fold_gens), b.rank());
      if (fold_json) {
        nlohmann::json j;
        j["vertices"] = fr.graph.num_vertices();
        j["rank"] = fr.graph.rank();
        j["base"] = fr.graph.base;
        j["edges"] = nlohmann::json::array();
        for (int e = 0; e < fr.graph.num_edges(); ++e)
          j["edges"].push_back({{"from", fr.graph.edge_u[static_cast<std::size_t>(e)]},
                                {"to", fr.graph.edge_v[static_cast<std::size_t>(e)]},
                                {"label", b.name(fr.graph.edge_gen[static_cast<std::size_t>(e)])}});
        std::printf("%s\n", j.dump(2).c_str());
      } else {
        std::printf("%s", to_dot(fr.graph, b).c_str());
      }
      return 0;
    }
    if (*wh) {
      Basis b = make_basis(wh_basis, {wh_word});
      bool ok = whitehead_no_cut_vertex(b.parse(wh_word), b.rank());
      std::printf("no cut vertex: %s\n", ok ? "true" : "false");
      return 0;
    }
    if (*bd) {
      SurfaceModel s = bd_kind == "orientable" ? SurfaceModel::orientable(bd_genus)
                                               : SurfaceModel::nonorientable(bd_genus);
      std::printf("%s\n", s.basis().format(s.boundary()).c_str());
      return 0;
    }
    if (*vf) return run_verify(v_case, v_variant, v_rank, v_json);
    if (*va) return run_verify_all(va_json);
    if (*oc) return run_oracle(o_max_len, o_samples);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
