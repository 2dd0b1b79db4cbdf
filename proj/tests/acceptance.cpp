// Acceptance harness: one pass/fail line per criterion, exit code = number of
// failed criteria.
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fgv/relations.hpp"

using namespace fgv;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Word random_word(std::mt19937& rng, int rank, int maxlen) {
  std::uniform_int_distribution<int> gen(0, rank - 1), sgn(0, 1), len(1, maxlen);
  while (true) {
    std::vector<Letter> raw;
    int l = len(rng);
    for (int i = 0; i < l; ++i) raw.push_back({gen(rng), sgn(rng) ? 1 : -1});
    Word w(raw);
    if (!w.empty()) return w;
  }
}

std::vector<Word> random_gens(std::mt19937& rng, int rank, int count, int maxlen) {
  std::vector<Word> out;
  for (int i = 0; i < count; ++i) out.push_back(random_word(rng, rank, maxlen));
  return out;
}

// all cyclically reduced loop words of length 1..maxlen traced by the graph
// (as linear letter-code sequences; every rotation appears, so set equality
// of two graphs' loop sets is rotation-insensitive)
std::set<std::vector<int>> loop_words(const SubgroupGraph& g, int maxlen) {
  std::set<std::vector<int>> out;
  std::vector<int> codes;
  for (int start = 0; start < g.num_vertices(); ++start) {
    // iterative DFS over reduced paths from `start`
    struct Frame {
      int v;
      int code;  // next code to try
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
      // no immediate backtracking: the path must spell a reduced word
      if (!codes.empty() && (codes.back() ^ 1) == c) continue;
      int t = g.next[static_cast<std::size_t>(f.v)][static_cast<std::size_t>(c)];
      if (t < 0) continue;
      codes.push_back(c);
      if (t == start && (codes.front() ^ 1) != codes.back())
        out.insert(codes);
      if (static_cast<int>(codes.size()) < maxlen) {
        st.push_back({t, 0});
      } else {
        codes.pop_back();
      }
    }
  }
  return out;
}

bool criterion_1() {
  auto t0 = Clock::now();
  SurfaceModel S = SurfaceModel::orientable(7);
  RelationTemplate t = case_template("1", S);
  if (!verify_composition(t)) return false;
  CaseReport r = verify_case(t);
  if (!r.passed() || r.steps.size() != 6) return false;
  int n = S.rank();
  for (int i : {0, 1, 3, 4})
    if (r.steps[static_cast<std::size_t>(i)].verdict != Verdict::Match) return false;
  // the two recorded-discrepancy steps: non-fatal mismatch whose stated
  // cyclic subgroup occurs inside the computed class
  for (int i : {2, 5}) {
    const StepReport& s = r.steps[static_cast<std::size_t>(i)];
    if (s.verdict != Verdict::Mismatch || s.fatal) return false;
    if (s.claim.known_discrepancy.empty() || !s.claim_lower_bound) return false;
  }
  if (!r.steps[1].computed.trivial() || !r.steps[4].computed.trivial()) return false;
  SubgroupGraph xh = from_generators({Word::letter(S.pair_letter(1, true))}, n).cyclic_core();
  SubgroupGraph y = from_generators({Word::letter(S.pair_letter(2, false))}, n).cyclic_core();
  if (r.steps[3].computed.components.size() != 1 ||
      !cores_isomorphic(r.steps[3].computed.components.front(), xh))
    return false;
  if (r.steps[0].computed.components.size() != 1 ||
      r.steps[0].computed.components.front().rank() != 2)
    return false;
  if (!detail::class_present(Word::letter(S.pair_letter(1, true)),
                             r.steps[2].computed.components, n))
    return false;
  if (!detail::class_present(Word::letter(S.pair_letter(2, false)),
                             r.steps[5].computed.components, n))
    return false;
  (void)y;
  for (const StepReport& s : r.steps)
    if (!s.reduction_consistent) return false;
  return seconds_since(t0) < 10.0;
}

bool criterion_2(std::vector<CaseReport>& reports) {
  auto t0 = Clock::now();
  for (const std::string& id : all_case_ids()) {
    if (id == "1") continue;
    SurfaceModel S = default_surface(id);
    for (const RelationTemplate& t : case_templates(id, S)) {
      CaseReport r = verify_case(t);
      // fail only on composition failure or a fatal mismatch (an exact stated
      // equality without a recorded note); passed() encodes exactly that
      if (!r.passed()) {
        std::printf("  case %s/%s failed\n", r.case_id.c_str(), r.variant.c_str());
        return false;
      }
      reports.push_back(std::move(r));
    }
  }
  return seconds_since(t0) < 120.0;
}

bool criterion_3() {
  auto t0 = Clock::now();
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> rk(2, 4), cnt(1, 3);
  for (int s = 0; s < 200; ++s) {
    int rank = rk(rng);
    std::vector<Word> a = random_gens(rng, rank, cnt(rng), 5);
    std::vector<Word> b = random_gens(rng, rank, cnt(rng), 5);
    SubgroupGraph ga = from_generators(a, rank);
    SubgroupGraph gb = from_generators(b, rank);
    IntersectionResult r = conjugacy_intersection(ga, gb);
    std::set<std::vector<int>> la = loop_words(ga.cyclic_core(), 8);
    std::set<std::vector<int>> lb = loop_words(gb.cyclic_core(), 8);
    std::set<std::vector<int>> expect;
    for (const auto& w : la)
      if (lb.count(w)) expect.insert(w);
    std::set<std::vector<int>> got;
    for (const SubgroupGraph& c : r.components)
      for (const auto& w : loop_words(c, 8)) got.insert(w);
    if (got != expect) {
      std::printf("  oracle disagreement at sample %d\n", s);
      return false;
    }
  }
  return seconds_since(t0) < 60.0;
}

bool criterion_4(const std::vector<CaseReport>& reports) {
  // every drop applied while replaying a case step agreed with the direct
  // fiber product (recorded per step while computing criteria 1 and 2)
  SurfaceModel S1 = SurfaceModel::orientable(7);
  CaseReport c1 = verify_case(case_template("1", S1));
  for (const StepReport& s : c1.steps)
    if (!s.reduction_consistent) return false;
  for (const CaseReport& r : reports)
    for (const StepReport& s : r.steps)
      if (!s.reduction_consistent) {
        std::printf("  case %s/%s step %d: reduction inconsistent\n", r.case_id.c_str(),
                    r.variant.c_str(), s.index);
        return false;
      }
  // randomized single-drop soundness
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> rk(2, 4), cnt(2, 3);
  int applied = 0;
  for (int t = 0; t < 2000 && applied < 100; ++t) {
    int rank = rk(rng);
    std::vector<Word> a = random_gens(rng, rank, cnt(rng), 5);
    std::vector<Word> b = random_gens(rng, rank, cnt(rng), 5);
    SubgroupGraph gb = from_generators(b, rank);
    SubgroupGraph bcore = gb.cyclic_core();
    for (std::size_t i = 0; i < a.size(); ++i) {
      DropOutcome o = drop_easy(a, static_cast<int>(i), bcore, rank);
      if (!o.applied) continue;
      ++applied;
      IntersectionResult direct = conjugacy_intersection(from_generators(a, rank), gb);
      IntersectionResult after =
          conjugacy_intersection(from_generators(o.reduced, rank), gb);
      if (!detail::same_components(direct, after)) {
        std::printf("  drop_easy changed the intersection (trial %d)\n", t);
        return false;
      }
    }
  }
  return applied >= 100;
}

bool criterion_5() {
  for (int g = 1; g <= 8; ++g) {
    SurfaceModel s = SurfaceModel::orientable(g);
    WhiteheadGraph wg = whitehead_graph(s.boundary(), s.rank());
    for (int v = 0; v < 2 * s.rank(); ++v)
      if (wg.degree[static_cast<std::size_t>(v)] != 2) return false;
    if (!whitehead_no_cut_vertex(s.boundary(), s.rank())) return false;
  }
  for (int g = 2; g <= 8; ++g) {
    SurfaceModel s = SurfaceModel::nonorientable(g);
    WhiteheadGraph wg = whitehead_graph(s.boundary(), s.rank());
    for (int v = 0; v < 2 * s.rank(); ++v)
      if (wg.degree[static_cast<std::size_t>(v)] != 2) return false;
    if (!whitehead_no_cut_vertex(s.boundary(), s.rank())) return false;
  }
  SurfaceModel s = SurfaceModel::orientable(2);
  for (int i = 0; i < s.rank(); ++i)
    if (whitehead_no_cut_vertex(Word::letter(i), s.rank())) return false;
  return true;
}

bool criterion_6() {
  int n = 6;
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> nm(1, 12), kind(0, 2), gen(0, n - 1), sgn(0, 1);
  auto random_move = [&]() {
    MoveDescriptor d;
    int k = kind(rng);
    d.kind = k == 0   ? MoveDescriptor::Kind::RightMult
             : k == 1 ? MoveDescriptor::Kind::LeftMult
                      : MoveDescriptor::Kind::Invert;
    d.x = gen(rng);
    if (d.kind != MoveDescriptor::Kind::Invert) {
      do { d.y = gen(rng); } while (d.y == d.x);
      d.exponent = sgn(rng) ? 1 : -1;
    }
    return d;
  };
  for (int t = 0; t < 1000; ++t) {
    int k = nm(rng);
    std::vector<Automorphism> autos;
    for (int i = 0; i < k; ++i) autos.push_back(Automorphism::basic(random_move(), n));
    Automorphism f = compose_all(autos, n);
    Automorphism finv = f.inverse();
    if (!compose(f, finv).is_identity() || !compose(finv, f).is_identity()) return false;
    for (int w = 0; w < 100; ++w) {
      Word x = random_word(rng, n, 6);
      Word seq = x;
      for (auto it = autos.rbegin(); it != autos.rend(); ++it) seq = it->apply(seq);
      if (f.apply(x) != seq) return false;
      if (finv.apply(f.apply(x)) != x) return false;
    }
  }
  // r(a,b) = r(z,b)^-1 r(a,z)^-1 r(z,b) r(a,z), all distinct triples
  using K = MoveDescriptor::Kind;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int z = 0; z < n; ++z) {
        if (a == b || a == z || b == z) continue;
        Automorphism lhs = Automorphism::basic({K::RightMult, a, b, 1}, n);
        Automorphism rhs =
            compose_all({Automorphism::basic({K::RightMult, z, b, -1}, n),
                         Automorphism::basic({K::RightMult, a, z, -1}, n),
                         Automorphism::basic({K::RightMult, z, b, 1}, n),
                         Automorphism::basic({K::RightMult, a, z, 1}, n)},
                        n);
        if (lhs != rhs) return false;
      }
  return true;
}

bool criterion_7() {
  std::mt19937 rng(55);
  auto same_subgroup = [](const SubgroupGraph& g1, const std::vector<Word>& gens1,
                          const SubgroupGraph& g2, const std::vector<Word>& gens2) {
    for (const Word& w : gens1)
      if (!g2.accepts(w)) return false;
    for (const Word& w : gens2)
      if (!g1.accepts(w)) return false;
    return true;
  };
  std::uniform_int_distribution<int> cnt(1, 3), rk(2, 4);
  for (int t = 0; t < 200; ++t) {
    int rank = rk(rng);
    std::vector<Word> gens = random_gens(rng, rank, cnt(rng), 5);
    SubgroupGraph g = from_generators(gens, rank);
    for (const Word& w : gens)
      if (!g.accepts(w)) return false;
    std::vector<Word> back = graph_generators(g);
    if (!back.empty()) {
      SubgroupGraph g2 = from_generators(back, rank);
      if (g.num_vertices() != g2.num_vertices() || g.num_edges() != g2.num_edges())
        return false;
      if (!same_subgroup(g, gens, g2, back)) return false;
    }
    SubgroupGraph gr = from_generators(gens, rank, /*reverse_worklist=*/true);
    if (g.num_vertices() != gr.num_vertices() || g.num_edges() != gr.num_edges())
      return false;
    if (!same_subgroup(g, gens, gr, gens)) return false;
    if (gens.size() >= 2) {
      std::vector<Word> nielsen = gens;
      nielsen[0] = gens[0] * gens[1];
      if (!nielsen[0].empty()) {
        SubgroupGraph gn = from_generators(nielsen, rank);
        if (!same_subgroup(g, gens, gn, nielsen)) return false;
        if (g.rank() != gn.rank()) return false;
      }
    }
  }
  return true;
}

bool criterion_8() {
  std::mt19937 rng(808);
  std::uniform_int_distribution<int> dm(2, 19), kv(1, 4), entry(-3, 3), coeff(-2, 2);
  for (int t = 0; t < 200; ++t) {
    int dim = dm(rng);
    int k = kv(rng);
    std::vector<AbelianVector> vecs;
    for (int i = 0; i < k; ++i) {
      AbelianVector v(static_cast<std::size_t>(dim));
      for (auto& x : v) x = entry(rng);
      vecs.push_back(std::move(v));
    }
    IntegerLattice lat(vecs, dim);
    // brute-force membership: coefficient search over the generating vectors
    auto brute = [&](const AbelianVector& target) {
      std::vector<int> c(static_cast<std::size_t>(k), -6);
      while (true) {
        AbelianVector acc(static_cast<std::size_t>(dim), 0);
        for (int i = 0; i < k; ++i)
          for (int r = 0; r < dim; ++r)
            acc[static_cast<std::size_t>(r)] +=
                c[static_cast<std::size_t>(i)] * vecs[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        if (acc == target) return true;
        int i = 0;
        while (i < k && c[static_cast<std::size_t>(i)] == 6) c[static_cast<std::size_t>(i++)] = -6;
        if (i == k) return false;
        ++c[static_cast<std::size_t>(i)];
      }
    };
    // an in-lattice target with small coefficients: both must say yes
    AbelianVector inside(static_cast<std::size_t>(dim), 0);
    for (int i = 0; i < k; ++i) {
      int c = coeff(rng);
      for (int r = 0; r < dim; ++r)
        inside[static_cast<std::size_t>(r)] +=
            c * vecs[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
    }
    if (!lattice_contains(lat, inside) || !brute(inside)) return false;
    // a perturbed target: whenever the bounded search certifies membership,
    // lattice_contains must agree (and a negative answer forbids any combo)
    AbelianVector probe = inside;
    probe[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, dim - 1)(rng))] +=
        std::uniform_int_distribution<int>(1, 3)(rng);
    // (hn && !bf can legitimately happen: the witness coefficients may lie
    // outside the search bound)
    if (brute(probe) && !lattice_contains(lat, probe)) return false;
  }
  // the recorded span-pair computation: rank-1 intersection generated by (1,2,1)
  IntegerLattice a({{1, 1, 0}, {0, -1, -1}}, 3);
  IntegerLattice b({{-1, 1, -1}, {0, 1, 0}}, 3);
  IntegerLattice inter = IntegerLattice::intersection(a, b);
  if (inter.rank() != 1) return false;
  if (!inter.contains({1, 2, 1})) return false;
  const AbelianVector& g = inter.normal_form().front();
  if (!(g == AbelianVector{1, 2, 1} || g == AbelianVector{-1, -2, -1})) return false;
  return true;
}

}  // namespace

int main() {
  int failed = 0;
  auto run = [&](int idx, const char* what, bool ok) {
    std::printf("criterion %d: %s — %s\n", idx, ok ? "PASS" : "FAIL", what);
    if (!ok) ++failed;
  };
  std::vector<CaseReport> appendix_reports;
  run(1, "orientable case replay at genus 7 (composition + six step intersections)",
      criterion_1());
  run(2, "all nonorientable case replays pass (fatal mismatches and composition only)",
      criterion_2(appendix_reports));
  run(3, "conjugacy intersection agrees with loop enumeration, 200 random pairs",
      criterion_3());
  run(4, "generator-drop shortcuts match direct fiber products (cases + 100 random)",
      criterion_4(appendix_reports));
  run(5, "boundary words pass the Whitehead no-cut-vertex test; single letters fail",
      criterion_5());
  run(6, "automorphism algebra: 1000 random products, inverses, generation identity",
      criterion_6());
  run(7, "folding: membership, idempotence, order independence, Nielsen invariance",
      criterion_7());
  run(8, "homology lattice membership agrees with bounded coefficient search",
      criterion_8());
  return failed;
}
