// "Dropping generators" machinery: certificates in petals of the folded
// rose, the impossible-certificate lemma (easy) and the impossible-unique-
// followup lemma (hard), plus an iterated reduction pipeline.
#ifndef FGV_CERTIFICATES_HPP
#define FGV_CERTIFICATES_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stallings.hpp"
#include "word.hpp"

namespace fgv {

struct Certificate {
  int petal = -1;
  Word subword;
  std::vector<PathStep> path;
  bool uncancellable = true;
  std::size_t start_pos = 0;  // offset into the petal word
  int start_vertex = -1;      // in the folded graph
  int end_vertex = -1;
};

// vertex sequence v_0..v_L of petal i's image path (v_0 = base)
inline std::vector<int> petal_vertices(const FoldResult& fr, const std::vector<Word>& gens,
                                       int i) {
  std::vector<int> vs{fr.graph.base};
  int v = fr.graph.base;
  for (const Letter& l : gens[static_cast<std::size_t>(i)]) {
    v = fr.graph.step(v, l);
    vs.push_back(v);
  }
  return vs;
}

// Maximal uncancellable certificates of petal i: maximal embedded subpaths of
// the petal's image whose edges are used by no other petal.
inline std::vector<Certificate> find_certificates(const FoldResult& fr,
                                                  const std::vector<Word>& gens, int i) {
  std::vector<Certificate> out;
  const Word& w = gens[static_cast<std::size_t>(i)];
  const auto& path = fr.petals[static_cast<std::size_t>(i)];
  std::size_t len = path.size();
  if (len == 0) return out;
  std::vector<int> vs = petal_vertices(fr, gens, i);

  // a certificate edge must be used by no other petal and traversed exactly
  // once by its own petal: an edge its petal crosses twice (e.g. inside a
  // conjugating tail w ... w^-1) can self-cancel in the cyclic geodesic, so a
  // conjugacy class may avoid it even though every based loop through the
  // petal reads it
  auto exclusive = [&](std::size_t j) {
    int e = path[j].edge;
    const auto& ep = fr.edge_petals[static_cast<std::size_t>(e)];
    return ep.size() == 1 && ep[0] == i && fr.edge_uses[static_cast<std::size_t>(e)] == 1;
  };

  std::size_t run_start = 0;
  while (run_start < len) {
    if (!exclusive(run_start)) {
      ++run_start;
      continue;
    }
    std::size_t run_end = run_start;
    while (run_end < len && exclusive(run_end)) ++run_end;

    // maximal embedded windows within [run_start, run_end); vertices must be
    // distinct except that the window may close up into an embedded loop
    std::size_t max_end = run_start;
    for (std::size_t s = run_start; s < run_end; ++s) {
      std::set<int> verts{vs[s]};
      std::size_t e = s;
      while (e < run_end) {
        int nxt = vs[e + 1];
        if (!verts.count(nxt)) {
          verts.insert(nxt);
          ++e;
          continue;
        }
        if (nxt == vs[s]) ++e;  // closes an embedded loop; cannot grow further
        break;
      }
      if (e > s && e > max_end) {
        Certificate c;
        c.petal = i;
        c.start_pos = s;
        c.start_vertex = vs[s];
        c.end_vertex = vs[e];
        std::vector<Letter> letters(w.begin() + static_cast<long>(s),
                                    w.begin() + static_cast<long>(e));
        c.subword = Word(std::move(letters));
        c.path.assign(path.begin() + static_cast<long>(s), path.begin() + static_cast<long>(e));
        out.push_back(std::move(c));
        max_end = e;
      }
    }
    run_start = run_end;
  }
  return out;
}

struct DropOutcome {
  bool applied = false;
  std::vector<Word> reduced;  // valid iff applied
  std::optional<Certificate> certificate;
  Word followup;              // drop_hard only
  int failed_condition = 0;   // drop_hard: first failing condition 1..4
  std::string note;
};

// Lemma "impossible certificates": if some uncancellable certificate of the
// petal is impossible in the other graph, the generator may be dropped
// without losing common conjugacy classes.
inline DropOutcome drop_easy(const std::vector<Word>& a_gens, int drop,
                             const SubgroupGraph& b, int alphabet) {
  DropOutcome out;
  FoldResult fr = fold_generators(a_gens, alphabet);
  for (const Certificate& c : find_certificates(fr, a_gens, drop)) {
    if (!b.lifts(c.subword)) {
      out.applied = true;
      out.certificate = c;
      for (std::size_t i = 0; i < a_gens.size(); ++i)
        if (static_cast<int>(i) != drop) out.reduced.push_back(a_gens[i]);
      out.note = "drop_easy: certificate impossible in the other subgroup";
      return out;
    }
  }
  out.note = "drop_easy: no impossible certificate";
  return out;
}

// Lemma "impossible unique followup": drops generator `drop` of B. Conditions:
// (1) the dropped generator has an uncancellable certificate tau in Gamma_B;
// (2) tau lifts to a unique path of Gamma_A, contained in a single petal's
//     image (the designated generator delta_A);
// (3) an uncancellable certificate tau' of delta_A starts immediately after
//     that occurrence;
// (4) tau' cannot be read in Gamma_B from the endpoint of tau's certificate
//     path.
inline DropOutcome drop_hard(const std::vector<Word>& a_gens, const std::vector<Word>& b_gens,
                             int drop, int alphabet) {
  DropOutcome out;
  FoldResult fa = fold_generators(a_gens, alphabet);
  FoldResult fb = fold_generators(b_gens, alphabet);

  std::vector<Certificate> certs = find_certificates(fb, b_gens, drop);
  if (certs.empty()) {
    out.failed_condition = 1;
    out.note = "no uncancellable certificate in the dropped generator";
    return out;
  }

  for (const Certificate& tau : certs) {
    // (2): unique lift locus in Gamma_A
    std::vector<std::pair<int, std::vector<PathStep>>> loci;
    for (int v = 0; v < fa.graph.num_vertices(); ++v) {
      int cur = v;
      std::vector<PathStep> steps;
      bool ok = true;
      for (const Letter& l : tau.subword) {
        int t = fa.graph.step(cur, l);
        if (t < 0) {
          ok = false;
          break;
        }
        int e = fa.graph.eid[static_cast<std::size_t>(cur)][static_cast<std::size_t>(l.code())];
        steps.push_back({e, l.sign > 0});
        cur = t;
      }
      if (ok) loci.emplace_back(v, std::move(steps));
    }
    if (loci.size() != 1) continue;  // condition (2) fails for this tau
    const auto& locus = loci.front().second;

    // locate the locus inside exactly one petal's image path
    int host_petal = -1;
    std::vector<std::size_t> offsets;
    for (std::size_t p = 0; p < a_gens.size(); ++p) {
      const auto& pp = fa.petals[p];
      for (std::size_t o = 0; o + locus.size() <= pp.size(); ++o) {
        bool eq = true;
        for (std::size_t j = 0; j < locus.size(); ++j)
          if (!(pp[o + j] == locus[j])) {
            eq = false;
            break;
          }
        if (eq) {
          if (host_petal != -1 && host_petal != static_cast<int>(p)) {
            host_petal = -2;  // spread over several petals
            break;
          }
          host_petal = static_cast<int>(p);
          offsets.push_back(o);
        }
      }
      if (host_petal == -2) break;
    }
    if (host_petal < 0) continue;

    // (3): followup certificate immediately after some occurrence
    std::vector<Certificate> a_certs = find_certificates(fa, a_gens, host_petal);
    const Certificate* taup = nullptr;
    for (std::size_t o : offsets) {
      for (const Certificate& c : a_certs)
        if (c.start_pos == o + locus.size() && !c.subword.empty()) {
          taup = &c;
          break;
        }
      if (taup) break;
    }
    if (!taup) {
      out.failed_condition = 3;
      out.note = "no followup certificate after the lift locus";
      continue;
    }

    // (4): tau' unreadable in Gamma_B after tau's certificate path
    if (fb.graph.walk(tau.end_vertex, taup->subword) >= 0) {
      out.failed_condition = 4;
      out.note = "tau tau' continues to a path in the other graph";
      continue;
    }

    out.applied = true;
    out.certificate = tau;
    out.followup = taup->subword;
    out.failed_condition = 0;
    for (std::size_t i = 0; i < b_gens.size(); ++i)
      if (static_cast<int>(i) != drop) out.reduced.push_back(b_gens[i]);
    out.note = "drop_hard: conditions (1)-(4) verified";
    return out;
  }
  if (out.failed_condition == 0) {
    out.failed_condition = 2;
    out.note = "no certificate with a unique single-petal lift locus";
  }
  return out;
}

struct ReductionTrace {
  std::vector<Word> a, b;            // reduced generator lists
  std::vector<std::string> steps;    // human-readable provenance
};

// Iterated generator dropping on both sides; every individual drop is backed
// by one of the two lemmas, so common conjugacy classes are preserved.
inline ReductionTrace reduce_pair(std::vector<Word> a, std::vector<Word> b, int alphabet,
                                  const Basis& basis) {
  ReductionTrace tr;
  bool progress = true;
  auto nonempty = [](const std::vector<Word>& g) {
    for (const Word& w : g)
      if (!w.empty()) return true;
    return false;
  };
  while (progress) {
    progress = false;
    for (int side = 0; side < 2 && !progress; ++side) {
      std::vector<Word>& mine = side == 0 ? a : b;
      std::vector<Word>& other = side == 0 ? b : a;
      if (!nonempty(mine) || mine.size() <= 1 || !nonempty(other)) continue;
      SubgroupGraph other_core = from_generators(other, alphabet).cyclic_core();
      for (std::size_t i = 0; i < mine.size() && !progress; ++i) {
        if (mine[i].empty()) continue;
        DropOutcome d = drop_easy(mine, static_cast<int>(i), other_core, alphabet);
        if (d.applied) {
          tr.steps.push_back(std::string("drop_easy ") + (side == 0 ? "A" : "B") +
                             ": dropped " + basis.format(mine[i]) + " via certificate " +
                             basis.format(d.certificate->subword));
          mine = d.reduced;
          progress = true;
        }
      }
    }
    for (int side = 0; side < 2 && !progress; ++side) {
      std::vector<Word>& mine = side == 0 ? a : b;
      std::vector<Word>& other = side == 0 ? b : a;
      if (!nonempty(mine) || mine.size() <= 1 || !nonempty(other)) continue;
      for (std::size_t i = 0; i < mine.size() && !progress; ++i) {
        if (mine[i].empty()) continue;
        DropOutcome d = drop_hard(other, mine, static_cast<int>(i), alphabet);
        if (d.applied) {
          tr.steps.push_back(std::string("drop_hard ") + (side == 0 ? "A" : "B") +
                             ": dropped " + basis.format(mine[i]) + " via certificate " +
                             basis.format(d.certificate->subword) + " with followup " +
                             basis.format(d.followup));
          mine = d.reduced;
          progress = true;
        }
      }
    }
  }
  tr.a = std::move(a);
  tr.b = std::move(b);
  return tr;
}

}  // namespace fgv

#endif
