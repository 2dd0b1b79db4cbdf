#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fgv/abelian.hpp"
#include "fgv/word.hpp"

using namespace fgv;

TEST_CASE("free reduction on construction") {
  Basis b = Basis::plain(3);
  CHECK(b.parse("a1 a2 a2' a1'").empty());
  CHECK(b.parse("a1 a2 a2' a3") == b.parse("a1 a3"));
  CHECK(b.format(Word{}) == "1");
  CHECK(b.parse("1").empty());
}

TEST_CASE("inverse and concatenation") {
  Basis b = Basis::plain(3);
  Word w = b.parse("a1 a2' a3");
  CHECK(b.format(w.inverse()) == "a3' a2 a1'");
  CHECK((w * w.inverse()).empty());
  CHECK(b.format(b.parse("a1 a2") * b.parse("a2' a3")) == "a1 a3");
}

TEST_CASE("cyclic reduction") {
  Basis b = Basis::plain(3);
  Word w = b.parse("a1 a2 a3 a2' a1'");
  auto [core, conj] = w.cyclic_reduce();
  CHECK(b.format(core) == "a3");
  CHECK(b.format(conj) == "a1 a2");
  CHECK(core.is_cyclically_reduced());
  CHECK_FALSE(w.is_cyclically_reduced());
  CHECK(b.parse("a1 a2 a1'").is_cyclically_reduced() == false);
  CHECK(b.parse("a1 a2 a1").is_cyclically_reduced());
}

TEST_CASE("parse errors carry positions") {
  Basis b = Basis::plain(2);
  CHECK_THROWS_WITH(b.parse("a1 bogus a2"),
                    Catch::Matchers::ContainsSubstring("position 3"));
  CHECK_THROWS_AS(b.parse("a9"), std::invalid_argument);
  CHECK_THROWS_AS(b.parse("1 a1"), std::invalid_argument);
}

TEST_CASE("named bases") {
  Basis o = Basis::orientable(2);
  CHECK(o.rank() == 4);
  CHECK(o.name(0) == "ha1");
  CHECK(o.name(3) == "a2");
  Basis n = Basis::nonorientable(2);
  CHECK(n.rank() == 5);
  CHECK(n.name(0) == "n");
  CHECK(n.name(4) == "a2");
  CHECK(n.index("ha2") == 3);
  CHECK(n.has("n"));
  CHECK_FALSE(n.has("ha3"));
}

TEST_CASE("format/parse round-trip") {
  Basis b = Basis::nonorientable(3);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> gen(0, b.rank() - 1), sgn(0, 1), len(1, 12);
  for (int t = 0; t < 50; ++t) {
    std::vector<Letter> raw;
    int l = len(rng);
    for (int i = 0; i < l; ++i) raw.push_back({gen(rng), sgn(rng) ? 1 : -1});
    Word w(raw);
    CHECK(b.parse(b.format(w)) == w);
  }
}

TEST_CASE("abelianization") {
  Basis b = Basis::plain(3);
  CHECK(abelianize(b.parse("a1 a2 a1 a3' a2'"), 3) == AbelianVector{2, 0, -1});
  CHECK(abelianize(Word{}, 3) == AbelianVector{0, 0, 0});
}

TEST_CASE("lattice membership basics") {
  IntegerLattice l({{2, 0}, {0, 3}}, 2);
  CHECK(l.rank() == 2);
  CHECK(l.contains({4, -3}));
  CHECK_FALSE(l.contains({1, 0}));
  CHECK_FALSE(l.contains({0, 1}));
  IntegerLattice full({{1, 1}, {0, 1}}, 2);
  CHECK(full.contains({5, -7}));
  IntegerLattice empty({}, 2);
  CHECK(empty.contains({0, 0}));
  CHECK_FALSE(empty.contains({1, 0}));
}

TEST_CASE("lattice intersection vs brute force") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int t = 0; t < 40; ++t) {
    int dim = 2 + t % 3;
    auto rv = [&]() {
      AbelianVector v(static_cast<std::size_t>(dim));
      for (auto& x : v) x = entry(rng);
      return v;
    };
    IntegerLattice a({rv(), rv()}, dim), b({rv(), rv()}, dim);
    IntegerLattice i = IntegerLattice::intersection(a, b);
    // every small vector in both lattices is in the intersection, and
    // everything in the intersection is in both
    for (const auto& c : i.normal_form()) {
      CHECK(a.contains(c));
      CHECK(b.contains(c));
    }
    std::vector<long long> probe(static_cast<std::size_t>(dim), -3);
    while (true) {
      AbelianVector v(probe.begin(), probe.end());
      if (a.contains(v) && b.contains(v)) CHECK(i.contains(v));
      int k = 0;
      while (k < dim && probe[static_cast<std::size_t>(k)] == 3) probe[static_cast<std::size_t>(k++)] = -3;
      if (k == dim) break;
      ++probe[static_cast<std::size_t>(k)];
    }
  }
}

TEST_CASE("rank-3 span pair meets in a rank-1 lattice") {
  // These two planes of Z^3 share the line through (1,2,1):
  // (1,1,0) - (0,-1,-1) = -(-1,1,-1) + 3*(0,1,0) = (1,2,1).
  IntegerLattice a({{1, 1, 0}, {0, -1, -1}}, 3);
  IntegerLattice b({{-1, 1, -1}, {0, 1, 0}}, 3);
  IntegerLattice i = IntegerLattice::intersection(a, b);
  CHECK(i.rank() == 1);
  CHECK(i.contains({1, 2, 1}));
  CHECK_FALSE(i.contains({1, 1, 1}));
  AbelianVector g = i.normal_form().front();
  bool plus = g == AbelianVector{1, 2, 1};
  bool minus = g == AbelianVector{-1, -2, -1};
  CHECK((plus || minus));
}
