#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fgv/automorphism.hpp"

using namespace fgv;

namespace {

MoveDescriptor random_move(std::mt19937& rng, int rank) {
  std::uniform_int_distribution<int> kind(0, 2), gen(0, rank - 1), sgn(0, 1);
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
}

Word random_word(std::mt19937& rng, int rank, int maxlen) {
  std::uniform_int_distribution<int> gen(0, rank - 1), sgn(0, 1), len(1, maxlen);
  std::vector<Letter> raw;
  int l = len(rng);
  for (int i = 0; i < l; ++i) raw.push_back({gen(rng), sgn(rng) ? 1 : -1});
  return Word(raw);
}

}  // namespace

TEST_CASE("move descriptor parse/format round-trip") {
  Basis b = Basis::plain(4);
  for (const char* s : {"r(a1,a2)", "l(a3,a1)^-1", "i(a4)", "r(a2,a4)^-1"}) {
    MoveDescriptor d = MoveDescriptor::parse(s, b);
    CHECK(d.format(b) == s);
  }
  CHECK_THROWS_AS(MoveDescriptor::parse("r(a1,a1)", b), std::invalid_argument);
  CHECK_THROWS_AS(MoveDescriptor::parse("q(a1,a2)", b), std::invalid_argument);
  CHECK_THROWS_AS(MoveDescriptor::parse("i(a1,a2)", b), std::invalid_argument);
  MoveDescriptor d = MoveDescriptor::parse("r(a1,a2)", b);
  CHECK(d.inverse().format(b) == "r(a1,a2)^-1");
  CHECK(MoveDescriptor::parse("i(a2)", b).inverse() == MoveDescriptor::parse("i(a2)", b));
}

TEST_CASE("basic moves act as expected") {
  Basis b = Basis::plain(3);
  int n = 3;
  Automorphism r = Automorphism::basic(MoveDescriptor::parse("r(a1,a2)", b), n);
  CHECK(b.format(r.apply(b.parse("a1"))) == "a1 a2");
  CHECK(b.format(r.apply(b.parse("a1'"))) == "a2' a1'");
  CHECK(b.format(r.apply(b.parse("a3"))) == "a3");
  Automorphism l = Automorphism::basic(MoveDescriptor::parse("l(a1,a2)^-1", b), n);
  CHECK(b.format(l.apply(b.parse("a1"))) == "a2' a1");
  Automorphism i = Automorphism::basic(MoveDescriptor::parse("i(a2)", b), n);
  CHECK(b.format(i.apply(b.parse("a1 a2"))) == "a1 a2'");
  CHECK(compose(i, i).is_identity());
}

TEST_CASE("composition is rightmost-first") {
  Basis b = Basis::plain(3);
  int n = 3;
  Automorphism f = Automorphism::basic(MoveDescriptor::parse("r(a1,a2)", b), n);
  Automorphism g = Automorphism::basic(MoveDescriptor::parse("r(a2,a3)", b), n);
  Word w = b.parse("a1");
  // (f*g)(a1) = f(g(a1)) = f(a1) = a1 a2 ; leftmost-first would give a1 a2 a3
  CHECK(compose(f, g).apply(w) == f.apply(g.apply(w)));
  CHECK(b.format(compose(f, g).apply(w)) == "a1 a2");
  CHECK(b.format(compose(g, f).apply(w)) == "a1 a2 a3");
}

TEST_CASE("apply/compose compatibility and inverse round-trip, randomized") {
  int n = 4;
  std::mt19937 rng(23);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> nm(1, 8);
    std::vector<MoveDescriptor> moves;
    std::vector<Automorphism> autos;
    int k = nm(rng);
    for (int i = 0; i < k; ++i) {
      moves.push_back(random_move(rng, n));
      autos.push_back(Automorphism::basic(moves.back(), n));
    }
    Automorphism f = compose_all(autos, n);
    Automorphism finv = f.inverse();
    CHECK(compose(f, finv).is_identity());
    CHECK(compose(finv, f).is_identity());
    for (int w = 0; w < 10; ++w) {
      Word x = random_word(rng, n, 8);
      Word seq = x;
      for (auto it = autos.rbegin(); it != autos.rend(); ++it) seq = it->apply(seq);
      CHECK(f.apply(x) == seq);
      CHECK(finv.apply(f.apply(x)) == x);
    }
  }
}

TEST_CASE("invertibility detection") {
  int n = 2;
  CHECK(Automorphism::identity(n).is_invertible());
  // a1 -> a1 a2, a2 -> a2 is a basis; a1 -> a1 a2, a2 -> a1 a2 is not
  CHECK(Automorphism({Word::letter(0) * Word::letter(1), Word::letter(1)}, false)
            .is_invertible());
  CHECK_FALSE(Automorphism({Word::letter(0) * Word::letter(1),
                            Word::letter(0) * Word::letter(1)}, false)
                  .is_invertible());
  CHECK_THROWS_AS(Automorphism({Word::letter(0), Word::letter(0)}), std::invalid_argument);
}

TEST_CASE("generation identity for right moves in rank 6") {
  // r(a,b) = r(z,b)^-1 r(a,z)^-1 r(z,b) r(a,z) for all distinct letter triples
  int n = 6;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int z = 0; z < n; ++z) {
        if (a == bb || a == z || bb == z) continue;
        using K = MoveDescriptor::Kind;
        Automorphism lhs = Automorphism::basic({K::RightMult, a, bb, 1}, n);
        Automorphism rhs = compose_all(
            {Automorphism::basic({K::RightMult, z, bb, -1}, n),
             Automorphism::basic({K::RightMult, a, z, -1}, n),
             Automorphism::basic({K::RightMult, z, bb, 1}, n),
             Automorphism::basic({K::RightMult, a, z, 1}, n)},
            n);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("fixed letters and letters used") {
  Basis b = Basis::plain(3);
  Automorphism r = Automorphism::basic(MoveDescriptor::parse("r(a1,a2)", b), 3);
  CHECK(r.fixed_letters() == std::set<int>{1, 2});
  CHECK(r.letters_used(0) == std::set<int>{0, 1});
  CHECK(r.letters_used(2) == std::set<int>{2});
}
