#include "doctest.h"

#include <random>

#include "braidcat/functor.hpp"

using namespace braidcat;

namespace {

MovieStep birth(int pos, int gen, int sign) { return {StepKind::Birth, pos, gen, sign, false, -1}; }
MovieStep death(int pos, int sign) { return {StepKind::Death, pos, 0, sign, false, -1}; }
MovieStep r1_insert(int pos, int gen, int sign) { return {StepKind::R1, pos, gen, sign, true, -1}; }
MovieStep r3(int pos, int variant = -1) { return {StepKind::R3, pos, 0, 1, false, variant}; }

}  // namespace

TEST_CASE("R(w) is built from the left and matches the generators") {
  Functor F(2);
  const auto& cat = F.category();
  CHECK(*F.complex({3, {}}) == unit_complex(cat));
  CHECK(*F.complex({3, {1}}) == build_Ri(cat, 1));
  CHECK(*F.complex({3, {-2}}) == build_Ri_prime(cat, 2));
  auto c = F.complex({3, {1, 2, -1}});
  CHECK(*c == tensor(cat, build_Ri(cat, 1), tensor(cat, build_Ri(cat, 2), build_Ri_prime(cat, 1))));
  CHECK(c->check(cat));
  CHECK_THROWS(F.complex({4, {1}}));
  CHECK_THROWS(F.complex({3, {3}}));
  // simplify(R(s_i s_i^-1)) is A_n
  CHECK(term_table(*F.minimal({3, {1, -1}}).complex) == term_table(unit_complex(cat)));
}

TEST_CASE("type II generators") {
  for (int n = 1; n <= 4; ++n) {
    Functor F(n);
    const auto& cat = F.category();
    const auto& ring = cat.ring();
    for (int i = 1; i <= n; ++i) {
      auto w1 = F.type2_map(TypeTwo::W1, i);
      auto w2 = F.type2_map(TypeTwo::W2, i);
      auto w3 = F.type2_map(TypeTwo::W3, i);
      auto w4 = F.type2_map(TypeTwo::W4, i);
      for (const auto* w : {&w1, &w2, &w3, &w4}) CHECK(w->is_chain_map(cat));
      CHECK(w1.degree() == 0);
      CHECK(w2.degree() == 0);
      CHECK(w3.degree() == 2);
      CHECK(w4.degree() == 2);
      const auto delta = ring.x_element(i - 1) - ring.x_element(i + 1);
      auto unit = F.complex({n + 1, {}});
      if (delta.is_zero()) {
        CHECK(compose(cat, w3, w1).is_zero());
        CHECK(compose(cat, w2, w4).is_zero());
      } else {
        CHECK(compose(cat, w3, w1) == left_mult(cat, unit, delta));
        CHECK(compose(cat, w2, w4) == left_mult(cat, unit, delta));
      }
    }
    CHECK_THROWS(F.type2_map(TypeTwo::W1, n + 1));
  }
}

TEST_CASE("local equivalences are normalized and invertible up to homotopy") {
  Functor F(2);
  const auto& cat = F.category();
  const BraidWord e{3, {}};
  for (int s : {1, -1}) {
    const BraidWord pair{3, {s, -s}};
    auto in = F.local_equivalence(e, pair);
    auto out = F.local_equivalence(pair, e);
    CHECK(diagonal_coefficient(in) == 1);
    CHECK(diagonal_coefficient(out) == 1);
    auto round = compose(cat, out, in);
    CHECK(find_null_homotopy(cat, round - ChainMap::identity(cat, F.complex(e))).has_value());
  }
  const BraidWord a{3, {1, 2, 1}}, b{3, {2, 1, 2}};
  auto f = F.local_equivalence(a, b);
  auto g = F.local_equivalence(b, a);
  CHECK(f.is_chain_map(cat));
  CHECK(diagonal_coefficient(f) == 1);
  const Simplified& m = F.minimal(a);
  auto round = compose(cat, m.projection, compose(cat, compose(cat, g, f), m.inclusion));
  CHECK(find_null_homotopy(cat, round - ChainMap::identity(cat, m.complex)).has_value());
}

TEST_CASE("invariant is strictly functorial and has degree 2 p_-") {
  Functor F(2);
  const auto& cat = F.category();
  BraidMovie m1{{3, {1}}, {birth(1, 2, -1), r1_insert(0, 1, 1)}};
  BraidMovie m2{m1.end(), {death(2, 1), birth(0, 2, 1)}};
  auto i1 = F.invariant(m1);
  auto i2 = F.invariant(m2);
  auto i12 = F.invariant(compose_movies(m1, m2));
  CHECK(i12.map == compose(cat, i2.map, i1.map));
  CHECK(i12.map.is_chain_map(cat));
  CHECK(i12.map.degree() == 2 * i12.polarity.p_minus);
  CHECK(i12.polarity == Polarity{1, 2});
  auto id = F.invariant(identity_movie({3, {1, -2}}));
  CHECK(id.map == ChainMap::identity(cat, F.complex({3, {1, -2}})));

  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    auto m = random_movie(rng, 3, 2, 3, false);
    auto inv = F.invariant(m);
    CHECK(inv.map.degree() == 2 * inv.polarity.p_minus);
    CHECK(inv.map.shift() == 0);
    CHECK(inv.map.is_chain_map(cat));
  }
}

TEST_CASE("move 12, negative instance: equal on the nose") {
  for (int n = 1; n <= 3; ++n)
    for (int i = 1; i <= n; ++i) {
      Functor F(n);
      BraidMovie s1{{n + 1, {}}, {r1_insert(0, i, 1), death(0, 1)}};
      BraidMovie s2{{n + 1, {}}, {birth(0, i, -1)}};
      auto r = F.verify_move(s1, s2);
      CHECK(r.verdict == MoveVerdict::Plus);
      CHECK(r.exact);
      CHECK(F.invariant(s2).map == F.type2_map(TypeTwo::W4, i));
    }
}

TEST_CASE("move 13, negative instance: F(S1) + F(S2) = 0") {
  Functor F(2);
  BraidMovie s1{{3, {-1, -2}}, {birth(2, 1, -1), r3(0)}};
  BraidMovie s2{{3, {-1, -2}}, {birth(0, 2, -1)}};
  REQUIRE(s1.end() == s2.end());
  auto r = F.verify_move(s1, s2);
  CHECK(r.verdict == MoveVerdict::Minus);
  CHECK_FALSE(r.both_null);
  REQUIRE(r.witness);
}

TEST_CASE("move 13 constrained homotopy") {
  Functor F(3);
  auto c = move13_reader_check(F, 1);
  CHECK(c.target_map.is_chain_map(F.category()));
  CHECK(c.rho2.is_chain_map(F.category()));
  REQUIRE(c.unconstrained);
  REQUIRE(c.constrained);
  CHECK(c.constrained->boundary(F.category()) == c.target_map);
  for (const auto& [t, h] : c.constrained->comps) CHECK(compose(F.category(), c.rho2.component(t - 1), h).is_zero());
  // Before passing to the quotient the condition cannot be met.
  CHECK_FALSE(c.constrained_unreduced);
}

TEST_CASE("double negative birth is null-homotopic, positive movies are not") {
  for (int n = 1; n <= 3; ++n) {
    Functor F(n);
    const auto& cat = F.category();
    for (int i = 1; i <= n; ++i) {
      BraidMovie m{{n + 1, {}}, {birth(0, i, -1), birth(0, i, -1)}};
      auto inv = F.invariant(m);
      CHECK(inv.map.degree() == 4);
      CHECK(find_null_homotopy(cat, inv.map).has_value());
      BraidMovie p{{n + 1, {}}, {birth(0, i, 1)}};
      CHECK(F.nonvanishing(p).coefficient == 1);
      CHECK_FALSE(find_null_homotopy(cat, F.invariant(p).map).has_value());
      CHECK_THROWS(F.nonvanishing(m));
    }
    CHECK(F.nonvanishing(identity_movie({n + 1, {}})).coefficient == 1);
  }
  Functor F(2);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    auto m = random_movie(rng, 3, 2, 4, true);
    CHECK(F.nonvanishing(m).nonvanishing());
  }
}
