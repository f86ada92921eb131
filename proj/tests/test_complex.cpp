#include "doctest.h"

#include <random>
#include <set>

#include "braidcat/complex.hpp"
#include "oracle.hpp"

using namespace braidcat;

namespace {

ComplexPtr ptr(ChainComplex c) { return std::make_shared<const ChainComplex>(std::move(c)); }

ChainComplex word(const BimoduleCategory& cat, const std::vector<int>& letters) {
  ChainComplex c = unit_complex(cat);
  for (int l : letters) c = tensor(cat, c, l > 0 ? build_Ri(cat, l) : build_Ri_prime(cat, -l));
  return c;
}

std::multiset<std::tuple<int, Shape, int>> terms_of(const ChainComplex& c) {
  std::multiset<std::tuple<int, Shape, int>> out;
  for (const auto& [t, o] : c.terms())
    for (const auto& s : o->summands) out.insert({t, s.shape, s.shift});
  return out;
}

void check_round_trip(const BimoduleCategory& cat, const Simplified& s) {
  CHECK(s.complex->check(cat));
  CHECK(s.inclusion.is_chain_map(cat));
  CHECK(s.projection.is_chain_map(cat));
  CHECK(compose(cat, s.projection, s.inclusion) == ChainMap::identity(cat, s.complex));
  REQUIRE(s.homotopy.has_value());
  const auto& orig = s.inclusion.target_ptr();
  auto lhs = compose(cat, s.inclusion, s.projection) - ChainMap::identity(cat, orig);
  CHECK(s.homotopy->boundary(cat) == lhs);
}

// Central element a = sum_j a_j X_j.
AlgebraElement central(const ZigzagRing& ring, const std::vector<Coeff>& a) {
  AlgebraElement e;
  for (int j = 1; j <= ring.n(); ++j) e += ring.x_element(j) * a[j - 1];
  return e;
}

}  // namespace

TEST_CASE("generator complexes") {
  for (int n = 1; n <= 4; ++n) {
    BimoduleCategory cat(n);
    for (int i = 1; i <= n; ++i) {
      CHECK(build_Ri(cat, i).check(cat));
      CHECK(build_Ri_prime(cat, i).check(cat));
      // gamma_i agrees up to sign with the unique Hom generator
      const auto& basis = cat.hom_basis(Shape::diagonal(), Shape::tensor(i, i), 2);
      REQUIRE(basis.size() == 1);
      Vec g = gamma_image(cat, i);
      CHECK((g == basis[0] || g == [&] { Vec m = basis[0]; for (auto& x : m) x = -x; return m; }()));
    }
    CHECK_THROWS(build_Ri(cat, n + 1));
    CHECK_THROWS(build_Ri_prime(cat, 0));
  }
}

TEST_CASE("gamma in the interior") {
  BimoduleCategory cat(3);
  const auto& ring = cat.ring();
  // (1|2)(x)(2|1) + (3|2)(x)(2|3) + (2)(x)X_2 + X_2(x)(2)
  const auto& lat = cat.lattice(Shape::tensor(2, 2));
  std::set<std::pair<int, int>> expected{{ring.arrow(1, 2), ring.arrow(2, 1)},
                                         {ring.arrow(3, 2), ring.arrow(2, 3)},
                                         {ring.idempotent(2), ring.x(2)},
                                         {ring.x(2), ring.idempotent(2)}};
  std::set<std::pair<int, int>> got;
  Vec g = gamma_image(cat, 2);
  for (int k = 0; k < lat.rank(); ++k)
    if (g[k] != 0) {
      CHECK(g[k] == 1);
      got.insert(lat.elements[k]);
    }
  CHECK(got == expected);
  // boundary: gamma_1 has three terms
  int count = 0;
  for (Coeff x : gamma_image(cat, 1)) count += x != 0;
  CHECK(count == 3);
}

TEST_CASE("tensor products") {
  BimoduleCategory cat(3);
  auto r1 = build_Ri(cat, 1);
  CHECK(tensor(cat, r1, unit_complex(cat)) == r1);
  CHECK(tensor(cat, unit_complex(cat), r1) == r1);

  auto rr = tensor(cat, build_Ri(cat, 2), build_Ri_prime(cat, 2));
  CHECK(rr.check(cat));
  std::multiset<std::tuple<int, Shape, int>> mid{
      {0, Shape::diagonal(), 0}, {0, Shape::tensor(2, 2), -2}, {0, Shape::tensor(2, 2), 0}};
  std::multiset<std::tuple<int, Shape, int>> got;
  for (const auto& s : rr.term(0).summands) got.insert({0, s.shape, s.shift});
  CHECK(got == mid);

  BimoduleCategory cat2(2);
  CHECK(word(cat2, {1, 2, 1}).check(cat2));

  // strict associativity
  auto a = build_Ri(cat, 1), b = build_Ri_prime(cat, 2), c = build_Ri(cat, 2);
  CHECK(tensor(cat, tensor(cat, a, b), c) == tensor(cat, a, tensor(cat, b, c)));
  auto d = build_Ri(cat, 1);
  CHECK(tensor(cat, tensor(cat, a, d), c) == tensor(cat, a, tensor(cat, d, c)));
}

TEST_CASE("d^2 = 0 on random words") {
  std::mt19937 rng(17);
  for (int n = 1; n <= 3; ++n) {
    BimoduleCategory cat(n);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<int> w;
      const int len = 1 + trial % 4;
      for (int k = 0; k < len; ++k) {
        int i = 1 + static_cast<int>(rng() % n);
        w.push_back(rng() % 2 ? i : -i);
      }
      auto c = word(cat, w);
      CHECK(c.check(cat));
    }
  }
}

TEST_CASE("shift and cone") {
  BimoduleCategory cat(2);
  auto r = build_Ri(cat, 1);
  CHECK(shift(shift(r, 1, 0), -1, 0) == r);
  CHECK(shift(r, 1, 3).check(cat));
  auto u = ptr(unit_complex(cat));
  auto c = ptr(cone(cat, ChainMap::identity(cat, u)));
  CHECK(c->check(cat));
  CHECK(simplify(cat, c).complex->is_zero());

  // cone of beta as a map of one-term complexes is R_1 moved one step left
  ChainComplex p;
  BimoduleObject po;
  po.summands.push_back({Shape::tensor(1, 1), 0, {}});
  p.set_term(0, std::make_shared<const BimoduleObject>(po));
  auto pp = ptr(p);
  ChainMap beta(pp, u, 0);
  BimoduleMorphism bm(pp->term_ptr(0), u->term_ptr(0), 0);
  bm.add(0, 0, beta_image(cat, 1));
  beta.set_component(0, bm);
  REQUIRE(beta.is_chain_map(cat));
  auto cb = cone(cat, beta);
  CHECK(terms_of(cb) == terms_of(build_Ri(cat, 1)));
}

TEST_CASE("simplify: inverse generators cancel") {
  for (int n = 1; n <= 3; ++n) {
    BimoduleCategory cat(n);
    for (int i = 1; i <= n; ++i)
      for (bool order : {true, false}) {
        auto c = ptr(order ? tensor(cat, build_Ri(cat, i), build_Ri_prime(cat, i))
                           : tensor(cat, build_Ri_prime(cat, i), build_Ri(cat, i)));
        auto s = simplify(cat, c, true);
        CHECK(terms_of(*s.complex) == terms_of(unit_complex(cat)));
        check_round_trip(cat, s);
        // idempotence
        CHECK(terms_of(*simplify(cat, s.complex).complex) == terms_of(*s.complex));
      }
  }
}

TEST_CASE("simplify: braid relations") {
  for (int n = 2; n <= 3; ++n) {
    BimoduleCategory cat(n);
    for (int i = 1; i + 1 <= n; ++i) {
      auto a = ptr(word(cat, {i, i + 1, i}));
      auto b = ptr(word(cat, {i + 1, i, i + 1}));
      auto sa = simplify(cat, a, true);
      check_round_trip(cat, sa);
      auto eq = is_homotopy_equivalent(cat, a, b);
      REQUIRE(eq.has_value());
      CHECK(eq->forward.is_chain_map(cat));
      CHECK(eq->backward.is_chain_map(cat));
      CHECK(compose(cat, eq->minimal_backward, eq->minimal_forward) == ChainMap::identity(cat, eq->first.complex));
      CHECK(compose(cat, eq->minimal_forward, eq->minimal_backward) == ChainMap::identity(cat, eq->second.complex));
      auto gf = compose(cat, eq->backward, eq->forward) - ChainMap::identity(cat, a);
      CHECK(find_null_homotopy(cat, gf).has_value());
    }
  }
  BimoduleCategory cat(3);
  auto a = ptr(word(cat, {1, 3})), b = ptr(word(cat, {3, 1}));
  CHECK(terms_of(*simplify(cat, a).complex) == terms_of(*simplify(cat, b).complex));
  CHECK(is_homotopy_equivalent(cat, a, b).has_value());
  auto c = ptr(word(cat, {-1, 3})), d = ptr(word(cat, {3, -1}));
  CHECK(is_homotopy_equivalent(cat, c, d).has_value());
}

TEST_CASE("inequivalent complexes") {
  BimoduleCategory cat(2);
  auto r = ptr(build_Ri(cat, 1)), rp = ptr(build_Ri_prime(cat, 1));
  CHECK(!is_homotopy_equivalent(cat, r, rp).has_value());
  CHECK(is_homotopy_equivalent(cat, r, r).has_value());
}

TEST_CASE("tensor and simplify commute up to equivalence") {
  BimoduleCategory cat(2);
  std::vector<std::vector<int>> words{{1, -2}, {1, 2, 1}, {-1, 2, 2}, {1, 1, -2, 1}};
  for (const auto& w : words) {
    std::vector<int> head(w.begin(), w.begin() + 1), tail(w.begin() + 1, w.end());
    auto full = ptr(word(cat, w));
    auto s1 = simplify(cat, ptr(word(cat, head))).complex;
    auto s2 = simplify(cat, ptr(word(cat, tail))).complex;
    auto both = ptr(tensor(cat, *s1, *s2));
    CHECK(is_homotopy_equivalent(cat, full, both).has_value());
  }
}

TEST_CASE("central multiplication") {
  BimoduleCategory cat(4);
  const auto& ring = cat.ring();
  auto r = ptr(build_Ri(cat, 1));
  CHECK(left_mult(cat, r, ring.one()) == ChainMap::identity(cat, r));
  CHECK(left_mult(cat, r, ring.x_element(3)) == right_mult(cat, r, ring.x_element(3)));
  auto u = ptr(unit_complex(cat));
  CHECK(left_mult(cat, u, ring.x_element(2)) == right_mult(cat, u, ring.x_element(2)));
  CHECK_THROWS(left_mult(cat, r, AlgebraElement::basis(ring.arrow(1, 2))));
  CHECK(left_mult(cat, r, ring.x_element(1)).is_chain_map(cat));
}

TEST_CASE("null-homotopies of central multiplications") {
  std::mt19937 rng(23);
  for (int n = 1; n <= 4; ++n) {
    BimoduleCategory cat(n);
    const auto& ring = cat.ring();
    for (int i = 1; i <= n; ++i)
      for (int prime = 0; prime < 2; ++prime) {
        auto c = ptr(prime ? build_Ri_prime(cat, i) : build_Ri(cat, i));
        for (int trial = 0; trial < 4; ++trial) {
          std::vector<Coeff> a(n);
          for (auto& x : a) x = static_cast<Coeff>(rng() % 7) - 3;
          const AlgebraElement av = central(ring, a);
          const AlgebraElement corr =
              (ring.x_element(i - 1) + ring.x_element(i) * 2 + ring.x_element(i + 1)) * a[i - 1];
          auto f = left_mult(cat, c, av) - right_mult(cat, c, av - corr);
          auto h = find_null_homotopy(cat, f);
          REQUIRE(h.has_value());
          CHECK(h->boundary(cat) == f);
        }
        if (!prime) {
          auto f = left_mult(cat, c, ring.x_element(i - 1) - ring.x_element(i + 1)) +
                   right_mult(cat, c, ring.x_element(i + 1) - ring.x_element(i - 1));
          CHECK(find_null_homotopy(cat, f).has_value());
        }
        CHECK(!find_null_homotopy(cat, ChainMap::identity(cat, c)).has_value());
      }
  }
}

TEST_CASE("null-homotopy decision agrees with a rational oracle") {
  int decided_yes = 0, decided_no = 0;
  for (int n = 1; n <= 3; ++n) {
    BimoduleCategory cat(n);
    const auto& ring = cat.ring();
    for (int i = 1; i <= n; ++i) {
      auto c = ptr(build_Ri(cat, i));
      std::vector<ChainMap> maps{ChainMap::identity(cat, c), left_mult(cat, c, ring.x_element(i)),
                                 left_mult(cat, c, ring.x_element(i)) - right_mult(cat, c, ring.x_element(i)),
                                 left_mult(cat, c, ring.x_element(i)) -
                                     right_mult(cat, c, ring.x_element(i) * -1 - ring.x_element(i - 1) -
                                                            ring.x_element(i + 1)),
                                 ChainMap::identity(cat, c).scaled(2)};
      for (const auto& f : maps) {
        auto ours = find_null_homotopy(cat, f);
        auto ref = oracle::null_homotopy(cat, f);
        if (ref == oracle::Verdict::No) CHECK(!ours.has_value());
        if (ref == oracle::Verdict::Yes) CHECK(ours.has_value());
        decided_yes += ref == oracle::Verdict::Yes;
        decided_no += ref == oracle::Verdict::No;
      }
    }
  }
  CHECK(decided_yes > 0);
  CHECK(decided_no > 0);
}

TEST_CASE("chain map lattice") {
  BimoduleCategory cat(2);
  auto r = ptr(build_Ri(cat, 1));
  auto basis = chain_map_basis(cat, r, r, 0);
  REQUIRE(!basis.empty());
  for (const auto& f : basis) CHECK(f.is_chain_map(cat));
  auto inv = invert(cat, ChainMap::identity(cat, r));
  REQUIRE(inv.has_value());
  CHECK(*inv == ChainMap::identity(cat, r));
  CHECK(!invert(cat, ChainMap::identity(cat, r).scaled(2)).has_value());
}

TEST_CASE("json round trip") {
  BimoduleCategory cat(3);
  auto c = word(cat, {1, -2});
  auto j = to_json(c);
  auto back = complex_from_json(cat, j);
  CHECK(terms_of(back) == terms_of(c));
  CHECK(to_json(back) == j);
}
