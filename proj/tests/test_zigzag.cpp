#include "doctest.h"

#include <optional>
#include <vector>

#include "braidcat/zigzag.hpp"

using braidcat::AlgebraElement;
using braidcat::BasisPath;
using braidcat::ZigzagRing;

namespace {

// Reference normal form of a vertex walk in A_n (n >= 2), using only the
// quiver relations: walks of length >= 3 vanish unless they have length 2 and
// return to their start, and all returning length-2 walks at a vertex agree.
std::optional<std::vector<int>> normal_form(const std::vector<int>& walk) {
  if (walk.size() <= 2) return walk;
  if (walk.size() > 3) return std::nullopt;
  if (walk[0] != walk[2]) return std::nullopt;
  const int i = walk[0];
  return i == 1 ? std::vector<int>{1, 2, 1} : std::vector<int>{i, i - 1, i};
}

}  // namespace

TEST_CASE("rank and graded dimension") {
  for (int n = 1; n <= 6; ++n) {
    ZigzagRing r(n);
    CHECK(r.rank() == 4 * n - 2);
    int by_degree[3] = {0, 0, 0};
    for (int k = 0; k < r.rank(); ++k) by_degree[r.degree(k)]++;
    CHECK(by_degree[0] == n);
    CHECK(by_degree[1] == 2 * (n - 1));
    CHECK(by_degree[2] == n);
  }
  CHECK_THROWS(ZigzagRing(0));
}

TEST_CASE("multiplication table matches walk rewriting") {
  for (int n = 2; n <= 5; ++n) {
    ZigzagRing r(n);
    for (int a = 0; a < r.rank(); ++a)
      for (int b = 0; b < r.rank(); ++b) {
        const auto& pa = r.path(a).vertices;
        const auto& pb = r.path(b).vertices;
        std::optional<std::vector<int>> expected;
        if (pa.back() == pb.front()) {
          std::vector<int> w = pa;
          w.insert(w.end(), pb.begin() + 1, pb.end());
          expected = normal_form(w);
        }
        auto got = r.product(a, b);
        REQUIRE(got.has_value() == expected.has_value());
        if (got) CHECK(r.path(*got).vertices == *expected);
      }
  }
}

TEST_CASE("zigzag relations") {
  ZigzagRing r(4);
  for (int i = 2; i <= 3; ++i) {
    // (i|i-1|i) = (i|i+1|i)
    auto down = r.product(r.arrow(i, i - 1), r.arrow(i - 1, i));
    auto up = r.product(r.arrow(i, i + 1), r.arrow(i + 1, i));
    REQUIRE(down);
    REQUIRE(up);
    CHECK(*down == *up);
    CHECK(*down == r.x(i));
    // (i-1|i|i+1) = 0
    auto mono = r.product(r.arrow(i - 1, i), r.arrow(i, i + 1));
    CHECK(!mono);
  }
}

TEST_CASE("associativity and unit") {
  for (int n = 1; n <= 4; ++n) {
    ZigzagRing r(n);
    const auto one = r.one();
    for (int a = 0; a < r.rank(); ++a) {
      auto ea = AlgebraElement::basis(a);
      CHECK(r.multiply(one, ea) == ea);
      CHECK(r.multiply(ea, one) == ea);
      for (int b = 0; b < r.rank(); ++b)
        for (int c = 0; c < r.rank(); ++c) {
          auto eb = AlgebraElement::basis(b), ec = AlgebraElement::basis(c);
          CHECK(r.multiply(r.multiply(ea, eb), ec) == r.multiply(ea, r.multiply(eb, ec)));
        }
    }
  }
}

TEST_CASE("center") {
  for (int n = 1; n <= 5; ++n) {
    ZigzagRing r(n);
    auto z = r.center_basis();
    CHECK(z.size() == static_cast<std::size_t>(n + 1));
    for (int k = 0; k < r.rank(); ++k)
      if (r.degree(k) == 1) CHECK(!r.is_central(AlgebraElement::basis(k)));
  }
}

TEST_CASE("projective bases") {
  ZigzagRing r(3);
  // P_2 = A(2) has basis (2), (1|2), (3|2), X_2.
  CHECK(r.ending_at(2).size() == 4);
  CHECK(r.ending_at(1).size() == 3);
  CHECK(r.paths_between(1, 1).size() == 2);
  CHECK(r.paths_between(1, 2).size() == 1);
  CHECK(r.paths_between(1, 3).empty());
  ZigzagRing r1(1);
  CHECK(r1.ending_at(1).size() == 2);
  CHECK(r1.paths_between(1, 1).size() == 2);
}

TEST_CASE("path parsing and json") {
  ZigzagRing r(3);
  for (const auto& p : r.basis()) CHECK(BasisPath::parse(p.to_string()) == p);
  CHECK_THROWS(BasisPath::parse("1|2"));
  auto j = r.to_json();
  CHECK(j["rank"] == 10);
  CHECK(j["products"].size() == 100);
  CHECK(r.to_string(r.one() - AlgebraElement::basis(r.x(2)) * 3) == "(1) + (2) + (3) - 3*(2|1|2)");
}
