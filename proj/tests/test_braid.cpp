#include "doctest.h"

#include "braidcat/braid.hpp"

using namespace braidcat;

namespace {

MovieStep birth(int pos, int gen, int sign) { return {StepKind::Birth, pos, gen, sign, false, -1}; }
MovieStep death(int pos, int sign) { return {StepKind::Death, pos, 0, sign, false, -1}; }

}  // namespace

TEST_CASE("word format") {
  auto w = parse_word("n=3; 1 2 -1");
  CHECK(w.strands == 3);
  CHECK(w.letters == std::vector<int>{1, 2, -1});
  CHECK(render(w) == "n=3; 1 2 -1");
  CHECK(parse_word(render(w)) == w);
  CHECK(parse_word("n=2;").letters.empty());
  CHECK_THROWS(parse_word("n=3; 3"));
  CHECK_THROWS(parse_word("n=3; 0"));
  CHECK_THROWS(parse_word("1 2"));
  CHECK_THROWS(parse_word("n=3; 1x"));
}

TEST_CASE("movie replay") {
  BraidMovie m{{3, {}}, {birth(0, 1, 1)}};
  CHECK(m.end().letters == std::vector<int>{1});
  auto j = to_json(m);
  CHECK(movie_from_json(j) == m);
  CHECK(parse_movie(j.dump()) == m);

  // R3 on letters that do not form a braid relation
  BraidMovie bad{{3, {1, 1, 1}}, {{StepKind::R3, 0, 0, 1, false, -1}}};
  CHECK_THROWS(bad.end());
  CHECK_THROWS(parse_movie(R"({"n":3,"start":[1,2],"steps":[{"op":"r2","pos":0}]})"));
  CHECK_THROWS(parse_movie(R"({"n":3,"start":[1],"steps":[{"op":"death","pos":0,"sign":-1}]})"));
  CHECK_THROWS(parse_movie(R"({"n":3,"start":[],"steps":[{"op":"twist","pos":0}]})"));
  auto ok = parse_movie(R"({"n":4,"start":[1,3],"steps":[{"op":"r2","pos":0},{"op":"death","pos":1,"sign":"+"}]})");
  CHECK(ok.end().letters == std::vector<int>{3});
}

TEST_CASE("R3 variants") {
  auto v = r3_variants(1, 2, 1);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == std::array<int, 3>{2, 1, 2});
  // s1 s2 s1^-1 = s2^-1 s1 s2
  auto w = r3_variants(1, 2, -1);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == std::array<int, 3>{-2, 1, 2});
  CHECK(r3_variants(-1, -2, -1) == std::vector<std::array<int, 3>>{{-2, -1, -2}});
  CHECK(r3_variants(1, 3, 1).empty());
  // applying the substitution twice returns to the start
  for (int a : {1, -1})
    for (int b : {2, -2})
      for (int c : {1, -1})
        for (const auto& x : r3_variants(a, b, c)) {
          auto back = r3_variants(x[0], x[1], x[2]);
          bool found = false;
          for (const auto& y : back) found |= y == std::array<int, 3>{a, b, c};
          CHECK(found);
        }
}

TEST_CASE("polarity") {
  BraidWord w{3, {1, -2}};
  BraidMovie iso{w, {{StepKind::R1, 0, 2, 1, true, -1}}};
  CHECK(polarity(iso) == Polarity{0, 0});
  CHECK(polarity(BraidMovie{{3, {}}, {birth(0, 2, 1)}}) == Polarity{1, 0});
  CHECK(polarity(BraidMovie{{3, {}}, {birth(0, 1, -1), birth(0, 1, -1)}}) == Polarity{0, 2});
  CHECK(polarity(BraidMovie{{3, {-1, 2}}, {death(0, -1), death(0, 1)}}) == Polarity{1, 1});
}

TEST_CASE("compose and parallel") {
  BraidMovie m1{{3, {}}, {birth(0, 1, 1)}};
  BraidMovie m2{{3, {1}}, {birth(1, 2, -1)}};
  CHECK(compose_movies(m1, identity_movie(m1.end())) == m1);
  auto c = compose_movies(m1, m2);
  CHECK(c.end().letters == std::vector<int>{1, -2});
  CHECK(polarity(c).p_plus == polarity(m1).p_plus + polarity(m2).p_plus);
  CHECK(polarity(c).p_minus == polarity(m1).p_minus + polarity(m2).p_minus);
  CHECK_THROWS(compose_movies(m2, m1));

  BraidMovie a{{2, {}}, {birth(0, 1, 1)}};
  BraidMovie b{{3, {}}, {birth(0, 2, -1)}};
  auto p = parallel(a, b);
  CHECK(p.strands() == 5);
  CHECK(p.end().letters == std::vector<int>{1, -4});
  CHECK(polarity(p) == Polarity{1, 1});
}

TEST_CASE("random movies replay and obey the writhe identity") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const int strands = 2 + k % 3;
    auto m = random_movie(rng, strands, k % 4, 1 + k % 7, k % 2 == 0);
    auto frames = m.frames();
    for (const auto& f : frames) CHECK_NOTHROW(f.validate());
    const auto p = polarity(m);
    // births add their sign to the exponent sum, deaths subtract it
    int births_minus_deaths = 0;
    for (const auto& s : m.steps) {
      if (s.op == StepKind::Birth) births_minus_deaths += s.sign;
      if (s.op == StepKind::Death) births_minus_deaths -= s.sign;
    }
    CHECK(m.end().exponent_sum() == m.start.exponent_sum() + births_minus_deaths);
    if (k % 2 == 0) CHECK(p.p_minus == 0);
    CHECK(movie_from_json(to_json(m)) == m);
  }
}
