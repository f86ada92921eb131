#include "doctest.h"

#include <map>
#include <set>

#include "braidcat/functor.hpp"

using namespace braidcat;

TEST_CASE("every shipped movie move holds up to sign") {
  const auto fixtures = load_fixtures(FIXTURE_DIR);
  REQUIRE(fixtures.size() >= 15);
  std::map<int, Functor> functors;
  std::set<std::string> moves;
  for (const auto& f : fixtures) {
    CAPTURE(f.name);
    const int n = f.movie1.strands() - 1;
    CHECK(n <= 3);
    auto& F = functors.try_emplace(n, n).first->second;
    auto r = F.verify_move(f.movie1, f.movie2);
    CHECK((r.verdict == MoveVerdict::Plus || r.verdict == MoveVerdict::Minus));
    CHECK_FALSE(r.both_null);
    CHECK(r.degree1 == r.degree2);
    CHECK(r.degree1 == 2 * polarity(f.movie1).p_minus);
    if (f.expected_sign) CHECK(r.verdict == (*f.expected_sign > 0 ? MoveVerdict::Plus : MoveVerdict::Minus));
    moves.insert(f.name.substr(0, 6));
  }
  CHECK(moves.size() == 15);
}

TEST_CASE("displayed move-12 and move-13 instances") {
  Functor F(2);
  for (const auto& f : load_fixtures(FIXTURE_DIR)) {
    if (f.name == "move12_negative_displayed") {
      auto r = F.verify_move(f.movie1, f.movie2);
      CHECK(r.verdict == MoveVerdict::Plus);
      CHECK(r.exact);
    }
    if (f.name == "move13_negative_displayed") {
      auto r = F.verify_move(f.movie1, f.movie2);
      CHECK(r.verdict == MoveVerdict::Minus);
    }
  }
}

TEST_CASE("fixture json round trip and validation") {
  for (const auto& f : load_fixtures(FIXTURE_DIR)) {
    auto g = fixture_from_json(to_json(f));
    CHECK(g.movie1 == f.movie1);
    CHECK(g.movie2 == f.movie2);
    CHECK(g.expected_sign == f.expected_sign);
  }
  auto bad = nlohmann::json::parse(
      R"({"name":"x","movie1":{"n":3,"start":[],"steps":[{"op":"birth","pos":0,"gen":1,"sign":1}]},
          "movie2":{"n":3,"start":[],"steps":[]}})");
  CHECK_THROWS(fixture_from_json(bad));
}
