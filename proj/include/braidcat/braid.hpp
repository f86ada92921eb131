#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

// Braid words and braid movies (combinatorial braid cobordisms).
namespace braidcat {

// Letters: +i for sigma_i, -i for sigma_i^-1, with 1 <= i < strands.
struct BraidWord {
  int strands = 2;
  std::vector<int> letters;

  void validate() const;
  int exponent_sum() const;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

// "n=3; 1 2 -1"
BraidWord parse_word(const std::string& text);
std::string render(const BraidWord& w);

enum class StepKind { R1, R2, R3, Birth, Death };

// One frame change. Positions index letters of the current word.
//   R1 insert: put gen^sign gen^-sign at pos.  R1 cancel: remove the inverse
//   pair at pos, pos+1.  R2: swap distant letters at pos, pos+1.  R3: replace
//   the three letters at pos by an equal word with the outer index swapped
//   (variant picks among several; -1 means the first).  Birth: insert
//   gen^sign at pos.  Death: remove the letter at pos, whose sign (and gen,
//   when nonzero) must match.
struct MovieStep {
  StepKind op = StepKind::R2;
  int pos = 0;
  int gen = 0;
  int sign = 1;
  bool insert = false;
  int variant = -1;
  friend bool operator==(const MovieStep&, const MovieStep&) = default;
};

struct BraidMovie {
  BraidWord start;
  std::vector<MovieStep> steps;

  int strands() const { return start.strands; }
  // Every frame, start first; throws on an inapplicable step.
  std::vector<BraidWord> frames() const;
  BraidWord end() const;
  friend bool operator==(const BraidMovie&, const BraidMovie&) = default;
};

BraidWord apply_step(const BraidWord& w, const MovieStep& s);

// Equal words of the form y x' y' replacing x y x' with |x| = |x'|, |y| = |x| +- 1.
std::vector<std::array<int, 3>> r3_variants(int a, int b, int c);

struct Polarity {
  int p_plus = 0;
  int p_minus = 0;
  friend bool operator==(const Polarity&, const Polarity&) = default;
};

// Birth of sigma_i or death of sigma_i^-1 is positive; birth of sigma_i^-1 or
// death of sigma_i is negative.
Polarity polarity(const BraidMovie& m);

BraidMovie identity_movie(const BraidWord& w);
BraidMovie compose_movies(const BraidMovie& m1, const BraidMovie& m2);
// m2 placed on the strands to the right of m1's, m1 played first.
BraidMovie parallel(const BraidMovie& m1, const BraidMovie& m2);

nlohmann::json to_json(const MovieStep& s);
nlohmann::json to_json(const BraidMovie& m);
MovieStep step_from_json(const nlohmann::json& j);
BraidMovie movie_from_json(const nlohmann::json& j);
BraidMovie parse_movie(const std::string& text);

// Two movies with the same boundary words, expected to satisfy
// F(movie2) = +-F(movie1); expected_sign pins the sign when known.
struct MoveFixture {
  std::string name;
  BraidMovie movie1, movie2;
  std::optional<int> expected_sign;
};

// Throws when the movies do not replay or their boundaries differ.
MoveFixture fixture_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MoveFixture& f);
// Every *.json file of a directory, sorted by file name.
std::vector<MoveFixture> load_fixtures(const std::string& dir);

// Random valid movie: random start word, then random applicable steps.
// With positive_only, type II steps are births of sigma_i and deaths of
// sigma_i^-1 only.
BraidMovie random_movie(std::mt19937_64& rng, int strands, int start_length, int step_count, bool positive_only);

}  // namespace braidcat
