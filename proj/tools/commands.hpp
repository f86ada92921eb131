#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

// Batch verifications behind the command-line tool. Each returns a report
// whose "passed" field decides the exit code.
namespace braidcat::cli {

inline constexpr const char* kVersion = "1.0.0";
// Bumped whenever a change alters serialized complexes; part of cache keys.
inline constexpr const char* kConventionVersion = "c1";

struct Options {
  unsigned jobs = 0;        // 0: hardware concurrency
  bool timings = false;     // timings break byte-identical reruns, so opt-in
  std::string cache_dir;    // simplified complexes keyed by word digest; empty disables
};

// Options with cache_dir taken from BRAIDCAT_CACHE_DIR.
Options options_from_env();

std::string digest(const std::string& text);  // FNV-1a 64, hex

nlohmann::json verify_braid_relations(int n, int max_word_len, std::uint64_t seed, const Options& opt);
nlohmann::json invariant(const std::string& movie_file, bool apply_to_module, const Options& opt);
nlohmann::json movie_moves(const std::string& fixture_dir, const Options& opt);
nlohmann::json burau(const std::string& word, const Options& opt);
nlohmann::json rouquier(int degree, std::uint64_t seed, const Options& opt);

}  // namespace braidcat::cli
