#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

using nlohmann::json;

namespace {

void print(const json& r, bool as_json) {
  if (as_json) {
    std::cout << r.dump(2) << "\n";
    return;
  }
  for (const auto& c : r["checks"]) {
    std::cout << (c["verdict"] == "pass" ? "PASS " : "FAIL ") << c["name"].get<std::string>();
    if (!c["sign"].is_null()) std::cout << "  sign " << c["sign"].get<int>();
    std::cout << "\n";
  }
  if (r.contains("matrix")) std::cout << r["matrix"].dump() << "\n";
  std::cout << r["checks"].size() << " checks, " << (r["passed"].get<bool>() ? "all passed" : "FAILURES") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the zigzag braid-cobordism categorification"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  braidcat::cli::Options opt = braidcat::cli::options_from_env();
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_option("--jobs", opt.jobs, "Worker threads (default: hardware concurrency)");
  app.add_flag("--timings", opt.timings, "Record per-check timings (reports are then not byte-stable)");
  app.add_option("--cache-dir", opt.cache_dir, "Cache of simplified complexes (default: $BRAIDCAT_CACHE_DIR)");

  int n = 2, max_len = 0;
  std::uint64_t seed = 1;
  auto* rel = app.add_subcommand("verify-braid-relations", "Check the braid relations on R(w) up to homotopy");
  rel->add_option("--n", n, "Rank of the zigzag algebra A_n (braids on n+1 strands)")->required();
  rel->add_option("--max-word-len", max_len, "Also check random pairs related by one relation, up to this length");
  rel->add_option("--seed", seed, "Seed for the random pairs");

  std::string movie;
  bool apply = false;
  auto* inv = app.add_subcommand("invariant", "Compute F(S) for a braid movie");
  inv->add_option("--movie", movie, "Movie JSON file")->required();
  inv->add_flag("--apply-to-module", apply, "Also report the action of source and target on the classes [P_j]");

  std::string fixtures;
  auto* moves = app.add_subcommand("movie-moves", "Verify movie-move fixture pairs up to sign");
  moves->add_option("--fixtures", fixtures, "Fixture directory")->required();

  std::string word;
  auto* bur = app.add_subcommand("burau", "Burau matrix of a braid word, e.g. \"n=3; 1 -1\"");
  bur->add_option("--word", word, "Braid word")->required();

  int degree = 6;
  auto* rq = app.add_subcommand("rouquier", "Degreewise certificates for Rouquier complexes");
  rq->add_option("--degree", degree, "Truncation degree D");
  rq->add_option("--seed", seed, "Seed for the random movies");

  CLI11_PARSE(app, argc, argv);
  try {
    json r;
    if (*rel)
      r = braidcat::cli::verify_braid_relations(n, max_len, seed, opt);
    else if (*inv)
      r = braidcat::cli::invariant(movie, apply, opt);
    else if (*moves)
      r = braidcat::cli::movie_moves(fixtures, opt);
    else if (*bur)
      r = braidcat::cli::burau(word, opt);
    else
      r = braidcat::cli::rouquier(degree, seed, opt);
    print(r, as_json);
    return r["passed"].get<bool>() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
