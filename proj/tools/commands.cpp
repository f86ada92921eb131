#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "braidcat/decat.hpp"
#include "braidcat/functor.hpp"
#include "braidcat/rouquier.hpp"

namespace braidcat::cli {

using nlohmann::json;

Options options_from_env() {
  Options o;
  if (const char* dir = std::getenv("BRAIDCAT_CACHE_DIR")) o.cache_dir = dir;
  return o;
}

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

namespace {

json report(const std::string& command, json inputs) {
  return {{"tool", "braidcat"}, {"version", kVersion}, {"command", command}, {"inputs", std::move(inputs)},
          {"checks", json::array()}};
}

json finish(json r) {
  bool ok = !r["checks"].empty();
  for (const auto& c : r["checks"]) ok = ok && c["verdict"] == "pass";
  r["passed"] = ok;
  return r;
}

json check(const std::string& name, const json& inputs, bool ok) {
  return {{"name", name}, {"inputs_digest", digest(inputs.dump())}, {"verdict", ok ? "pass" : "fail"},
          {"sign", nullptr}, {"witness", nullptr}};
}

// Runs jobs on a pool; results land in job order.
std::vector<json> run_pool(std::size_t count, const Options& opt, const std::function<json(std::size_t)>& job) {
  std::vector<json> out(count);
  unsigned workers = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(count);
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&] {
      for (std::size_t k; (k = next++) < count;) {
        try {
          out[k] = job(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class F>
json timed(const Options& opt, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  json r = f();
  if (opt.timings)
    r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Minimal form of R(w), through the on-disk cache when one is configured.
ComplexPtr minimal_complex(Functor& F, const BraidWord& w, const Options& opt) {
  if (opt.cache_dir.empty()) return F.minimal(w).complex;
  namespace fs = std::filesystem;
  const fs::path file =
      fs::path(opt.cache_dir) / (std::string(kConventionVersion) + "-" + digest(render(w)) + ".json");
  if (fs::exists(file)) {
    try {
      std::ifstream in(file);
      json j = json::parse(in);
      if (j.at("word") == render(w))
        return std::make_shared<const ChainComplex>(complex_from_json(F.category(), j.at("complex")));
    } catch (const std::exception&) {
      // unreadable entries are recomputed and overwritten
    }
  }
  ComplexPtr c = F.minimal(w).complex;
  std::error_code ec;
  fs::create_directories(opt.cache_dir, ec);
  const fs::path tmp = file.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    out << json{{"word", render(w)}, {"convention", kConventionVersion}, {"complex", to_json(*c)}}.dump();
  }
  fs::rename(tmp, file, ec);
  return c;
}

struct Relation {
  std::string family;
  BraidWord g, h;
};

std::vector<Relation> relation_instances(int n) {
  const int s = n + 1;
  std::vector<Relation> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back({"inverse", {s, {i, -i}}, {s, {}}});
    out.push_back({"inverse", {s, {-i, i}}, {s, {}}});
  }
  for (int i = 1; i < n; ++i) out.push_back({"braid", {s, {i, i + 1, i}}, {s, {i + 1, i, i + 1}}});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j) out.push_back({"distant", {s, {i, j}}, {s, {j, i}}});
  return out;
}

// g = u l v and h = u r v for one relation l = r, |g|, |h| <= max_len.
std::vector<Relation> random_instances(int n, int max_len, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> rels;
  for (const auto& r : relation_instances(n)) {
    rels.emplace_back(r.g.letters, r.h.letters);
    rels.emplace_back(r.h.letters, r.g.letters);
  }
  for (int i = 1; i < n; ++i) rels.emplace_back(std::vector<int>{-i, -(i + 1), -i}, std::vector<int>{-(i + 1), -i, -(i + 1)});
  std::vector<Relation> out;
  std::uniform_int_distribution<int> gen(1, n);
  for (int tries = 0; static_cast<int>(out.size()) < count && tries < 100 * count; ++tries) {
    const auto& [l, r] = rels[rng() % rels.size()];
    const int room = max_len - static_cast<int>(std::max(l.size(), r.size()));
    if (room < 0) continue;
    const int extra = room ? static_cast<int>(rng() % (room + 1)) : 0;
    const int before = extra ? static_cast<int>(rng() % (extra + 1)) : 0;
    auto letter = [&] { return rng() % 2 ? gen(rng) : -gen(rng); };
    std::vector<int> u, v;
    for (int k = 0; k < before; ++k) u.push_back(letter());
    for (int k = before; k < extra; ++k) v.push_back(letter());
    Relation rel{"random", {n + 1, u}, {n + 1, u}};
    rel.g.letters.insert(rel.g.letters.end(), l.begin(), l.end());
    rel.h.letters.insert(rel.h.letters.end(), r.begin(), r.end());
    rel.g.letters.insert(rel.g.letters.end(), v.begin(), v.end());
    rel.h.letters.insert(rel.h.letters.end(), v.begin(), v.end());
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace

json verify_braid_relations(int n, int max_word_len, std::uint64_t seed, const Options& opt) {
  if (n < 1) throw std::invalid_argument("--n must be at least 1");
  json r = report("verify-braid-relations", {{"n", n}, {"max_word_len", max_word_len}, {"seed", seed}});
  auto jobs = relation_instances(n);
  if (max_word_len > 0) {
    auto extra = random_instances(n, max_word_len, seed, 10);
    jobs.insert(jobs.end(), extra.begin(), extra.end());
  }
  auto results = run_pool(jobs.size(), opt, [&](std::size_t k) {
    return timed(opt, [&] {
      const Relation& rel = jobs[k];
      Functor F(n);
      const json in{{"g", render(rel.g)}, {"h", render(rel.h)}};
      ComplexPtr a = minimal_complex(F, rel.g, opt), b = minimal_complex(F, rel.h, opt);
      auto eq = is_homotopy_equivalent(F.category(), a, b);
      bool ok = false;
      json witness = nullptr;
      if (eq) {
        const auto& cat = F.category();
        const ChainMap there = compose(cat, eq->backward, eq->forward) - ChainMap::identity(cat, a);
        const ChainMap back = compose(cat, eq->forward, eq->backward) - ChainMap::identity(cat, b);
        ok = find_null_homotopy(cat, there).has_value() && find_null_homotopy(cat, back).has_value();
        std::size_t terms = 0;
        for (const auto& [t, o] : eq->first.complex->terms()) terms += o->size();
        witness = {{"minimal_summands", terms}, {"round_trip", ok}, {"forward", to_json(eq->forward)}};
      }
      json c = check(rel.family + ": R(" + render(rel.g) + ") ~ R(" + render(rel.h) + ")", in, ok);
      c["witness"] = witness;
      return c;
    });
  });
  for (auto& c : results) r["checks"].push_back(std::move(c));
  return finish(std::move(r));
}

json invariant(const std::string& movie_file, bool apply_to_module, const Options& opt) {
  std::ifstream in(movie_file);
  if (!in) throw std::invalid_argument("cannot open movie file " + movie_file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(movie_file + ": " + e.what());
  }
  const BraidMovie m = movie_from_json(j);
  json r = report("invariant", {{"movie", j}});
  Functor F(m.start.strands - 1);
  const auto& cat = F.category();
  json c = timed(opt, [&] {
    const CobordismInvariant inv = F.invariant(m);
    json out = check("F(S)", j, inv.map.is_chain_map(cat) && inv.map.degree() == 2 * inv.polarity.p_minus);
    out["internal_degree"] = inv.map.degree();
    out["polarity"] = {{"p_plus", inv.polarity.p_plus}, {"p_minus", inv.polarity.p_minus}};
    out["source"] = render(m.start);
    out["target"] = render(m.end());
    out["map"] = to_json(inv.map);
    if (inv.polarity.p_minus == 0) {
      const auto cert = F.nonvanishing(m);
      out["certificate"] = {{"diagonal_coefficient", cert.coefficient},
                            {"status", cert.nonvanishing() ? "nonzero" : "inconclusive"}};
      if (!cert.nonvanishing()) out["verdict"] = "fail";
    } else {
      auto h = find_null_homotopy(cat, inv.map);
      out["certificate"] = {{"status", h ? "null-homotopic" : "not null-homotopic"}};
      if (h) out["witness"] = to_json(*h);
    }
    if (apply_to_module) {
      // the complexes acting on the classes [P_j]
      out["k_class_source"] = k_class(cat, *inv.source).to_json();
      out["k_class_target"] = k_class(cat, *inv.target).to_json();
    }
    return out;
  });
  r["checks"].push_back(std::move(c));
  return finish(std::move(r));
}

json movie_moves(const std::string& fixture_dir, const Options& opt) {
  const auto fixtures = load_fixtures(fixture_dir);
  json r = report("movie-moves", {{"fixtures", static_cast<int>(fixtures.size())}});
  auto results = run_pool(fixtures.size(), opt, [&](std::size_t k) {
    return timed(opt, [&] {
      const MoveFixture& f = fixtures[k];
      Functor F(f.movie1.start.strands - 1);
      const MoveCheck mc = F.verify_move(f.movie1, f.movie2);
      const bool signed_verdict = mc.verdict == MoveVerdict::Plus || mc.verdict == MoveVerdict::Minus;
      const int sign = mc.verdict == MoveVerdict::Minus ? -1 : 1;
      const bool expected = !f.expected_sign || *f.expected_sign == sign;
      json c = check(f.name, to_json(f), signed_verdict && expected);
      c["result"] = to_string(mc.verdict);
      if (signed_verdict) c["sign"] = sign;
      c["exact"] = mc.exact;
      c["both_null"] = mc.both_null;
      c["internal_degree"] = mc.degree1;
      if (f.expected_sign) c["expected_sign"] = *f.expected_sign;
      if (!mc.note.empty()) c["note"] = mc.note;
      if (mc.witness) c["witness"] = to_json(*mc.witness);
      return c;
    });
  });
  for (auto& c : results) r["checks"].push_back(std::move(c));
  return finish(std::move(r));
}

json burau(const std::string& word, const Options& opt) {
  const BraidWord w = parse_word(word);
  json r = report("burau", {{"word", render(w)}});
  json c = timed(opt, [&] {
    const LaurentMatrix b = braidcat::burau(w);
    Functor F(w.strands - 1);
    // the matrix is the class of R(w) acting on K
    json out = check("burau = k_class(R(w))", {{"word", render(w)}}, k_class(F.category(), *F.complex(w)) == b);
    out["matrix"] = b.to_json();
    out["determinant"] = determinant(b).to_json();
    return out;
  });
  r["matrix"] = c["matrix"];
  r["checks"].push_back(std::move(c));
  return finish(std::move(r));
}

json rouquier(int degree, std::uint64_t seed, const Options& opt) {
  if (degree < 2) throw std::invalid_argument("--degree must be at least 2");
  json r = report("rouquier", {{"degree", degree}, {"seed", seed}});
  std::vector<std::function<json()>> jobs;
  jobs.push_back([&] {
    const auto rel = rouquier::verify_relations(degree);
    json out = json::array();
    for (std::size_t k = 0; k < rel.checks.size(); ++k) {
      const auto& c = rel.checks[k];
      json x = check(c.name + " through degree " + std::to_string(degree), {{"relation", c.name}, {"degree", degree}},
                     c.passed);
      json degrees = json::array();
      for (const auto& d : c.degrees) degrees.push_back(rouquier::to_json(d));
      x["witness"] = {{"degrees", degrees}};
      out.push_back(std::move(x));
    }
    return out;
  });
  jobs.push_back([&] {
    json out = json::array();
    for (int strands = 2; strands <= 4; ++strands) {
      rouquier::Soergel S(strands);
      for (int i = 1; i < strands; ++i) {
        const auto c = rouquier::build(S, {strands, {i}});
        bool ok = rouquier::euler_class(c) == LaurentPoly(0) - LaurentPoly::monomial(1);
        for (int d = 0; d <= degree; ++d) ok = ok && rouquier::euler_piece(S, c, d) == -S.ring().rank(d - 1);
        out.push_back(check("sigma_" + std::to_string(i) + "[A] = -q[A] on " + std::to_string(strands) +
                                " strands through degree " + std::to_string(degree),
                            {{"strands", strands}, {"i", i}, {"degree", degree}}, ok));
      }
    }
    return out;
  });
  jobs.push_back([&] {
    json out = json::array();
    rouquier::SemiTrivial F(3, degree);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 10; ++k) {
      const BraidMovie m = random_movie(rng, 3, 2, 4, k % 2 == 0);
      const auto inv = F.invariant(m);
      const bool negative = polarity(m).p_minus > 0;
      const bool ok = inv.zero == negative &&
                      (negative || inv.unit_coefficient == 1 || inv.unit_coefficient == -1);
      json x = check("semitrivial invariant, random movie " + std::to_string(k), to_json(m), ok);
      x["zero"] = inv.zero;
      x["p_minus"] = polarity(m).p_minus;
      if (!negative) x["unit_coefficient"] = inv.unit_coefficient;
      out.push_back(std::move(x));
    }
    return out;
  });
  auto results = run_pool(jobs.size(), opt, [&](std::size_t k) { return jobs[k](); });
  for (auto& list : results)
    for (auto& c : list) r["checks"].push_back(std::move(c));
  return finish(std::move(r));
}

}  // namespace braidcat::cli
