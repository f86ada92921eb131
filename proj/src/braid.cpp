#include "braidcat/braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "braidcat/decat.hpp"

namespace braidcat {

void BraidWord::validate() const {
  if (strands < 2) throw std::invalid_argument("a braid needs at least 2 strands");
  for (int l : letters)
    if (l == 0 || std::abs(l) >= strands)
      throw std::invalid_argument("generator index " + std::to_string(l) + " out of range for " +
                                  std::to_string(strands) + " strands");
}

int BraidWord::exponent_sum() const {
  int s = 0;
  for (int l : letters) s += l > 0 ? 1 : -1;
  return s;
}

BraidWord parse_word(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw std::invalid_argument("word must start with \"n=<strands>;\"");
  std::string head = text.substr(0, semi);
  head.erase(0, head.find_first_not_of(" \t"));
  if (head.rfind("n=", 0) != 0) throw std::invalid_argument("word must start with \"n=<strands>;\"");
  BraidWord w;
  try {
    std::size_t used = 0;
    w.strands = std::stoi(head.substr(2), &used);
    if (head.find_first_not_of(" \t", 2 + used) != std::string::npos) throw std::invalid_argument(head);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed strand count: " + head);
  }
  std::istringstream rest(text.substr(semi + 1));
  std::string tok;
  while (rest >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed letter: " + tok);
    }
    if (used != tok.size()) throw std::invalid_argument("malformed letter: " + tok);
    w.letters.push_back(v);
  }
  w.validate();
  return w;
}

std::string render(const BraidWord& w) {
  std::string s = "n=" + std::to_string(w.strands) + ";";
  for (int l : w.letters) s += " " + std::to_string(l);
  return s;
}

std::vector<std::array<int, 3>> r3_variants(int a, int b, int c) {
  std::vector<std::array<int, 3>> out;
  const int i = std::abs(a), j = std::abs(b);
  if (std::abs(c) != i || std::abs(i - j) != 1) return out;
  // Local three-strand braids are compared in the Burau representation,
  // which is faithful on B_3.
  const int lo = std::min(i, j);
  auto local = [&](int l) { return (std::abs(l) - lo + 1) * (l > 0 ? 1 : -1); };
  auto matrix = [&](std::array<int, 3> w) {
    LaurentMatrix m = LaurentMatrix::identity(2);
    for (int l : w) m = m * burau_generator(2, local(l));
    return m;
  };
  const LaurentMatrix target = matrix({a, b, c});
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1}) {
        std::array<int, 3> cand{s1 * j, s2 * i, s3 * j};
        if (matrix(cand) == target) out.push_back(cand);
      }
  return out;
}

BraidWord apply_step(const BraidWord& w, const MovieStep& s) {
  BraidWord out = w;
  auto& L = out.letters;
  const int len = static_cast<int>(L.size());
  auto need = [&](int count) {
    if (s.pos < 0 || s.pos + count > len) throw std::invalid_argument("step position out of range");
  };
  auto check_gen = [&](int g) {
    if (g < 1 || g >= w.strands) throw std::invalid_argument("step generator out of range");
  };
  auto check_sign = [&] {
    if (s.sign != 1 && s.sign != -1) throw std::invalid_argument("step sign must be +1 or -1");
  };
  switch (s.op) {
    case StepKind::R1:
      if (s.insert) {
        check_gen(s.gen);
        check_sign();
        if (s.pos < 0 || s.pos > len) throw std::invalid_argument("step position out of range");
        L.insert(L.begin() + s.pos, {s.sign * s.gen, -s.sign * s.gen});
      } else {
        need(2);
        if (L[s.pos] != -L[s.pos + 1]) throw std::invalid_argument("R1 cancel: letters are not inverse");
        if (s.gen != 0 && (std::abs(L[s.pos]) != s.gen || L[s.pos] != s.sign * s.gen))
          throw std::invalid_argument("R1 cancel: letters do not match the step");
        L.erase(L.begin() + s.pos, L.begin() + s.pos + 2);
      }
      break;
    case StepKind::R2:
      need(2);
      if (std::abs(std::abs(L[s.pos]) - std::abs(L[s.pos + 1])) <= 1)
        throw std::invalid_argument("R2: generators are not distant");
      std::swap(L[s.pos], L[s.pos + 1]);
      break;
    case StepKind::R3: {
      need(3);
      auto vars = r3_variants(L[s.pos], L[s.pos + 1], L[s.pos + 2]);
      if (vars.empty()) throw std::invalid_argument("R3: letters do not match a braid relation");
      const int v = s.variant < 0 ? 0 : s.variant;
      if (v >= static_cast<int>(vars.size())) throw std::invalid_argument("R3: no such variant");
      for (int k = 0; k < 3; ++k) L[s.pos + k] = vars[v][k];
      break;
    }
    case StepKind::Birth:
      check_gen(s.gen);
      check_sign();
      if (s.pos < 0 || s.pos > len) throw std::invalid_argument("step position out of range");
      L.insert(L.begin() + s.pos, s.sign * s.gen);
      break;
    case StepKind::Death:
      need(1);
      check_sign();
      if ((L[s.pos] > 0 ? 1 : -1) != s.sign) throw std::invalid_argument("death: sign does not match the letter");
      if (s.gen != 0 && std::abs(L[s.pos]) != s.gen) throw std::invalid_argument("death: generator does not match");
      L.erase(L.begin() + s.pos);
      break;
  }
  return out;
}

std::vector<BraidWord> BraidMovie::frames() const {
  start.validate();
  std::vector<BraidWord> out{start};
  for (std::size_t k = 0; k < steps.size(); ++k) {
    try {
      out.push_back(apply_step(out.back(), steps[k]));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("step " + std::to_string(k) + " (" + to_json(steps[k]).dump() + "): " + e.what());
    }
  }
  return out;
}

BraidWord BraidMovie::end() const { return frames().back(); }

Polarity polarity(const BraidMovie& m) {
  Polarity p;
  for (const auto& s : m.steps) {
    if (s.op == StepKind::Birth) (s.sign > 0 ? p.p_plus : p.p_minus)++;
    if (s.op == StepKind::Death) (s.sign < 0 ? p.p_plus : p.p_minus)++;
  }
  return p;
}

BraidMovie identity_movie(const BraidWord& w) { return BraidMovie{w, {}}; }

BraidMovie compose_movies(const BraidMovie& m1, const BraidMovie& m2) {
  if (!(m1.end() == m2.start)) throw std::invalid_argument("compose: end of the first movie is not the start of the second");
  BraidMovie out = m1;
  out.steps.insert(out.steps.end(), m2.steps.begin(), m2.steps.end());
  return out;
}

BraidMovie parallel(const BraidMovie& m1, const BraidMovie& m2) {
  const int n1 = m1.strands();
  BraidMovie out;
  out.start.strands = n1 + m2.strands();
  out.start.letters = m1.start.letters;
  for (int l : m2.start.letters) out.start.letters.push_back(l > 0 ? l + n1 : l - n1);
  out.steps = m1.steps;
  const int offset = static_cast<int>(m1.end().letters.size());
  for (MovieStep s : m2.steps) {
    s.pos += offset;
    if (s.gen != 0) s.gen += n1;
    out.steps.push_back(s);
  }
  out.frames();
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const char* op_name(StepKind k) {
  switch (k) {
    case StepKind::R1: return "r1";
    case StepKind::R2: return "r2";
    case StepKind::R3: return "r3";
    case StepKind::Birth: return "birth";
    case StepKind::Death: return "death";
  }
  return "";
}

int read_sign(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+") return 1;
    if (s == "-") return -1;
    throw std::invalid_argument("malformed sign: " + s);
  }
  const int v = j.get<int>();
  if (v != 1 && v != -1) throw std::invalid_argument("sign must be +1 or -1");
  return v;
}

}  // namespace

nlohmann::json to_json(const MovieStep& s) {
  nlohmann::json j{{"op", op_name(s.op)}, {"pos", s.pos}};
  switch (s.op) {
    case StepKind::R1:
      j["dir"] = s.insert ? "insert" : "cancel";
      if (s.insert || s.gen != 0) {
        j["gen"] = s.gen;
        j["sign"] = s.sign;
      }
      break;
    case StepKind::R3:
      if (s.variant >= 0) j["variant"] = s.variant;
      break;
    case StepKind::Birth:
      j["gen"] = s.gen;
      j["sign"] = s.sign;
      break;
    case StepKind::Death:
      if (s.gen != 0) j["gen"] = s.gen;
      j["sign"] = s.sign;
      break;
    case StepKind::R2:
      break;
  }
  return j;
}

nlohmann::json to_json(const BraidMovie& m) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : m.steps) steps.push_back(to_json(s));
  return {{"n", m.start.strands}, {"start", m.start.letters}, {"steps", steps}};
}

MovieStep step_from_json(const nlohmann::json& j) {
  MovieStep s;
  const auto op = j.at("op").get<std::string>();
  if (op == "r1") s.op = StepKind::R1;
  else if (op == "r2") s.op = StepKind::R2;
  else if (op == "r3") s.op = StepKind::R3;
  else if (op == "birth") s.op = StepKind::Birth;
  else if (op == "death") s.op = StepKind::Death;
  else throw std::invalid_argument("unknown step op: " + op);
  s.pos = j.at("pos").get<int>();
  if (j.contains("gen")) s.gen = j.at("gen").get<int>();
  if (j.contains("sign")) s.sign = read_sign(j.at("sign"));
  if (s.op == StepKind::R1) {
    const auto dir = j.at("dir").get<std::string>();
    if (dir != "insert" && dir != "cancel") throw std::invalid_argument("R1 dir must be insert or cancel");
    s.insert = dir == "insert";
    if (s.insert && (!j.contains("gen") || !j.contains("sign")))
      throw std::invalid_argument("R1 insert needs gen and sign");
  }
  if (s.op == StepKind::Birth && (!j.contains("gen") || !j.contains("sign")))
    throw std::invalid_argument("birth needs gen and sign");
  if (s.op == StepKind::Death && !j.contains("sign")) throw std::invalid_argument("death needs sign");
  if (j.contains("variant")) s.variant = j.at("variant").get<int>();
  return s;
}

BraidMovie movie_from_json(const nlohmann::json& j) {
  BraidMovie m;
  m.start.strands = j.at("n").get<int>();
  m.start.letters = j.at("start").get<std::vector<int>>();
  for (const auto& s : j.at("steps")) m.steps.push_back(step_from_json(s));
  m.frames();
  return m;
}

BraidMovie parse_movie(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed movie JSON: ") + e.what());
  }
  return movie_from_json(j);
}

MoveFixture fixture_from_json(const nlohmann::json& j) {
  MoveFixture f;
  f.name = j.at("name").get<std::string>();
  try {
    f.movie1 = movie_from_json(j.at("movie1"));
    f.movie2 = movie_from_json(j.at("movie2"));
  } catch (const std::exception& e) {
    throw std::invalid_argument("fixture " + f.name + ": " + e.what());
  }
  if (j.contains("expected_sign")) f.expected_sign = j["expected_sign"].get<int>();
  if (!(f.movie1.start == f.movie2.start) || !(f.movie1.end() == f.movie2.end()))
    throw std::invalid_argument("fixture " + f.name + ": movies have different boundaries");
  return f;
}

nlohmann::json to_json(const MoveFixture& f) {
  nlohmann::json j{{"name", f.name}, {"movie1", to_json(f.movie1)}, {"movie2", to_json(f.movie2)}};
  if (f.expected_sign) j["expected_sign"] = *f.expected_sign;
  return j;
}

std::vector<MoveFixture> load_fixtures(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<MoveFixture> out;
  for (const auto& p : files) {
    std::ifstream in(p);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(p.string() + ": " + e.what());
    }
    out.push_back(fixture_from_json(j));
  }
  return out;
}

// ---------------------------------------------------------------------------

BraidMovie random_movie(std::mt19937_64& rng, int strands, int start_length, int step_count, bool positive_only) {
  auto uniform = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  BraidMovie m;
  m.start.strands = strands;
  for (int k = 0; k < start_length; ++k) m.start.letters.push_back((1 + uniform(strands - 1)) * (uniform(2) ? 1 : -1));
  const int cap = start_length + 4;
  BraidWord w = m.start;
  for (int k = 0; k < step_count; ++k) {
    std::vector<std::vector<MovieStep>> kinds(6);
    const int len = static_cast<int>(w.letters.size());
    const auto& L = w.letters;
    if (len + 2 <= cap) {
      MovieStep s{StepKind::R1, uniform(len + 1), 1 + uniform(strands - 1), uniform(2) ? 1 : -1, true, -1};
      kinds[0].push_back(s);
    }
    for (int p = 0; p + 1 < len; ++p) {
      if (L[p] == -L[p + 1]) kinds[1].push_back({StepKind::R1, p, 0, 1, false, -1});
      if (std::abs(std::abs(L[p]) - std::abs(L[p + 1])) > 1) kinds[2].push_back({StepKind::R2, p, 0, 1, false, -1});
    }
    for (int p = 0; p + 2 < len; ++p) {
      const int nv = static_cast<int>(r3_variants(L[p], L[p + 1], L[p + 2]).size());
      for (int v = 0; v < nv; ++v) kinds[3].push_back({StepKind::R3, p, 0, 1, false, v});
    }
    if (len + 1 <= cap) {
      const int sign = positive_only ? 1 : (uniform(2) ? 1 : -1);
      kinds[4].push_back({StepKind::Birth, uniform(len + 1), 1 + uniform(strands - 1), sign, false, -1});
    }
    for (int p = 0; p < len; ++p) {
      const int sign = L[p] > 0 ? 1 : -1;
      if (positive_only && sign > 0) continue;
      kinds[5].push_back({StepKind::Death, p, 0, sign, false, -1});
    }
    if (kinds[0].empty() && kinds[1].empty() && kinds[2].empty() && kinds[3].empty() && kinds[4].empty() &&
        kinds[5].empty())
      kinds[0].push_back({StepKind::R1, uniform(len + 1), 1 + uniform(strands - 1), uniform(2) ? 1 : -1, true, -1});
    std::vector<int> available;
    for (int k2 = 0; k2 < 6; ++k2)
      if (!kinds[k2].empty()) available.push_back(k2);
    const auto& pick = kinds[available[uniform(static_cast<int>(available.size()))]];
    const MovieStep s = pick[uniform(static_cast<int>(pick.size()))];
    w = apply_step(w, s);
    m.steps.push_back(s);
  }
  return m;
}

}  // namespace braidcat
