// Acceptance criteria 1-8: one PASS/FAIL line each, exit status 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "braidcat/decat.hpp"
#include "braidcat/functor.hpp"
#include "braidcat/linalg.hpp"
#include "braidcat/rouquier.hpp"
#include "commands.hpp"

using namespace braidcat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failure; later checks still run.
struct Checker {
  Outcome out;
  void operator()(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

AlgebraElement central(const ZigzagRing& ring, const std::vector<Coeff>& a) {
  AlgebraElement s;
  for (int j = 1; j <= ring.n(); ++j) s = s + ring.x_element(j) * a[j - 1];
  return s;
}

BraidWord random_word(std::mt19937_64& rng, int strands, int max_len) {
  BraidWord w{strands, {}};
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int k = 0; k < len; ++k) {
    const int g = 1 + static_cast<int>(rng() % (strands - 1));
    w.letters.push_back(rng() % 2 ? g : -g);
  }
  return w;
}

Outcome ring_correctness() {
  Checker check;
  for (int n = 1; n <= 4; ++n) {
    const ZigzagRing ring(n);
    const int r = ring.rank();
    check(r == 4 * n - 2, "rank of A_" + std::to_string(n));
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c) {
          const auto ab = ring.product(a, b), bc = ring.product(b, c);
          const auto left = ab ? ring.product(*ab, c) : std::nullopt;
          const auto right = bc ? ring.product(a, *bc) : std::nullopt;
          check(left == right, "associativity in A_" + std::to_string(n));
        }
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) check(!ring.product(ring.x(i), ring.x(j)), "X_i X_j != 0");
    // center as the kernel of a -> (a e - e a) over all basis elements e
    linalg::SparseMatrix m(r);
    for (int e = 0; e < r; ++e)
      for (int out = 0; out < r; ++out) {
        std::vector<std::pair<std::size_t, linalg::BigInt>> row;
        for (int a = 0; a < r; ++a) {
          long v = 0;
          if (ring.product(a, e) == out) v += 1;
          if (ring.product(e, a) == out) v -= 1;
          if (v) row.emplace_back(a, v);
        }
        if (!row.empty()) m.add_row(std::move(row));
      }
    check(static_cast<int>(linalg::kernel_basis(m).size()) == n + 1, "center rank");
    check(static_cast<int>(ring.center_basis().size()) == n + 1, "center basis");
  }
  return check.out;
}

Outcome braid_relations() {
  Checker check;
  for (int n = 1; n <= 3; ++n) {
    Functor F(n);
    const auto unit = term_table(*F.complex({n + 1, {}}));
    for (int i = 1; i <= n; ++i) {
      check(term_table(*F.minimal({n + 1, {i, -i}}).complex) == unit, "simplify(R_i R_i') is not A_n");
      check(term_table(*F.minimal({n + 1, {-i, i}}).complex) == unit, "simplify(R_i' R_i) is not A_n");
    }
    cli::Options opt;
    const auto r = cli::verify_braid_relations(n, 0, 1, opt);
    check(r["passed"].get<bool>(), "relation families at n = " + std::to_string(n));
  }
  return check.out;
}

Outcome null_homotopies() {
  Checker check;
  std::mt19937_64 rng(29);
  int witnesses = 0;
  for (int n = 1; n <= 4; ++n) {
    BimoduleCategory cat(n);
    const auto& ring = cat.ring();
    for (int i = 1; i <= n; ++i)
      for (int prime = 0; prime < 2; ++prime) {
        auto c = std::make_shared<const ChainComplex>(prime ? build_Ri_prime(cat, i) : build_Ri(cat, i));
        // every X_j, then random integer combinations
        std::vector<std::vector<Coeff>> combos;
        for (int j = 0; j < n; ++j) {
          std::vector<Coeff> a(n, 0);
          a[j] = 1;
          combos.push_back(a);
        }
        for (int k = 0; k < 4; ++k) {
          std::vector<Coeff> a(n);
          for (auto& x : a) x = static_cast<Coeff>(rng() % 9) - 4;
          combos.push_back(a);
        }
        for (const auto& a : combos) {
          const AlgebraElement av = central(ring, a);
          const AlgebraElement corr =
              (ring.x_element(i - 1) + ring.x_element(i) * 2 + ring.x_element(i + 1)) * a[i - 1];
          const ChainMap f = left_mult(cat, c, av) - right_mult(cat, c, av - corr);
          const auto h = find_null_homotopy(cat, f);
          check(h && h->boundary(cat) == f, "l_a - r_(a - a_i(...)) witness");
          witnesses += h.has_value();
        }
        // control: the identity is not null-homotopic
        check(!find_null_homotopy(cat, ChainMap::identity(cat, c)), "identity reported null-homotopic");
        if (!prime) {
          const ChainMap f = left_mult(cat, c, ring.x_element(i - 1) - ring.x_element(i + 1)) +
                             right_mult(cat, c, ring.x_element(i + 1) - ring.x_element(i - 1));
          const auto h = find_null_homotopy(cat, f);
          check(h && h->boundary(cat) == f, "l_(X_{i-1}-X_{i+1}) + r_(X_{i+1}-X_{i-1}) witness");
          witnesses += h.has_value();
        }
      }
  }
  Outcome o = check.out;
  if (o.ok) o.detail = std::to_string(witnesses) + " witnesses verified";
  return o;
}

Outcome movie_moves() {
  Checker check;
  cli::Options opt;
  const auto r = cli::movie_moves(FIXTURE_DIR, opt);
  check(r["passed"].get<bool>(), "some fixture is not +-1");
  bool saw12 = false, saw13 = false;
  for (const auto& c : r["checks"]) {
    check(c["result"] != "undecided", c["name"].get<std::string>() + " undecided");
    if (c["name"] == "move12_negative_displayed") {
      saw12 = true;
      check(c["sign"] == 1 && c["exact"] == true, "displayed move 12 is not exactly +1");
    }
    if (c["name"] == "move13_negative_displayed") {
      saw13 = true;
      check(c["sign"] == -1, "displayed move 13 is not -1");
    }
  }
  for (const auto& f : load_fixtures(FIXTURE_DIR)) check(f.movie1.start.strands <= 4, f.name + " exceeds 4 strands");
  check(saw12 && saw13, "displayed fixtures missing");
  return check.out;
}

Outcome move13_reader() {
  Checker check;
  Functor F(3);
  const auto& cat = F.category();
  const auto c = move13_reader_check(F, 1);
  check(c.constrained.has_value(), "no constrained homotopy");
  if (c.constrained) {
    check(c.constrained->boundary(cat) == c.target_map, "dh + hd != target");
    for (const auto& [t, h] : c.constrained->comps)
      check(compose(cat, c.rho2.component(t - 1), h).is_zero(), "rho_2 h != 0");
  }
  check(!c.constrained_unreduced.has_value(), "unquotiented variant unexpectedly solvable");
  Outcome o = check.out;
  if (o.ok) o.detail = "rho_2 taken after the quotient pi_2 of the target; the unquotiented variant has no solution";
  return o;
}

Outcome polarity_laws() {
  Checker check;
  std::map<int, Functor> functors;
  auto functor = [&](int strands) -> Functor& { return functors.try_emplace(strands - 1, strands - 1).first->second; };
  auto degree_ok = [&](const BraidMovie& m) {
    const auto inv = functor(m.start.strands).invariant(m);
    return inv.map.degree() == 2 * inv.polarity.p_minus && inv.map.is_chain_map(functor(m.start.strands).category());
  };
  for (const auto& f : load_fixtures(FIXTURE_DIR)) {
    check(degree_ok(f.movie1), f.name + " movie1 degree");
    check(degree_ok(f.movie2), f.name + " movie2 degree");
  }
  std::mt19937_64 rng(101);
  for (int k = 0; k < 100; ++k) check(degree_ok(random_movie(rng, 3 + k % 2, 2, 3, false)), "random movie degree");
  for (int k = 0; k < 50; ++k) {
    const auto m = random_movie(rng, 3 + k % 2, 2, 3, true);
    check(functor(m.start.strands).nonvanishing(m).nonvanishing(), "positive movie certificate");
  }
  for (int n = 1; n <= 3; ++n)
    for (int i = 1; i <= n; ++i) {
      const MovieStep b{StepKind::Birth, 0, i, -1, false, -1};
      const BraidMovie m{{n + 1, {}}, {b, b}};
      auto& F = functor(n + 1);
      check(find_null_homotopy(F.category(), F.invariant(m).map).has_value(), "double negative birth");
    }
  return check.out;
}

Outcome decategorification() {
  Checker check;
  for (int n = 1; n <= 6; ++n) {
    const int s = n + 1;
    for (int i = 1; i <= n; ++i) {
      check(burau({s, {i, -i}}) == LaurentMatrix::identity(n), "sigma sigma^-1");
      check(burau({s, {-i, i}}) == LaurentMatrix::identity(n), "sigma^-1 sigma");
      if (i < n) check(burau({s, {i, i + 1, i}}) == burau({s, {i + 1, i, i + 1}}), "braid relation");
      for (int j = i + 2; j <= n; ++j) check(burau({s, {i, j}}) == burau({s, {j, i}}), "distant commutation");
    }
  }
  std::mt19937_64 rng(41);
  std::map<int, Functor> functors;
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 3;
    Functor& F = functors.try_emplace(n, n).first->second;
    const BraidWord w = random_word(rng, n + 1, 4);
    const auto c = F.complex(w);
    const auto kc = k_class(F.category(), *c);
    check(kc == burau(w), "k_class != burau for " + render(w));
    check(k_class(F.category(), *F.minimal(w).complex) == kc, "simplify changes k_class for " + render(w));
  }
  return check.out;
}

Outcome rouquier_module() {
  Checker check;
  const auto rel = rouquier::verify_relations(6);
  for (const auto& c : rel.checks) check(c.passed, c.name);
  for (const auto& c : rel.checks) check(!c.degrees.empty() && c.degrees.back().degree == 6, c.name + " truncation");
  for (int strands = 2; strands <= 4; ++strands) {
    rouquier::Soergel S(strands);
    for (int i = 1; i < strands; ++i) {
      const auto c = rouquier::build(S, {strands, {i}});
      check(rouquier::euler_class(c) == LaurentPoly(0) - LaurentPoly::monomial(1), "sigma_i[A] != -q[A]");
      for (int d = 0; d <= 6; ++d) check(rouquier::euler_piece(S, c, d) == -S.ring().rank(d - 1), "degree piece");
    }
  }
  rouquier::SemiTrivial F(3, 6);
  std::mt19937_64 rng(53);
  for (int k = 0; k < 20; ++k) {
    const auto m = random_movie(rng, 3, 2, 3, k % 2 == 0);
    const auto inv = F.invariant(m);
    const bool negative = polarity(m).p_minus > 0;
    check(inv.zero == negative, "zero iff p_- > 0");
    if (!negative) check(inv.unit_coefficient == 1 || inv.unit_coefficient == -1, "positive movie vanishes");
  }
  return check.out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"ring correctness", ring_correctness},
      {"braid relations", braid_relations},
      {"null-homotopies of central multiplications", null_homotopies},
      {"movie moves", movie_moves},
      {"move-13 constrained homotopy", move13_reader},
      {"polarity laws", polarity_laws},
      {"decategorification", decategorification},
      {"Rouquier complexes through degree 6", rouquier_module},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.ok;
    std::printf("%s %zu %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  return all ? 0 : 1;
}
