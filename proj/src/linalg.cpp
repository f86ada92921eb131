#include "braidcat/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace braidcat::linalg {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("multiply: shape mismatch");
  DenseMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
    }
  return c;
}

DenseMatrix to_dense(const SparseMatrix& a) {
  DenseMatrix d(a.rows.size(), a.cols);
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (const auto& [j, v] : a.rows[i]) d(i, j) += v;
  return d;
}

namespace {

void swap_cols(DenseMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

// col_dst -= q * col_src
void sub_col(DenseMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t i = 0; i < m.rows; ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

void negate_col(DenseMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows; ++i) m(i, c) = -m(i, c);
}

void swap_rows(DenseMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

void sub_row(DenseMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols; ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

using Row = std::map<std::size_t, BigInt>;

// Gauss-Jordan elimination restricted to unit pivots. Pivot rows keep only
// references to columns that were never pivoted before them, so back
// substitution runs in reverse pivot order.
struct Presolve {
  struct Pivot {
    std::size_t col;
    int sign;
    Row rest;  // pivot row without the pivot column
    BigInt rhs;
  };
  std::vector<Pivot> pivots;
  std::vector<Row> remaining;
  std::vector<BigInt> remaining_rhs;
  bool inconsistent = false;
};

Presolve presolve(const SparseMatrix& a, const BigVector* b) {
  Presolve out;
  std::vector<Row> rows(a.rows.size());
  std::vector<BigInt> rhs(a.rows.size(), 0);
  std::vector<std::set<std::size_t>> col_rows(a.cols);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    for (const auto& [j, v] : a.rows[i]) {
      if (j >= a.cols) throw std::out_of_range("sparse matrix column out of range");
      rows[i][j] += v;
    }
    for (auto it = rows[i].begin(); it != rows[i].end();) {
      if (it->second == 0) it = rows[i].erase(it);
      else {
        col_rows[it->first].insert(i);
        ++it;
      }
    }
    if (b) rhs[i] = (*b)[i];
  }
  std::vector<bool> active(rows.size(), true);

  while (true) {
    // Pick the shortest active row holding a unit, and within it the unit
    // column touching the fewest other rows.
    std::size_t best_row = rows.size(), best_col = 0, best_len = 0, best_colcount = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!active[i] || rows[i].empty()) continue;
      if (best_row != rows.size() && rows[i].size() >= best_len) continue;
      for (const auto& [j, v] : rows[i]) {
        if (v != 1 && v != -1) continue;
        std::size_t cc = col_rows[j].size();
        if (best_row != i || cc < best_colcount) {
          best_row = i;
          best_col = j;
          best_len = rows[i].size();
          best_colcount = cc;
        }
      }
      if (best_row == i && best_len <= 1) break;
    }
    if (best_row == rows.size()) break;

    const std::size_t p = best_row, c = best_col;
    const int s = rows[p][c] == 1 ? 1 : -1;
    active[p] = false;
    std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
    for (std::size_t r : targets) {
      if (r == p) continue;
      BigInt factor = rows[r][c] * s;
      for (const auto& [j, v] : rows[p]) {
        BigInt& entry = rows[r][j];
        entry -= factor * v;
        if (entry == 0) {
          rows[r].erase(j);
          col_rows[j].erase(r);
        } else {
          col_rows[j].insert(r);
        }
      }
      rhs[r] -= factor * rhs[p];
    }
    for (const auto& [j, v] : rows[p]) col_rows[j].erase(p);
    Presolve::Pivot piv{c, s, rows[p], rhs[p]};
    piv.rest.erase(c);
    out.pivots.push_back(std::move(piv));
    rows[p].clear();
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!active[i]) continue;
    if (rows[i].empty()) {
      if (rhs[i] != 0) out.inconsistent = true;
      continue;
    }
    out.remaining.push_back(std::move(rows[i]));
    out.remaining_rhs.push_back(rhs[i]);
  }
  return out;
}

// Fill pivot columns of x from the other entries.
void back_substitute(const Presolve& pre, BigVector& x, bool homogeneous) {
  for (auto it = pre.pivots.rbegin(); it != pre.pivots.rend(); ++it) {
    BigInt acc = homogeneous ? BigInt(0) : it->rhs;
    for (const auto& [j, v] : it->rest) acc -= v * x[j];
    x[it->col] = acc * it->sign;
  }
}

// Dense data for the residual system over the non-pivot columns it touches.
struct Residual {
  std::vector<std::size_t> columns;  // local -> global
  DenseMatrix h, v;
  std::size_t r = 0;
};

Residual residual(const Presolve& pre) {
  Residual out;
  std::map<std::size_t, std::size_t> local;
  for (const auto& row : pre.remaining)
    for (const auto& [j, val] : row) local.emplace(j, 0);
  for (auto& [g, l] : local) {
    l = out.columns.size();
    out.columns.push_back(g);
  }
  DenseMatrix a(pre.remaining.size(), out.columns.size());
  for (std::size_t i = 0; i < pre.remaining.size(); ++i)
    for (const auto& [j, val] : pre.remaining[i]) a(i, local[j]) = val;
  out.r = column_echelon(a, out.h, out.v);
  return out;
}

}  // namespace

std::size_t column_echelon(const DenseMatrix& a, DenseMatrix& h, DenseMatrix& v) {
  h = a;
  v = DenseMatrix::identity(a.cols);
  std::size_t piv = 0;
  for (std::size_t i = 0; i < h.rows && piv < h.cols; ++i) {
    while (true) {
      std::size_t best = h.cols;
      for (std::size_t j = piv; j < h.cols; ++j)
        if (h(i, j) != 0 && (best == h.cols || abs(h(i, j)) < abs(h(i, best)))) best = j;
      if (best == h.cols) break;
      swap_cols(h, piv, best);
      swap_cols(v, piv, best);
      bool done = true;
      for (std::size_t j = piv + 1; j < h.cols; ++j) {
        if (h(i, j) == 0) continue;
        BigInt q = floor_div(h(i, j), h(i, piv));
        sub_col(h, j, piv, q);
        sub_col(v, j, piv, q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, piv) == 0) continue;
    if (h(i, piv) < 0) {
      negate_col(h, piv);
      negate_col(v, piv);
    }
    ++piv;
  }
  return piv;
}

std::optional<BigVector> solve(const SparseMatrix& a, const BigVector& b) {
  if (b.size() != a.rows.size()) throw std::invalid_argument("solve: rhs size mismatch");
  Presolve pre = presolve(a, &b);
  if (pre.inconsistent) return std::nullopt;
  BigVector x(a.cols, 0);
  if (!pre.remaining.empty()) {
    Residual res = residual(pre);
    const DenseMatrix& h = res.h;
    std::vector<BigInt> z(h.cols, 0);
    std::size_t row = 0;
    for (std::size_t j = 0; j < res.r; ++j) {
      while (row < h.rows && h(row, j) == 0) ++row;
      BigInt acc = pre.remaining_rhs[row];
      for (std::size_t jj = 0; jj < j; ++jj) acc -= h(row, jj) * z[jj];
      if (!mpz_divisible_p(acc.get_mpz_t(), h(row, j).get_mpz_t())) return std::nullopt;
      z[j] = acc / h(row, j);
    }
    for (std::size_t i = 0; i < h.rows; ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < res.r; ++j) acc += h(i, j) * z[j];
      if (acc != pre.remaining_rhs[i]) return std::nullopt;
    }
    for (std::size_t l = 0; l < res.columns.size(); ++l) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < res.r; ++j) acc += res.v(l, j) * z[j];
      x[res.columns[l]] = acc;
    }
  }
  back_substitute(pre, x, false);
  return x;
}

std::vector<BigVector> kernel_basis(const SparseMatrix& a) {
  Presolve pre = presolve(a, nullptr);
  std::vector<bool> is_pivot(a.cols, false);
  for (const auto& p : pre.pivots) is_pivot[p.col] = true;
  Residual res;
  if (!pre.remaining.empty()) res = residual(pre);
  std::vector<bool> in_residual(a.cols, false);
  for (std::size_t g : res.columns) in_residual[g] = true;

  std::vector<BigVector> gens;
  for (std::size_t j = 0; j < a.cols; ++j) {
    if (is_pivot[j] || in_residual[j]) continue;
    BigVector x(a.cols, 0);
    x[j] = 1;
    back_substitute(pre, x, true);
    gens.push_back(std::move(x));
  }
  for (std::size_t k = res.r; k < res.columns.size(); ++k) {
    BigVector x(a.cols, 0);
    for (std::size_t l = 0; l < res.columns.size(); ++l) x[res.columns[l]] = res.v(l, k);
    back_substitute(pre, x, true);
    gens.push_back(std::move(x));
  }
  if (gens.empty()) return {};
  DenseMatrix m(gens.size(), a.cols);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m(i, j) = gens[i][j];
  DenseMatrix hnf = hermite_normal_form(m);
  std::vector<BigVector> out(hnf.rows, BigVector(a.cols));
  for (std::size_t i = 0; i < hnf.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out[i][j] = hnf(i, j);
  return out;
}

DenseMatrix hermite_normal_form(const DenseMatrix& a) {
  DenseMatrix m = a;
  std::size_t piv = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < m.cols && piv < m.rows; ++c) {
    while (true) {
      std::size_t best = m.rows;
      for (std::size_t r = piv; r < m.rows; ++r)
        if (m(r, c) != 0 && (best == m.rows || abs(m(r, c)) < abs(m(best, c)))) best = r;
      if (best == m.rows) break;
      swap_rows(m, piv, best);
      bool done = true;
      for (std::size_t r = piv + 1; r < m.rows; ++r) {
        if (m(r, c) == 0) continue;
        sub_row(m, r, piv, floor_div(m(r, c), m(piv, c)));
        if (m(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m(piv, c) == 0) continue;
    if (m(piv, c) < 0)
      for (std::size_t j = 0; j < m.cols; ++j) m(piv, j) = -m(piv, j);
    for (std::size_t r = 0; r < piv; ++r)
      if (m(r, c) != 0) sub_row(m, r, piv, floor_div(m(r, c), m(piv, c)));
    pivot_cols.push_back(c);
    ++piv;
  }
  DenseMatrix out(piv, m.cols);
  for (std::size_t i = 0; i < piv; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

std::size_t rank(const DenseMatrix& a) { return hermite_normal_form(a).rows; }

std::vector<BigInt> invariant_factors(const DenseMatrix& a) {
  DenseMatrix m = a;
  std::vector<BigInt> diag;
  const std::size_t limit = std::min(m.rows, m.cols);
  for (std::size_t t = 0; t < limit; ++t) {
    while (true) {
      std::size_t bi = m.rows, bj = m.cols;
      for (std::size_t i = t; i < m.rows; ++i)
        for (std::size_t j = t; j < m.cols; ++j)
          if (m(i, j) != 0 && (bi == m.rows || abs(m(i, j)) < abs(m(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m.rows) return diag;
      swap_rows(m, t, bi);
      swap_cols(m, t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows; ++i)
        if (m(i, t) != 0) {
          sub_row(m, i, t, floor_div(m(i, t), m(t, t)));
          if (m(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < m.cols; ++j)
        if (m(t, j) != 0) {
          sub_col(m, j, t, floor_div(m(t, j), m(t, t)));
          if (m(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      // The pivot must divide the rest of the block; otherwise fold an
      // offending row in and repeat.
      std::size_t bad = m.rows;
      for (std::size_t i = t + 1; i < m.rows && bad == m.rows; ++i)
        for (std::size_t j = t + 1; j < m.cols; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m.rows) break;
      for (std::size_t j = 0; j < m.cols; ++j) m(t, j) += m(bad, j);
    }
    diag.push_back(abs(m(t, t)));
  }
  return diag;
}

BigInt determinant(const DenseMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows;
  if (n == 0) return 1;
  DenseMatrix m = a;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      swap_rows(m, k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j));
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace braidcat::linalg
