#include "braidcat/decat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace braidcat {

LaurentPoly graded_rank(const ZigzagRing& ring, int l, int j) {
  LaurentPoly p;
  for (int path : ring.paths_between(l, j)) p.add(ring.degree(path), 1);
  return p;
}

LaurentMatrix k_class(const BimoduleCategory& cat, const ChainComplex& c) {
  const int n = cat.n();
  const ZigzagRing& ring = cat.ring();
  LaurentMatrix m(n);
  for (const auto& [t, o] : c.terms()) {
    const Coeff sign = t % 2 == 0 ? 1 : -1;
    for (const auto& s : o->summands) {
      const LaurentPoly shift = LaurentPoly::monomial(s.shift, sign);
      for (int j = 1; j <= n; ++j) {
        if (s.shape.kind == Kind::Diagonal) m(j - 1, j - 1) += shift;
        else m(s.shape.left - 1, j - 1) += shift * graded_rank(ring, s.shape.right, j);
      }
    }
  }
  return m;
}

LaurentMatrix burau_generator(int n, int index) {
  const int i = std::abs(index);
  if (index == 0 || i > n) throw std::out_of_range("generator index out of range");
  const int e = index > 0 ? 1 : -1;
  LaurentMatrix m = LaurentMatrix::identity(n);
  m(i - 1, i - 1) = LaurentPoly::monomial(2 * e, -1);
  if (i > 1) m(i - 1, i - 2) = LaurentPoly::monomial(e, -1);
  if (i < n) m(i - 1, i) = LaurentPoly::monomial(e, -1);
  return m;
}

LaurentMatrix burau(const BraidWord& w) {
  w.validate();
  const int n = w.strands - 1;
  LaurentMatrix m = LaurentMatrix::identity(n);
  for (int l : w.letters) m = m * burau_generator(n, l);
  return m;
}

namespace {

LaurentPoly det_rec(const LaurentMatrix& m, std::vector<int>& cols, int row) {
  const int n = m.size();
  if (row == n) return 1;
  LaurentPoly sum;
  int parity = 0;
  for (int k = 0; k < n; ++k) {
    if (cols[k] < 0) continue;
    if (!m(row, k).is_zero()) {
      cols[k] = -1;
      LaurentPoly term = m(row, k) * det_rec(m, cols, row + 1);
      cols[k] = k;
      if (parity % 2 == 0) sum += term;
      else sum -= term;
    }
    ++parity;
  }
  return sum;
}

}  // namespace

LaurentPoly determinant(const LaurentMatrix& m) {
  std::vector<int> cols(m.size());
  for (int k = 0; k < m.size(); ++k) cols[k] = k;
  return det_rec(m, cols, 0);
}

std::vector<std::vector<Coeff>> at_q_equals_one(const LaurentMatrix& m) {
  std::vector<std::vector<Coeff>> out(m.size(), std::vector<Coeff>(m.size(), 0));
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      for (const auto& [e, c] : m(i, j).terms()) out[i][j] = checked_add(out[i][j], c);
  return out;
}

}  // namespace braidcat
