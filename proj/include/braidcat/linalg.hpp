#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

// Exact linear algebra over the integers: solvability of A x = b, kernel
// lattices, Hermite and Smith normal forms.
namespace braidcat::linalg {

using BigInt = mpz_class;
using BigVector = std::vector<BigInt>;

// Row-major sparse matrix. Each row is a list of (column, value) pairs with
// distinct columns; zero values are allowed and ignored.
struct SparseMatrix {
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> rows;

  explicit SparseMatrix(std::size_t ncols = 0) : cols(ncols) {}
  std::size_t row_count() const { return rows.size(); }
  void add_row(std::vector<std::pair<std::size_t, BigInt>> row) { rows.push_back(std::move(row)); }
};

struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  BigInt& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  static DenseMatrix identity(std::size_t n);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix to_dense(const SparseMatrix& a);

// A particular integer solution of a x = b, or nullopt when none exists over Z
// (it may still exist over Q).
std::optional<BigVector> solve(const SparseMatrix& a, const BigVector& b);

// Z-basis of {x in Z^cols : a x = 0}, returned as the rows of a matrix in row
// Hermite normal form so the result is independent of elimination order.
std::vector<BigVector> kernel_basis(const SparseMatrix& a);

// Row Hermite normal form: nonzero rows only, positive pivots, entries above
// each pivot reduced into [0, pivot).
DenseMatrix hermite_normal_form(const DenseMatrix& a);

// Column echelon form with the unimodular transform: a * v = h, where h is
// lower-echelon (pivot row strictly increases with column index, trailing
// columns zero). Returns the number of nonzero columns of h.
std::size_t column_echelon(const DenseMatrix& a, DenseMatrix& h, DenseMatrix& v);

std::size_t rank(const DenseMatrix& a);

// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form, all positive.
std::vector<BigInt> invariant_factors(const DenseMatrix& a);

// Determinant of a square matrix (fraction-free Bareiss elimination).
BigInt determinant(const DenseMatrix& a);

}  // namespace braidcat::linalg
