#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidcat/integer.hpp"

namespace braidcat {

// A basis path of the zigzag algebra A_n: (i), (i|i+-1) or X_i, written as its
// vertex sequence. Length-3 paths are stored only in canonical form
// (i|i-1|i) for i >= 2 and (1|2|1) for i = 1.
struct BasisPath {
  std::vector<int> vertices;

  int degree() const { return static_cast<int>(vertices.size()) - 1; }
  int first() const { return vertices.front(); }
  int last() const { return vertices.back(); }
  std::string to_string() const;
  static BasisPath parse(const std::string& text);

  auto operator<=>(const BasisPath&) const = default;
};

// Integer combination of basis paths of one ring, keyed by basis index.
// Zero coefficients are never stored.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  static AlgebraElement basis(int index, Coeff c = 1);

  const std::map<int, Coeff>& terms() const { return terms_; }
  Coeff coefficient(int index) const;
  bool is_zero() const { return terms_.empty(); }
  void add(int index, Coeff c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator+(const AlgebraElement& o) const { return AlgebraElement(*this) += o; }
  AlgebraElement operator-(const AlgebraElement& o) const { return AlgebraElement(*this) -= o; }
  AlgebraElement operator*(Coeff c) const;
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::map<int, Coeff> terms_;
};

// The graded ring A_n over Z. Immutable after construction.
//
// Multiplication concatenates paths in written order, (a|b)(b|c) = (a|b|c);
// a product of basis paths is either zero or a single basis path.
class ZigzagRing {
 public:
  explicit ZigzagRing(int n);

  int n() const { return n_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const BasisPath& path(int index) const { return basis_.at(index); }
  const std::vector<BasisPath>& basis() const { return basis_; }
  std::optional<int> index_of(const BasisPath& p) const;

  int idempotent(int i) const;           // (i)
  int arrow(int from, int to) const;     // (from|to)
  int x(int i) const;                    // X_i
  int degree(int index) const { return basis_[index].degree(); }
  int first_vertex(int index) const { return basis_[index].first(); }
  int last_vertex(int index) const { return basis_[index].last(); }

  // Basis index of the product a*b, or nullopt when it vanishes.
  std::optional<int> product(int a, int b) const { return table_[a * rank() + b]; }

  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement one() const;
  // X_j as an element, or zero when j is outside 1..n. Used for formulas that
  // omit X_0 and X_{n+1}.
  AlgebraElement x_element(int j) const;
  // Degree-d homogeneous part.
  AlgebraElement homogeneous_part(const AlgebraElement& a, int d) const;
  bool is_central(const AlgebraElement& a) const;
  // 1, X_1, ..., X_n; each entry is checked against every basis path.
  std::vector<AlgebraElement> center_basis() const;

  // Paths ending at vertex i (a Z-basis of P_i = A_n (i)), starting at i (of
  // (i)A_n), and running from i to j (of (i)A_n(j)); ascending basis order.
  const std::vector<int>& ending_at(int i) const { return ending_at_.at(i - 1); }
  const std::vector<int>& starting_at(int i) const { return starting_at_.at(i - 1); }
  std::vector<int> paths_between(int from, int to) const;

  std::string to_string(const AlgebraElement& a) const;
  nlohmann::json to_json() const;

 private:
  int n_;
  std::vector<BasisPath> basis_;
  std::map<BasisPath, int> index_;
  std::vector<std::optional<int>> table_;
  std::vector<std::vector<int>> ending_at_, starting_at_;
};

}  // namespace braidcat
