#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "braidcat/braid.hpp"
#include "braidcat/integer.hpp"
#include "braidcat/laurent.hpp"
#include "braidcat/linalg.hpp"

// Rouquier complexes of Soergel bimodules over A = Z[y_1, ..., y_{n-1}],
// y_i = x_i - x_{i+1} of degree 1. Bimodule maps are exact polynomial
// matrices; homology is examined one internal degree at a time, through a
// truncation degree D.
namespace braidcat::rouquier {

// Exponent vectors carry no trailing zeros, so 1 is the empty vector.
using Exponents = std::vector<int>;

class Poly {
 public:
  Poly() = default;
  static Poly constant(Coeff c);
  static Poly monomial(Exponents e, Coeff c = 1);

  const std::map<Exponents, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // highest total degree, -1 for zero
  Coeff coefficient(const Exponents& e) const;
  void add(const Exponents& e, Coeff c);
  Poly scaled(Coeff c) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;
  std::string to_string() const;

 private:
  std::map<Exponents, Coeff> terms_;  // no zero coefficients
};

int total_degree(const Exponents& e);

// A for `strands` strands, with the reflections s_i and the decomposition
// A = A^i + z_i A^i over Z.
class PolyRing {
 public:
  explicit PolyRing(int strands);

  int strands() const { return strands_; }
  int vars() const { return strands_ - 1; }
  Poly one() const { return Poly::constant(1); }
  Poly y(int i) const;

  Poly reflect(int i, const Poly& f) const;
  // (f - s_i f) / y_i
  Poly demazure(int i, const Poly& f) const;
  // z_i = -y_{i+1}, else -y_{i-1}, else y_i: the only choice with two
  // variables or fewer, since over Z the Demazure image must be a unit or 2.
  const Poly& complement(int i) const { return z_[i - 1]; }
  // f = f0 + z_i f1 with f0, f1 invariant under s_i.
  std::pair<Poly, Poly> split(int i, const Poly& f) const;

  const std::vector<Exponents>& monomials(int d) const;
  int rank(int d) const { return d < 0 ? 0 : static_cast<int>(monomials(d).size()); }

 private:
  int strands_;
  std::vector<Poly> z_;
  std::vector<Coeff> dz_;  // demazure(i, z_i)
  mutable std::map<int, std::vector<Exponents>> monomials_;
};

// Bott-Samelson bimodule B_{s_1} (x)_A ... (x)_A B_{s_k}, shifted by {shift}.
// It is free as a left A-module on 1 (x) b_1 (x) ... (x) b_k with b_j in
// {1, z_{s_j}}; basis index e has bit j set when b_j = z. Degree of basis
// element e is popcount(e) + shift.
struct Object {
  std::vector<int> seq;
  int shift = 0;

  int size() const { return 1 << seq.size(); }
  int degree(int e) const;
  friend bool operator==(const Object&, const Object&) = default;
};

using Element = std::vector<Poly>;  // left coefficients on the basis

struct PolyMatrix {
  int rows = 0, cols = 0;
  std::vector<Poly> data;

  PolyMatrix() = default;
  PolyMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Poly& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const Poly& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  bool is_zero() const;
  PolyMatrix scaled(Coeff c) const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;
};

class Soergel {
 public:
  explicit Soergel(int strands) : ring_(strands) {}
  const PolyRing& ring() const { return ring_; }

  Element right_mult(const std::vector<int>& seq, const Element& x, const Poly& p) const;
  // Matrix of right multiplication by y_j on the left basis (column = source).
  const PolyMatrix& right_action(const std::vector<int>& seq, int j) const;

  // eta_i(1) = y_i (x) 1 + 1 (x) y_i in B_i, as printed; and the primitive
  // generator eta_i(1) / content used for the complexes.
  Element eta_raw(int i) const;
  Element eta(int i) const;

  // Multiplication m on factor `pos`: B_seq -> B_{seq without pos}.
  PolyMatrix multiplication(const std::vector<int>& seq, int pos) const;
  // id (x) eta_i (x) id: B_seq -> B_{seq with i inserted at pos}.
  PolyMatrix unit(const std::vector<int>& seq, int pos, int i) const;

 private:
  PolyRing ring_;
  mutable std::map<std::pair<std::vector<int>, int>, PolyMatrix> right_;
};

struct Term {
  std::vector<Object> summands;
  std::vector<std::vector<int>> tags;  // choice vector per summand for word complexes
  std::vector<int> offset;             // first basis index of each summand
  int size = 0;

  void push(Object o, std::vector<int> tag = {});
  int degree(int index) const;  // internal degree of a basis index
};

struct Complex {
  std::map<int, Term> terms;
  std::map<int, PolyMatrix> d;  // d[t] : term t -> term t+1

  const Term& term(int t) const;
  PolyMatrix differential(int t) const;
  bool check(const Soergel& S) const;  // d o d = 0 and right-linearity of d
};

// R_{w_1} (x) ... (x) R_{w_k}. R_i: B_i in degree -1, A in degree 0;
// R_i': A in degree 0, B_i{-1} in degree 1. Summands sorted by choice vector.
Complex build(const Soergel& S, const BraidWord& w);
Complex unit_complex();

struct ChainMap {
  int degree = 0;
  std::map<int, PolyMatrix> comps;

  PolyMatrix component(int t, const Complex& src, const Complex& tgt) const;
  ChainMap scaled(Coeff c) const;
};

ChainMap identity(const Complex& c);
ChainMap operator+(const ChainMap& a, const ChainMap& b);
ChainMap compose(const ChainMap& g, const ChainMap& f);
bool is_chain_map(const Soergel& S, const Complex& src, const Complex& tgt, const ChainMap& f);
bool is_zero(const ChainMap& f);

// Z-basis of the bimodule chain maps src -> tgt of internal degree `degree`.
std::vector<ChainMap> chain_map_basis(const Soergel& S, const Complex& src, const Complex& tgt, int degree);

// Matrix of a left-linear map on the internal-degree-d pieces.
linalg::DenseMatrix degree_piece(const Soergel& S, const PolyMatrix& m, const Term& src, const Term& tgt,
                                 int map_degree, int d);
int piece_rank(const Soergel& S, const Term& t, int d);

struct DegreeCertificate {
  int degree = 0;
  bool acyclic = false;
  std::vector<int> dims;  // cone term ranks, lowest cohomological degree first
};

// Homology of the cone of a degree-0 chain map, one internal degree at a time.
std::vector<DegreeCertificate> cone_homology(const Soergel& S, const Complex& src, const Complex& tgt,
                                             const ChainMap& f, int max_degree);

// A degree-0 bimodule chain map whose cone is acyclic in every internal
// degree <= max_degree, from a small search over the chain map basis.
std::optional<ChainMap> find_equivalence(const Soergel& S, const Complex& src, const Complex& tgt,
                                         int max_degree);

// Graded Euler characteristic as a multiple of [A]: sum_t (-1)^t sum q^deg
// over the left basis.
LaurentPoly euler_class(const Complex& c);
// sum_t (-1)^t rank of the internal-degree-d piece of term t.
long euler_piece(const Soergel& S, const Complex& c, int d);

// Constant coefficient of the A -> A component in cohomological degree 0.
Coeff unit_coefficient(const Complex& src, const Complex& tgt, const ChainMap& f);

// Braid cobordisms to bimodule chain maps: positive branch points get the
// identity on A, Reidemeister moves the normalized local equivalences, and a
// movie with a negative branch point the zero map.
class SemiTrivial {
 public:
  SemiTrivial(int strands, int max_degree = 6) : S_(strands), max_degree_(max_degree) {}
  const Soergel& soergel() const { return S_; }

  const Complex& complex(const BraidWord& w);
  const ChainMap& local_equivalence(const BraidWord& u, const BraidWord& u2);
  ChainMap step_map(const BraidWord& before, const MovieStep& s);

  struct Result {
    ChainMap map;  // zero when p_- > 0
    bool zero = false;
    Polarity polarity;
    Coeff unit_coefficient = 0;
  };
  Result invariant(const BraidMovie& m);

 private:
  Soergel S_;
  int max_degree_;
  std::map<std::vector<int>, Complex> complexes_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, ChainMap> local_;
};

struct RelationCheck {
  std::string name;
  bool passed = false;
  std::vector<DegreeCertificate> degrees;
};

struct RelationReport {
  int max_degree = 0;
  std::vector<RelationCheck> checks;
  bool passed() const;
};

// R_i R_i' ~ A and R_i' R_i ~ A (3 strands), distant commutation (4 strands),
// the braid relation (3 strands), each through degree max_degree.
RelationReport verify_relations(int max_degree);

nlohmann::json to_json(const DegreeCertificate& c);
nlohmann::json to_json(const RelationReport& r);

}  // namespace braidcat::rouquier
