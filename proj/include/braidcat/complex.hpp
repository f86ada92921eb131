#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"

#include "braidcat/bimod.hpp"

namespace braidcat {

// Bounded cochain complex of graded projective bimodules. Only nonzero terms
// are stored; differential(t) maps term t to term t+1 and has internal
// degree 0.
class ChainComplex {
 public:
  ChainComplex() = default;

  void set_term(int t, ObjectPtr object);
  // Requires both terms to be set; a zero morphism may be stored.
  void set_differential(int t, BimoduleMorphism d);

  ObjectPtr term_ptr(int t) const;  // empty object when absent
  const BimoduleObject& term(int t) const { return *term_ptr(t); }
  BimoduleMorphism differential(int t) const;  // zero morphism when absent
  const std::map<int, ObjectPtr>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  int min_degree() const;
  int max_degree() const;
  std::size_t summand_count() const;

  // d o d = 0, all differentials of degree 0 and valid bimodule maps.
  bool check(const BimoduleCategory& cat) const;

  friend bool operator==(const ChainComplex&, const ChainComplex&);

 private:
  std::map<int, ObjectPtr> terms_;
  std::map<int, BimoduleMorphism> diffs_;
};

using ComplexPtr = std::shared_ptr<const ChainComplex>;

ObjectPtr empty_object();

// Degree-wise morphisms f_t : source_t -> target_{t+shift} of internal degree
// `degree`, satisfying d f = (-1)^shift f d.
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(ComplexPtr source, ComplexPtr target, int degree, int shift = 0);

  static ChainMap identity(const BimoduleCategory& cat, ComplexPtr c);
  static ChainMap zero(ComplexPtr source, ComplexPtr target, int degree, int shift = 0);

  const ChainComplex& source() const { return *source_; }
  const ChainComplex& target() const { return *target_; }
  const ComplexPtr& source_ptr() const { return source_; }
  const ComplexPtr& target_ptr() const { return target_; }
  int degree() const { return degree_; }
  int shift() const { return shift_; }

  // Component on source term t (zero morphism when absent).
  BimoduleMorphism component(int t) const;
  void set_component(int t, BimoduleMorphism f);
  const std::map<int, BimoduleMorphism>& components() const { return comps_; }

  bool is_zero() const;
  bool is_chain_map(const BimoduleCategory& cat) const;

  ChainMap scaled(Coeff c) const;
  ChainMap operator+(const ChainMap& o) const;
  ChainMap operator-(const ChainMap& o) const;
  bool operator==(const ChainMap& o) const;

 private:
  ComplexPtr source_, target_;
  int degree_ = 0;
  int shift_ = 0;
  std::map<int, BimoduleMorphism> comps_;
};

ChainMap compose(const BimoduleCategory& cat, const ChainMap& g, const ChainMap& f);

// h_t : source_t -> target_{t-1}, for maps of cohomological shift 0.
struct Homotopy {
  ComplexPtr source, target;
  int degree = 0;
  std::map<int, BimoduleMorphism> comps;

  BimoduleMorphism component(int t) const;
  // d h + h d, as a chain map source -> target.
  ChainMap boundary(const BimoduleCategory& cat) const;
};

// Two-term complexes of a braid generator. R_i: P_i (x) _iP in degree -1,
// A_n in degree 0, joined by multiplication. R_i': A_n in degree 0,
// P_i (x) _iP{-2} in degree 1, joined by gamma_i.
ChainComplex build_Ri(const BimoduleCategory& cat, int i);
ChainComplex build_Ri_prime(const BimoduleCategory& cat, int i);
ChainComplex unit_complex(const BimoduleCategory& cat);  // A_n in degree 0

// The three structure maps of the generator complexes, as generator images.
Vec beta_image(const BimoduleCategory& cat, int i);   // P_i (x) _iP -> A_n
Vec gamma_image(const BimoduleCategory& cat, int i);  // A_n -> P_i (x) _iP{-2}
Vec delta_image(const BimoduleCategory& cat, int i);  // X_{i-1} - X_{i+1}

// Total complex of c1 (x)_A c2 with differential d1 (x) id + (-1)^s id (x) d2
// on bidegree (s, t). Summands are ordered by tag, so tensor products of
// generator complexes are strictly associative.
ChainComplex tensor(const BimoduleCategory& cat, const ChainComplex& c1, const ChainComplex& c2);

// f (x) g between tensor products as laid out by tensor(); the Koszul sign
// is (-1)^(g.shift * s) on source bidegree (s, t).
ChainMap tensor(const BimoduleCategory& cat, const ChainMap& f, const ChainMap& g, ComplexPtr source,
                ComplexPtr target);
ChainMap tensor(const BimoduleCategory& cat, const ChainMap& f, const ChainMap& g);

// c[s]{k}: term t is c_{t+s} with every internal shift raised by k;
// differentials are negated for odd s.
ChainComplex shift(const ChainComplex& c, int s, int k);

// Cone of a degree-0, shift-0 chain map f : C -> D. Term t is
// C_{t+1} + D_t with differential [[-d_C, 0], [f, d_D]].
ChainComplex cone(const BimoduleCategory& cat, const ChainMap& f);

// Componentwise left or right multiplication by a homogeneous central
// element of A_n.
ChainMap left_mult(const BimoduleCategory& cat, ComplexPtr c, const AlgebraElement& a);
ChainMap right_mult(const BimoduleCategory& cat, ComplexPtr c, const AlgebraElement& a);

struct Simplified {
  ComplexPtr complex;
  ChainMap inclusion;   // simplified -> original
  ChainMap projection;  // original -> simplified
  // inclusion o projection - id = d h + h d, when requested.
  std::optional<Homotopy> homotopy;
};

// Gaussian elimination of every differential entry that is +-id between
// summands of identical shape and shift. projection o inclusion = id exactly.
Simplified simplify(const BimoduleCategory& cat, ComplexPtr c, bool with_homotopy = false);

// Graded term multiset {(t, shape, shift): multiplicity}.
std::map<std::tuple<int, Shape, int>, int> term_table(const ChainComplex& c);

// Additional linear conditions on a homotopy: post[t] o h_t = 0 for each t.
struct HomotopyConstraint {
  std::map<int, BimoduleMorphism> post;
};

// Exact decision over Z whether f (shift 0) is null-homotopic, with a witness.
std::optional<Homotopy> find_null_homotopy(const BimoduleCategory& cat, const ChainMap& f,
                                           const HomotopyConstraint* constraint = nullptr);

// Z-basis of the chain maps source -> target of internal degree `degree`
// (shift 0).
std::vector<ChainMap> chain_map_basis(const BimoduleCategory& cat, ComplexPtr source, ComplexPtr target,
                                      int degree);

// Degree-wise inverse of a shift-0, degree-0 chain map, if it is an
// isomorphism of complexes.
std::optional<ChainMap> invert(const BimoduleCategory& cat, const ChainMap& f);

struct Equivalence {
  ChainMap forward;   // c1 -> c2
  ChainMap backward;  // c2 -> c1
  // Minimal forms and the isomorphism between them.
  Simplified first, second;
  ChainMap minimal_forward, minimal_backward;
};

// Simplify both sides, then search for an isomorphism between the minimal
// complexes. nullopt is definite when the graded term tables differ;
// otherwise it means no isomorphism was found by the search.
std::optional<Equivalence> is_homotopy_equivalent(const BimoduleCategory& cat, ComplexPtr c1, ComplexPtr c2);

nlohmann::json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const BimoduleCategory& cat, const nlohmann::json& j);
// Nonzero components as (row, col, generator image) entries.
nlohmann::json to_json(const ChainMap& f);
nlohmann::json to_json(const Homotopy& h);

}  // namespace braidcat
