#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braidcat/braid.hpp"
#include "braidcat/complex.hpp"

// Braid words to complexes R(w), braid movies to chain maps F(S).
namespace braidcat {

struct CobordismInvariant {
  ComplexPtr source, target;  // R(start), R(end), unsimplified
  ChainMap map;               // internal degree 2 p_-, shift 0
  Polarity polarity;
};

// w1: A -> R_i, w2: R_i' -> A, w3: R_i -> A, w4: A -> R_i'.
enum class TypeTwo { W1, W2, W3, W4 };

enum class MoveVerdict { Plus, Minus, Inequivalent, Undecided };
std::string to_string(MoveVerdict v);

struct MoveCheck {
  MoveVerdict verdict = MoveVerdict::Undecided;
  bool exact = false;  // F2 = sign * F1 on the nose
  // Both F2 - F1 and F2 + F1 null-homotopic, i.e. F1 itself is.
  bool both_null = false;
  int degree1 = 0, degree2 = 0;
  // Null-homotopy of F2 -+ F1 reduced to the minimal forms of R(start), R(end).
  std::optional<Homotopy> witness;
  std::string note;
};

struct NonvanishingCertificate {
  // Coefficient of sum e_i in the image of the degree-0 generator of A inside
  // R(start), projected to the A summand in degree 0 of R(end).
  Coeff coefficient = 0;
  bool nonvanishing() const { return coefficient == 1 || coefficient == -1; }
};

// Caches complexes and local equivalences; not shareable across threads.
class Functor {
 public:
  explicit Functor(int n);  // ring A_n, braids on n+1 strands

  const BimoduleCategory& category() const { return cat_; }
  int n() const { return n_; }

  // R_{w_1} (x) ... (x) R_{w_k}, associated from the left, unsimplified.
  ComplexPtr complex(const BraidWord& w);
  // Minimal form of complex(w) with its inclusion and projection.
  const Simplified& minimal(const BraidWord& w);

  ChainMap type2_map(TypeTwo v, int i);
  // Homotopy equivalence R(u) -> R(u2) for the two sides of a Reidemeister
  // move, normalized so that its A -> A component in degree 0 is +id.
  ChainMap local_equivalence(const BraidWord& u, const BraidWord& u2);
  // id_{R(tau1)} (x) local (x) id_{R(tau2)} : R(before) -> R(apply_step(before, s)).
  ChainMap step_map(const BraidWord& before, const MovieStep& s);

  CobordismInvariant invariant(const BraidMovie& m);
  MoveCheck verify_move(const BraidMovie& m1, const BraidMovie& m2);
  NonvanishingCertificate nonvanishing(const BraidMovie& m);

 private:
  using Key = std::vector<int>;
  void check_word(const BraidWord& w) const;

  int n_;
  BimoduleCategory cat_;
  std::map<Key, ComplexPtr> complexes_;
  std::map<Key, std::shared_ptr<const Simplified>> minimal_;
  std::map<std::pair<Key, Key>, ChainMap> local_;
};

// Coefficient c with f(1) = c * sum e_i on the A summands in degree 0
// (zero when either side has none).
Coeff diagonal_coefficient(const ChainMap& f);

// Move-13 computation on X = R_i' (x) R_{i+1}'. target_map is
// r_{X_{i-1} - X_{i+1}} + l_{X_i - X_{i+2}}. The end word's complex is the cone
// of gamma_{i+1} (x) id_X : X -> Y = P_{i+1} (x) _{i+1}P{-2} (x) X; rho2 is that
// map followed by the quotient pi_2 of Y by its contractible part (the
// projection of simplify). A homotopy h with d h + h d = target_map and
// rho2 h = 0 makes target_map null-homotopic as a map into the quotient cone.
struct Move13Check {
  ChainMap target_map;
  ChainMap rho2_unreduced;  // gamma_{i+1} (x) id_X
  ChainMap rho2;            // pi_2 o rho2_unreduced
  std::optional<Homotopy> unconstrained;
  std::optional<Homotopy> constrained;            // rho2 h = 0
  std::optional<Homotopy> constrained_unreduced;  // rho2_unreduced h = 0
};
Move13Check move13_reader_check(Functor& F, int i);

}  // namespace braidcat
