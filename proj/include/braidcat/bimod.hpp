#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "braidcat/integer.hpp"
#include "braidcat/zigzag.hpp"

// Graded projective A_n-bimodules: formal sums of shifted copies of A_n and of
// P_i (x) _jP, and bimodule maps between them.
namespace braidcat {

using Vec = std::vector<Coeff>;

enum class Kind { Diagonal, Tensor };

// Isomorphism type of an indecomposable summand, ignoring the grading shift.
struct Shape {
  Kind kind = Kind::Diagonal;
  int left = 0;   // i in P_i (x) _jP
  int right = 0;  // j

  static Shape diagonal() { return {}; }
  static Shape tensor(int i, int j) { return {Kind::Tensor, i, j}; }
  std::string to_string() const;
  auto operator<=>(const Shape&) const = default;
};

// Provenance of a summand inside a tensor product of braid-generator
// complexes: which term each factor contributed, and the middle basis paths
// joining consecutive Tensor factors. Tags make summand order canonical, so
// tensor products are strictly associative.
struct Tag {
  std::vector<int> choices;
  std::vector<int> betas;
  auto operator<=>(const Tag&) const = default;
};

struct Summand {
  Shape shape;
  int shift = 0;  // internal grading shift {k}: elements move up by k
  Tag tag;

  bool same_type(const Summand& o) const { return shape == o.shape && shift == o.shift; }
  friend bool operator==(const Summand&, const Summand&) = default;
};

struct BimoduleObject {
  std::vector<Summand> summands;

  std::size_t size() const { return summands.size(); }
  bool empty() const { return summands.empty(); }
  const Summand& operator[](std::size_t k) const { return summands[k]; }
  friend bool operator==(const BimoduleObject&, const BimoduleObject&) = default;
};

using ObjectPtr = std::shared_ptr<const BimoduleObject>;

// Underlying free abelian group of a shape, with the A_n actions on it.
// Diagonal: basis paths. Tensor(i,j): pairs (x, y) with x ending at i and y
// starting at j. Each action by a basis path sends a basis element to a basis
// element or to zero (-1).
struct Lattice {
  Shape shape;
  std::vector<std::pair<int, int>> elements;
  std::vector<int> degree;
  std::vector<std::vector<int>> left, right;  // [path][element]
  Vec generator;                              // 1, or (i) (x) (j)

  int rank() const { return static_cast<int>(elements.size()); }
};

class BimoduleCategory;

// Matrix of bimodule maps indexed by (target summand, source summand). Each
// nonzero entry is stored as the image of the source summand's generator in
// the target summand's lattice; the image determines the map.
//
// Internal degree d: an entry from a summand with shift k to one with shift k'
// has image of intrinsic degree d + k - k'.
class BimoduleMorphism {
 public:
  struct Entry {
    int row;
    Vec image;
  };

  BimoduleMorphism() = default;
  BimoduleMorphism(ObjectPtr source, ObjectPtr target, int degree);

  static BimoduleMorphism identity(const BimoduleCategory& cat, ObjectPtr object);

  const BimoduleObject& source() const { return *source_; }
  const BimoduleObject& target() const { return *target_; }
  const ObjectPtr& source_ptr() const { return source_; }
  const ObjectPtr& target_ptr() const { return target_; }
  int degree() const { return degree_; }

  const std::vector<Entry>& column(int col) const { return cols_[col]; }
  const Vec* entry(int row, int col) const;
  // entry(row, col) += scale * image
  void add(int row, int col, const Vec& image, Coeff scale = 1);
  bool is_zero() const;
  std::size_t nonzero_count() const;

  BimoduleMorphism scaled(Coeff c) const;
  BimoduleMorphism operator+(const BimoduleMorphism& o) const;
  BimoduleMorphism operator-(const BimoduleMorphism& o) const;
  bool operator==(const BimoduleMorphism& o) const;

 private:
  ObjectPtr source_, target_;
  int degree_ = 0;
  std::vector<std::vector<Entry>> cols_;
};

// A summand of a tensor product, recording where it came from: summand
// indices in the two factors and, when both are Tensor summands, the basis
// path of (j)A(p) joining them (-1 otherwise).
struct TensorPiece {
  int left = 0;
  int right = 0;
  int beta = -1;
};

struct TensorObjects {
  BimoduleObject object;
  std::vector<TensorPiece> pieces;
  std::map<std::tuple<int, int, int>, int> index;  // (left, right, beta) -> summand
};

// The additive category of graded projective A_n-bimodules for one n.
// Lattices are built eagerly; Hom bases are computed on demand and cached
// (write-once under a mutex), so a category may be shared across threads.
class BimoduleCategory {
 public:
  explicit BimoduleCategory(int n);

  const ZigzagRing& ring() const { return ring_; }
  int n() const { return ring_.n(); }
  const Lattice& lattice(const Shape& s) const;

  Vec left_act(const Shape& s, int path, const Vec& m) const;
  Vec right_act(const Shape& s, int path, const Vec& m) const;
  // Value on m of the bimodule map s -> t whose generator image is gen_image.
  Vec apply(const Shape& s, const Shape& t, const Vec& gen_image, const Vec& m) const;
  // Conversions between Diagonal-lattice vectors and algebra elements.
  Vec to_vec(const AlgebraElement& a) const;
  AlgebraElement to_element(const Vec& v) const;

  // Whether gen_image defines a bimodule map s -> t (that is, satisfies the
  // relations of the generator of s).
  bool is_valid_image(const Shape& s, const Shape& t, const Vec& gen_image) const;
  // Intrinsic degree of a homogeneous vector; nullopt for zero or mixed.
  std::optional<int> homogeneous_degree(const Shape& s, const Vec& v) const;

  // Z-basis (Hermite normal form) of the bimodule maps s -> t raising the
  // intrinsic degree by `degree`, as generator images.
  const std::vector<Vec>& hom_basis(const Shape& s, const Shape& t, int degree) const;

  // Explicit matrix of a bimodule map on the underlying lattices
  // (rows: target elements, columns: source elements).
  std::vector<Vec> to_matrix(const Shape& s, const Shape& t, const Vec& gen_image) const;

  TensorObjects tensor_objects(const BimoduleObject& a, const BimoduleObject& b) const;
  // x (x)_A y for x in a summand of shape a and y in one of shape b, split by
  // the middle path beta of the resulting summand (-1 when there is none).
  std::map<int, Vec> tensor_elements(const Shape& a, const Vec& x, const Shape& b, const Vec& y) const;

 private:
  ZigzagRing ring_;
  std::map<Shape, Lattice> lattices_;
  mutable std::mutex hom_mutex_;
  mutable std::map<std::tuple<Shape, Shape, int>, std::shared_ptr<const std::vector<Vec>>> hom_cache_;
};

using CategoryPtr = std::shared_ptr<const BimoduleCategory>;

BimoduleMorphism compose(const BimoduleCategory& cat, const BimoduleMorphism& g, const BimoduleMorphism& f);

// u (x) v : tensor(u.source, v.source) -> tensor(u.target, v.target), every
// entry multiplied by `scale`.
BimoduleMorphism tensor_morphisms(const BimoduleCategory& cat, const BimoduleMorphism& u,
                                  const BimoduleMorphism& v, Coeff scale = 1);

// Same, with precomputed tensor objects (must be tensor_objects of the
// respective sources and targets).
BimoduleMorphism tensor_morphisms(const BimoduleCategory& cat, const BimoduleMorphism& u,
                                  const BimoduleMorphism& v, const TensorObjects& src,
                                  const TensorObjects& dst, ObjectPtr src_ptr, ObjectPtr dst_ptr,
                                  Coeff scale = 1);

// Every entry is a homogeneous bimodule map of the declared degree.
bool is_valid_morphism(const BimoduleCategory& cat, const BimoduleMorphism& f);

// Integer matrix dump of a morphism on the underlying lattices.
std::string debug_dump(const BimoduleCategory& cat, const BimoduleMorphism& f);

}  // namespace braidcat
