#include <algorithm>
#include <stdexcept>

#include "braidcat/complex.hpp"
#include "braidcat/linalg.hpp"

namespace braidcat {

namespace {

// Unknown morphisms X_t : S_t -> T_{t+offset} of internal degree `degree`,
// one integer variable per Hom-basis element of every summand pair.
class Unknowns {
 public:
  struct Var {
    int t, row, col;
    const Vec* basis;
  };

  Unknowns(const BimoduleCategory& cat, const ChainComplex& s, const ChainComplex& t, int degree, int offset)
      : cat_(cat), source_(s), target_(t), degree_(degree), offset_(offset) {
    for (const auto& [deg, o] : s.terms()) {
      const BimoduleObject& dst = t.term(deg + offset);
      for (int c = 0; c < static_cast<int>(o->size()); ++c)
        for (int r = 0; r < static_cast<int>(dst.size()); ++r) {
          const Summand& a = (*o)[c];
          const Summand& b = dst[r];
          for (const Vec& v : cat.hom_basis(a.shape, b.shape, degree + a.shift - b.shift)) {
            by_column_[{deg, c}].push_back(vars_.size());
            vars_.push_back({deg, r, c, &v});
          }
        }
    }
  }

  std::size_t size() const { return vars_.size(); }
  const Var& var(std::size_t k) const { return vars_[k]; }
  const std::vector<std::size_t>& in_column(int t, int c) const {
    static const std::vector<std::size_t> none;
    auto it = by_column_.find({t, c});
    return it == by_column_.end() ? none : it->second;
  }
  const Shape& row_shape(const Var& v) const { return target_.term(v.t + offset_)[v.row].shape; }

  // Morphisms from a solution vector.
  std::map<int, BimoduleMorphism> build(const linalg::BigVector& x) const {
    std::map<int, BimoduleMorphism> out;
    for (const auto& [deg, o] : source_.terms()) {
      if (target_.term(deg + offset_).empty()) continue;
      out.emplace(deg, BimoduleMorphism(o, target_.term_ptr(deg + offset_), degree_));
    }
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (x[k] == 0) continue;
      if (!x[k].fits_slong_p()) throw std::overflow_error("solution coefficient too large");
      const Var& v = vars_[k];
      out.at(v.t).add(v.row, v.col, *v.basis, x[k].get_si());
    }
    return out;
  }

 private:
  const BimoduleCategory& cat_;
  const ChainComplex& source_;
  const ChainComplex& target_;
  int degree_, offset_;
  std::vector<Var> vars_;
  std::map<std::pair<int, int>, std::vector<std::size_t>> by_column_;
};

// Linear equations on generator images, one row per lattice coordinate.
class System {
 public:
  explicit System(std::size_t vars) : vars_(vars) {}

  // Equation block `key` gets coefficient * image in variable var.
  void add(const std::tuple<int, int, int, int>& key, std::size_t var, const Vec& image, Coeff scale = 1) {
    for (std::size_t k = 0; k < image.size(); ++k)
      if (image[k] != 0) row(key, static_cast<int>(k))[var] += checked_mul(scale, image[k]);
  }
  void add_rhs(const std::tuple<int, int, int, int>& key, const Vec& image, Coeff scale = 1) {
    for (std::size_t k = 0; k < image.size(); ++k)
      if (image[k] != 0) {
        const std::size_t idx = index(key, static_cast<int>(k));
        rhs_[idx] += checked_mul(scale, image[k]);
      }
  }

  linalg::SparseMatrix matrix() const {
    linalg::SparseMatrix m(vars_);
    for (const auto& r : rows_) {
      std::vector<std::pair<std::size_t, linalg::BigInt>> entries;
      for (const auto& [v, c] : r)
        if (c != 0) entries.emplace_back(v, linalg::BigInt(static_cast<long>(c)));
      m.add_row(std::move(entries));
    }
    return m;
  }
  linalg::BigVector rhs() const {
    linalg::BigVector b(rows_.size(), 0);
    for (std::size_t k = 0; k < rows_.size(); ++k) b[k] = static_cast<long>(rhs_[k]);
    return b;
  }

 private:
  using Key = std::tuple<int, int, int, int, int>;
  std::size_t index(const std::tuple<int, int, int, int>& key, int coord) {
    const Key full = std::tuple_cat(key, std::make_tuple(coord));
    auto it = index_.find(full);
    if (it != index_.end()) return it->second;
    index_.emplace(full, rows_.size());
    rows_.emplace_back();
    rhs_.push_back(0);
    return rows_.size() - 1;
  }
  std::map<std::size_t, Coeff>& row(const std::tuple<int, int, int, int>& key, int coord) {
    return rows_[index(key, coord)];
  }

  std::size_t vars_;
  std::map<Key, std::size_t> index_;
  std::vector<std::map<std::size_t, Coeff>> rows_;
  std::vector<Coeff> rhs_;
};

// Coefficients of a degree-0 entry between summands of identical type,
// which is a multiple of the generator.
Coeff unit_coefficient(const BimoduleCategory& cat, const Shape& s, const Vec& image) {
  const Vec& gen = cat.lattice(s).generator;
  for (std::size_t k = 0; k < gen.size(); ++k)
    if (gen[k] != 0) return image[k] / gen[k];
  return 0;
}

}  // namespace

std::optional<Homotopy> find_null_homotopy(const BimoduleCategory& cat, const ChainMap& f,
                                           const HomotopyConstraint* constraint) {
  if (f.shift() != 0) throw std::invalid_argument("null-homotopy test needs a shift-0 map");
  const ChainComplex& S = f.source();
  const ChainComplex& T = f.target();
  Unknowns h(cat, S, T, f.degree(), -1);
  System sys(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const auto& v = h.var(k);
    const Shape& m_shape = h.row_shape(v);
    // d_T o h_t : S_t -> T_t
    auto dT = T.differential(v.t - 1);
    for (const auto& e : dT.column(v.row))
      sys.add({0, v.t, e.row, v.col}, k, cat.apply(m_shape, T.term(v.t)[e.row].shape, e.image, *v.basis));
    // h_t o d_S : S_{t-1} -> T_{t-1}
    auto dS = S.differential(v.t - 1);
    for (int c = 0; c < static_cast<int>(S.term(v.t - 1).size()); ++c)
      for (const auto& e : dS.column(c))
        if (e.row == v.col)
          sys.add({0, v.t - 1, v.row, c}, k, cat.apply(S.term(v.t)[v.col].shape, m_shape, *v.basis, e.image));
    if (constraint) {
      auto it = constraint->post.find(v.t);
      if (it != constraint->post.end())
        for (const auto& e : it->second.column(v.row))
          sys.add({1, v.t, e.row, v.col}, k, cat.apply(m_shape, it->second.target()[e.row].shape, e.image, *v.basis));
    }
  }
  for (const auto& [t, ft] : f.components())
    for (int c = 0; c < static_cast<int>(ft.source().size()); ++c)
      for (const auto& e : ft.column(c)) sys.add_rhs({0, t, e.row, c}, e.image);

  auto x = linalg::solve(sys.matrix(), sys.rhs());
  if (!x) return std::nullopt;
  Homotopy out{f.source_ptr(), f.target_ptr(), f.degree(), h.build(*x)};
  for (auto it = out.comps.begin(); it != out.comps.end();) {
    if (it->second.is_zero()) it = out.comps.erase(it);
    else ++it;
  }
  if (!(out.boundary(cat) == f)) throw std::logic_error("null-homotopy witness failed verification");
  return out;
}

std::vector<ChainMap> chain_map_basis(const BimoduleCategory& cat, ComplexPtr source, ComplexPtr target,
                                      int degree) {
  const ChainComplex& S = *source;
  const ChainComplex& T = *target;
  Unknowns f(cat, S, T, degree, 0);
  System sys(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& v = f.var(k);
    const Shape& m_shape = f.row_shape(v);
    // d_T o f_t - f_{t+1} o d_S, on S_t -> T_{t+1}
    auto dT = T.differential(v.t);
    for (const auto& e : dT.column(v.row))
      sys.add({0, v.t, e.row, v.col}, k, cat.apply(m_shape, T.term(v.t + 1)[e.row].shape, e.image, *v.basis));
    auto dS = S.differential(v.t - 1);
    for (int c = 0; c < static_cast<int>(S.term(v.t - 1).size()); ++c)
      for (const auto& e : dS.column(c))
        if (e.row == v.col)
          sys.add({0, v.t - 1, v.row, c}, k, cat.apply(S.term(v.t)[v.col].shape, m_shape, *v.basis, e.image), -1);
  }
  std::vector<ChainMap> out;
  for (const auto& x : linalg::kernel_basis(sys.matrix())) {
    ChainMap m(source, target, degree, 0);
    for (auto& [t, comp] : f.build(x)) m.set_component(t, std::move(comp));
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<ChainMap> invert(const BimoduleCategory& cat, const ChainMap& f) {
  if (f.shift() != 0 || f.degree() != 0) throw std::invalid_argument("invert needs a degree-0, shift-0 map");
  const ChainComplex& S = f.source();
  const ChainComplex& T = f.target();
  for (const auto& [t, o] : S.terms())
    if (T.term(t).size() != o->size()) return std::nullopt;
  for (const auto& [t, o] : T.terms())
    if (S.term(t).size() != o->size()) return std::nullopt;
  Unknowns g(cat, T, S, 0, 0);
  System sys(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& v = g.var(k);
    // f_t o g_t = id
    auto ft = f.component(v.t);
    for (const auto& e : ft.column(v.row))
      sys.add({0, v.t, e.row, v.col}, k, cat.apply(g.row_shape(v), T.term(v.t)[e.row].shape, e.image, *v.basis));
  }
  for (const auto& [t, o] : T.terms())
    for (int c = 0; c < static_cast<int>(o->size()); ++c)
      sys.add_rhs({0, t, c, c}, cat.lattice((*o)[c].shape).generator);
  auto x = linalg::solve(sys.matrix(), sys.rhs());
  if (!x) return std::nullopt;
  ChainMap inv(f.target_ptr(), f.source_ptr(), 0, 0);
  for (auto& [t, comp] : g.build(*x)) inv.set_component(t, std::move(comp));
  if (!(compose(cat, inv, f) == ChainMap::identity(cat, f.source_ptr()))) return std::nullopt;
  if (!(compose(cat, f, inv) == ChainMap::identity(cat, f.target_ptr()))) return std::nullopt;
  return inv;
}

namespace {

// Search for an isomorphism A -> B among integer combinations of a chain-map
// basis. A degree-0 map of minimal complexes is invertible exactly when each
// block of coefficients between summands of one type is unimodular, so the
// search runs on those unit coefficients.
std::optional<ChainMap> find_isomorphism(const BimoduleCategory& cat, ComplexPtr a, ComplexPtr b) {
  auto basis = chain_map_basis(cat, a, b, 0);
  // Unit coordinates, grouped into square blocks by (t, shape, shift).
  struct BlockPos {
    std::vector<int> rows, cols;
  };
  std::map<std::tuple<int, Shape, int>, BlockPos> blocks;
  for (const auto& [t, o] : a->terms())
    for (int c = 0; c < static_cast<int>(o->size()); ++c) blocks[{t, (*o)[c].shape, (*o)[c].shift}].cols.push_back(c);
  for (const auto& [t, o] : b->terms())
    for (int r = 0; r < static_cast<int>(o->size()); ++r) blocks[{t, (*o)[r].shape, (*o)[r].shift}].rows.push_back(r);
  std::vector<std::tuple<int, int, int, Shape>> coords;  // (t, row, col, shape)
  for (const auto& [key, pos] : blocks) {
    if (pos.rows.size() != pos.cols.size()) return std::nullopt;
    for (int r : pos.rows)
      for (int c : pos.cols) coords.emplace_back(std::get<0>(key), r, c, std::get<1>(key));
  }
  if (coords.empty()) return ChainMap::zero(a, b, 0);

  linalg::DenseMatrix m(coords.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const auto& [t, r, c, s] = coords[k];
      auto comp = basis[j].component(t);
      if (const Vec* img = comp.entry(r, c)) m(k, j) = static_cast<long>(unit_coefficient(cat, s, *img));
    }
  linalg::DenseMatrix h, v;
  const std::size_t rank = linalg::column_echelon(m, h, v);
  if (rank == 0) return std::nullopt;

  auto unimodular = [&](const std::vector<long>& x) {
    std::size_t k = 0;
    for (const auto& [key, pos] : blocks) {
      const std::size_t n = pos.rows.size();
      linalg::DenseMatrix blk(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j, ++k)
          for (std::size_t q = 0; q < rank; ++q) blk(i, j) += h(k, q) * x[q];
      if (abs(linalg::determinant(blk)) != 1) return false;
    }
    return true;
  };
  auto build = [&](const std::vector<long>& x) {
    ChainMap f = ChainMap::zero(a, b, 0);
    for (std::size_t q = 0; q < rank; ++q) {
      if (x[q] == 0) continue;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        linalg::BigInt c = v(j, q) * x[q];
        if (c == 0) continue;
        f = f + basis[j].scaled(c.get_si());
      }
    }
    return f;
  };

  // Coefficient vectors in {-2..2}^rank by increasing max-norm, then support.
  std::vector<long> x(rank, 1);
  if (unimodular(x)) return build(x);
  const std::size_t budget = 200000;
  std::size_t tried = 0;
  for (long bound = 1; bound <= 2; ++bound) {
    std::vector<long> y(rank, -bound);
    while (true) {
      bool on_shell = false;
      for (long c : y) on_shell |= (std::abs(c) == bound);
      if (on_shell && unimodular(y)) return build(y);
      if (++tried > budget) return std::nullopt;
      std::size_t q = 0;
      while (q < rank && y[q] == bound) y[q++] = -bound;
      if (q == rank) break;
      ++y[q];
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Equivalence> is_homotopy_equivalent(const BimoduleCategory& cat, ComplexPtr c1, ComplexPtr c2) {
  Simplified s1 = simplify(cat, c1);
  Simplified s2 = simplify(cat, c2);
  if (term_table(*s1.complex) != term_table(*s2.complex)) return std::nullopt;
  auto f = find_isomorphism(cat, s1.complex, s2.complex);
  if (!f) return std::nullopt;
  auto g = invert(cat, *f);
  if (!g) return std::nullopt;
  ChainMap forward = compose(cat, s2.inclusion, compose(cat, *f, s1.projection));
  ChainMap backward = compose(cat, s1.inclusion, compose(cat, *g, s2.projection));
  return Equivalence{std::move(forward), std::move(backward), std::move(s1), std::move(s2), std::move(*f),
                     std::move(*g)};
}

}  // namespace braidcat
