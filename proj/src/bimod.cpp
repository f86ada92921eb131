#include "braidcat/bimod.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "braidcat/linalg.hpp"

namespace braidcat {

std::string Shape::to_string() const {
  if (kind == Kind::Diagonal) return "A";
  return "P" + std::to_string(left) + "(x)" + std::to_string(right) + "P";
}

// ---------------------------------------------------------------------------
// BimoduleMorphism

BimoduleMorphism::BimoduleMorphism(ObjectPtr source, ObjectPtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), cols_(source_->size()) {}

BimoduleMorphism BimoduleMorphism::identity(const BimoduleCategory& cat, ObjectPtr object) {
  BimoduleMorphism id(object, object, 0);
  for (std::size_t k = 0; k < object->size(); ++k)
    id.add(static_cast<int>(k), static_cast<int>(k), cat.lattice((*object)[k].shape).generator);
  return id;
}

const Vec* BimoduleMorphism::entry(int row, int col) const {
  const auto& c = cols_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, int r) { return e.row < r; });
  if (it == c.end() || it->row != row) return nullptr;
  return &it->image;
}

void BimoduleMorphism::add(int row, int col, const Vec& image, Coeff scale) {
  if (scale == 0 || braidcat::is_zero(image)) return;
  auto& c = cols_.at(col);
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, int r) { return e.row < r; });
  if (it == c.end() || it->row != row) {
    Vec v(image.size(), 0);
    axpy(v, scale, image);
    c.insert(it, Entry{row, std::move(v)});
    return;
  }
  axpy(it->image, scale, image);
  if (braidcat::is_zero(it->image)) c.erase(it);
}

bool BimoduleMorphism::is_zero() const {
  for (const auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

std::size_t BimoduleMorphism::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

BimoduleMorphism BimoduleMorphism::scaled(Coeff c) const {
  BimoduleMorphism r(source_, target_, degree_);
  if (c == 0) return r;
  r.cols_ = cols_;
  for (auto& col : r.cols_)
    for (auto& e : col)
      for (auto& x : e.image) x = checked_mul(x, c);
  return r;
}

BimoduleMorphism BimoduleMorphism::operator+(const BimoduleMorphism& o) const {
  if (source() != o.source() || target() != o.target() || degree_ != o.degree_)
    throw std::invalid_argument("adding morphisms of different type");
  BimoduleMorphism r = *this;
  for (std::size_t c = 0; c < o.cols_.size(); ++c)
    for (const auto& e : o.cols_[c]) r.add(e.row, static_cast<int>(c), e.image);
  return r;
}

BimoduleMorphism BimoduleMorphism::operator-(const BimoduleMorphism& o) const { return *this + o.scaled(-1); }

bool BimoduleMorphism::operator==(const BimoduleMorphism& o) const {
  if (degree_ != o.degree_ || source() != o.source() || target() != o.target()) return false;
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    if (cols_[c].size() != o.cols_[c].size()) return false;
    for (std::size_t k = 0; k < cols_[c].size(); ++k)
      if (cols_[c][k].row != o.cols_[c][k].row || cols_[c][k].image != o.cols_[c][k].image) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// BimoduleCategory

namespace {

Lattice build_lattice(const ZigzagRing& ring, const Shape& shape) {
  Lattice lat;
  lat.shape = shape;
  const int r = ring.rank();
  std::map<std::pair<int, int>, int> index;
  if (shape.kind == Kind::Diagonal) {
    for (int p = 0; p < r; ++p) lat.elements.push_back({p, -1});
  } else {
    for (int x : ring.ending_at(shape.left))
      for (int y : ring.starting_at(shape.right)) lat.elements.push_back({x, y});
  }
  for (int k = 0; k < lat.rank(); ++k) {
    index[lat.elements[k]] = k;
    const auto& [x, y] = lat.elements[k];
    lat.degree.push_back(ring.degree(x) + (y >= 0 ? ring.degree(y) : 0));
  }
  lat.left.assign(r, std::vector<int>(lat.rank(), -1));
  lat.right.assign(r, std::vector<int>(lat.rank(), -1));
  for (int a = 0; a < r; ++a)
    for (int k = 0; k < lat.rank(); ++k) {
      const auto& [x, y] = lat.elements[k];
      if (auto ax = ring.product(a, x)) lat.left[a][k] = index.at({*ax, y});
      if (y < 0) {
        if (auto xa = ring.product(x, a)) lat.right[a][k] = index.at({*xa, -1});
      } else if (auto ya = ring.product(y, a)) {
        lat.right[a][k] = index.at({x, *ya});
      }
    }
  lat.generator.assign(lat.rank(), 0);
  if (shape.kind == Kind::Diagonal) {
    for (int i = 1; i <= ring.n(); ++i) lat.generator[index.at({ring.idempotent(i), -1})] = 1;
  } else {
    lat.generator[index.at({ring.idempotent(shape.left), ring.idempotent(shape.right)})] = 1;
  }
  return lat;
}

}  // namespace

BimoduleCategory::BimoduleCategory(int n) : ring_(n) {
  lattices_.emplace(Shape::diagonal(), build_lattice(ring_, Shape::diagonal()));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) lattices_.emplace(Shape::tensor(i, j), build_lattice(ring_, Shape::tensor(i, j)));
}

const Lattice& BimoduleCategory::lattice(const Shape& s) const {
  auto it = lattices_.find(s);
  if (it == lattices_.end()) throw std::out_of_range("no lattice for shape " + s.to_string());
  return it->second;
}

Vec BimoduleCategory::left_act(const Shape& s, int path, const Vec& m) const {
  const Lattice& lat = lattice(s);
  Vec out(lat.rank(), 0);
  const auto& table = lat.left[path];
  for (int k = 0; k < lat.rank(); ++k)
    if (m[k] != 0 && table[k] >= 0) out[table[k]] = checked_add(out[table[k]], m[k]);
  return out;
}

Vec BimoduleCategory::right_act(const Shape& s, int path, const Vec& m) const {
  const Lattice& lat = lattice(s);
  Vec out(lat.rank(), 0);
  const auto& table = lat.right[path];
  for (int k = 0; k < lat.rank(); ++k)
    if (m[k] != 0 && table[k] >= 0) out[table[k]] = checked_add(out[table[k]], m[k]);
  return out;
}

Vec BimoduleCategory::apply(const Shape& s, const Shape& t, const Vec& gen_image, const Vec& m) const {
  const Lattice& src = lattice(s);
  const Lattice& dst = lattice(t);
  Vec out(dst.rank(), 0);
  for (int e = 0; e < src.rank(); ++e) {
    const Coeff c = m[e];
    if (c == 0) continue;
    const auto& [x, y] = src.elements[e];
    // Diagonal: p = p * 1.  Tensor: x (x) y = x * ((i) (x) (j)) * y.
    const auto& lt = dst.left[x];
    for (int k = 0; k < dst.rank(); ++k) {
      if (gen_image[k] == 0) continue;
      int k1 = lt[k];
      if (k1 < 0) continue;
      if (y >= 0) {
        k1 = dst.right[y][k1];
        if (k1 < 0) continue;
      }
      out[k1] = checked_add(out[k1], checked_mul(c, gen_image[k]));
    }
  }
  return out;
}

Vec BimoduleCategory::to_vec(const AlgebraElement& a) const {
  Vec v(ring_.rank(), 0);
  for (const auto& [k, c] : a.terms()) v[k] = c;
  return v;
}

AlgebraElement BimoduleCategory::to_element(const Vec& v) const {
  AlgebraElement a;
  for (int k = 0; k < static_cast<int>(v.size()); ++k) a.add(k, v[k]);
  return a;
}

bool BimoduleCategory::is_valid_image(const Shape& s, const Shape& t, const Vec& g) const {
  if (s.kind == Kind::Tensor) {
    return left_act(t, ring_.idempotent(s.left), g) == g && right_act(t, ring_.idempotent(s.right), g) == g;
  }
  for (int a = 0; a < ring_.rank(); ++a)
    if (left_act(t, a, g) != right_act(t, a, g)) return false;
  return true;
}

std::optional<int> BimoduleCategory::homogeneous_degree(const Shape& s, const Vec& v) const {
  const Lattice& lat = lattice(s);
  std::optional<int> d;
  for (int k = 0; k < lat.rank(); ++k) {
    if (v[k] == 0) continue;
    if (d && *d != lat.degree[k]) return std::nullopt;
    d = lat.degree[k];
  }
  return d;
}

const std::vector<Vec>& BimoduleCategory::hom_basis(const Shape& s, const Shape& t, int degree) const {
  const auto key = std::make_tuple(s, t, degree);
  {
    std::lock_guard<std::mutex> lock(hom_mutex_);
    auto it = hom_cache_.find(key);
    if (it != hom_cache_.end()) return *it->second;
  }
  const Lattice& dst = lattice(t);
  std::vector<int> slots;
  for (int k = 0; k < dst.rank(); ++k)
    if (dst.degree[k] == degree) slots.push_back(k);

  auto basis = std::make_shared<std::vector<Vec>>();
  if (s.kind == Kind::Tensor) {
    // Maps out of P_i (x) _jP correspond to elements of (i) T (j).
    const int ei = ring_.idempotent(s.left), ej = ring_.idempotent(s.right);
    for (int k : slots)
      if (dst.left[ei][k] == k && dst.right[ej][k] == k) {
        Vec v(dst.rank(), 0);
        v[k] = 1;
        basis->push_back(std::move(v));
      }
  } else if (!slots.empty()) {
    // Maps out of A_n correspond to elements commuting with every path.
    std::map<int, std::size_t> col;
    for (std::size_t c = 0; c < slots.size(); ++c) col[slots[c]] = c;
    linalg::SparseMatrix system(slots.size());
    for (int a = 0; a < ring_.rank(); ++a) {
      std::map<int, std::map<std::size_t, int>> rows;
      for (int k : slots) {
        if (int l = dst.left[a][k]; l >= 0) rows[l][col[k]] += 1;
        if (int r = dst.right[a][k]; r >= 0) rows[r][col[k]] -= 1;
      }
      for (const auto& [target, entries] : rows) {
        std::vector<std::pair<std::size_t, linalg::BigInt>> row;
        for (const auto& [c, v] : entries)
          if (v != 0) row.emplace_back(c, v);
        if (!row.empty()) system.add_row(std::move(row));
      }
    }
    for (const auto& kv : linalg::kernel_basis(system)) {
      Vec v(dst.rank(), 0);
      for (std::size_t c = 0; c < slots.size(); ++c) v[slots[c]] = kv[c].get_si();
      basis->push_back(std::move(v));
    }
  }
  std::lock_guard<std::mutex> lock(hom_mutex_);
  auto [it, inserted] = hom_cache_.emplace(key, std::move(basis));
  return *it->second;
}

std::vector<Vec> BimoduleCategory::to_matrix(const Shape& s, const Shape& t, const Vec& gen_image) const {
  const Lattice& src = lattice(s);
  const Lattice& dst = lattice(t);
  std::vector<Vec> m(dst.rank(), Vec(src.rank(), 0));
  for (int e = 0; e < src.rank(); ++e) {
    Vec unit(src.rank(), 0);
    unit[e] = 1;
    Vec img = apply(s, t, gen_image, unit);
    for (int k = 0; k < dst.rank(); ++k) m[k][e] = img[k];
  }
  return m;
}

TensorObjects BimoduleCategory::tensor_objects(const BimoduleObject& a, const BimoduleObject& b) const {
  TensorObjects out;
  for (int ia = 0; ia < static_cast<int>(a.size()); ++ia)
    for (int ib = 0; ib < static_cast<int>(b.size()); ++ib) {
      const Summand& sa = a[ia];
      const Summand& sb = b[ib];
      auto push = [&](Shape shape, int shift, int beta) {
        Summand s;
        s.shape = shape;
        s.shift = shift;
        s.tag.choices = sa.tag.choices;
        s.tag.choices.insert(s.tag.choices.end(), sb.tag.choices.begin(), sb.tag.choices.end());
        s.tag.betas = sa.tag.betas;
        if (beta >= 0) s.tag.betas.push_back(beta);
        s.tag.betas.insert(s.tag.betas.end(), sb.tag.betas.begin(), sb.tag.betas.end());
        out.index[{ia, ib, beta}] = static_cast<int>(out.object.size());
        out.object.summands.push_back(std::move(s));
        out.pieces.push_back({ia, ib, beta});
      };
      if (sa.shape.kind == Kind::Diagonal) {
        push(sb.shape, sa.shift + sb.shift, -1);
      } else if (sb.shape.kind == Kind::Diagonal) {
        push(sa.shape, sa.shift + sb.shift, -1);
      } else {
        for (int beta : ring_.paths_between(sa.shape.right, sb.shape.left))
          push(Shape::tensor(sa.shape.left, sb.shape.right), sa.shift + sb.shift + ring_.degree(beta), beta);
      }
    }
  return out;
}

std::map<int, Vec> BimoduleCategory::tensor_elements(const Shape& a, const Vec& x, const Shape& b,
                                                     const Vec& y) const {
  std::map<int, Vec> out;
  if (a.kind == Kind::Diagonal) {
    Vec acc(lattice(b).rank(), 0);
    for (int p = 0; p < ring_.rank(); ++p)
      if (x[p] != 0) axpy(acc, x[p], left_act(b, p, y));
    if (!braidcat::is_zero(acc)) out[-1] = std::move(acc);
    return out;
  }
  if (b.kind == Kind::Diagonal) {
    Vec acc(lattice(a).rank(), 0);
    for (int p = 0; p < ring_.rank(); ++p)
      if (y[p] != 0) axpy(acc, y[p], right_act(a, p, x));
    if (!braidcat::is_zero(acc)) out[-1] = std::move(acc);
    return out;
  }
  // (u (x) v) (x)_A (u' (x) v') = u (x) (v u') (x) v'
  const Lattice& la = lattice(a);
  const Lattice& lb = lattice(b);
  const Shape target = Shape::tensor(a.left, b.right);
  const Lattice& lt = lattice(target);
  for (int ka = 0; ka < la.rank(); ++ka) {
    if (x[ka] == 0) continue;
    const auto& [u, v] = la.elements[ka];
    for (int kb = 0; kb < lb.rank(); ++kb) {
      if (y[kb] == 0) continue;
      const auto& [u2, v2] = lb.elements[kb];
      auto beta = ring_.product(v, u2);
      if (!beta) continue;
      auto& acc = out[*beta];
      if (acc.empty()) acc.assign(lt.rank(), 0);
      // element (u, v2) of P_{a.left} (x) _{b.right}P
      int idx = -1;
      for (int k = 0; k < lt.rank(); ++k)
        if (lt.elements[k] == std::make_pair(u, v2)) {
          idx = k;
          break;
        }
      acc[idx] = checked_add(acc[idx], checked_mul(x[ka], y[kb]));
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (braidcat::is_zero(it->second)) it = out.erase(it);
    else ++it;
  }
  return out;
}

// ---------------------------------------------------------------------------

BimoduleMorphism compose(const BimoduleCategory& cat, const BimoduleMorphism& g, const BimoduleMorphism& f) {
  if (f.target_ptr() != g.source_ptr() && f.target() != g.source())
    throw std::invalid_argument("compose: object mismatch");
  BimoduleMorphism out(f.source_ptr(), g.target_ptr(), f.degree() + g.degree());
  const BimoduleObject& mid = f.target();
  const BimoduleObject& dst = g.target();
  for (int c = 0; c < static_cast<int>(f.source().size()); ++c)
    for (const auto& fe : f.column(c)) {
      const Shape& ms = mid[fe.row].shape;
      for (const auto& ge : g.column(fe.row))
        out.add(ge.row, c, cat.apply(ms, dst[ge.row].shape, ge.image, fe.image));
    }
  return out;
}

BimoduleMorphism tensor_morphisms(const BimoduleCategory& cat, const BimoduleMorphism& u,
                                  const BimoduleMorphism& v, const TensorObjects& src,
                                  const TensorObjects& dst, ObjectPtr src_ptr, ObjectPtr dst_ptr,
                                  Coeff scale) {
  BimoduleMorphism out(std::move(src_ptr), std::move(dst_ptr), u.degree() + v.degree());
  const BimoduleObject& ut = u.target();
  const BimoduleObject& vt = v.target();
  for (int k = 0; k < static_cast<int>(src.pieces.size()); ++k) {
    const TensorPiece& piece = src.pieces[k];
    for (const auto& ue : u.column(piece.left)) {
      const Shape& sa = ut[ue.row].shape;
      // generator of the piece is gen_a * beta (x) gen_b
      Vec x = piece.beta >= 0 ? cat.right_act(sa, piece.beta, ue.image) : ue.image;
      if (braidcat::is_zero(x)) continue;
      for (const auto& ve : v.column(piece.right)) {
        const Shape& sb = vt[ve.row].shape;
        for (const auto& [beta, elem] : cat.tensor_elements(sa, x, sb, ve.image)) {
          auto it = dst.index.find({ue.row, ve.row, beta});
          if (it == dst.index.end()) throw std::logic_error("tensor_morphisms: missing target piece");
          out.add(it->second, k, elem, scale);
        }
      }
    }
  }
  return out;
}

BimoduleMorphism tensor_morphisms(const BimoduleCategory& cat, const BimoduleMorphism& u,
                                  const BimoduleMorphism& v, Coeff scale) {
  TensorObjects src = cat.tensor_objects(u.source(), v.source());
  TensorObjects dst = cat.tensor_objects(u.target(), v.target());
  auto sp = std::make_shared<const BimoduleObject>(src.object);
  auto dp = std::make_shared<const BimoduleObject>(dst.object);
  return tensor_morphisms(cat, u, v, src, dst, sp, dp, scale);
}

bool is_valid_morphism(const BimoduleCategory& cat, const BimoduleMorphism& f) {
  for (int c = 0; c < static_cast<int>(f.source().size()); ++c)
    for (const auto& e : f.column(c)) {
      const Summand& s = f.source()[c];
      const Summand& t = f.target()[e.row];
      if (!cat.is_valid_image(s.shape, t.shape, e.image)) return false;
      auto d = cat.homogeneous_degree(t.shape, e.image);
      if (!d || *d != f.degree() + s.shift - t.shift) return false;
    }
  return true;
}

std::string debug_dump(const BimoduleCategory& cat, const BimoduleMorphism& f) {
  std::ostringstream os;
  os << "morphism of degree " << f.degree() << ", " << f.source().size() << " -> " << f.target().size()
     << " summands\n";
  for (int c = 0; c < static_cast<int>(f.source().size()); ++c)
    for (const auto& e : f.column(c)) {
      const Shape& s = f.source()[c].shape;
      const Shape& t = f.target()[e.row].shape;
      os << "  [" << e.row << "," << c << "] " << s.to_string() << "{" << f.source()[c].shift << "} -> "
         << t.to_string() << "{" << f.target()[e.row].shift << "}\n";
      for (const auto& row : cat.to_matrix(s, t, e.image)) {
        os << "    ";
        for (Coeff x : row) os << x << ' ';
        os << '\n';
      }
    }
  return os.str();
}

}  // namespace braidcat
