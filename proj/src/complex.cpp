#include "braidcat/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace braidcat {

ObjectPtr empty_object() {
  static const ObjectPtr empty = std::make_shared<const BimoduleObject>();
  return empty;
}

// ---------------------------------------------------------------------------
// ChainComplex

void ChainComplex::set_term(int t, ObjectPtr object) {
  if (!object || object->empty()) {
    terms_.erase(t);
    diffs_.erase(t);
    diffs_.erase(t - 1);
    return;
  }
  terms_[t] = std::move(object);
}

void ChainComplex::set_differential(int t, BimoduleMorphism d) {
  if (d.degree() != 0) throw std::invalid_argument("differential must have internal degree 0");
  if (d.source() != term(t) || d.target() != term(t + 1))
    throw std::invalid_argument("differential does not match terms");
  if (terms_.count(t) == 0 || terms_.count(t + 1) == 0) return;
  diffs_.insert_or_assign(t, std::move(d));
}

ObjectPtr ChainComplex::term_ptr(int t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? empty_object() : it->second;
}

BimoduleMorphism ChainComplex::differential(int t) const {
  auto it = diffs_.find(t);
  if (it != diffs_.end()) return it->second;
  return BimoduleMorphism(term_ptr(t), term_ptr(t + 1), 0);
}

int ChainComplex::min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int ChainComplex::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

std::size_t ChainComplex::summand_count() const {
  std::size_t n = 0;
  for (const auto& [t, o] : terms_) n += o->size();
  return n;
}

bool ChainComplex::check(const BimoduleCategory& cat) const {
  for (const auto& [t, d] : diffs_)
    if (d.degree() != 0 || !is_valid_morphism(cat, d)) return false;
  for (const auto& [t, o] : terms_) {
    if (!terms_.count(t + 1) || !terms_.count(t + 2)) continue;
    if (!compose(cat, differential(t + 1), differential(t)).is_zero()) return false;
  }
  return true;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (const auto& [t, o] : a.terms_) {
    auto it = b.terms_.find(t);
    if (it == b.terms_.end() || *it->second != *o) return false;
  }
  for (const auto& [t, o] : a.terms_)
    if (!(a.differential(t) == b.differential(t))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// ChainMap

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target, int degree, int shift)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), shift_(shift) {}

ChainMap ChainMap::identity(const BimoduleCategory& cat, ComplexPtr c) {
  ChainMap id(c, c, 0, 0);
  for (const auto& [t, o] : c->terms()) id.set_component(t, BimoduleMorphism::identity(cat, o));
  return id;
}

ChainMap ChainMap::zero(ComplexPtr source, ComplexPtr target, int degree, int shift) {
  return ChainMap(std::move(source), std::move(target), degree, shift);
}

BimoduleMorphism ChainMap::component(int t) const {
  auto it = comps_.find(t);
  if (it != comps_.end()) return it->second;
  return BimoduleMorphism(source_->term_ptr(t), target_->term_ptr(t + shift_), degree_);
}

void ChainMap::set_component(int t, BimoduleMorphism f) {
  if (f.degree() != degree_) throw std::invalid_argument("chain map component of wrong degree");
  if (f.source() != source_->term(t) || f.target() != target_->term(t + shift_))
    throw std::invalid_argument("chain map component does not match terms");
  if (f.is_zero()) {
    comps_.erase(t);
    return;
  }
  comps_.insert_or_assign(t, std::move(f));
}

bool ChainMap::is_zero() const {
  for (const auto& [t, f] : comps_)
    if (!f.is_zero()) return false;
  return true;
}

bool ChainMap::is_chain_map(const BimoduleCategory& cat) const {
  for (const auto& [t, f] : comps_)
    if (!is_valid_morphism(cat, f)) return false;
  const int lo = std::min(source_->min_degree(), target_->min_degree() - shift_) - 1;
  const int hi = std::max(source_->max_degree(), target_->max_degree() - shift_) + 1;
  if (source_->is_zero() && target_->is_zero()) return true;
  const Coeff sign = (shift_ % 2 == 0) ? 1 : -1;
  for (int t = lo; t <= hi; ++t) {
    auto lhs = compose(cat, target_->differential(t + shift_), component(t));
    auto rhs = compose(cat, component(t + 1), source_->differential(t)).scaled(sign);
    if (!(lhs - rhs).is_zero()) return false;
  }
  return true;
}

ChainMap ChainMap::scaled(Coeff c) const {
  ChainMap r(source_, target_, degree_, shift_);
  for (const auto& [t, f] : comps_) r.set_component(t, f.scaled(c));
  return r;
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
  if (degree_ != o.degree_ || shift_ != o.shift_) throw std::invalid_argument("adding chain maps of different type");
  ChainMap r = *this;
  for (const auto& [t, f] : o.comps_) r.set_component(t, r.component(t) + f);
  return r;
}

ChainMap ChainMap::operator-(const ChainMap& o) const { return *this + o.scaled(-1); }

bool ChainMap::operator==(const ChainMap& o) const {
  if (degree_ != o.degree_ || shift_ != o.shift_) return false;
  return (*this - o).is_zero();
}

ChainMap compose(const BimoduleCategory& cat, const ChainMap& g, const ChainMap& f) {
  ChainMap r(f.source_ptr(), g.target_ptr(), f.degree() + g.degree(), f.shift() + g.shift());
  for (const auto& [t, ft] : f.components()) r.set_component(t, compose(cat, g.component(t + f.shift()), ft));
  return r;
}

BimoduleMorphism Homotopy::component(int t) const {
  auto it = comps.find(t);
  if (it != comps.end()) return it->second;
  return BimoduleMorphism(source->term_ptr(t), target->term_ptr(t - 1), degree);
}

ChainMap Homotopy::boundary(const BimoduleCategory& cat) const {
  ChainMap r(source, target, degree, 0);
  for (const auto& [t, o] : source->terms()) {
    auto dh = compose(cat, target->differential(t - 1), component(t));
    auto hd = compose(cat, component(t + 1), source->differential(t));
    r.set_component(t, dh + hd);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Generators

Vec beta_image(const BimoduleCategory& cat, int i) {
  return cat.to_vec(AlgebraElement::basis(cat.ring().idempotent(i)));
}

Vec gamma_image(const BimoduleCategory& cat, int i) {
  const ZigzagRing& ring = cat.ring();
  const Lattice& lat = cat.lattice(Shape::tensor(i, i));
  const int xi = ring.x(i);
  Vec v(lat.rank(), 0);
  // sum of a1 (x) a2 over basis paths with a2 a1 = X_i
  for (int k = 0; k < lat.rank(); ++k) {
    const auto& [a1, a2] = lat.elements[k];
    if (ring.product(a2, a1) == xi) v[k] = 1;
  }
  return v;
}

Vec delta_image(const BimoduleCategory& cat, int i) {
  const ZigzagRing& ring = cat.ring();
  return cat.to_vec(ring.x_element(i - 1) - ring.x_element(i + 1));
}

namespace {

void check_index(const BimoduleCategory& cat, int i) {
  if (i < 1 || i > cat.n()) throw std::out_of_range("generator index out of range");
}

ObjectPtr single(Shape s, int shift, int choice) {
  BimoduleObject o;
  o.summands.push_back({s, shift, Tag{{choice}, {}}});
  return std::make_shared<const BimoduleObject>(std::move(o));
}

}  // namespace

ChainComplex build_Ri(const BimoduleCategory& cat, int i) {
  check_index(cat, i);
  ChainComplex c;
  auto p = single(Shape::tensor(i, i), 0, 1);
  auto a = single(Shape::diagonal(), 0, 0);
  c.set_term(-1, p);
  c.set_term(0, a);
  BimoduleMorphism d(p, a, 0);
  d.add(0, 0, beta_image(cat, i));
  c.set_differential(-1, std::move(d));
  return c;
}

ChainComplex build_Ri_prime(const BimoduleCategory& cat, int i) {
  check_index(cat, i);
  ChainComplex c;
  auto a = single(Shape::diagonal(), 0, 0);
  auto p = single(Shape::tensor(i, i), -2, 1);
  c.set_term(0, a);
  c.set_term(1, p);
  BimoduleMorphism d(a, p, 0);
  d.add(0, 0, gamma_image(cat, i));
  c.set_differential(0, std::move(d));
  return c;
}

ChainComplex unit_complex(const BimoduleCategory&) {
  ChainComplex c;
  BimoduleObject o;
  o.summands.push_back({Shape::diagonal(), 0, {}});
  c.set_term(0, std::make_shared<const BimoduleObject>(std::move(o)));
  return c;
}

// ---------------------------------------------------------------------------
// Tensor products

namespace {

struct Block {
  int s, u;
  int offset;
  TensorObjects objects;
  ObjectPtr ptr;
};

struct TermLayout {
  std::vector<Block> blocks;
  std::vector<int> position;  // unsorted index -> summand index in the term
  ObjectPtr object;
};

struct Layout {
  std::map<int, TermLayout> terms;
  std::map<std::pair<int, int>, std::pair<int, int>> where;  // (s, u) -> (t, block)
};

Layout make_layout(const BimoduleCategory& cat, const ChainComplex& c1, const ChainComplex& c2) {
  Layout L;
  for (const auto& [s, a] : c1.terms())
    for (const auto& [u, b] : c2.terms()) {
      TensorObjects objs = cat.tensor_objects(*a, *b);
      if (objs.object.empty()) continue;
      TermLayout& tl = L.terms[s + u];
      Block blk{s, u, 0, std::move(objs), nullptr};
      blk.ptr = std::make_shared<const BimoduleObject>(blk.objects.object);
      L.where[{s, u}] = {s + u, static_cast<int>(tl.blocks.size())};
      tl.blocks.push_back(std::move(blk));
    }
  for (auto& [t, tl] : L.terms) {
    std::vector<const Summand*> all;
    for (auto& blk : tl.blocks) {
      blk.offset = static_cast<int>(all.size());
      for (const auto& s : blk.objects.object.summands) all.push_back(&s);
    }
    std::vector<int> order(all.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return all[x]->tag < all[y]->tag; });
    tl.position.assign(all.size(), 0);
    BimoduleObject o;
    for (std::size_t k = 0; k < order.size(); ++k) {
      tl.position[order[k]] = static_cast<int>(k);
      o.summands.push_back(*all[order[k]]);
    }
    tl.object = std::make_shared<const BimoduleObject>(std::move(o));
  }
  return L;
}

// big[row_pos[row_off + r]][col_pos[col_off + c]] += sign * small[r][c]
void embed(BimoduleMorphism& big, const BimoduleMorphism& small, const std::vector<int>& row_pos, int row_off,
           const std::vector<int>& col_pos, int col_off, Coeff sign) {
  for (int c = 0; c < static_cast<int>(small.source().size()); ++c)
    for (const auto& e : small.column(c)) big.add(row_pos[row_off + e.row], col_pos[col_off + c], e.image, sign);
}

ComplexPtr assemble(const BimoduleCategory& cat, const ChainComplex& c1, const ChainComplex& c2, const Layout& L) {
  ChainComplex out;
  for (const auto& [t, tl] : L.terms) out.set_term(t, tl.object);
  for (const auto& [t, tl] : L.terms) {
    auto next = L.terms.find(t + 1);
    if (next == L.terms.end()) continue;
    BimoduleMorphism d(tl.object, next->second.object, 0);
    for (const Block& blk : tl.blocks) {
      // d1 (x) id
      if (auto it = L.where.find({blk.s + 1, blk.u}); it != L.where.end()) {
        const Block& dst = next->second.blocks[it->second.second];
        auto piece = tensor_morphisms(cat, c1.differential(blk.s), BimoduleMorphism::identity(cat, c2.term_ptr(blk.u)),
                                      blk.objects, dst.objects, blk.ptr, dst.ptr);
        embed(d, piece, next->second.position, dst.offset, tl.position, blk.offset, 1);
      }
      // (-1)^s id (x) d2
      if (auto it = L.where.find({blk.s, blk.u + 1}); it != L.where.end()) {
        const Block& dst = next->second.blocks[it->second.second];
        auto piece = tensor_morphisms(cat, BimoduleMorphism::identity(cat, c1.term_ptr(blk.s)), c2.differential(blk.u),
                                      blk.objects, dst.objects, blk.ptr, dst.ptr);
        embed(d, piece, next->second.position, dst.offset, tl.position, blk.offset, blk.s % 2 == 0 ? 1 : -1);
      }
    }
    out.set_differential(t, std::move(d));
  }
  return std::make_shared<const ChainComplex>(std::move(out));
}

}  // namespace

ChainComplex tensor(const BimoduleCategory& cat, const ChainComplex& c1, const ChainComplex& c2) {
  return *assemble(cat, c1, c2, make_layout(cat, c1, c2));
}

ChainMap tensor(const BimoduleCategory& cat, const ChainMap& f, const ChainMap& g, ComplexPtr source,
                ComplexPtr target) {
  const Layout ls = make_layout(cat, f.source(), g.source());
  const Layout lt = make_layout(cat, f.target(), g.target());
  ChainMap out(source, target, f.degree() + g.degree(), f.shift() + g.shift());
  for (const auto& [t, tl] : ls.terms) {
    const int tt = t + f.shift() + g.shift();
    auto dst_term = lt.terms.find(tt);
    if (dst_term == lt.terms.end()) continue;
    BimoduleMorphism m(source->term_ptr(t), target->term_ptr(tt), out.degree());
    for (const Block& blk : tl.blocks) {
      auto it = lt.where.find({blk.s + f.shift(), blk.u + g.shift()});
      if (it == lt.where.end()) continue;
      const Block& dst = dst_term->second.blocks[it->second.second];
      auto piece = tensor_morphisms(cat, f.component(blk.s), g.component(blk.u), blk.objects, dst.objects, blk.ptr,
                                    dst.ptr);
      const Coeff sign = (g.shift() * blk.s) % 2 == 0 ? 1 : -1;
      embed(m, piece, dst_term->second.position, dst.offset, tl.position, blk.offset, sign);
    }
    out.set_component(t, std::move(m));
  }
  return out;
}

ChainMap tensor(const BimoduleCategory& cat, const ChainMap& f, const ChainMap& g) {
  auto s = std::make_shared<const ChainComplex>(tensor(cat, f.source(), g.source()));
  auto t = std::make_shared<const ChainComplex>(tensor(cat, f.target(), g.target()));
  return tensor(cat, f, g, s, t);
}

// ---------------------------------------------------------------------------
// Shift, cone, central multiplication

namespace {

BimoduleMorphism rebase(const BimoduleMorphism& m, ObjectPtr src, ObjectPtr dst, int col_off, int row_off,
                        Coeff sign, BimoduleMorphism* into = nullptr) {
  BimoduleMorphism out = into ? *into : BimoduleMorphism(src, dst, m.degree());
  for (int c = 0; c < static_cast<int>(m.source().size()); ++c)
    for (const auto& e : m.column(c)) out.add(row_off + e.row, col_off + c, e.image, sign);
  return out;
}

}  // namespace

ChainComplex shift(const ChainComplex& c, int s, int k) {
  ChainComplex out;
  for (const auto& [t, o] : c.terms()) {
    BimoduleObject moved = *o;
    for (auto& sm : moved.summands) sm.shift += k;
    out.set_term(t - s, std::make_shared<const BimoduleObject>(std::move(moved)));
  }
  const Coeff sign = s % 2 == 0 ? 1 : -1;
  for (const auto& [t, o] : c.terms())
    if (c.terms().count(t + 1))
      out.set_differential(t - s, rebase(c.differential(t), out.term_ptr(t - s), out.term_ptr(t - s + 1), 0, 0, sign));
  return out;
}

ChainComplex cone(const BimoduleCategory& cat, const ChainMap& f) {
  (void)cat;
  if (f.shift() != 0 || f.degree() != 0) throw std::invalid_argument("cone needs a degree-0, shift-0 chain map");
  const ChainComplex& C = f.source();
  const ChainComplex& D = f.target();
  std::set<int> degrees;
  for (const auto& [t, o] : C.terms()) degrees.insert(t - 1);
  for (const auto& [t, o] : D.terms()) degrees.insert(t);
  ChainComplex out;
  for (int t : degrees) {
    BimoduleObject o = C.term(t + 1);
    for (const auto& s : D.term(t).summands) o.summands.push_back(s);
    out.set_term(t, std::make_shared<const BimoduleObject>(std::move(o)));
  }
  for (int t : degrees) {
    if (!degrees.count(t + 1)) continue;
    auto src = out.term_ptr(t), dst = out.term_ptr(t + 1);
    if (src->empty() || dst->empty()) continue;
    const int c_here = static_cast<int>(C.term(t + 1).size());
    const int c_next = static_cast<int>(C.term(t + 2).size());
    BimoduleMorphism d(src, dst, 0);
    d = rebase(C.differential(t + 1), src, dst, 0, 0, -1, &d);
    d = rebase(f.component(t + 1), src, dst, 0, c_next, 1, &d);
    d = rebase(D.differential(t), src, dst, c_here, c_next, 1, &d);
    out.set_differential(t, std::move(d));
  }
  return out;
}

namespace {

ChainMap central_mult(const BimoduleCategory& cat, ComplexPtr c, const AlgebraElement& a, bool left) {
  const ZigzagRing& ring = cat.ring();
  if (!ring.is_central(a)) throw std::invalid_argument("multiplication by a non-central element");
  std::optional<int> deg;
  for (const auto& [k, v] : a.terms()) {
    if (deg && *deg != ring.degree(k)) throw std::invalid_argument("central element must be homogeneous");
    deg = ring.degree(k);
  }
  ChainMap out(c, c, deg.value_or(0), 0);
  for (const auto& [t, o] : c->terms()) {
    BimoduleMorphism m(o, o, out.degree());
    for (int k = 0; k < static_cast<int>(o->size()); ++k) {
      const Shape& s = (*o)[k].shape;
      const Vec& gen = cat.lattice(s).generator;
      Vec img(gen.size(), 0);
      for (const auto& [p, v] : a.terms()) axpy(img, v, left ? cat.left_act(s, p, gen) : cat.right_act(s, p, gen));
      m.add(k, k, img);
    }
    out.set_component(t, std::move(m));
  }
  return out;
}

}  // namespace

ChainMap left_mult(const BimoduleCategory& cat, ComplexPtr c, const AlgebraElement& a) {
  return central_mult(cat, std::move(c), a, true);
}

ChainMap right_mult(const BimoduleCategory& cat, ComplexPtr c, const AlgebraElement& a) {
  return central_mult(cat, std::move(c), a, false);
}

std::map<std::tuple<int, Shape, int>, int> term_table(const ChainComplex& c) {
  std::map<std::tuple<int, Shape, int>, int> table;
  for (const auto& [t, o] : c.terms())
    for (const auto& s : o->summands) table[{t, s.shape, s.shift}]++;
  return table;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const ChainComplex& c) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [t, o] : c.terms()) {
    nlohmann::json summands = nlohmann::json::array();
    for (const auto& s : o->summands) {
      nlohmann::json js{{"shift", s.shift}};
      if (s.shape.kind == Kind::Diagonal) {
        js["kind"] = "diagonal";
      } else {
        js["kind"] = "tensor";
        js["left"] = s.shape.left;
        js["right"] = s.shape.right;
      }
      summands.push_back(js);
    }
    terms.push_back({{"degree", t}, {"summands", summands}});
  }
  nlohmann::json diffs = nlohmann::json::array();
  for (const auto& [t, o] : c.terms()) {
    if (!c.terms().count(t + 1)) continue;
    auto d = c.differential(t);
    nlohmann::json entries = nlohmann::json::array();
    for (int col = 0; col < static_cast<int>(o->size()); ++col)
      for (const auto& e : d.column(col)) entries.push_back({{"row", e.row}, {"col", col}, {"image", e.image}});
    diffs.push_back({{"degree", t}, {"entries", entries}});
  }
  return {{"terms", terms}, {"differentials", diffs}};
}

ChainComplex complex_from_json(const BimoduleCategory& cat, const nlohmann::json& j) {
  ChainComplex c;
  for (const auto& jt : j.at("terms")) {
    BimoduleObject o;
    for (const auto& js : jt.at("summands")) {
      Summand s;
      s.shift = js.at("shift").get<int>();
      if (js.at("kind") == "tensor") s.shape = Shape::tensor(js.at("left").get<int>(), js.at("right").get<int>());
      cat.lattice(s.shape);
      o.summands.push_back(s);
    }
    c.set_term(jt.at("degree").get<int>(), std::make_shared<const BimoduleObject>(std::move(o)));
  }
  for (const auto& jd : j.at("differentials")) {
    const int t = jd.at("degree").get<int>();
    BimoduleMorphism d(c.term_ptr(t), c.term_ptr(t + 1), 0);
    for (const auto& e : jd.at("entries")) d.add(e.at("row").get<int>(), e.at("col").get<int>(), e.at("image").get<Vec>());
    c.set_differential(t, std::move(d));
  }
  if (!c.check(cat)) throw std::invalid_argument("serialized complex is not a complex of bimodules");
  return c;
}

namespace {

nlohmann::json entries_json(const BimoduleMorphism& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (int col = 0; col < static_cast<int>(m.source().size()); ++col)
    for (const auto& e : m.column(col)) entries.push_back({{"row", e.row}, {"col", col}, {"image", e.image}});
  return entries;
}

}  // namespace

nlohmann::json to_json(const ChainMap& f) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& [t, m] : f.components())
    if (!m.is_zero()) comps.push_back({{"degree", t}, {"entries", entries_json(m)}});
  return {{"internal_degree", f.degree()}, {"shift", f.shift()}, {"components", comps}};
}

nlohmann::json to_json(const Homotopy& h) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& [t, m] : h.comps)
    if (!m.is_zero()) comps.push_back({{"degree", t}, {"entries", entries_json(m)}});
  return {{"internal_degree", h.degree}, {"components", comps}};
}

}  // namespace braidcat
