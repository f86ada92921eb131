#include <limits>
#include <set>
#include <tuple>

#include "braidcat/complex.hpp"

namespace braidcat {

namespace {

using Column = std::map<int, Vec>;  // row -> generator image

// Mutable copy of a complex indexed by original summand positions.
class Eliminator {
 public:
  Eliminator(const BimoduleCategory& cat, const ChainComplex& c, bool with_homotopy)
      : cat_(cat), source_(c), with_homotopy_(with_homotopy) {
    for (const auto& [t, o] : c.terms()) {
      const int n = static_cast<int>(o->size());
      alive_[t].assign(n, true);
      cols_[t].assign(n, {});
      rows_[t + 1].assign(static_cast<int>(c.term(t + 1).size()), {});
      if (rows_[t].empty()) rows_[t].assign(n, {});
      phi_[t].assign(n, {});
      psi_[t].assign(n, {});
      for (int k = 0; k < n; ++k) {
        phi_[t][k][k] = cat.lattice((*o)[k].shape).generator;
        psi_[t][k][k] = cat.lattice((*o)[k].shape).generator;
      }
      auto d = c.differential(t);
      for (int col = 0; col < n; ++col)
        for (const auto& e : d.column(col)) add(t, e.row, col, e.image, 1);
    }
  }

  void run() {
    while (auto p = find_pivot()) eliminate(std::get<0>(*p), std::get<1>(*p), std::get<2>(*p), std::get<3>(*p));
  }

  Simplified result(ComplexPtr original) const {
    ChainComplex out;
    std::map<int, std::vector<int>> renum;
    for (const auto& [t, flags] : alive_) {
      BimoduleObject o;
      auto& rn = renum[t];
      rn.assign(flags.size(), -1);
      for (std::size_t k = 0; k < flags.size(); ++k)
        if (flags[k]) {
          rn[k] = static_cast<int>(o.size());
          o.summands.push_back(source_.term(t)[k]);
        }
      out.set_term(t, std::make_shared<const BimoduleObject>(std::move(o)));
    }
    for (const auto& [t, flags] : alive_) {
      if (out.term(t).empty() || out.term(t + 1).empty()) continue;
      BimoduleMorphism d(out.term_ptr(t), out.term_ptr(t + 1), 0);
      for (std::size_t c = 0; c < flags.size(); ++c)
        if (flags[c])
          for (const auto& [r, img] : cols_.at(t)[c]) d.add(renum.at(t + 1)[r], renum.at(t)[c], img);
      out.set_differential(t, std::move(d));
    }
    auto simple = std::make_shared<const ChainComplex>(std::move(out));
    ChainMap inc(simple, original, 0), proj(original, simple, 0);
    for (const auto& [t, flags] : alive_) {
      if (simple->term(t).empty()) continue;
      BimoduleMorphism f(simple->term_ptr(t), original->term_ptr(t), 0);
      BimoduleMorphism g(original->term_ptr(t), simple->term_ptr(t), 0);
      for (std::size_t k = 0; k < flags.size(); ++k) {
        if (!flags[k]) continue;
        for (const auto& [x, img] : phi_.at(t)[k]) f.add(x, renum.at(t)[k], img);
        for (const auto& [y, img] : psi_.at(t)[k]) g.add(renum.at(t)[k], y, img);
      }
      inc.set_component(t, std::move(f));
      proj.set_component(t, std::move(g));
    }
    Simplified s{simple, std::move(inc), std::move(proj), std::nullopt};
    if (with_homotopy_) {
      Homotopy h{original, original, 0, {}};
      for (const auto& [t, m] : homotopy_) {
        BimoduleMorphism hm(original->term_ptr(t), original->term_ptr(t - 1), 0);
        for (const auto& [key, img] : m) hm.add(key.first, key.second, img);
        h.comps.emplace(t, std::move(hm));
      }
      s.homotopy = std::move(h);
    }
    return s;
  }

 private:
  const Shape& shape(int t, int k) const { return source_.term(t)[k].shape; }

  void add(int t, int r, int c, const Vec& img, Coeff scale) {
    auto& col = cols_[t][c];
    auto it = col.find(r);
    if (it == col.end()) {
      Vec v(img.size(), 0);
      axpy(v, scale, img);
      if (braidcat::is_zero(v)) return;
      col.emplace(r, std::move(v));
      rows_[t + 1][r].insert(c);
      return;
    }
    axpy(it->second, scale, img);
    if (braidcat::is_zero(it->second)) {
      col.erase(it);
      rows_[t + 1][r].erase(c);
    }
  }

  // +-1 when img is +-(generator) between summands of identical type.
  Coeff unit_sign(int t, int r, int c, const Vec& img) const {
    const Summand& a = source_.term(t)[c];
    const Summand& b = source_.term(t + 1)[r];
    if (!a.same_type(b)) return 0;
    const Vec& gen = cat_.lattice(a.shape).generator;
    Coeff sign = 0;
    for (std::size_t k = 0; k < gen.size(); ++k) {
      if (gen[k] == 0) {
        if (img[k] != 0) return 0;
        continue;
      }
      if (sign == 0) sign = img[k];
      if (img[k] != sign * gen[k] || (sign != 1 && sign != -1)) return 0;
    }
    return sign;
  }

  // Cheapest cancellable entry by fill-in, ties broken by position.
  std::optional<std::tuple<int, int, int, Coeff>> find_pivot() const {
    std::optional<std::tuple<int, int, int, Coeff>> best;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (const auto& [t, cols] : cols_)
      for (int c = 0; c < static_cast<int>(cols.size()); ++c)
        for (const auto& [r, img] : cols[c]) {
          const std::size_t cost = (cols[c].size() - 1) * (rows_.at(t + 1)[r].size() - 1);
          if (cost >= best_cost) continue;
          if (Coeff e = unit_sign(t, r, c, img)) {
            best = std::make_tuple(t, c, r, e);
            best_cost = cost;
            if (cost == 0) return best;
          }
        }
    return best;
  }

  void eliminate(int t, int c0, int r0, Coeff eps) {
    const Shape& s0 = shape(t, c0);
    Column gamma = cols_[t][c0];
    gamma.erase(r0);
    std::vector<std::pair<int, Vec>> delta;
    for (int c : rows_[t + 1][r0])
      if (c != c0) delta.emplace_back(c, cols_[t][c].at(r0));

    // d[r][c] -= eps * gamma_r o delta_c
    for (const auto& [r, gi] : gamma)
      for (const auto& [c, di] : delta) add(t, r, c, cat_.apply(s0, shape(t + 1, r), gi, di), -eps);

    // Structure maps: inclusion columns gain -eps * phi[c0] o delta_c,
    // projection rows gain -eps * gamma_r o psi[r0].
    const Column phi_c0 = phi_[t][c0];
    const Column psi_r0 = psi_[t + 1][r0];
    for (const auto& [c, di] : delta)
      for (const auto& [x, fx] : phi_c0) add_to(phi_[t][c], x, cat_.apply(s0, shape(t, x), fx, di), -eps);
    for (const auto& [r, gi] : gamma)
      for (const auto& [y, gy] : psi_r0) add_to(psi_[t + 1][r], y, cat_.apply(s0, shape(t + 1, r), gi, gy), -eps);
    if (with_homotopy_) {
      auto& h = homotopy_[t + 1];
      for (const auto& [x, fx] : phi_c0)
        for (const auto& [y, gy] : psi_r0) {
          Vec img = cat_.apply(s0, shape(t, x), fx, gy);
          auto it = h.find({x, y});
          if (it == h.end()) it = h.emplace(std::make_pair(x, y), Vec(img.size(), 0)).first;
          axpy(it->second, -eps, img);
        }
    }

    remove_column(t, c0);
    remove_row(t - 1, c0);
    remove_row(t, r0);
    remove_column(t + 1, r0);
    alive_[t][c0] = false;
    alive_[t + 1][r0] = false;
    phi_[t][c0].clear();
    psi_[t][c0].clear();
    phi_[t + 1][r0].clear();
    psi_[t + 1][r0].clear();
  }

  static void add_to(Column& col, int row, const Vec& img, Coeff scale) {
    auto it = col.find(row);
    if (it == col.end()) it = col.emplace(row, Vec(img.size(), 0)).first;
    axpy(it->second, scale, img);
    if (braidcat::is_zero(it->second)) col.erase(it);
  }

  void remove_column(int t, int c) {
    auto it = cols_.find(t);
    if (it == cols_.end()) return;
    for (const auto& [r, img] : it->second[c]) rows_[t + 1][r].erase(c);
    it->second[c].clear();
  }

  void remove_row(int t, int r) {
    auto it = rows_.find(t + 1);
    if (it == rows_.end() || cols_.find(t) == cols_.end()) return;
    for (int c : it->second[r]) cols_[t][c].erase(r);
    it->second[r].clear();
  }

  const BimoduleCategory& cat_;
  const ChainComplex& source_;
  bool with_homotopy_;
  std::map<int, std::vector<bool>> alive_;
  std::map<int, std::vector<Column>> cols_;                // d_t, column-major
  std::map<int, std::vector<std::set<int>>> rows_;         // rows_[t+1][r]: columns of d_t hitting r
  std::map<int, std::vector<Column>> phi_;                 // inclusion, columns by current summand
  std::map<int, std::vector<Column>> psi_;                 // projection, rows by current summand
  std::map<int, std::map<std::pair<int, int>, Vec>> homotopy_;  // [t][(row, col)]: term t -> t-1
};

}  // namespace

Simplified simplify(const BimoduleCategory& cat, ComplexPtr c, bool with_homotopy) {
  Eliminator e(cat, *c, with_homotopy);
  e.run();
  return e.result(c);
}

}  // namespace braidcat
