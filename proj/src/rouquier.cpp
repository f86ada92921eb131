#include "braidcat/rouquier.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace braidcat::rouquier {

namespace {

void trim(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

Exponents mul(const Exponents& a, const Exponents& b) {
  Exponents out(std::max(a.size(), b.size()), 0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

int exponent(const Exponents& e, int var) { return var < static_cast<int>(e.size()) ? e[var] : 0; }

}  // namespace

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// ---------------------------------------------------------------- Poly

Poly Poly::constant(Coeff c) {
  Poly p;
  p.add({}, c);
  return p;
}

Poly Poly::monomial(Exponents e, Coeff c) {
  trim(e);
  Poly p;
  p.add(e, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

Coeff Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void Poly::add(const Exponents& e, Coeff c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (fresh) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::scaled(Coeff c) const {
  Poly out;
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, checked_mul(v, c));
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add(e, checked_mul(c, -1));
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add(mul(ea, eb), checked_mul(ca, cb));
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "y" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    const Coeff a = c < 0 ? -c : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (mono.empty())
      s += std::to_string(a);
    else
      s += (a == 1 ? "" : std::to_string(a) + "*") + mono;
  }
  return s;
}

// ---------------------------------------------------------------- PolyRing

PolyRing::PolyRing(int strands) : strands_(strands) {
  if (strands < 2) throw std::invalid_argument("polynomial ring needs at least 2 strands");
  for (int i = 1; i <= vars(); ++i) {
    Poly z = i < vars() ? y(i + 1).scaled(-1) : i > 1 ? y(i - 1).scaled(-1) : y(i);
    const Poly dz = demazure(i, z);
    if (dz.degree() != 0) throw std::logic_error("complement is not linear");
    z_.push_back(std::move(z));
    dz_.push_back(dz.coefficient({}));
  }
}

Poly PolyRing::y(int i) const {
  if (i < 1 || i > vars()) throw std::invalid_argument("variable index out of range");
  Exponents e(i, 0);
  e[i - 1] = 1;
  return Poly::monomial(e);
}

Poly PolyRing::reflect(int i, const Poly& f) const {
  if (i < 1 || i > vars()) throw std::invalid_argument("reflection index out of range");
  // images of y_{i-1}, y_i, y_{i+1}; the rest are fixed
  auto image = [&](int var) -> Poly {
    const int k = var + 1;
    if (k == i) return y(i).scaled(-1);
    if (k == i - 1) return y(i - 1) + y(i);
    if (k == i + 1) return y(i) + y(i + 1);
    return y(k);
  };
  Poly out;
  for (const auto& [e, c] : f.terms()) {
    Poly term = Poly::constant(c);
    for (int var = 0; var < static_cast<int>(e.size()); ++var) {
      if (e[var] == 0) continue;
      const Poly base = image(var);
      for (int p = 0; p < e[var]; ++p) term = term * base;
    }
    out += term;
  }
  return out;
}

Poly PolyRing::demazure(int i, const Poly& f) const {
  const Poly g = f - reflect(i, f);
  Poly out;
  for (const auto& [e, c] : g.terms()) {
    if (exponent(e, i - 1) == 0) throw std::logic_error("f - s_i f not divisible by y_i");
    Exponents q = e;
    q[i - 1] -= 1;
    trim(q);
    out.add(q, c);
  }
  return out;
}

std::pair<Poly, Poly> PolyRing::split(int i, const Poly& f) const {
  const Coeff dz = dz_[i - 1];
  Poly f1;
  const Poly df = demazure(i, f);
  for (const auto& [e, c] : df.terms()) {
    if (c % dz != 0) throw std::logic_error("invariant decomposition is not integral");
    f1.add(e, c / dz);
  }
  Poly f0 = f - z_[i - 1] * f1;
  return {std::move(f0), std::move(f1)};
}

const std::vector<Exponents>& PolyRing::monomials(int d) const {
  if (auto it = monomials_.find(d); it != monomials_.end()) return it->second;
  std::vector<Exponents> out;
  if (d >= 0) {
    Exponents cur(vars(), 0);
    // exponent of the first variable descending, so y_1^d comes first
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == vars() - 1) {
        cur[var] = left;
        Exponents e = cur;
        trim(e);
        out.push_back(std::move(e));
        return;
      }
      for (int a = left; a >= 0; --a) {
        cur[var] = a;
        self(self, var + 1, left - a);
      }
      cur[var] = 0;
    };
    rec(rec, 0, d);
  }
  return monomials_.emplace(d, std::move(out)).first->second;
}

// ---------------------------------------------------------------- modules

int Object::degree(int e) const { return std::popcount(static_cast<unsigned>(e)) + shift; }

bool PolyMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::scaled(Coeff c) const {
  PolyMatrix out(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) out.data[k] = data[k].scaled(c);
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix sizes do not match");
  PolyMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Poly& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix sizes do not match");
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] += b.data[k];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a + b.scaled(-1); }

Element Soergel::right_mult(const std::vector<int>& seq, const Element& x, const Poly& p) const {
  const int len = static_cast<int>(seq.size());
  if (static_cast<int>(x.size()) != 1 << len) throw std::invalid_argument("element size mismatch");
  if (len == 0) return {x[0] * p};
  const std::vector<int> head(seq.begin(), seq.end() - 1);
  const int i = seq.back();
  const int half = 1 << (len - 1);
  Element out(x.size());
  // (m (x) b) p = (m q0) (x) 1 + (m q1) (x) z with b p = q0 + z q1
  for (int b = 0; b < 2; ++b) {
    Element m(x.begin() + b * half, x.begin() + (b + 1) * half);
    if (std::all_of(m.begin(), m.end(), [](const Poly& c) { return c.is_zero(); })) continue;
    const auto [q0, q1] = ring_.split(i, b == 0 ? p : ring_.complement(i) * p);
    if (!q0.is_zero()) {
      const Element r = right_mult(head, m, q0);
      for (int e = 0; e < half; ++e) out[e] += r[e];
    }
    if (!q1.is_zero()) {
      const Element r = right_mult(head, m, q1);
      for (int e = 0; e < half; ++e) out[e + half] += r[e];
    }
  }
  return out;
}

const PolyMatrix& Soergel::right_action(const std::vector<int>& seq, int j) const {
  auto key = std::pair{seq, j};
  if (auto it = right_.find(key); it != right_.end()) return it->second;
  const int n = 1 << seq.size();
  PolyMatrix m(n, n);
  for (int e = 0; e < n; ++e) {
    Element x(n);
    x[e] = ring_.one();
    const Element r = right_mult(seq, x, ring_.y(j));
    for (int k = 0; k < n; ++k) m(k, e) = r[k];
  }
  return right_.emplace(std::move(key), std::move(m)).first->second;
}

Element Soergel::eta_raw(int i) const {
  const auto [f0, f1] = ring_.split(i, ring_.y(i));
  return {ring_.y(i) + f0, f1};
}

Element Soergel::eta(int i) const {
  Element e = eta_raw(i);
  Coeff g = 0;
  for (const Poly& p : e)
    for (const auto& [m, c] : p.terms()) g = std::gcd(g, c);
  if (g > 1)
    for (Poly& p : e) {
      Poly q;
      for (const auto& [m, c] : p.terms()) q.add(m, c / g);
      p = std::move(q);
    }
  return e;
}

PolyMatrix Soergel::multiplication(const std::vector<int>& seq, int pos) const {
  const int len = static_cast<int>(seq.size());
  if (pos < 0 || pos >= len) throw std::invalid_argument("factor position out of range");
  const std::vector<int> left(seq.begin(), seq.begin() + pos);
  const int n = 1 << len;
  PolyMatrix out(n >> 1, n);
  const int lmask = (1 << pos) - 1;
  for (int e = 0; e < n; ++e) {
    const int e1 = e & lmask, b = (e >> pos) & 1, e2 = e >> (pos + 1);
    Element x(1 << pos);
    x[e1] = ring_.one();
    const Element r = right_mult(left, x, b ? ring_.complement(seq[pos]) : ring_.one());
    for (int k = 0; k < (1 << pos); ++k)
      if (!r[k].is_zero()) out(k | (e2 << pos), e) += r[k];
  }
  return out;
}

PolyMatrix Soergel::unit(const std::vector<int>& seq, int pos, int i) const {
  const int len = static_cast<int>(seq.size());
  if (pos < 0 || pos > len) throw std::invalid_argument("factor position out of range");
  const std::vector<int> left(seq.begin(), seq.begin() + pos);
  const Element h = eta(i);
  const int n = 1 << len;
  PolyMatrix out(n << 1, n);
  const int lmask = (1 << pos) - 1;
  for (int e = 0; e < n; ++e) {
    const int e1 = e & lmask, e2 = e >> pos;
    Element x(1 << pos);
    x[e1] = ring_.one();
    for (int c = 0; c < 2; ++c) {
      if (h[c].is_zero()) continue;
      const Element r = right_mult(left, x, h[c]);
      for (int k = 0; k < (1 << pos); ++k)
        if (!r[k].is_zero()) out(k | (c << pos) | (e2 << (pos + 1)), e) += r[k];
    }
  }
  return out;
}

// ---------------------------------------------------------------- complexes

void Term::push(Object o, std::vector<int> tag) {
  offset.push_back(size);
  size += o.size();
  summands.push_back(std::move(o));
  tags.push_back(std::move(tag));
}

int Term::degree(int index) const {
  const auto it = std::upper_bound(offset.begin(), offset.end(), index);
  const auto k = static_cast<std::size_t>(it - offset.begin() - 1);
  return summands[k].degree(index - offset[k]);
}

const Term& Complex::term(int t) const {
  static const Term empty;
  auto it = terms.find(t);
  return it == terms.end() ? empty : it->second;
}

PolyMatrix Complex::differential(int t) const {
  auto it = d.find(t);
  return it == d.end() ? PolyMatrix(term(t + 1).size, term(t).size) : it->second;
}

namespace {

PolyMatrix term_right_action(const Soergel& S, const Term& t, int j) {
  PolyMatrix out(t.size, t.size);
  for (std::size_t k = 0; k < t.summands.size(); ++k) {
    const PolyMatrix& r = S.right_action(t.summands[k].seq, j);
    for (int a = 0; a < r.rows; ++a)
      for (int b = 0; b < r.cols; ++b) out(t.offset[k] + a, t.offset[k] + b) = r(a, b);
  }
  return out;
}

std::pair<int, int> term_range(const Complex& a, const Complex& b) {
  int lo = 0, hi = 0;
  bool any = false;
  for (const Complex* c : {&a, &b})
    for (const auto& [t, term] : c->terms) {
      lo = any ? std::min(lo, t) : t;
      hi = any ? std::max(hi, t) : t;
      any = true;
    }
  return {lo, hi};
}

PolyMatrix identity_matrix(int n) {
  PolyMatrix m(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = Poly::constant(1);
  return m;
}

}  // namespace

bool Complex::check(const Soergel& S) const {
  for (const auto& [t, m] : d) {
    if (m.rows != term(t + 1).size || m.cols != term(t).size) return false;
    if (!(differential(t + 1) * m).is_zero()) return false;
    for (int j = 1; j <= S.ring().vars(); ++j)
      if (!(m * term_right_action(S, term(t), j) == term_right_action(S, term(t + 1), j) * m)) return false;
  }
  return true;
}

Complex unit_complex() {
  Complex c;
  c.terms[0].push(Object{}, {});
  return c;
}

Complex build(const Soergel& S, const BraidWord& w) {
  w.validate();
  if (w.strands != S.ring().strands()) throw std::invalid_argument("braid and ring have different strand counts");
  const int k = static_cast<int>(w.letters.size());
  if (k > 12) throw std::invalid_argument("word too long for the Rouquier model");
  std::map<int, std::vector<std::pair<std::vector<int>, Object>>> raw;
  for (int c = 0; c < (1 << k); ++c) {
    std::vector<int> tag(k);
    Object o;
    int t = 0;
    for (int l = 0; l < k; ++l) {
      tag[l] = (c >> l) & 1;
      if (!tag[l]) continue;
      const int x = w.letters[l];
      o.seq.push_back(std::abs(x));
      t += x > 0 ? -1 : 1;
      if (x < 0) o.shift -= 1;
    }
    raw[t].emplace_back(std::move(tag), std::move(o));
  }
  Complex out;
  std::map<std::vector<int>, std::pair<int, int>> where;  // tag -> (term, summand)
  for (auto& [t, list] : raw) {
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [tag, o] : list) {
      where[tag] = {t, static_cast<int>(out.terms[t].summands.size())};
      out.terms[t].push(std::move(o), std::move(tag));
    }
  }
  for (const auto& [t, term] : out.terms) {
    if (!out.terms.count(t + 1)) continue;
    const Term& next = out.terms.at(t + 1);
    PolyMatrix m(next.size, term.size);
    for (std::size_t s = 0; s < term.summands.size(); ++s) {
      const auto& tag = term.tags[s];
      const auto& seq = term.summands[s].seq;
      int pos = 0;  // chosen letters before l
      for (int l = 0; l < k; ++l) {
        const int x = w.letters[l];
        const bool flips = x > 0 ? tag[l] == 1 : tag[l] == 0;
        if (flips) {
          auto tag2 = tag;
          tag2[l] ^= 1;
          const auto [t2, s2] = where.at(tag2);
          const PolyMatrix block = x > 0 ? S.multiplication(seq, pos) : S.unit(seq, pos, -x);
          // each chosen factor before l has odd cohomological degree
          const Coeff sign = pos % 2 ? -1 : 1;
          for (int a = 0; a < block.rows; ++a)
            for (int b = 0; b < block.cols; ++b)
              if (!block(a, b).is_zero())
                m(next.offset[s2] + a, term.offset[s] + b) += block(a, b).scaled(sign);
        }
        pos += tag[l];
      }
    }
    out.d[t] = std::move(m);
  }
  return out;
}

// ---------------------------------------------------------------- chain maps

PolyMatrix ChainMap::component(int t, const Complex& src, const Complex& tgt) const {
  auto it = comps.find(t);
  return it == comps.end() ? PolyMatrix(tgt.term(t).size, src.term(t).size) : it->second;
}

ChainMap ChainMap::scaled(Coeff c) const {
  ChainMap out{degree, {}};
  for (const auto& [t, m] : comps) out.comps[t] = m.scaled(c);
  return out;
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
  if (a.degree != b.degree) throw std::invalid_argument("chain maps of different degrees");
  ChainMap out = a;
  for (const auto& [t, m] : b.comps) {
    auto it = out.comps.find(t);
    if (it == out.comps.end())
      out.comps[t] = m;
    else
      it->second = it->second + m;
  }
  return out;
}

ChainMap identity(const Complex& c) {
  ChainMap out;
  for (const auto& [t, term] : c.terms) out.comps[t] = identity_matrix(term.size);
  return out;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap out{g.degree + f.degree, {}};
  for (const auto& [t, m] : f.comps)
    if (auto it = g.comps.find(t); it != g.comps.end()) out.comps[t] = it->second * m;
  return out;
}

bool is_zero(const ChainMap& f) {
  return std::all_of(f.comps.begin(), f.comps.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

bool is_chain_map(const Soergel& S, const Complex& src, const Complex& tgt, const ChainMap& f) {
  const auto [lo, hi] = term_range(src, tgt);
  for (int t = lo - 1; t <= hi; ++t) {
    const PolyMatrix ft = f.component(t, src, tgt);
    if (!(tgt.differential(t) * ft == f.component(t + 1, src, tgt) * src.differential(t))) return false;
    for (int j = 1; j <= S.ring().vars(); ++j)
      if (!(ft * term_right_action(S, src.term(t), j) == term_right_action(S, tgt.term(t), j) * ft)) return false;
    for (int c = 0; c < ft.cols; ++c)
      for (int r = 0; r < ft.rows; ++r)
        for (const auto& [e, v] : ft(r, c).terms())
          if (total_degree(e) != src.term(t).degree(c) + f.degree - tgt.term(t).degree(r)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- solving

namespace {

using linalg::BigInt;

// Unknown matrix entry: sum over (monomial, unknown index).
using Unknown = std::vector<std::pair<Exponents, std::size_t>>;
// Linear polynomial: monomial -> (unknown -> coefficient).
using Linear = std::map<Exponents, std::map<std::size_t, BigInt>>;

struct UnknownMatrix {
  int rows = 0, cols = 0;
  std::vector<Unknown> data;
  const Unknown& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

void add_product(Linear& out, const Poly& p, const Unknown& u, long sign) {
  for (const auto& [mu, v] : u)
    for (const auto& [nu, c] : p.terms()) {
      Exponents e = mul(mu, nu);
      trim(e);
      out[e][v] += BigInt(static_cast<long>(c)) * sign;
    }
}

void emit(linalg::SparseMatrix& sys, const Linear& l) {
  for (const auto& [e, row] : l) {
    std::vector<std::pair<std::size_t, BigInt>> r;
    for (const auto& [v, c] : row)
      if (c != 0) r.emplace_back(v, c);
    if (!r.empty()) sys.add_row(std::move(r));
  }
}

// known * U (left) or U * known (right), accumulated with a sign
void add_left(std::vector<Linear>& out, int cols, const PolyMatrix& k, const UnknownMatrix& u, long sign) {
  for (int r = 0; r < k.rows; ++r)
    for (int m = 0; m < k.cols; ++m) {
      if (k(r, m).is_zero()) continue;
      for (int c = 0; c < u.cols; ++c) add_product(out[static_cast<std::size_t>(r) * cols + c], k(r, m), u.at(m, c), sign);
    }
}

void add_right(std::vector<Linear>& out, int cols, const UnknownMatrix& u, const PolyMatrix& k, long sign) {
  for (int m = 0; m < k.rows; ++m)
    for (int c = 0; c < k.cols; ++c) {
      if (k(m, c).is_zero()) continue;
      for (int r = 0; r < u.rows; ++r) add_product(out[static_cast<std::size_t>(r) * cols + c], k(m, c), u.at(r, m), sign);
    }
}

Coeff to_coeff(const BigInt& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("chain map coefficient exceeds 64 bits");
  return v.get_si();
}

}  // namespace

std::vector<ChainMap> chain_map_basis(const Soergel& S, const Complex& src, const Complex& tgt, int degree) {
  const PolyRing& R = S.ring();
  std::map<int, UnknownMatrix> U;
  std::size_t count = 0;
  for (const auto& [t, st] : src.terms) {
    const Term& tt = tgt.term(t);
    if (tt.size == 0) continue;
    UnknownMatrix u{tt.size, st.size, {}};
    u.data.resize(static_cast<std::size_t>(tt.size) * st.size);
    for (int r = 0; r < tt.size; ++r)
      for (int c = 0; c < st.size; ++c)
        for (const Exponents& e : R.monomials(st.degree(c) + degree - tt.degree(r)))
          u.data[static_cast<std::size_t>(r) * st.size + c].emplace_back(e, count++);
    U.emplace(t, std::move(u));
  }
  if (count == 0) return {};
  auto unknown = [&](int t) {
    auto it = U.find(t);
    return it == U.end() ? UnknownMatrix{tgt.term(t).size, src.term(t).size,
                                         std::vector<Unknown>(static_cast<std::size_t>(tgt.term(t).size) * src.term(t).size)}
                         : it->second;
  };
  linalg::SparseMatrix sys(count);
  const auto [lo, hi] = term_range(src, tgt);
  for (int t = lo - 1; t <= hi; ++t) {
    // d_tgt F_t - F_{t+1} d_src = 0
    const PolyMatrix dt = tgt.differential(t), ds = src.differential(t);
    const int rows = tgt.term(t + 1).size, cols = src.term(t).size;
    if (rows && cols) {
      std::vector<Linear> eq(static_cast<std::size_t>(rows) * cols);
      add_left(eq, cols, dt, unknown(t), 1);
      add_right(eq, cols, unknown(t + 1), ds, -1);
      for (const auto& l : eq) emit(sys, l);
    }
  }
  for (const auto& [t, u] : U)
    for (int j = 1; j <= R.vars(); ++j) {
      std::vector<Linear> eq(static_cast<std::size_t>(u.rows) * u.cols);
      add_right(eq, u.cols, u, term_right_action(S, src.term(t), j), 1);
      add_left(eq, u.cols, term_right_action(S, tgt.term(t), j), u, -1);
      for (const auto& l : eq) emit(sys, l);
    }
  std::vector<ChainMap> out;
  for (const auto& v : linalg::kernel_basis(sys)) {
    ChainMap f{degree, {}};
    for (const auto& [t, u] : U) {
      PolyMatrix m(u.rows, u.cols);
      for (int r = 0; r < u.rows; ++r)
        for (int c = 0; c < u.cols; ++c)
          for (const auto& [e, k] : u.at(r, c))
            if (v[k] != 0) m(r, c).add(e, to_coeff(v[k]));
      if (!m.is_zero()) f.comps.emplace(t, std::move(m));
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

// (basis index, monomial) pairs spanning the internal-degree-d piece.
std::vector<std::pair<int, Exponents>> piece_basis(const PolyRing& R, const Term& t, int d) {
  std::vector<std::pair<int, Exponents>> out;
  for (int k = 0; k < t.size; ++k)
    for (const Exponents& e : R.monomials(d - t.degree(k))) out.emplace_back(k, e);
  return out;
}

}  // namespace

int piece_rank(const Soergel& S, const Term& t, int d) {
  int n = 0;
  for (int k = 0; k < t.size; ++k) n += S.ring().rank(d - t.degree(k));
  return n;
}

linalg::DenseMatrix degree_piece(const Soergel& S, const PolyMatrix& m, const Term& src, const Term& tgt,
                                 int map_degree, int d) {
  const auto cols = piece_basis(S.ring(), src, d);
  const auto rows = piece_basis(S.ring(), tgt, d + map_degree);
  std::map<std::pair<int, Exponents>, std::size_t> index;
  for (std::size_t k = 0; k < rows.size(); ++k) index.emplace(rows[k], k);
  linalg::DenseMatrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& [c, mu] = cols[j];
    for (int r = 0; r < m.rows; ++r)
      for (const auto& [nu, v] : m(r, c).terms()) {
        Exponents e = mul(mu, nu);
        trim(e);
        out(index.at({r, e}), j) += static_cast<long>(v);
      }
  }
  return out;
}

namespace {

int min_degree(const Complex& c) {
  int lo = 0;
  bool any = false;
  for (const auto& [t, term] : c.terms)
    for (int k = 0; k < term.size; ++k) {
      lo = any ? std::min(lo, term.degree(k)) : term.degree(k);
      any = true;
    }
  return lo;
}

DegreeCertificate cone_piece(const Soergel& S, const Complex& src, const Complex& tgt, const ChainMap& f, int d) {
  DegreeCertificate out{d, true, {}};
  const auto [lo, hi] = term_range(src, tgt);
  // cone term t = src_{t+1} + tgt_t, differential [[-d_src, 0], [f, d_tgt]]
  std::vector<linalg::DenseMatrix> D;
  std::vector<std::size_t> dims;
  for (int t = lo - 1; t <= hi; ++t) {
    const Term &s1 = src.term(t + 1), &s2 = src.term(t + 2), &g0 = tgt.term(t), &g1 = tgt.term(t + 1);
    const auto a = degree_piece(S, src.differential(t + 1).scaled(-1), s1, s2, 0, d);
    const auto b = degree_piece(S, f.component(t + 1, src, tgt), s1, g1, 0, d);
    const auto c = degree_piece(S, tgt.differential(t), g0, g1, 0, d);
    const std::size_t n1 = piece_rank(S, s1, d), n0 = piece_rank(S, g0, d);
    const std::size_t m1 = piece_rank(S, s2, d), m0 = piece_rank(S, g1, d);
    linalg::DenseMatrix m(m1 + m0, n1 + n0);
    for (std::size_t i = 0; i < m1; ++i)
      for (std::size_t j = 0; j < n1; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < m0; ++i) {
      for (std::size_t j = 0; j < n1; ++j) m(m1 + i, j) = b(i, j);
      for (std::size_t j = 0; j < n0; ++j) m(m1 + i, n1 + j) = c(i, j);
    }
    dims.push_back(n1 + n0);
    D.push_back(std::move(m));
  }
  // exact over Z: ranks add up and every image is a direct summand
  std::vector<std::size_t> ranks;
  for (const auto& m : D) {
    ranks.push_back(linalg::rank(m));
    for (const auto& v : linalg::invariant_factors(m))
      if (v != 1) out.acyclic = false;
  }
  for (std::size_t k = 0; k < D.size(); ++k) {
    const std::size_t in = k ? ranks[k - 1] : 0;
    if (in + ranks[k] != dims[k]) out.acyclic = false;
    out.dims.push_back(static_cast<int>(dims[k]));
  }
  return out;
}

}  // namespace

std::vector<DegreeCertificate> cone_homology(const Soergel& S, const Complex& src, const Complex& tgt,
                                             const ChainMap& f, int max_degree) {
  if (f.degree != 0) throw std::invalid_argument("cone of a map of nonzero degree");
  std::vector<DegreeCertificate> out;
  for (int d = std::min(min_degree(src), min_degree(tgt)); d <= max_degree; ++d)
    out.push_back(cone_piece(S, src, tgt, f, d));
  return out;
}

std::optional<ChainMap> find_equivalence(const Soergel& S, const Complex& src, const Complex& tgt,
                                         int max_degree) {
  const auto basis = chain_map_basis(S, src, tgt, 0);
  const int lo = std::min(min_degree(src), min_degree(tgt));
  auto works = [&](const ChainMap& f) {
    for (int d = lo; d <= max_degree; ++d)
      if (!cone_piece(S, src, tgt, f, d).acyclic) return false;
    return true;
  };
  for (const auto& b : basis)
    if (works(b)) return b;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b)
      for (Coeff s : {1, -1}) {
        ChainMap f = basis[a] + basis[b].scaled(s);
        if (works(f)) return f;
      }
  return std::nullopt;
}

LaurentPoly euler_class(const Complex& c) {
  LaurentPoly out;
  for (const auto& [t, term] : c.terms)
    for (int k = 0; k < term.size; ++k) out.add(term.degree(k), t % 2 ? -1 : 1);
  return out;
}

long euler_piece(const Soergel& S, const Complex& c, int d) {
  long out = 0;
  for (const auto& [t, term] : c.terms) out += (t % 2 ? -1 : 1) * piece_rank(S, term, d);
  return out;
}

Coeff unit_coefficient(const Complex& src, const Complex& tgt, const ChainMap& f) {
  auto find = [](const Term& t) {
    for (std::size_t k = 0; k < t.summands.size(); ++k)
      if (t.summands[k].seq.empty() && t.summands[k].shift == 0) return t.offset[k];
    return -1;
  };
  const int c = find(src.term(0)), r = find(tgt.term(0));
  if (c < 0 || r < 0 || f.degree != 0) return 0;
  return f.component(0, src, tgt)(r, c).coefficient({});
}

// ---------------------------------------------------------------- cobordisms

namespace {

BraidWord slice(const BraidWord& w, int from, int to) {
  BraidWord out{w.strands, {}};
  out.letters.assign(w.letters.begin() + from, w.letters.begin() + to);
  return out;
}

std::pair<int, int> window(const MovieStep& s) {
  switch (s.op) {
    case StepKind::R1: return s.insert ? std::pair{0, 2} : std::pair{2, 0};
    case StepKind::R2: return {2, 2};
    case StepKind::R3: return {3, 3};
    case StepKind::Birth: return {0, 1};
    case StepKind::Death: return {1, 0};
  }
  return {0, 0};
}

std::map<std::vector<int>, std::pair<int, int>> locate(const Complex& c) {
  std::map<std::vector<int>, std::pair<int, int>> out;
  for (const auto& [t, term] : c.terms)
    for (std::size_t k = 0; k < term.tags.size(); ++k) out[term.tags[k]] = {t, static_cast<int>(k)};
  return out;
}

// id_{R(tau1)} (x) L (x) id_{R(tau2)}, where the local window has lb letters
// before and la after. L has cohomological degree 0, so no Koszul signs.
ChainMap widen(const Soergel& S, const ChainMap& L, const Complex& lsrc, const Complex& ltgt, const Complex& src,
               const Complex& tgt, int pos, int lb, int la) {
  ChainMap out{L.degree, {}};
  const auto lsrc_at = locate(lsrc);
  const auto tgt_at = locate(tgt);
  for (const auto& [t, term] : src.terms) {
    for (std::size_t s = 0; s < term.summands.size(); ++s) {
      const auto& tag = term.tags[s];
      const std::vector<int> c1(tag.begin(), tag.begin() + pos), c(tag.begin() + pos, tag.begin() + pos + lb),
          c2(tag.begin() + pos + lb, tag.end());
      const auto [tl, il] = lsrc_at.at(c);
      auto lit = L.comps.find(tl);
      if (lit == L.comps.end()) continue;
      const PolyMatrix& block = lit->second;
      const Term& lt = ltgt.term(tl);
      const Term& ls = lsrc.term(tl);
      const int k1 = std::accumulate(c1.begin(), c1.end(), 0), kc = std::accumulate(c.begin(), c.end(), 0);
      const std::vector<int> seq1(term.summands[s].seq.begin(), term.summands[s].seq.begin() + k1);
      for (std::size_t s2 = 0; s2 < lt.summands.size(); ++s2) {
        std::vector<int> tag2 = c1;
        tag2.insert(tag2.end(), lt.tags[s2].begin(), lt.tags[s2].end());
        tag2.insert(tag2.end(), c2.begin(), c2.end());
        if (static_cast<int>(tag2.size()) != static_cast<int>(tag.size()) - lb + la) throw std::logic_error("window mismatch");
        const auto [tt, it] = tgt_at.at(tag2);
        const Term& target = tgt.term(tt);
        const int kc2 = static_cast<int>(lt.summands[s2].seq.size());
        auto& m = out.comps.try_emplace(t, PolyMatrix(tgt.term(t).size, term.size)).first->second;
        for (int e = 0; e < term.summands[s].size(); ++e) {
          const int e1 = e & ((1 << k1) - 1), el = (e >> k1) & ((1 << kc) - 1), e2 = e >> (k1 + kc);
          for (int ep = 0; ep < lt.summands[s2].size(); ++ep) {
            const Poly& a = block(lt.offset[s2] + ep, ls.offset[il] + el);
            if (a.is_zero()) continue;
            Element x(1 << k1);
            x[e1] = Poly::constant(1);
            const Element r = S.right_mult(seq1, x, a);
            for (int f1 = 0; f1 < (1 << k1); ++f1)
              if (!r[f1].is_zero())
                m(target.offset[it] + (f1 | (ep << k1) | (e2 << (k1 + kc2))), term.offset[s] + e) += r[f1];
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

const Complex& SemiTrivial::complex(const BraidWord& w) {
  if (auto it = complexes_.find(w.letters); it != complexes_.end()) return it->second;
  return complexes_.emplace(w.letters, build(S_, w)).first->second;
}

const ChainMap& SemiTrivial::local_equivalence(const BraidWord& u, const BraidWord& u2) {
  auto key = std::pair{u.letters, u2.letters};
  if (auto it = local_.find(key); it != local_.end()) return it->second;
  const Complex& a = complex(u);
  const Complex& b = complex(u2);
  auto f = find_equivalence(S_, a, b, max_degree_);
  if (!f) throw std::runtime_error("no equivalence found between R(" + render(u) + ") and R(" + render(u2) + ")");
  if (unit_coefficient(a, b, *f) < 0) *f = f->scaled(-1);
  return local_.emplace(std::move(key), std::move(*f)).first->second;
}

ChainMap SemiTrivial::step_map(const BraidWord& before, const MovieStep& s) {
  const BraidWord after = apply_step(before, s);
  const auto [lb, la] = window(s);
  const BraidWord u = slice(before, s.pos, s.pos + lb);
  const BraidWord u2 = slice(after, s.pos, s.pos + la);
  ChainMap local;
  const bool branch = s.op == StepKind::Birth || s.op == StepKind::Death;
  if (branch) {
    const int letter = s.op == StepKind::Birth ? u2.letters[0] : u.letters[0];
    const bool positive = s.op == StepKind::Birth ? letter > 0 : letter < 0;
    if (!positive) return ChainMap{2, {}};
    // the A summand of R_i or R_i' sits alone in degree 0
    PolyMatrix one(1, 1);
    one(0, 0) = Poly::constant(1);
    local.comps[0] = one;
  } else {
    local = local_equivalence(u, u2);
  }
  return widen(S_, local, complex(u), complex(u2), complex(before), complex(after), s.pos, lb, la);
}

SemiTrivial::Result SemiTrivial::invariant(const BraidMovie& m) {
  const auto frames = m.frames();
  Result out;
  out.polarity = polarity(m);
  if (out.polarity.p_minus > 0) {
    out.map = ChainMap{2 * out.polarity.p_minus, {}};
    out.zero = true;
    return out;
  }
  out.map = identity(complex(frames.front()));
  for (std::size_t k = 0; k < m.steps.size(); ++k) out.map = compose(step_map(frames[k], m.steps[k]), out.map);
  out.unit_coefficient = unit_coefficient(complex(frames.front()), complex(frames.back()), out.map);
  return out;
}

bool RelationReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.passed; });
}

RelationReport verify_relations(int max_degree) {
  struct Case {
    int strands;
    std::vector<int> u, u2;
  };
  const std::vector<Case> cases = {
      {2, {}, {1, -1}},         {2, {}, {-1, 1}},
      {3, {}, {1, -1}},         {3, {}, {-1, 1}},          {3, {}, {2, -2}},        {3, {}, {-2, 2}},
      {4, {1, 3}, {3, 1}},      {4, {1, -3}, {-3, 1}},     {3, {1, 2, 1}, {2, 1, 2}},
      {3, {-1, -2, -1}, {-2, -1, -2}},                      {3, {1, 2, -1}, {-2, 1, 2}},
  };
  RelationReport out{max_degree, {}};
  std::map<int, Soergel> rings;
  for (const auto& c : cases) {
    const Soergel& S = rings.try_emplace(c.strands, c.strands).first->second;
    const BraidWord u{c.strands, c.u}, u2{c.strands, c.u2};
    RelationCheck r{"R(" + render(u) + ") ~ R(" + render(u2) + ")", false, {}};
    const Complex a = build(S, u), b = build(S, u2);
    if (auto f = find_equivalence(S, a, b, max_degree)) {
      r.degrees = cone_homology(S, a, b, *f, max_degree);
      r.passed = is_chain_map(S, a, b, *f) &&
                 std::all_of(r.degrees.begin(), r.degrees.end(), [](const auto& d) { return d.acyclic; });
    }
    out.checks.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const DegreeCertificate& c) {
  return {{"degree", c.degree}, {"acyclic", c.acyclic}, {"cone_ranks", c.dims}};
}

nlohmann::json to_json(const RelationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& x : c.degrees) d.push_back(to_json(x));
    checks.push_back({{"relation", c.name}, {"passed", c.passed}, {"degrees", d}});
  }
  return {{"max_degree", r.max_degree}, {"passed", r.passed()}, {"checks", checks}};
}

}  // namespace braidcat::rouquier
