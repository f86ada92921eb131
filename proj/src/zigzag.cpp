#include "braidcat/zigzag.hpp"

#include <sstream>
#include <stdexcept>

namespace braidcat {

std::string BasisPath::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (k) s += "|";
    s += std::to_string(vertices[k]);
  }
  return s + ")";
}

BasisPath BasisPath::parse(const std::string& text) {
  if (text.size() < 3 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("malformed path: " + text);
  BasisPath p;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(ss, item, '|')) p.vertices.push_back(std::stoi(item));
  if (p.vertices.empty()) throw std::invalid_argument("empty path: " + text);
  return p;
}

AlgebraElement AlgebraElement::basis(int index, Coeff c) {
  AlgebraElement e;
  e.add(index, c);
  return e;
}

Coeff AlgebraElement::coefficient(int index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? 0 : it->second;
}

void AlgebraElement::add(int index, Coeff c) {
  if (c == 0) return;
  Coeff& slot = terms_[index];
  slot = checked_add(slot, c);
  if (slot == 0) terms_.erase(index);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [k, c] : o.terms_) add(k, checked_mul(-1, c));
  return *this;
}

AlgebraElement AlgebraElement::operator*(Coeff c) const {
  AlgebraElement r;
  for (const auto& [k, v] : terms_) r.add(k, checked_mul(v, c));
  return r;
}

namespace {

BasisPath x_path(int i) { return i == 1 ? BasisPath{{1, 2, 1}} : BasisPath{{i, i - 1, i}}; }

}  // namespace

ZigzagRing::ZigzagRing(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("zigzag ring needs n >= 1");
  for (int i = 1; i <= n; ++i) basis_.push_back({{i}});
  for (int i = 1; i < n; ++i) {
    basis_.push_back({{i, i + 1}});
    basis_.push_back({{i + 1, i}});
  }
  for (int i = 1; i <= n; ++i) basis_.push_back(x_path(i));
  for (int k = 0; k < rank(); ++k) index_[basis_[k]] = k;

  // Concatenate, then reduce with the defining relations: every length-3
  // path that returns to its start is X_i, monotone length-3 paths vanish,
  // and all length-4 paths vanish.
  const int r = rank();
  table_.assign(static_cast<std::size_t>(r) * r, std::nullopt);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const BasisPath& pa = basis_[a];
      const BasisPath& pb = basis_[b];
      if (pa.last() != pb.first()) continue;
      std::vector<int> v = pa.vertices;
      v.insert(v.end(), pb.vertices.begin() + 1, pb.vertices.end());
      std::optional<int> result;
      if (v.size() <= 2) {
        result = index_.at(BasisPath{v});
      } else if (v.size() == 3) {
        if (n == 1) {
          // (1)X_1 and X_1(1) concatenate to X_1's label.
          result = index_.at(BasisPath{v});
        } else if (v[0] == v[2]) {
          result = index_.at(x_path(v[0]));
        }
      }
      table_[a * r + b] = result;
    }

  ending_at_.assign(n, {});
  starting_at_.assign(n, {});
  for (int k = 0; k < r; ++k) {
    if (n == 1) {
      ending_at_[0].push_back(k);
      starting_at_[0].push_back(k);
      continue;
    }
    ending_at_[basis_[k].last() - 1].push_back(k);
    starting_at_[basis_[k].first() - 1].push_back(k);
  }
}

std::optional<int> ZigzagRing::index_of(const BasisPath& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ZigzagRing::idempotent(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("vertex out of range");
  return i - 1;
}

int ZigzagRing::arrow(int from, int to) const {
  auto idx = index_of(BasisPath{{from, to}});
  if (!idx || std::abs(from - to) != 1) throw std::out_of_range("no such arrow");
  return *idx;
}

int ZigzagRing::x(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("X index out of range");
  return index_.at(x_path(i));
}

AlgebraElement ZigzagRing::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      if (auto p = product(ka, kb)) r.add(*p, checked_mul(ca, cb));
  return r;
}

AlgebraElement ZigzagRing::one() const {
  AlgebraElement e;
  for (int i = 1; i <= n_; ++i) e.add(idempotent(i), 1);
  return e;
}

AlgebraElement ZigzagRing::x_element(int j) const {
  if (j < 1 || j > n_) return {};
  return AlgebraElement::basis(x(j));
}

AlgebraElement ZigzagRing::homogeneous_part(const AlgebraElement& a, int d) const {
  AlgebraElement r;
  for (const auto& [k, c] : a.terms())
    if (degree(k) == d) r.add(k, c);
  return r;
}

bool ZigzagRing::is_central(const AlgebraElement& a) const {
  for (int k = 0; k < rank(); ++k) {
    AlgebraElement p = AlgebraElement::basis(k);
    if (multiply(a, p) != multiply(p, a)) return false;
  }
  return true;
}

std::vector<AlgebraElement> ZigzagRing::center_basis() const {
  std::vector<AlgebraElement> out{one()};
  for (int i = 1; i <= n_; ++i) out.push_back(AlgebraElement::basis(x(i)));
  for (const auto& z : out)
    if (!is_central(z)) throw std::logic_error("center basis element fails to commute");
  return out;
}

std::vector<int> ZigzagRing::paths_between(int from, int to) const {
  std::vector<int> out;
  for (int k : starting_at(from))
    if (n_ == 1 || last_vertex(k) == to) out.push_back(k);
  return out;
}

std::string ZigzagRing::to_string(const AlgebraElement& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : a.terms()) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Coeff m = c < 0 ? -c : c;
    if (m != 1) s += std::to_string(m) + "*";
    s += basis_[k].to_string();
  }
  return s;
}

nlohmann::json ZigzagRing::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["rank"] = rank();
  nlohmann::json b = nlohmann::json::array();
  for (const auto& p : basis_) b.push_back(p.to_string());
  j["basis"] = b;
  nlohmann::json table = nlohmann::json::array();
  for (int a = 0; a < rank(); ++a)
    for (int c = 0; c < rank(); ++c) {
      auto p = product(a, c);
      table.push_back({basis_[a].to_string(), basis_[c].to_string(), p ? basis_[*p].to_string() : "0"});
    }
  j["products"] = table;
  return j;
}

}  // namespace braidcat
