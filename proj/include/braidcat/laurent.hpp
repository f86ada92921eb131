#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidcat/integer.hpp"

namespace braidcat {

// Element of Z[q, q^-1]; zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Coeff c) { add(0, c); }  // NOLINT: implicit constant
  static LaurentPoly monomial(int exp, Coeff c = 1) {
    LaurentPoly p;
    p.add(exp, c);
    return p;
  }

  const std::map<int, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coefficient(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? 0 : it->second;
  }
  void add(int exp, Coeff c) {
    if (c == 0) return;
    Coeff& slot = terms_[exp];
    slot = checked_add(slot, c);
    if (slot == 0) terms_.erase(exp);
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, checked_mul(-1, c));
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add(ea + eb, checked_mul(ca, cb));
    return r;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto [e, c] = *it;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      const Coeff m = c < 0 ? -c : c;
      if (e == 0) {
        s += std::to_string(m);
        continue;
      }
      if (m != 1) s += std::to_string(m) + "*";
      s += e == 1 ? "q" : "q^" + std::to_string(e);
    }
    return s;
  }
  // {"exponent": coefficient}
  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : terms_) j[std::to_string(e)] = c;
    return j;
  }

 private:
  std::map<int, Coeff> terms_;
};

// Square matrix over Z[q, q^-1].
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  explicit LaurentMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}
  static LaurentMatrix identity(int n) {
    LaurentMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int size() const { return n_; }
  LaurentPoly& operator()(int i, int j) { return data_[i * n_ + j]; }
  const LaurentPoly& operator()(int i, int j) const { return data_[i * n_ + j]; }

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    LaurentMatrix r(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < a.n_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < n_; ++j) row.push_back((*this)(i, j).to_json());
      rows.push_back(row);
    }
    return rows;
  }
  std::string to_string() const {
    std::string s;
    for (int i = 0; i < n_; ++i) {
      s += "[";
      for (int j = 0; j < n_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
      s += "]\n";
    }
    return s;
  }

 private:
  int n_ = 0;
  std::vector<LaurentPoly> data_;
};

}  // namespace braidcat
