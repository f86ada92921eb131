#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace braidcat {

// Lattice coefficients. Every structure constant of A_n is 0 or 1, so lattice
// entries stay tiny; the checked operations turn an overflow into an error
// instead of a silently wrong answer. Linear solvers use GMP integers.
using Coeff = std::int64_t;

inline Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow in addition");
  return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow in multiplication");
  return r;
}

// a += c * b, elementwise.
inline void axpy(std::vector<Coeff>& a, Coeff c, const std::vector<Coeff>& b) {
  if (c == 0) return;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (b[k] != 0) a[k] = checked_add(a[k], checked_mul(c, b[k]));
}

inline bool is_zero(const std::vector<Coeff>& v) {
  for (Coeff c : v)
    if (c != 0) return false;
  return true;
}

}  // namespace braidcat
