#pragma once

#include <vector>

#include "braidcat/braid.hpp"
#include "braidcat/complex.hpp"
#include "braidcat/laurent.hpp"

// Graded Euler characteristics over Z[q, q^-1] and the Burau matrices they
// produce.
namespace braidcat {

// Graded rank of (l) A_n (j), read from the path basis.
LaurentPoly graded_rank(const ZigzagRing& ring, int l, int j);

// Column j is sum_t (-1)^t [term_t (x)_A P_j] in the basis [P_1], ..., [P_n],
// with [M{k}] = q^k [M].
LaurentMatrix k_class(const BimoduleCategory& cat, const ChainComplex& c);

// Class of R_i (index > 0) or R_i' (index < 0) on n projectives: the
// identity except in row i, where the diagonal entry is -q^2 (resp. -q^-2)
// and the entries next to it are -q (resp. -q^-1).
LaurentMatrix burau_generator(int n, int index);

// Product of generator matrices over n = strands - 1 projectives.
LaurentMatrix burau(const BraidWord& w);

LaurentPoly determinant(const LaurentMatrix& m);

// Integer matrix obtained by setting q = 1.
std::vector<std::vector<Coeff>> at_q_equals_one(const LaurentMatrix& m);

}  // namespace braidcat
