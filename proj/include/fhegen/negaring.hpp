// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_NEGARING_HPP
#define FHEGEN_NEGARING_HPP

#include <cstdint>
#include <vector>

#include "fhegen/errors.hpp"

namespace fhegen {

// Element of Z_p[x]/(x^n + 1) with n a power of two; coeffs[i] is the
// degree-i coefficient, reduced into [0, p).
struct NegaPoly {
  uint64_t p = 0;
  std::vector<uint64_t> coeffs;

  size_t n() const { return coeffs.size(); }
  bool operator==(const NegaPoly& o) const = default;
};

NegaPoly nega_zero(uint64_t p, size_t n);

// X^e for e >= 0, -X^(n+e) for e < 0 (the wrap-around identity of the
// negacyclic ring). Throws ExponentOutOfRange when |e| >= n.
NegaPoly monomial(int64_t e, size_t n, uint64_t p);

// All-ones polynomial 1 + x + ... + x^(n-1).
NegaPoly all_ones_poly(size_t n, uint64_t p);

// Reference product, reduced by x^n = -1. Always available.
NegaPoly nega_mul_schoolbook(const NegaPoly& a, const NegaPoly& b);

// Negacyclic NTT fast path; requires p prime with p = 1 (mod 2n).
bool ntt_available(uint64_t p, size_t n);
NegaPoly nega_mul_ntt(const NegaPoly& a, const NegaPoly& b);

// Product in the ring. Dispatches to the NTT when the modulus admits one
// and the size warrants it; results are bit-identical to the schoolbook
// path either way. Throws MismatchedRing when p or n differ.
NegaPoly nega_mul(const NegaPoly& a, const NegaPoly& b);

}  // namespace fhegen

#endif  // FHEGEN_NEGARING_HPP
