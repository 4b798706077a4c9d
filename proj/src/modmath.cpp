// SPDX-License-Identifier: Apache-2.0
#include "fhegen/modmath.hpp"

#include <algorithm>

namespace fhegen {

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

uint64_t mod_inv(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) throw NotInvertible("mod_inv: zero has no inverse");
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(p), new_r = static_cast<int64_t>(a);
  while (new_r != 0) {
    int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw NotInvertible("mod_inv: argument shares a factor with the modulus");
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

int64_t centered(uint64_t x, uint64_t m) {
  if (x <= (m - 1) / 2) return static_cast<int64_t>(x);
  return static_cast<int64_t>(x) - static_cast<int64_t>(m);
}

SignPoly lagrange_sign_poly(uint64_t p) {
  if (p < 3 || !is_prime(p))
    throw InvalidModulus("lagrange_sign_poly: modulus must be an odd prime");
  const Modulus f{p};

  // Full node product N(x) = prod_{j=0}^{p-1} (x - j), ascending coefficients.
  std::vector<uint64_t> full{1};
  for (uint64_t j = 0; j < p; ++j) {
    std::vector<uint64_t> next(full.size() + 1, 0);
    const uint64_t neg_j = f.neg(j);
    for (size_t i = 0; i < full.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], full[i]);
      next[i] = f.add(next[i], f.mul(full[i], neg_j));
    }
    full = std::move(next);
  }

  SignPoly poly;
  poly.p = p;
  poly.coeffs.assign(p, 0);

  // Only nodes with y = 1 contribute: the residues above (p-1)/2.
  std::vector<uint64_t> quot(p);
  for (uint64_t i = (p + 1) / 2; i < p; ++i) {
    // Synthetic division of N by (x - i).
    uint64_t carry = 0;
    for (long d = static_cast<long>(p); d >= 1; --d) {
      carry = f.add(full[static_cast<size_t>(d)], f.mul(carry, i));
      quot[static_cast<size_t>(d) - 1] = carry;
    }
    uint64_t denom = 1;
    for (uint64_t j = 0; j < p; ++j)
      if (j != i) denom = f.mul(denom, f.sub(i, j));
    const uint64_t w = mod_inv(denom, p);
    for (size_t d = 0; d < p; ++d)
      poly.coeffs[d] = f.add(poly.coeffs[d], f.mul(quot[d], w));
  }
  return poly;
}

namespace {

struct CountedElem {
  uint64_t v;
  unsigned depth;
};

struct CountingOps {
  Modulus f;
  EvalCount count;

  CountedElem mul(const CountedElem& a, const CountedElem& b) {
    ++count.nonscalar_mults;
    return {f.mul(a.v, b.v), std::max(a.depth, b.depth) + 1};
  }
  CountedElem scale(const CountedElem& a, uint64_t c) {
    ++count.scalar_mults;
    return {f.mul(a.v, c % f.m), a.depth};
  }
  CountedElem add(const CountedElem& a, const CountedElem& b) {
    ++count.additions;
    return {f.add(a.v, b.v), std::max(a.depth, b.depth)};
  }
  CountedElem add_const(const CountedElem& a, uint64_t c) {
    ++count.additions;
    return {f.add(a.v, c % f.m), a.depth};
  }
  CountedElem from_const(uint64_t c) { return {c % f.m, 0}; }
};

}  // namespace

std::pair<uint64_t, EvalCount> eval_poly_ps(const SignPoly& poly, uint64_t x) {
  CountingOps ops{Modulus{poly.p}, {}};
  CountedElem res =
      eval_poly_ps_with<CountedElem>(poly.coeffs, CountedElem{x % poly.p, 0}, ops);
  EvalCount count = ops.count;
  count.depth = res.depth;
  return {res.v, count};
}

}  // namespace fhegen
