// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_MODMATH_HPP
#define FHEGEN_MODMATH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fhegen/errors.hpp"

namespace fhegen {

// Arithmetic mod a machine-word modulus. Products go through 128-bit
// intermediates, so any p < 2^63 is safe.
struct Modulus {
  uint64_t m;

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= m ? s - m : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + m - b; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : m - a; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
  }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t acc = 1 % m;
    while (e) {
      if (e & 1) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1;
    }
    return acc;
  }
};

// Deterministic trial-division primality check, adequate for the
// machine-word moduli this project uses.
bool is_prime(uint64_t p);

// Modular inverse of a mod p. Throws NotInvertible when gcd(a, p) != 1
// (in particular when a == 0 mod p).
uint64_t mod_inv(uint64_t a, uint64_t p);

// Centered representative of x mod m: x itself when x <= (m-1)/2,
// otherwise x - m.
int64_t centered(uint64_t x, uint64_t m);

// Counters for one instrumented polynomial evaluation.
struct EvalCount {
  uint64_t nonscalar_mults = 0;
  uint64_t scalar_mults = 0;
  uint64_t additions = 0;
  unsigned depth = 0;  // multiplicative levels consumed by the result
};

// Interpolated indicator of "centered(x) < 0" over F_p, coefficients stored
// ascending by degree. P(x) = 1 exactly on the residues whose centered
// representative is negative, 0 elsewhere.
struct SignPoly {
  uint64_t p = 0;
  std::vector<uint64_t> coeffs;

  // Highest index with a nonzero coefficient, -1 for the zero polynomial.
  long degree() const {
    for (long i = static_cast<long>(coeffs.size()) - 1; i >= 0; --i)
      if (coeffs[i] != 0) return i;
    return -1;
  }
};

// Lagrange interpolation of the sign indicator over all p points of F_p.
// Throws InvalidModulus unless p is an odd prime.
SignPoly lagrange_sign_poly(uint64_t p);

namespace detail {

// One term of a partially evaluated polynomial: an optional ring element
// plus a plaintext constant. Keeping the constant apart avoids spending
// ciphertext operations on coefficient-only blocks.
template <class E>
struct PsPart {
  std::optional<E> ct;
  uint64_t k = 0;
};

}  // namespace detail

// Paterson-Stockmeyer evaluation of an ascending coefficient list at x,
// generic over the ring operations so the same plan serves both counted
// scalar evaluation and slot-vector evaluation. Baby-step size is
// ceil(sqrt(deg+1)); giant steps combine through a balanced tree, which
// keeps the consumed depth within ceil(log2(deg+1)) + 2 and the
// ciphertext-ciphertext products within 2*ceil(sqrt(deg+1)) +
// ceil(log2(deg+1)).
//
// Ops must provide:
//   E mul(const E&, const E&);           // ciphertext-ciphertext product
//   E scale(const E&, uint64_t);         // product with a plaintext constant
//   E add(const E&, const E&);
//   E add_const(const E&, uint64_t);
//   E from_const(uint64_t);
template <class E, class Ops>
E eval_poly_ps_with(std::span<const uint64_t> coeffs, const E& x, Ops& ops) {
  long deg = -1;
  for (long i = static_cast<long>(coeffs.size()) - 1; i >= 0; --i)
    if (coeffs[i] != 0) { deg = i; break; }
  if (deg <= 0) return ops.from_const(deg < 0 ? 0 : coeffs[0]);

  const size_t n = static_cast<size_t>(deg) + 1;  // number of coefficients
  size_t k = 1;
  while (k * k < n) ++k;                 // k = ceil(sqrt(n))
  const size_t m = (n + k - 1) / k;      // giant blocks
  const size_t baby_top = (m == 1) ? static_cast<size_t>(deg) : k;

  // pow[j] = x^j via balanced halving, depth ceil(log2(j)).
  std::vector<E> pow;
  pow.reserve(baby_top + 1);
  pow.push_back(ops.from_const(1));  // placeholder, never used
  pow.push_back(x);
  for (size_t j = 2; j <= baby_top; ++j)
    pow.push_back(ops.mul(pow[j / 2], pow[j - j / 2]));

  auto block = [&](size_t b) {
    detail::PsPart<E> part;
    part.k = coeffs[b * k];
    for (size_t j = 1; j < k; ++j) {
      const size_t idx = b * k + j;
      if (idx > static_cast<size_t>(deg)) break;
      const uint64_t c = coeffs[idx];
      if (c == 0) continue;
      E term = (c == 1) ? pow[j] : ops.scale(pow[j], c);
      part.ct = part.ct ? std::optional<E>(ops.add(*part.ct, term))
                        : std::optional<E>(std::move(term));
    }
    return part;
  };

  if (m == 1) {
    detail::PsPart<E> only = block(0);
    if (!only.ct) return ops.from_const(only.k);
    return only.k ? ops.add_const(*only.ct, only.k) : *only.ct;
  }

  // y^(2^j) ladder for the combine tree.
  size_t levels = 0;
  while ((size_t{1} << (levels + 1)) < m) ++levels;
  std::vector<E> ypow;
  ypow.push_back(pow[k]);
  for (size_t j = 1; j <= levels; ++j)
    ypow.push_back(ops.mul(ypow[j - 1], ypow[j - 1]));

  auto merge = [&](detail::PsPart<E> lo, const detail::PsPart<E>& hi,
                   const E& yh) {
    if (hi.ct) {
      E t = ops.mul(yh, *hi.ct);
      lo.ct = lo.ct ? std::optional<E>(ops.add(*lo.ct, t))
                    : std::optional<E>(std::move(t));
    }
    if (hi.k != 0) {
      E t = (hi.k == 1) ? yh : ops.scale(yh, hi.k);
      lo.ct = lo.ct ? std::optional<E>(ops.add(*lo.ct, t))
                    : std::optional<E>(std::move(t));
    }
    return lo;
  };

  auto eval_range = [&](auto&& self, size_t b0, size_t count)
      -> detail::PsPart<E> {
    if (count == 1) return block(b0);
    size_t h = 1;
    while (h * 2 < count) h *= 2;  // largest power of two below count
    detail::PsPart<E> lo = self(self, b0, h);
    detail::PsPart<E> hi = self(self, b0 + h, count - h);
    size_t lg = 0;
    while ((size_t{1} << lg) < h) ++lg;
    return merge(std::move(lo), hi, ypow[lg]);
  };

  detail::PsPart<E> res = eval_range(eval_range, 0, m);
  if (!res.ct) return ops.from_const(res.k);
  return res.k ? ops.add_const(*res.ct, res.k) : *res.ct;
}

// Instrumented scalar evaluation of poly at x over F_p.
std::pair<uint64_t, EvalCount> eval_poly_ps(const SignPoly& poly, uint64_t x);

}  // namespace fhegen

#endif  // FHEGEN_MODMATH_HPP
