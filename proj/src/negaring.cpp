// SPDX-License-Identifier: Apache-2.0
#include "fhegen/negaring.hpp"

#include <bit>
#include <cstdlib>

#include "fhegen/modmath.hpp"

namespace fhegen {

namespace {

void check_ring(uint64_t p, size_t n) {
  if (p < 2) throw InvalidModulus("negaring: modulus must be at least 2");
  if (n == 0 || !std::has_single_bit(n))
    throw InvalidModulus("negaring: degree bound must be a power of two");
}

void check_same_ring(const NegaPoly& a, const NegaPoly& b) {
  if (a.p != b.p || a.n() != b.n())
    throw MismatchedRing("nega_mul: operands live in different rings");
}

// Smallest generator of F_p^* by exhaustive order checks against the prime
// factors of p - 1.
uint64_t find_generator(uint64_t p) {
  const Modulus f{p};
  std::vector<uint64_t> factors;
  uint64_t m = p - 1;
  for (uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (uint64_t q : factors)
      if (f.pow(g, (p - 1) / q) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw InvalidModulus("negaring: no generator found (modulus not prime?)");
}

// In-place radix-2 NTT over F_p with root omega of order n.
void ntt_forward(std::vector<uint64_t>& a, const Modulus& f, uint64_t omega) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {  // bit reversal
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const uint64_t wlen = f.pow(omega, n / len);
    for (size_t i = 0; i < n; i += len) {
      uint64_t w = 1;
      for (size_t j = 0; j < len / 2; ++j) {
        const uint64_t u = a[i + j];
        const uint64_t v = f.mul(a[i + j + len / 2], w);
        a[i + j] = f.add(u, v);
        a[i + j + len / 2] = f.sub(u, v);
        w = f.mul(w, wlen);
      }
    }
  }
}

}  // namespace

NegaPoly nega_zero(uint64_t p, size_t n) {
  check_ring(p, n);
  return NegaPoly{p, std::vector<uint64_t>(n, 0)};
}

NegaPoly monomial(int64_t e, size_t n, uint64_t p) {
  check_ring(p, n);
  if (static_cast<uint64_t>(std::llabs(e)) >= n)
    throw ExponentOutOfRange("monomial: |exponent| must be below the ring degree");
  NegaPoly out = nega_zero(p, n);
  if (e >= 0) {
    out.coeffs[static_cast<size_t>(e)] = 1 % p;
  } else {
    out.coeffs[static_cast<size_t>(static_cast<int64_t>(n) + e)] = p - 1;
  }
  return out;
}

NegaPoly all_ones_poly(size_t n, uint64_t p) {
  check_ring(p, n);
  return NegaPoly{p, std::vector<uint64_t>(n, 1 % p)};
}

NegaPoly nega_mul_schoolbook(const NegaPoly& a, const NegaPoly& b) {
  check_same_ring(a, b);
  const size_t n = a.n();
  const Modulus f{a.p};
  NegaPoly out = nega_zero(a.p, n);
  for (size_t i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      const uint64_t t = f.mul(a.coeffs[i], b.coeffs[j]);
      const size_t k = i + j;
      if (k < n)
        out.coeffs[k] = f.add(out.coeffs[k], t);
      else
        out.coeffs[k - n] = f.sub(out.coeffs[k - n], t);
    }
  }
  return out;
}

bool ntt_available(uint64_t p, size_t n) {
  return n >= 2 && std::has_single_bit(n) && is_prime(p) &&
         (p - 1) % (2 * n) == 0;
}

NegaPoly nega_mul_ntt(const NegaPoly& a, const NegaPoly& b) {
  check_same_ring(a, b);
  const size_t n = a.n();
  const uint64_t p = a.p;
  if (!ntt_available(p, n))
    throw InvalidModulus("nega_mul_ntt: modulus does not admit a 2n-th root of unity");
  const Modulus f{p};

  // psi is a primitive 2n-th root of unity; twisting by psi^i folds the
  // negacyclic reduction into a plain cyclic convolution of size n.
  const uint64_t g = find_generator(p);
  const uint64_t psi = f.pow(g, (p - 1) / (2 * n));
  const uint64_t omega = f.mul(psi, psi);

  std::vector<uint64_t> fa(n), fb(n);
  uint64_t tw = 1;
  for (size_t i = 0; i < n; ++i) {
    fa[i] = f.mul(a.coeffs[i], tw);
    fb[i] = f.mul(b.coeffs[i], tw);
    tw = f.mul(tw, psi);
  }
  ntt_forward(fa, f, omega);
  ntt_forward(fb, f, omega);
  for (size_t i = 0; i < n; ++i) fa[i] = f.mul(fa[i], fb[i]);
  ntt_forward(fa, f, mod_inv(omega, p));

  const uint64_t n_inv = mod_inv(n % p, p);
  const uint64_t psi_inv = mod_inv(psi, p);
  NegaPoly out = nega_zero(p, n);
  tw = n_inv;
  for (size_t i = 0; i < n; ++i) {
    out.coeffs[i] = f.mul(fa[i], tw);
    tw = f.mul(tw, psi_inv);
  }
  return out;
}

NegaPoly nega_mul(const NegaPoly& a, const NegaPoly& b) {
  check_same_ring(a, b);
  if (a.n() >= 16 && ntt_available(a.p, a.n())) return nega_mul_ntt(a, b);
  return nega_mul_schoolbook(a, b);
}

}  // namespace fhegen
