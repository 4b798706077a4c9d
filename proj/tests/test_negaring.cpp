// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fhegen/negaring.hpp"
#include "fhegen/rng.hpp"

using namespace fhegen;

namespace {

NegaPoly random_poly(Rng& rng, uint64_t p, size_t n) {
  NegaPoly out = nega_zero(p, n);
  for (auto& c : out.coeffs) c = rng.below(p);
  return out;
}

}  // namespace

TEST_CASE("monomials encode positive and negative exponents") {
  CHECK(monomial(2, 4, 5).coeffs == std::vector<uint64_t>{0, 0, 1, 0});
  // X^-2 = -X^(4-2) in the negacyclic ring
  CHECK(monomial(-2, 4, 5).coeffs == std::vector<uint64_t>{0, 0, 4, 0});
  CHECK_THROWS_AS(monomial(4, 4, 5), ExponentOutOfRange);
  CHECK_THROWS_AS(monomial(-4, 4, 5), ExponentOutOfRange);
}

TEST_CASE("x^3 * x wraps to minus one") {
  NegaPoly prod = nega_mul(monomial(3, 4, 5), monomial(1, 4, 5));
  CHECK(prod.coeffs == std::vector<uint64_t>{4, 0, 0, 0});
}

TEST_CASE("all-ones polynomial times x^3 matches the hand convolution") {
  // (1 + x + x^2 + x^3) * x^3 = x^3 - 1 - x - x^2 over p = 5
  NegaPoly prod = nega_mul(all_ones_poly(4, 5), monomial(3, 4, 5));
  CHECK(prod.coeffs == std::vector<uint64_t>{4, 4, 4, 1});
}

TEST_CASE("one is the multiplicative identity") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    NegaPoly a = random_poly(rng, 17, 8);
    CHECK(nega_mul(a, monomial(0, 8, 17)) == a);
  }
}

TEST_CASE("negative monomials invert their positive counterparts") {
  const size_t n = 16;
  const uint64_t p = 5;
  for (int64_t b = 1; b < static_cast<int64_t>(n); ++b) {
    NegaPoly prod = nega_mul_schoolbook(monomial(-b, n, p), monomial(b, n, p));
    CHECK(prod == monomial(0, n, p));
  }
}

TEST_CASE("monomial products respect the wrap-around sign rule exhaustively") {
  const size_t n = 16;
  const uint64_t p = 17;
  for (int64_t a = 0; a < static_cast<int64_t>(n); ++a) {
    for (int64_t b = 1; b < static_cast<int64_t>(n); ++b) {
      NegaPoly prod =
          nega_mul_schoolbook(monomial(a, n, p), monomial(-b, n, p));
      if (std::llabs(a - b) < static_cast<int64_t>(n))
        CHECK(prod == monomial(a - b, n, p));
    }
  }
}

TEST_CASE("ring product is commutative and associative on random triples") {
  Rng rng(11);
  for (uint64_t p : {5ull, 17ull}) {
    for (size_t n : {4ull, 8ull, 16ull}) {
      for (int trial = 0; trial < 200; ++trial) {
        NegaPoly a = random_poly(rng, p, n);
        NegaPoly b = random_poly(rng, p, n);
        NegaPoly c = random_poly(rng, p, n);
        REQUIRE(nega_mul_schoolbook(a, b) == nega_mul_schoolbook(b, a));
        REQUIRE(nega_mul_schoolbook(nega_mul_schoolbook(a, b), c) ==
                nega_mul_schoolbook(a, nega_mul_schoolbook(b, c)));
      }
    }
  }
}

TEST_CASE("NTT fast path is bit-identical to the schoolbook reference") {
  Rng rng(5);
  struct Ring { uint64_t p; size_t n; };
  for (Ring ring : {Ring{17, 8}, Ring{97, 16}, Ring{257, 64}}) {
    REQUIRE(ntt_available(ring.p, ring.n));
    for (int trial = 0; trial < 4000; ++trial) {
      NegaPoly a = random_poly(rng, ring.p, ring.n);
      NegaPoly b = random_poly(rng, ring.p, ring.n);
      REQUIRE(nega_mul_ntt(a, b) == nega_mul_schoolbook(a, b));
    }
  }
}

TEST_CASE("NTT availability tracks the 2n-th root condition") {
  CHECK(ntt_available(17, 8));    // 16 divides 16
  CHECK(!ntt_available(17, 16));  // 32 does not divide 16
  CHECK(ntt_available(97, 16));
  CHECK(!ntt_available(15, 4));  // composite
}

TEST_CASE("ring mismatch is rejected") {
  NegaPoly a = nega_zero(5, 4);
  NegaPoly b = nega_zero(5, 8);
  NegaPoly c = nega_zero(7, 4);
  CHECK_THROWS_AS(nega_mul(a, b), MismatchedRing);
  CHECK_THROWS_AS(nega_mul(a, c), MismatchedRing);
}
