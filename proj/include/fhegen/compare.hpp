// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_COMPARE_HPP
#define FHEGEN_COMPARE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "fhegen/emulator.hpp"
#include "fhegen/modmath.hpp"

namespace fhegen {

// Digit-decomposed view of word values: r ciphers over F_p, most
// significant digit first. value = sum digits[i] * p^(r-1-i).
struct DigitVec {
  uint64_t p = 0;
  std::vector<WordCipher> digits;
};

// 0/1 comparison mask, one lane per input lane.
struct CmpResult {
  EncVec mask;
};

// Process-wide cache of sign polynomials (interpolation is O(p^2)).
const SignPoly& cached_sign_poly(uint64_t p);

// ---------------------------------------------------------------------------
// F_p primitives (operands are mod-p ciphers).

// Strict less-than via the interpolated sign of the difference. Requires
// both operand range bounds within (p-1)/2 so the centered difference is
// faithful; throws RangeViolation otherwise. Charges one comparison plus
// the evaluation's products and depth.
CmpResult lt_interp(EvalContext& ctx, const WordCipher& a, const WordCipher& b);

// Equality indicator 1 - (a-b)^(p-1); exact on the full digit range.
// Charges one equality plus ceil(log2(p-1)) levels.
CmpResult eq_fermat(EvalContext& ctx, const WordCipher& a, const WordCipher& b);

// x^e with a balanced halving chain: depth ceil(log2 e).
WordCipher ct_pow(EvalContext& ctx, const WordCipher& x, uint64_t e);

// ---------------------------------------------------------------------------
// Digit-encoded comparison (the word-wise non-linear path).

// Clear-text digit split of each slot, charged at the published reduction
// rate; digit ciphers inherit the input's depth.
DigitVec reduce_to_digits(EvalContext& ctx, const WordCipher& a);
// Restores a 0/1 digit-space result to the Z_{p^r} space, charged at the
// published lifting rate.
WordCipher lift_to_word(EvalContext& ctx, const WordCipher& mask_mod_p);

// Model charges for the encoding round trip (counts only; the depth meter
// tracks just the emulated multiplication DAG).
uint64_t reduce_cost_mults(uint64_t p, uint64_t r);
uint64_t lift_cost_mults(uint64_t p, uint64_t r);

// Unsigned less-than on digit vectors, most significant digit first:
// per-digit less-than and equality indicators combined so lower digits
// count only under equality above. Exact on full-range digits; charges one
// comparison.
CmpResult lt_digits(EvalContext& ctx, const DigitVec& a, const DigitVec& b);

// ---------------------------------------------------------------------------
// Degree-encoded comparison over Z_p[x]/(x^n + 1).

// Sign of the constant coefficient of (1 + x + ... + x^(n-1)) * X^a * X^-b:
// +1 iff a <= b, -1 otherwise. One ring product beyond the plaintext
// all-ones factor. Throws DomainTooLarge when a or b >= n.
int lt_xcmp(uint64_t a, uint64_t b, size_t n, uint64_t p);

struct XcmpCount {
  uint64_t ring_mults = 0;
  unsigned depth = 0;
};

// Two-digit extension over the domain [0, n^2): high digits through the
// degree encoding, tie broken by the low digits under a Fermat equality
// guard. Returns the "a <= b" bit plus honest operation counts; the tie
// conversion is what costs the extra depth. Requires p >= n so digit
// equality is faithful.
std::pair<bool, XcmpCount> xcmp_leq2(uint64_t a, uint64_t b, size_t n,
                                     uint64_t p);

// ---------------------------------------------------------------------------
// Bit-wise comparator circuits.

// lt_i = (~a_i & b_i) | (eq_i & lt_{i-1}), evaluated from the low bit up:
// 4w - 3 gate bootstraps. No ledger comparison charge (circuit core).
uint8_t bit_lt_core(EvalContext& ctx, const BitCipher& a, const BitCipher& b);
// XNOR fold: 2w - 1 gate bootstraps.
uint8_t bit_eq_core(EvalContext& ctx, const BitCipher& a, const BitCipher& b);

// Facade-grade single comparison on bit ciphers (charges one comparison).
CmpResult bit_lt(EvalContext& ctx, const BitCipher& a, const BitCipher& b);

// ---------------------------------------------------------------------------
// Method-dispatching facade. One ledger comparison (or equality) per call,
// whatever the profile routes to underneath:
//   EncodingSwitching  digit reduction, digit circuit, lifting
//   SchemeSwitching    one switch charge per lane, refreshed result
//   BitwiseTfhe        per-lane comparator circuits
// Masks agree bit-for-bit across the three methods.

CmpResult compare_lt(EvalContext& ctx, const EncVec& a, const EncVec& b);
CmpResult compare_lt_plain(EvalContext& ctx, const EncVec& a,
                           const std::vector<uint64_t>& k);
CmpResult compare_eq_plain(EvalContext& ctx, const EncVec& a,
                           const std::vector<uint64_t>& k);
// Zero test for values already known to sit below p (the usual use is a
// short complement sum); only the base digit is touched.
CmpResult compare_eq_zero(EvalContext& ctx, const EncVec& a);

// mask * x lane-wise: one ciphertext product under the word-wise methods,
// a width-b MUX fan-out per lane under TFHE.
EncVec apply_mask(EvalContext& ctx, const CmpResult& mask, const EncVec& x);

// Lane-wise XOR of a 0/1 mask with plaintext bits: plaintext affine ops on
// the word-wise side, free negations under TFHE. Result is again a mask.
EncVec mask_xor_plain(EvalContext& ctx, const EncVec& mask,
                      const std::vector<uint64_t>& bits);

// All-lanes complement 1 - mask.
EncVec mask_not(EvalContext& ctx, const EncVec& mask);

// Decoded 0/1 lanes of a mask (test and oracle plumbing).
std::vector<uint64_t> mask_bits(const EvalContext& ctx, const CmpResult& m);

}  // namespace fhegen

#endif  // FHEGEN_COMPARE_HPP
