// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_EMULATOR_HPP
#define FHEGEN_EMULATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fhegen/errors.hpp"
#include "fhegen/modmath.hpp"

namespace fhegen {

enum class Method { BitwiseTfhe, SchemeSwitching, EncodingSwitching };

const char* method_name(Method m);
Method method_from_name(const std::string& name);
bool is_word_wise(Method m);

// Reporting-only wall-clock constants; ledger counts are the contract.
struct Calibration {
  double gate_bootstrap_ms = 15.0;
  double switch_unit_seconds = 0.66;
};

// Operation counters for one evaluation context. Counters only grow;
// max_depth tracks the deepest ciphertext-ciphertext multiplication chain
// actually evaluated (model charges never touch it).
struct CostLedger {
  uint64_t nonscalar_mults = 0;
  uint64_t scalar_mults = 0;
  uint64_t additions = 0;
  uint64_t rotations = 0;
  uint64_t comparisons = 0;
  uint64_t equalities = 0;
  uint64_t gate_bootstraps = 0;
  uint64_t switches = 0;
  uint64_t switch_cost_units = 0;
  unsigned max_depth = 0;

  bool operator==(const CostLedger&) const = default;
};

struct MethodProfile {
  Method method = Method::EncodingSwitching;
  unsigned depth_budget = 10;
  Calibration cal;
};

// Default leveled budget for a bit width: floor(log2(q) / bits_per_level)
// with the published log2(q) schedule {256, 320, 488, 648} for
// b = {6, 8, 12, 16}; other widths scale linearly at 40 bits of modulus
// per input bit.
unsigned default_depth_budget(unsigned bits, unsigned bits_per_level = 30);

// (p, r) pair used by the word-wise methods for a given input bit width.
// The 6-bit row shares (5, 4) with the 8-bit row; the interpolation
// machinery needs a prime base, and 5^4 comfortably covers 6-bit inputs.
struct PlainParams {
  uint64_t p;
  uint64_t r;
  uint64_t pow_pr;  // p^r
};
PlainParams plain_params_for_bits(unsigned bits);

struct EvalContext {
  MethodProfile profile;
  unsigned bits = 8;
  uint64_t p = 5;
  uint64_t r = 4;
  uint64_t pr = 625;  // p^r, the word-wise plaintext modulus
  size_t slot_count = 1;
  CostLedger ledger;
  bool range_overflow = false;  // sticky diagnostic from the range meter
  std::vector<std::string> diagnostics;

  Method method() const { return profile.method; }
  void note_range_overflow(const std::string& what);
};

// Builds a context; word-wise methods derive (p, r) from the bit width
// unless explicit values are given.
EvalContext make_context(Method method, unsigned bits, size_t slot_count,
                         unsigned depth_budget = 0, Calibration cal = {},
                         uint64_t p_override = 0, uint64_t r_override = 0);

// ---------------------------------------------------------------------------
// Word-wise ciphertexts: a slot vector over Z_modulus plus a depth meter and
// a conservative range bound on the plaintext magnitude.

struct WordCipher {
  std::vector<uint64_t> slots;
  uint64_t modulus = 0;
  unsigned depth = 0;
  uint64_t range_bound = 0;
};

// Fresh encoding of a plaintext vector (shorter vectors are zero-padded to
// the context slot count). `bound` declares the a-priori magnitude bound;
// 0 means "use the largest encoded value".
WordCipher encode(EvalContext& ctx, const std::vector<uint64_t>& values,
                  uint64_t bound = 0);
WordCipher encode_const(EvalContext& ctx, uint64_t value);
std::vector<uint64_t> decode(const WordCipher& a);

WordCipher ct_add(EvalContext& ctx, const WordCipher& a, const WordCipher& b);
WordCipher ct_sub(EvalContext& ctx, const WordCipher& a, const WordCipher& b);
WordCipher ct_mul(EvalContext& ctx, const WordCipher& a, const WordCipher& b);
WordCipher ct_mul_plain(EvalContext& ctx, const WordCipher& a,
                        const std::vector<uint64_t>& k);
WordCipher ct_mul_scalar(EvalContext& ctx, const WordCipher& a, uint64_t k);
WordCipher ct_add_plain(EvalContext& ctx, const WordCipher& a,
                        const std::vector<uint64_t>& k);
WordCipher ct_add_scalar(EvalContext& ctx, const WordCipher& a, uint64_t k);
// Cyclic left rotation by k slots: out[i] = a[(i + k) mod n].
WordCipher ct_rotate(EvalContext& ctx, const WordCipher& a, size_t k);
// Replicates slot idx into every slot: one plaintext mask product followed
// by rotate-and-add doubling (exactly log2(n) rotations when the slot count
// is a power of two).
WordCipher ct_broadcast(EvalContext& ctx, const WordCipher& a, size_t idx);
// Sum of all slots replicated into every slot; same rotation schedule as
// ct_broadcast.
WordCipher ct_total_sum(EvalContext& ctx, const WordCipher& a);

// ---------------------------------------------------------------------------
// Bit-wise ciphertexts: one emulated CGGI ciphertext per bit, LSB first.
// Every two-input gate costs one gate bootstrap; NOT is free.

struct BitCipher {
  std::vector<uint8_t> bits;

  size_t width() const { return bits.size(); }
};

bool is_supported_bit_width(size_t w);

BitCipher bit_encode(EvalContext& ctx, uint64_t value, size_t width = 0);
uint64_t bit_decode(const BitCipher& a);

enum class GateOp { And, Or, Xor, Mux, Not };

// Single-gate evaluation; `c` is the second data input for MUX (select = a).
uint8_t bit_gate(EvalContext& ctx, GateOp op, uint8_t a, uint8_t b = 0,
                 uint8_t c = 0);

// Ripple-carry sum mod 2^width: exactly 5*width - 3 gate bootstraps.
BitCipher bit_add(EvalContext& ctx, const BitCipher& a, const BitCipher& b);
BitCipher bit_sub(EvalContext& ctx, const BitCipher& a, const BitCipher& b);
// Schoolbook product mod 2^width: 3w^2 - 5w + 3 gate bootstraps.
BitCipher bit_mul(EvalContext& ctx, const BitCipher& a, const BitCipher& b);
// Width-w fan-out of a 0/1 select bit: w MUX bootstraps.
BitCipher bit_select(EvalContext& ctx, uint8_t sel, const BitCipher& a,
                     const BitCipher& b);

// Exact gate-count formulas for the circuits above (used by tests and the
// cost model).
uint64_t bit_add_gate_count(size_t width);
uint64_t bit_mul_gate_count(size_t width);
uint64_t bit_lt_gate_count(size_t width);
uint64_t bit_eq_gate_count(size_t width);

// ---------------------------------------------------------------------------
// Scheme-switching charge: one word<->bit round trip for a b-bit value.
// Adds 2^b cost units; the calibrated seconds-per-unit constant turns units
// into the modeled wall clock. Only meaningful under SchemeSwitching.

void charge_switch(EvalContext& ctx, unsigned bits);

// Modeled wall clock for a ledger under the given calibration.
double estimated_ms(const CostLedger& ledger, const Calibration& cal);

// ---------------------------------------------------------------------------
// A batch of plaintext lanes under one context: a single slot-packed cipher
// for the word-wise methods, one bit-decomposed cipher per lane for TFHE.

struct EncVec {
  bool word = true;
  WordCipher wc;
  std::vector<BitCipher> lanes;

  size_t size(const EvalContext& ctx) const {
    return word ? ctx.slot_count : lanes.size();
  }
};

EncVec enc_encode(EvalContext& ctx, const std::vector<uint64_t>& values,
                  uint64_t bound = 0);
std::vector<uint64_t> enc_decode(const EvalContext& ctx, const EncVec& a);

EncVec enc_add(EvalContext& ctx, const EncVec& a, const EncVec& b);
EncVec enc_mul(EvalContext& ctx, const EncVec& a, const EncVec& b);
EncVec enc_mul_plain(EvalContext& ctx, const EncVec& a,
                     const std::vector<uint64_t>& k);
EncVec enc_add_plain(EvalContext& ctx, const EncVec& a,
                     const std::vector<uint64_t>& k);
// Lane idx replicated everywhere. Free under TFHE (the lane ciphertext is
// simply reused); mask + rotations for the word-wise methods.
EncVec enc_broadcast(EvalContext& ctx, const EncVec& a, size_t idx);
// mask ? x : y, lane-wise. One ciphertext product per lane group under the
// word-wise methods (computed as mask*(x - y) + y); width-b MUX fan-out per
// lane under TFHE.
EncVec enc_select(EvalContext& ctx, const EncVec& mask, const EncVec& x,
                  const EncVec& y);

}  // namespace fhegen

#endif  // FHEGEN_EMULATOR_HPP
