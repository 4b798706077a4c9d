// SPDX-License-Identifier: Apache-2.0
#include "fhegen/emulator.hpp"

#include <algorithm>
#include <bit>

namespace fhegen {

const char* method_name(Method m) {
  switch (m) {
    case Method::BitwiseTfhe: return "tfhe";
    case Method::SchemeSwitching: return "scheme";
    case Method::EncodingSwitching: return "encoding";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "tfhe") return Method::BitwiseTfhe;
  if (name == "scheme") return Method::SchemeSwitching;
  if (name == "encoding") return Method::EncodingSwitching;
  throw UnsupportedMethod("unknown method: " + name);
}

bool is_word_wise(Method m) { return m != Method::BitwiseTfhe; }

unsigned default_depth_budget(unsigned bits, unsigned bits_per_level) {
  unsigned log2q;
  switch (bits) {
    case 6: log2q = 256; break;
    case 8: log2q = 320; break;
    case 12: log2q = 488; break;
    case 16: log2q = 648; break;
    default: log2q = 40 * bits; break;
  }
  return std::max(1u, log2q / bits_per_level);
}

PlainParams plain_params_for_bits(unsigned bits) {
  auto make = [](uint64_t p, uint64_t r) {
    uint64_t pr = 1;
    for (uint64_t i = 0; i < r; ++i) pr *= p;
    return PlainParams{p, r, pr};
  };
  switch (bits) {
    case 6: return make(5, 4);
    case 8: return make(5, 4);
    case 12: return make(7, 5);
    case 16: return make(17, 4);
    default:
      throw UnsupportedMethod("no (p, r) schedule for bit width " +
                              std::to_string(bits));
  }
}

void EvalContext::note_range_overflow(const std::string& what) {
  range_overflow = true;
  if (diagnostics.size() < 32) diagnostics.push_back(what);
}

EvalContext make_context(Method method, unsigned bits, size_t slot_count,
                         unsigned depth_budget, Calibration cal,
                         uint64_t p_override, uint64_t r_override) {
  EvalContext ctx;
  ctx.profile.method = method;
  ctx.profile.depth_budget =
      depth_budget ? depth_budget : default_depth_budget(bits);
  ctx.profile.cal = cal;
  ctx.bits = bits;
  if (is_word_wise(method)) {
    if (p_override) {
      if (!is_prime(p_override))
        throw InvalidModulus("context: plaintext base must be prime");
      ctx.p = p_override;
      ctx.r = r_override ? r_override : 1;
    } else {
      PlainParams pp = plain_params_for_bits(bits);
      ctx.p = pp.p;
      ctx.r = pp.r;
    }
    ctx.pr = 1;
    for (uint64_t i = 0; i < ctx.r; ++i) ctx.pr *= ctx.p;
    if (ctx.pr < (uint64_t{1} << bits))
      throw InvalidModulus("context: p^r does not cover the input bit width");
    ctx.slot_count = std::max<size_t>(1, slot_count);
  } else {
    if (!is_supported_bit_width(bits))
      throw WidthMismatch("context: unsupported bit width " +
                          std::to_string(bits));
    ctx.slot_count = 1;  // no batching under the bit-wise method
    ctx.p = 2;
    ctx.r = bits;
    ctx.pr = bits >= 64 ? 0 : (uint64_t{1} << bits);
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Word-wise operations.

namespace {

void check_word(const EvalContext& ctx, const WordCipher& a) {
  if (a.slots.size() != ctx.slot_count)
    throw ContextMismatch("word cipher has a foreign slot count");
}

void check_pair(const EvalContext& ctx, const WordCipher& a,
                const WordCipher& b) {
  check_word(ctx, a);
  check_word(ctx, b);
  if (a.modulus != b.modulus)
    throw ContextMismatch("word ciphers have different plaintext moduli");
}

unsigned bump_depth(EvalContext& ctx, unsigned a, unsigned b) {
  const unsigned d = std::max(a, b) + 1;
  if (d > ctx.profile.depth_budget)
    throw DepthExceeded("multiplicative depth " + std::to_string(d) +
                        " exceeds the leveled budget of " +
                        std::to_string(ctx.profile.depth_budget));
  ctx.ledger.max_depth = std::max(ctx.ledger.max_depth, d);
  return d;
}

uint64_t sat_range(const EvalContext&, unsigned __int128 v, uint64_t cap) {
  return v > cap ? cap : static_cast<uint64_t>(v);
}

}  // namespace

WordCipher encode(EvalContext& ctx, const std::vector<uint64_t>& values,
                  uint64_t bound) {
  if (values.size() > ctx.slot_count)
    throw ContextMismatch("encode: more values than slots");
  WordCipher out;
  out.modulus = ctx.pr;
  out.slots.assign(ctx.slot_count, 0);
  uint64_t seen = 0;       // largest raw residue
  uint64_t magnitude = 0;  // largest centered magnitude
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= ctx.pr)
      throw RangeViolation("encode: value does not fit the plaintext modulus");
    out.slots[i] = values[i];
    seen = std::max(seen, values[i]);
    magnitude = std::max(magnitude, std::min(values[i], ctx.pr - values[i]));
  }
  out.range_bound = bound ? std::min(bound, ctx.pr - 1) : seen;
  // A declared bound is a magnitude promise; residues above it are fine as
  // long as their centered representatives fit.
  if (bound && out.range_bound < magnitude)
    throw RangeViolation("encode: declared bound below an encoded value");
  return out;
}

WordCipher encode_const(EvalContext& ctx, uint64_t value) {
  return encode(ctx, std::vector<uint64_t>(ctx.slot_count, value), value);
}

std::vector<uint64_t> decode(const WordCipher& a) { return a.slots; }

WordCipher ct_add(EvalContext& ctx, const WordCipher& a, const WordCipher& b) {
  check_pair(ctx, a, b);
  const Modulus f{a.modulus};
  WordCipher out = a;
  for (size_t i = 0; i < out.slots.size(); ++i)
    out.slots[i] = f.add(a.slots[i], b.slots[i]);
  out.depth = std::max(a.depth, b.depth);
  const unsigned __int128 rb =
      static_cast<unsigned __int128>(a.range_bound) + b.range_bound;
  if (rb > a.modulus - 1) ctx.note_range_overflow("ct_add may wrap");
  out.range_bound = sat_range(ctx, rb, a.modulus - 1);
  ++ctx.ledger.additions;
  return out;
}

WordCipher ct_sub(EvalContext& ctx, const WordCipher& a, const WordCipher& b) {
  check_pair(ctx, a, b);
  const Modulus f{a.modulus};
  WordCipher out = a;
  for (size_t i = 0; i < out.slots.size(); ++i)
    out.slots[i] = f.sub(a.slots[i], b.slots[i]);
  out.depth = std::max(a.depth, b.depth);
  // A difference can wrap to anywhere in the residue ring; consumers that
  // need a centered window must check the operand bounds instead.
  out.range_bound = a.modulus - 1;
  ++ctx.ledger.additions;
  return out;
}

WordCipher ct_mul(EvalContext& ctx, const WordCipher& a, const WordCipher& b) {
  check_pair(ctx, a, b);
  const Modulus f{a.modulus};
  WordCipher out = a;
  for (size_t i = 0; i < out.slots.size(); ++i)
    out.slots[i] = f.mul(a.slots[i], b.slots[i]);
  out.depth = bump_depth(ctx, a.depth, b.depth);
  const unsigned __int128 rb =
      static_cast<unsigned __int128>(a.range_bound) * b.range_bound;
  if (rb > a.modulus - 1) ctx.note_range_overflow("ct_mul may wrap");
  out.range_bound = sat_range(ctx, rb, a.modulus - 1);
  ++ctx.ledger.nonscalar_mults;
  return out;
}

WordCipher ct_mul_plain(EvalContext& ctx, const WordCipher& a,
                        const std::vector<uint64_t>& k) {
  check_word(ctx, a);
  if (k.size() != a.slots.size())
    throw ContextMismatch("ct_mul_plain: plaintext vector has a foreign length");
  const Modulus f{a.modulus};
  WordCipher out = a;
  uint64_t kmax = 0;
  for (size_t i = 0; i < out.slots.size(); ++i) {
    out.slots[i] = f.mul(a.slots[i], k[i] % a.modulus);
    kmax = std::max(kmax, k[i] % a.modulus);
  }
  const unsigned __int128 rb =
      static_cast<unsigned __int128>(a.range_bound) * kmax;
  if (rb > a.modulus - 1) ctx.note_range_overflow("ct_mul_plain may wrap");
  out.range_bound = sat_range(ctx, rb, a.modulus - 1);
  ++ctx.ledger.scalar_mults;  // plaintext products cost no depth
  return out;
}

WordCipher ct_mul_scalar(EvalContext& ctx, const WordCipher& a, uint64_t k) {
  return ct_mul_plain(ctx, a, std::vector<uint64_t>(a.slots.size(), k));
}

WordCipher ct_add_plain(EvalContext& ctx, const WordCipher& a,
                        const std::vector<uint64_t>& k) {
  check_word(ctx, a);
  if (k.size() != a.slots.size())
    throw ContextMismatch("ct_add_plain: plaintext vector has a foreign length");
  const Modulus f{a.modulus};
  WordCipher out = a;
  uint64_t kmax = 0;
  for (size_t i = 0; i < out.slots.size(); ++i) {
    out.slots[i] = f.add(a.slots[i], k[i] % a.modulus);
    kmax = std::max(kmax, k[i] % a.modulus);
  }
  const unsigned __int128 rb =
      static_cast<unsigned __int128>(a.range_bound) + kmax;
  if (rb > a.modulus - 1) ctx.note_range_overflow("ct_add_plain may wrap");
  out.range_bound = sat_range(ctx, rb, a.modulus - 1);
  ++ctx.ledger.additions;
  return out;
}

WordCipher ct_add_scalar(EvalContext& ctx, const WordCipher& a, uint64_t k) {
  return ct_add_plain(ctx, a, std::vector<uint64_t>(a.slots.size(), k));
}

WordCipher ct_rotate(EvalContext& ctx, const WordCipher& a, size_t k) {
  check_word(ctx, a);
  const size_t n = a.slots.size();
  if (k >= n) throw ContextMismatch("ct_rotate: offset must be below the slot count");
  WordCipher out = a;
  for (size_t i = 0; i < n; ++i) out.slots[i] = a.slots[(i + k) % n];
  ++ctx.ledger.rotations;
  return out;
}

namespace {

// Rotate-and-add accumulation: leaves every slot holding the sum of all
// slots of x. Exactly log2(n) rotations for power-of-two n, otherwise
// floor(log2 n) + popcount(n) - 1.
WordCipher rotate_accumulate(EvalContext& ctx, const WordCipher& x) {
  const size_t n = x.slots.size();
  WordCipher res = x;
  if (n == 1) return res;
  size_t e = 1;
  const int kbits = std::bit_width(n);
  for (int i = kbits - 2; i >= 0; --i) {
    res = ct_add(ctx, res, ct_rotate(ctx, res, e % n));
    e *= 2;
    if ((n >> i) & 1) {
      res = ct_add(ctx, res, ct_rotate(ctx, x, e % n));
      e += 1;
    }
  }
  return res;
}

}  // namespace

WordCipher ct_broadcast(EvalContext& ctx, const WordCipher& a, size_t idx) {
  check_word(ctx, a);
  if (idx >= a.slots.size())
    throw ContextMismatch("ct_broadcast: slot index out of range");
  if (a.slots.size() == 1) return a;
  std::vector<uint64_t> mask(a.slots.size(), 0);
  mask[idx] = 1;
  WordCipher masked = ct_mul_plain(ctx, a, mask);
  WordCipher out = rotate_accumulate(ctx, masked);
  out.range_bound = a.range_bound;
  return out;
}

WordCipher ct_total_sum(EvalContext& ctx, const WordCipher& a) {
  check_word(ctx, a);
  return rotate_accumulate(ctx, a);
}

// ---------------------------------------------------------------------------
// Bit-wise operations.

bool is_supported_bit_width(size_t w) {
  return w == 6 || w == 8 || w == 12 || w == 16 || w == 24 || w == 32;
}

BitCipher bit_encode(EvalContext& ctx, uint64_t value, size_t width) {
  const size_t w = width ? width : ctx.bits;
  if (!is_supported_bit_width(w))
    throw WidthMismatch("bit_encode: unsupported width " + std::to_string(w));
  if (w < 64 && (value >> w) != 0)
    throw RangeViolation("bit_encode: value does not fit the bit width");
  BitCipher out;
  out.bits.resize(w);
  for (size_t i = 0; i < w; ++i) out.bits[i] = (value >> i) & 1;
  return out;
}

uint64_t bit_decode(const BitCipher& a) {
  uint64_t v = 0;
  for (size_t i = 0; i < a.width(); ++i)
    v |= static_cast<uint64_t>(a.bits[i]) << i;
  return v;
}

uint8_t bit_gate(EvalContext& ctx, GateOp op, uint8_t a, uint8_t b, uint8_t c) {
  switch (op) {
    case GateOp::Not:
      return a ^ 1;  // negation needs no bootstrap
    case GateOp::And:
      ++ctx.ledger.gate_bootstraps;
      return a & b;
    case GateOp::Or:
      ++ctx.ledger.gate_bootstraps;
      return a | b;
    case GateOp::Xor:
      ++ctx.ledger.gate_bootstraps;
      return a ^ b;
    case GateOp::Mux:
      ++ctx.ledger.gate_bootstraps;
      return a ? b : c;
  }
  return 0;
}

namespace {

void check_widths(const BitCipher& a, const BitCipher& b) {
  if (a.width() != b.width())
    throw WidthMismatch("bit-wise operands have different widths");
}

}  // namespace

BitCipher bit_add(EvalContext& ctx, const BitCipher& a, const BitCipher& b) {
  check_widths(a, b);
  const size_t w = a.width();
  BitCipher out;
  out.bits.resize(w);
  uint8_t t = bit_gate(ctx, GateOp::Xor, a.bits[0], b.bits[0]);
  uint8_t carry = bit_gate(ctx, GateOp::And, a.bits[0], b.bits[0]);
  out.bits[0] = t;
  for (size_t i = 1; i < w; ++i) {
    const uint8_t x = bit_gate(ctx, GateOp::Xor, a.bits[i], b.bits[i]);
    out.bits[i] = bit_gate(ctx, GateOp::Xor, x, carry);
    const uint8_t g = bit_gate(ctx, GateOp::And, a.bits[i], b.bits[i]);
    const uint8_t pr = bit_gate(ctx, GateOp::And, x, carry);
    carry = bit_gate(ctx, GateOp::Or, g, pr);  // top carry is discarded
  }
  return out;
}

namespace {

// Adds `add` into bits [off, off+add.width()) of acc, carry discarded at
// the top; same full-adder layout as bit_add.
void bit_add_into_slice(EvalContext& ctx, BitCipher& acc, size_t off,
                        const BitCipher& add) {
  const size_t w = add.width();
  uint8_t t = bit_gate(ctx, GateOp::Xor, acc.bits[off], add.bits[0]);
  uint8_t carry = bit_gate(ctx, GateOp::And, acc.bits[off], add.bits[0]);
  acc.bits[off] = t;
  for (size_t i = 1; i < w; ++i) {
    const uint8_t a_bit = acc.bits[off + i];
    const uint8_t x = bit_gate(ctx, GateOp::Xor, a_bit, add.bits[i]);
    acc.bits[off + i] = bit_gate(ctx, GateOp::Xor, x, carry);
    const uint8_t g = bit_gate(ctx, GateOp::And, a_bit, add.bits[i]);
    const uint8_t pr = bit_gate(ctx, GateOp::And, x, carry);
    carry = bit_gate(ctx, GateOp::Or, g, pr);
  }
}

}  // namespace

BitCipher bit_mul(EvalContext& ctx, const BitCipher& a, const BitCipher& b) {
  check_widths(a, b);
  const size_t w = a.width();
  BitCipher acc;
  acc.bits.resize(w);
  for (size_t i = 0; i < w; ++i)
    acc.bits[i] = bit_gate(ctx, GateOp::And, a.bits[i], b.bits[0]);
  for (size_t j = 1; j < w; ++j) {
    BitCipher pp;
    pp.bits.resize(w - j);
    for (size_t i = 0; i < w - j; ++i)
      pp.bits[i] = bit_gate(ctx, GateOp::And, a.bits[i], b.bits[j]);
    bit_add_into_slice(ctx, acc, j, pp);
  }
  return acc;
}

BitCipher bit_select(EvalContext& ctx, uint8_t sel, const BitCipher& a,
                     const BitCipher& b) {
  check_widths(a, b);
  BitCipher out;
  out.bits.resize(a.width());
  for (size_t i = 0; i < a.width(); ++i)
    out.bits[i] = bit_gate(ctx, GateOp::Mux, sel, a.bits[i], b.bits[i]);
  return out;
}

uint64_t bit_add_gate_count(size_t w) { return 5 * w - 3; }

uint64_t bit_mul_gate_count(size_t w) { return 3 * w * w - 5 * w + 3; }

uint64_t bit_lt_gate_count(size_t w) { return 4 * w - 3; }

uint64_t bit_eq_gate_count(size_t w) { return 2 * w - 1; }

// ---------------------------------------------------------------------------

void charge_switch(EvalContext& ctx, unsigned bits) {
  if (ctx.method() != Method::SchemeSwitching)
    throw ProfileMismatch("charge_switch: context is not scheme-switching");
  ++ctx.ledger.switches;
  ctx.ledger.switch_cost_units += uint64_t{1} << bits;
}

double estimated_ms(const CostLedger& ledger, const Calibration& cal) {
  return static_cast<double>(ledger.gate_bootstraps) * cal.gate_bootstrap_ms +
         static_cast<double>(ledger.switch_cost_units) *
             cal.switch_unit_seconds * 1000.0;
}

// ---------------------------------------------------------------------------
// Lane-batched vectors.

EncVec enc_encode(EvalContext& ctx, const std::vector<uint64_t>& values,
                  uint64_t bound) {
  EncVec out;
  if (is_word_wise(ctx.method())) {
    out.word = true;
    out.wc = encode(ctx, values, bound);
  } else {
    out.word = false;
    out.lanes.reserve(values.size());
    for (uint64_t v : values) out.lanes.push_back(bit_encode(ctx, v));
  }
  return out;
}

std::vector<uint64_t> enc_decode(const EvalContext& ctx, const EncVec& a) {
  if (a.word) return decode(a.wc);
  std::vector<uint64_t> out;
  out.reserve(a.lanes.size());
  for (const auto& lane : a.lanes) out.push_back(bit_decode(lane));
  (void)ctx;
  return out;
}

EncVec enc_add(EvalContext& ctx, const EncVec& a, const EncVec& b) {
  EncVec out;
  out.word = a.word;
  if (a.word) {
    out.wc = ct_add(ctx, a.wc, b.wc);
  } else {
    if (a.lanes.size() != b.lanes.size())
      throw WidthMismatch("enc_add: lane counts differ");
    out.lanes.reserve(a.lanes.size());
    for (size_t i = 0; i < a.lanes.size(); ++i)
      out.lanes.push_back(bit_add(ctx, a.lanes[i], b.lanes[i]));
  }
  return out;
}

EncVec enc_mul(EvalContext& ctx, const EncVec& a, const EncVec& b) {
  EncVec out;
  out.word = a.word;
  if (a.word) {
    out.wc = ct_mul(ctx, a.wc, b.wc);
  } else {
    if (a.lanes.size() != b.lanes.size())
      throw WidthMismatch("enc_mul: lane counts differ");
    out.lanes.reserve(a.lanes.size());
    for (size_t i = 0; i < a.lanes.size(); ++i)
      out.lanes.push_back(bit_mul(ctx, a.lanes[i], b.lanes[i]));
  }
  return out;
}

EncVec enc_mul_plain(EvalContext& ctx, const EncVec& a,
                     const std::vector<uint64_t>& k) {
  EncVec out;
  out.word = a.word;
  if (a.word) {
    out.wc = ct_mul_plain(ctx, a.wc, k);
  } else {
    if (a.lanes.size() != k.size())
      throw WidthMismatch("enc_mul_plain: lane counts differ");
    out.lanes.reserve(a.lanes.size());
    for (size_t i = 0; i < a.lanes.size(); ++i)
      out.lanes.push_back(bit_mul(ctx, a.lanes[i], bit_encode(ctx, k[i])));
  }
  return out;
}

EncVec enc_add_plain(EvalContext& ctx, const EncVec& a,
                     const std::vector<uint64_t>& k) {
  EncVec out;
  out.word = a.word;
  if (a.word) {
    out.wc = ct_add_plain(ctx, a.wc, k);
  } else {
    if (a.lanes.size() != k.size())
      throw WidthMismatch("enc_add_plain: lane counts differ");
    out.lanes.reserve(a.lanes.size());
    for (size_t i = 0; i < a.lanes.size(); ++i)
      out.lanes.push_back(bit_add(ctx, a.lanes[i], bit_encode(ctx, k[i])));
  }
  return out;
}

EncVec enc_broadcast(EvalContext& ctx, const EncVec& a, size_t idx) {
  EncVec out;
  out.word = a.word;
  if (a.word) {
    out.wc = ct_broadcast(ctx, a.wc, idx);
  } else {
    // Reusing one ciphertext handle everywhere costs nothing under the
    // bit-wise method.
    if (idx >= a.lanes.size())
      throw ContextMismatch("enc_broadcast: lane index out of range");
    out.lanes.assign(a.lanes.size(), a.lanes[idx]);
  }
  return out;
}

EncVec enc_select(EvalContext& ctx, const EncVec& mask, const EncVec& x,
                  const EncVec& y) {
  EncVec out;
  out.word = x.word;
  if (x.word) {
    // mask*(x - y) + y: a single ciphertext product per select.
    WordCipher diff = ct_sub(ctx, x.wc, y.wc);
    WordCipher picked = ct_mul(ctx, mask.wc, diff);
    out.wc = ct_add(ctx, picked, y.wc);
    out.wc.range_bound = std::max(x.wc.range_bound, y.wc.range_bound);
  } else {
    if (mask.lanes.size() != x.lanes.size() ||
        x.lanes.size() != y.lanes.size())
      throw WidthMismatch("enc_select: lane counts differ");
    out.lanes.reserve(x.lanes.size());
    for (size_t i = 0; i < x.lanes.size(); ++i)
      out.lanes.push_back(
          bit_select(ctx, mask.lanes[i].bits[0], x.lanes[i], y.lanes[i]));
  }
  return out;
}

}  // namespace fhegen
