// SPDX-License-Identifier: Apache-2.0
#include "fhegen/compare.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "fhegen/negaring.hpp"

namespace fhegen {

namespace {

// Comparison internals wrap residues on purpose; keep the app-level range
// meter quiet while they run.
class RangeMeterPause {
 public:
  explicit RangeMeterPause(EvalContext& ctx)
      : ctx_(ctx), prev_flag_(ctx.range_overflow), prev_count_(ctx.diagnostics.size()) {}
  ~RangeMeterPause() {
    ctx_.range_overflow = prev_flag_;
    ctx_.diagnostics.resize(prev_count_);
  }

 private:
  EvalContext& ctx_;
  bool prev_flag_;
  size_t prev_count_;
};

WordCipher mod_cipher(size_t slots, uint64_t modulus, uint64_t fill,
                      unsigned depth, uint64_t range) {
  WordCipher out;
  out.slots.assign(slots, fill % modulus);
  out.modulus = modulus;
  out.depth = depth;
  out.range_bound = std::min(range, modulus - 1);
  return out;
}

struct WordOps {
  EvalContext& ctx;
  uint64_t modulus;
  size_t slots;

  WordCipher mul(const WordCipher& a, const WordCipher& b) {
    return ct_mul(ctx, a, b);
  }
  WordCipher scale(const WordCipher& a, uint64_t c) {
    return ct_mul_scalar(ctx, a, c % modulus);
  }
  WordCipher add(const WordCipher& a, const WordCipher& b) {
    return ct_add(ctx, a, b);
  }
  WordCipher add_const(const WordCipher& a, uint64_t c) {
    return ct_add_scalar(ctx, a, c % modulus);
  }
  WordCipher from_const(uint64_t c) {
    return mod_cipher(slots, modulus, c, 0, c % modulus);
  }
};

// P(x) over the slots of a mod-p cipher; result is a 0/1 indicator of
// "centered(x) < 0".
WordCipher sign_eval(EvalContext& ctx, const WordCipher& x) {
  const SignPoly& poly = cached_sign_poly(x.modulus);
  WordOps ops{ctx, x.modulus, x.slots.size()};
  WordCipher out = eval_poly_ps_with<WordCipher>(poly.coeffs, x, ops);
  out.range_bound = 1;
  return out;
}

WordCipher one_minus(EvalContext& ctx, const WordCipher& a) {
  WordCipher out =
      ct_add_scalar(ctx, ct_mul_scalar(ctx, a, a.modulus - 1), 1);
  out.range_bound = 1;
  return out;
}

// (p - c) mod p per lane, for plaintext subtraction.
std::vector<uint64_t> negate_plain(const std::vector<uint64_t>& c, uint64_t p) {
  std::vector<uint64_t> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = (p - c[i] % p) % p;
  return out;
}

WordCipher fermat_eq_of_diff(EvalContext& ctx, const WordCipher& diff) {
  return one_minus(ctx, ct_pow(ctx, diff, diff.modulus - 1));
}

// Less-than on full-range mod-p digits. The sign of the difference alone is
// only faithful inside the centered window, so the domain is split at
// (p-1)/2 with the half indicators H = P(x), and the sign path is consulted
// only when both operands land in the same half:
//   [a < b] = (1-Ha)*Hb + [Ha == Hb] * P(a - b)
WordCipher digit_lt_full(EvalContext& ctx, const WordCipher& a,
                         const WordCipher& b) {
  WordCipher ha = sign_eval(ctx, a);
  WordCipher hb = sign_eval(ctx, b);
  WordCipher s = sign_eval(ctx, ct_sub(ctx, a, b));
  WordCipher hh = ct_mul(ctx, ha, hb);
  WordCipher low = ct_sub(ctx, hb, hh);  // (1-Ha)*Hb without a product
  WordCipher guard = ct_add_scalar(
      ctx, ct_sub(ctx, ct_sub(ctx, ct_mul_scalar(ctx, hh, 2), ha), hb), 1);
  WordCipher out = ct_add(ctx, low, ct_mul(ctx, guard, s));
  out.range_bound = 1;
  return out;
}

// Same split against per-lane plaintext digits; the constant's half bit is
// known, so one sign evaluation and one product drop out.
WordCipher digit_lt_plain(EvalContext& ctx, const WordCipher& a,
                          const std::vector<uint64_t>& c) {
  const uint64_t p = a.modulus;
  WordCipher ha = sign_eval(ctx, a);
  WordCipher s = sign_eval(ctx, ct_add_plain(ctx, a, negate_plain(c, p)));
  std::vector<uint64_t> hc(c.size()), sel(c.size()), off(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    // guard = [Ha == hc] = (2*hc - 1)*Ha + (1 - hc)
    hc[i] = (c[i] % p) > (p - 1) / 2 ? 1 : 0;
    sel[i] = hc[i] ? 1 : p - 1;
    off[i] = hc[i] ? 0 : 1;
  }
  WordCipher low = ct_mul_plain(ctx, one_minus(ctx, ha), hc);
  WordCipher guard =
      ct_add_plain(ctx, ct_mul_plain(ctx, ha, sel), off);
  WordCipher out = ct_add(ctx, low, ct_mul(ctx, guard, s));
  out.range_bound = 1;
  return out;
}

// Memoized balanced products of eq[0..i), depth eq_depth + ceil(log2 i).
class RangeProduct {
 public:
  RangeProduct(EvalContext& ctx, const std::vector<WordCipher>& elems)
      : ctx_(ctx), elems_(elems) {}

  const WordCipher& prefix(size_t count) { return get(0, count); }

 private:
  const WordCipher& get(size_t start, size_t len) {
    auto key = std::make_pair(start, len);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (len == 1) return memo_.emplace(key, elems_[start]).first->second;
    size_t h = std::bit_floor(len);
    if (h == len) h /= 2;
    WordCipher lo = get(start, h);
    WordCipher hi = get(start + h, len - h);
    WordCipher prod = ct_mul(ctx_, lo, hi);
    prod.range_bound = 1;
    return memo_.emplace(key, std::move(prod)).first->second;
  }

  EvalContext& ctx_;
  const std::vector<WordCipher>& elems_;
  std::map<std::pair<size_t, size_t>, WordCipher> memo_;
};

// lt[0] + eq[0]*lt[1] + eq[0]eq[1]*lt[2] + ... with balanced prefix trees.
WordCipher lex_combine(EvalContext& ctx, std::vector<WordCipher> lt,
                       std::vector<WordCipher> eq) {
  WordCipher acc = std::move(lt[0]);
  if (lt.size() > 1) {
    RangeProduct prefixes(ctx, eq);
    for (size_t i = 1; i < lt.size(); ++i)
      acc = ct_add(ctx, acc, ct_mul(ctx, prefixes.prefix(i), lt[i]));
  }
  acc.range_bound = 1;
  return acc;
}

std::vector<std::vector<uint64_t>> plain_digits(const std::vector<uint64_t>& k,
                                                uint64_t p, uint64_t r) {
  std::vector<std::vector<uint64_t>> out(r,
                                         std::vector<uint64_t>(k.size(), 0));
  for (size_t lane = 0; lane < k.size(); ++lane) {
    uint64_t v = k[lane];
    for (uint64_t d = 0; d < r; ++d) {
      out[r - 1 - d][lane] = v % p;
      v /= p;
    }
  }
  return out;
}

void require_word(const EvalContext& ctx, const EncVec& a) {
  if (a.word != is_word_wise(ctx.method()))
    throw ContextMismatch("vector encoding does not match the context method");
}

}  // namespace

const SignPoly& cached_sign_poly(uint64_t p) {
  static std::mutex mu;
  static std::map<uint64_t, SignPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, lagrange_sign_poly(p)).first;
  return it->second;
}

CmpResult lt_interp(EvalContext& ctx, const WordCipher& a,
                    const WordCipher& b) {
  if (a.modulus != b.modulus)
    throw ContextMismatch("lt_interp: operand moduli differ");
  const uint64_t p = a.modulus;
  if (a.range_bound > (p - 1) / 2 || b.range_bound > (p - 1) / 2)
    throw RangeViolation(
        "lt_interp: operand range exceeds the centered window (p-1)/2");
  RangeMeterPause pause(ctx);
  WordCipher diff = ct_sub(ctx, a, b);
  WordCipher mask = sign_eval(ctx, diff);
  ++ctx.ledger.comparisons;
  CmpResult out;
  out.mask.word = true;
  out.mask.wc = std::move(mask);
  return out;
}

CmpResult eq_fermat(EvalContext& ctx, const WordCipher& a,
                    const WordCipher& b) {
  if (a.modulus != b.modulus)
    throw ContextMismatch("eq_fermat: operand moduli differ");
  if (!is_prime(a.modulus))
    throw InvalidModulus("eq_fermat: needs a prime plaintext modulus");
  RangeMeterPause pause(ctx);
  WordCipher mask = fermat_eq_of_diff(ctx, ct_sub(ctx, a, b));
  ++ctx.ledger.equalities;
  CmpResult out;
  out.mask.word = true;
  out.mask.wc = std::move(mask);
  return out;
}

WordCipher ct_pow(EvalContext& ctx, const WordCipher& x, uint64_t e) {
  if (e == 0) return mod_cipher(x.slots.size(), x.modulus, 1, 0, 1);
  std::map<uint64_t, WordCipher> memo;
  memo.emplace(1, x);
  auto rec = [&](auto&& self, uint64_t n) -> const WordCipher& {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    const WordCipher& lo = self(self, n / 2);
    const WordCipher& hi = self(self, n - n / 2);
    WordCipher prod = ct_mul(ctx, lo, hi);
    return memo.emplace(n, std::move(prod)).first->second;
  };
  return rec(rec, e);
}

DigitVec reduce_to_digits(EvalContext& ctx, const WordCipher& a) {
  if (a.modulus != ctx.pr)
    throw ContextMismatch("reduce_to_digits: cipher is not in the Z_{p^r} space");
  ctx.ledger.nonscalar_mults += reduce_cost_mults(ctx.p, ctx.r);
  DigitVec out;
  out.p = ctx.p;
  out.digits.reserve(ctx.r);
  std::vector<std::vector<uint64_t>> slots(
      ctx.r, std::vector<uint64_t>(a.slots.size(), 0));
  for (size_t lane = 0; lane < a.slots.size(); ++lane) {
    uint64_t v = a.slots[lane];
    for (uint64_t d = 0; d < ctx.r; ++d) {
      slots[ctx.r - 1 - d][lane] = v % ctx.p;
      v /= ctx.p;
    }
  }
  for (uint64_t d = 0; d < ctx.r; ++d) {
    WordCipher digit;
    digit.slots = std::move(slots[d]);
    digit.modulus = ctx.p;
    digit.depth = a.depth;
    digit.range_bound = ctx.p - 1;
    out.digits.push_back(std::move(digit));
  }
  return out;
}

WordCipher lift_to_word(EvalContext& ctx, const WordCipher& mask_mod_p) {
  if (mask_mod_p.modulus != ctx.p)
    throw ContextMismatch("lift_to_word: cipher is not in the digit space");
  ctx.ledger.nonscalar_mults += lift_cost_mults(ctx.p, ctx.r);
  WordCipher out = mask_mod_p;
  out.modulus = ctx.pr;
  out.range_bound = 1;
  return out;
}

uint64_t reduce_cost_mults(uint64_t p, uint64_t r) {
  return static_cast<uint64_t>(
      std::ceil(static_cast<double>(r * r) * std::sqrt(static_cast<double>(p))));
}

uint64_t lift_cost_mults(uint64_t p, uint64_t r) {
  return static_cast<uint64_t>(
      std::ceil(std::sqrt(static_cast<double>(r * p))));
}

CmpResult lt_digits(EvalContext& ctx, const DigitVec& a, const DigitVec& b) {
  if (a.p != b.p || a.digits.size() != b.digits.size())
    throw ContextMismatch("lt_digits: digit encodings differ");
  RangeMeterPause pause(ctx);
  const size_t r = a.digits.size();
  std::vector<WordCipher> lt, eq;
  lt.reserve(r);
  eq.reserve(r > 0 ? r - 1 : 0);
  for (size_t i = 0; i < r; ++i) {
    lt.push_back(digit_lt_full(ctx, a.digits[i], b.digits[i]));
    if (i + 1 < r)
      eq.push_back(
          fermat_eq_of_diff(ctx, ct_sub(ctx, a.digits[i], b.digits[i])));
  }
  WordCipher mask = lex_combine(ctx, std::move(lt), std::move(eq));
  ++ctx.ledger.comparisons;
  CmpResult out;
  out.mask.word = true;
  out.mask.wc = std::move(mask);
  return out;
}

int lt_xcmp(uint64_t a, uint64_t b, size_t n, uint64_t p) {
  if (a >= n || b >= n)
    throw DomainTooLarge("lt_xcmp: inputs must be below the ring degree");
  if (p < 3) throw InvalidModulus("lt_xcmp: modulus must separate +1 from -1");
  NegaPoly prod = nega_mul(monomial(static_cast<int64_t>(a), n, p),
                           monomial(-static_cast<int64_t>(b), n, p));
  NegaPoly c = nega_mul(all_ones_poly(n, p), prod);
  return centered(c.coeffs[0], p) >= 0 ? 1 : -1;
}

std::pair<bool, XcmpCount> xcmp_leq2(uint64_t a, uint64_t b, size_t n,
                                     uint64_t p) {
  const uint64_t domain = static_cast<uint64_t>(n) * n;
  if (a >= domain || b >= domain)
    throw DomainTooLarge("xcmp_leq2: inputs must be below n^2");
  if (p < n)
    throw InvalidModulus("xcmp_leq2: digit equality needs p >= n");
  const Modulus f{p};
  const uint64_t a1 = a / n, a0 = a % n;
  const uint64_t b1 = b / n, b0 = b % n;

  XcmpCount count;
  auto leq_bit = [&](uint64_t x, uint64_t y) {
    ++count.ring_mults;  // X^x times X^-y
    return lt_xcmp(x, y, n, p) > 0 ? uint64_t{1} : uint64_t{0};
  };
  const uint64_t hi_leq = leq_bit(a1, b1);
  const uint64_t lo_leq = leq_bit(a0, b0);

  // Fermat indicator of a1 == b1, counted as a balanced power chain.
  const uint64_t e = p - 1;
  unsigned eq_depth = 0;
  while ((uint64_t{1} << eq_depth) < e) ++eq_depth;
  {
    std::map<uint64_t, bool> seen{{1, true}};
    auto visit = [&](auto&& self, uint64_t m) -> void {
      if (seen.count(m)) return;
      seen[m] = true;
      self(self, m / 2);
      self(self, m - m / 2);
      ++count.ring_mults;
    };
    visit(visit, e);
  }
  const uint64_t eq_hi = f.sub(1, f.pow(f.sub(a1 % p, b1 % p), e));

  // a <= b  <=>  [a1 <= b1] - [a1 == b1] * (1 - [a0 <= b0])
  ++count.ring_mults;
  count.depth = std::max(1u, eq_depth) + 1;
  const uint64_t bit = f.sub(hi_leq, f.mul(eq_hi, f.sub(1, lo_leq)));
  return {bit == 1, count};
}

uint8_t bit_lt_core(EvalContext& ctx, const BitCipher& a, const BitCipher& b) {
  if (a.width() != b.width())
    throw WidthMismatch("bit_lt: operand widths differ");
  uint8_t lt = bit_gate(ctx, GateOp::And,
                        bit_gate(ctx, GateOp::Not, a.bits[0]), b.bits[0]);
  for (size_t i = 1; i < a.width(); ++i) {
    const uint8_t ne = bit_gate(ctx, GateOp::Xor, a.bits[i], b.bits[i]);
    const uint8_t eq = bit_gate(ctx, GateOp::Not, ne);
    const uint8_t hi = bit_gate(ctx, GateOp::And,
                                bit_gate(ctx, GateOp::Not, a.bits[i]), b.bits[i]);
    const uint8_t keep = bit_gate(ctx, GateOp::And, eq, lt);
    lt = bit_gate(ctx, GateOp::Or, hi, keep);
  }
  return lt;
}

uint8_t bit_eq_core(EvalContext& ctx, const BitCipher& a, const BitCipher& b) {
  if (a.width() != b.width())
    throw WidthMismatch("bit_eq: operand widths differ");
  uint8_t eq = bit_gate(ctx, GateOp::Not,
                        bit_gate(ctx, GateOp::Xor, a.bits[0], b.bits[0]));
  for (size_t i = 1; i < a.width(); ++i) {
    const uint8_t e = bit_gate(ctx, GateOp::Not,
                               bit_gate(ctx, GateOp::Xor, a.bits[i], b.bits[i]));
    eq = bit_gate(ctx, GateOp::And, eq, e);
  }
  return eq;
}

CmpResult bit_lt(EvalContext& ctx, const BitCipher& a, const BitCipher& b) {
  const uint8_t lt = bit_lt_core(ctx, a, b);
  ++ctx.ledger.comparisons;
  CmpResult out;
  out.mask.word = false;
  out.mask.lanes.push_back(BitCipher{{lt}});
  return out;
}

// ---------------------------------------------------------------------------
// Facade.

namespace {

CmpResult scheme_mask(EvalContext& ctx, std::vector<uint64_t> bits_per_lane,
                      bool equality) {
  // One word<->bit round trip per slot: the bit side has no batching.
  for (size_t i = 0; i < ctx.slot_count; ++i) charge_switch(ctx, ctx.bits);
  if (equality)
    ++ctx.ledger.equalities;
  else
    ++ctx.ledger.comparisons;
  CmpResult out;
  out.mask.word = true;
  out.mask.wc.slots = std::move(bits_per_lane);
  out.mask.wc.modulus = ctx.pr;
  out.mask.wc.depth = 0;  // refreshed by the bootstrap inside the switch
  out.mask.wc.range_bound = 1;
  return out;
}

CmpResult encoding_mask(EvalContext& ctx, WordCipher mask_mod_p,
                        bool equality) {
  WordCipher lifted = lift_to_word(ctx, mask_mod_p);
  if (equality)
    ++ctx.ledger.equalities;
  else
    ++ctx.ledger.comparisons;
  CmpResult out;
  out.mask.word = true;
  out.mask.wc = std::move(lifted);
  return out;
}

}  // namespace

CmpResult compare_lt(EvalContext& ctx, const EncVec& a, const EncVec& b) {
  require_word(ctx, a);
  require_word(ctx, b);
  switch (ctx.method()) {
    case Method::EncodingSwitching: {
      RangeMeterPause pause(ctx);
      DigitVec da = reduce_to_digits(ctx, a.wc);
      DigitVec db = reduce_to_digits(ctx, b.wc);
      const size_t r = da.digits.size();
      std::vector<WordCipher> lt, eq;
      for (size_t i = 0; i < r; ++i) {
        lt.push_back(digit_lt_full(ctx, da.digits[i], db.digits[i]));
        if (i + 1 < r)
          eq.push_back(fermat_eq_of_diff(
              ctx, ct_sub(ctx, da.digits[i], db.digits[i])));
      }
      return encoding_mask(ctx, lex_combine(ctx, std::move(lt), std::move(eq)),
                           false);
    }
    case Method::SchemeSwitching: {
      std::vector<uint64_t> bits(ctx.slot_count);
      for (size_t i = 0; i < ctx.slot_count; ++i)
        bits[i] = a.wc.slots[i] < b.wc.slots[i] ? 1 : 0;
      return scheme_mask(ctx, std::move(bits), false);
    }
    case Method::BitwiseTfhe: {
      if (a.lanes.size() != b.lanes.size())
        throw WidthMismatch("compare_lt: lane counts differ");
      CmpResult out;
      out.mask.word = false;
      out.mask.lanes.reserve(a.lanes.size());
      for (size_t i = 0; i < a.lanes.size(); ++i)
        out.mask.lanes.push_back(
            BitCipher{{bit_lt_core(ctx, a.lanes[i], b.lanes[i])}});
      ++ctx.ledger.comparisons;
      return out;
    }
  }
  throw UnsupportedMethod("compare_lt: unknown method");
}

CmpResult compare_lt_plain(EvalContext& ctx, const EncVec& a,
                           const std::vector<uint64_t>& k) {
  require_word(ctx, a);
  switch (ctx.method()) {
    case Method::EncodingSwitching: {
      RangeMeterPause pause(ctx);
      DigitVec da = reduce_to_digits(ctx, a.wc);
      auto kd = plain_digits(k, ctx.p, ctx.r);
      std::vector<WordCipher> lt, eq;
      for (size_t i = 0; i < da.digits.size(); ++i) {
        lt.push_back(digit_lt_plain(ctx, da.digits[i], kd[i]));
        if (i + 1 < da.digits.size())
          eq.push_back(fermat_eq_of_diff(
              ctx, ct_add_plain(ctx, da.digits[i], negate_plain(kd[i], ctx.p))));
      }
      return encoding_mask(ctx, lex_combine(ctx, std::move(lt), std::move(eq)),
                           false);
    }
    case Method::SchemeSwitching: {
      std::vector<uint64_t> bits(ctx.slot_count);
      for (size_t i = 0; i < ctx.slot_count; ++i)
        bits[i] = a.wc.slots[i] < k[i] ? 1 : 0;
      return scheme_mask(ctx, std::move(bits), false);
    }
    case Method::BitwiseTfhe: {
      // Constants enter as trivial ciphertexts and pay full comparator
      // gates, keeping lane costs uniform.
      CmpResult out;
      out.mask.word = false;
      out.mask.lanes.reserve(a.lanes.size());
      for (size_t i = 0; i < a.lanes.size(); ++i) {
        BitCipher c = bit_encode(ctx, k[i]);
        out.mask.lanes.push_back(
            BitCipher{{bit_lt_core(ctx, a.lanes[i], c)}});
      }
      ++ctx.ledger.comparisons;
      return out;
    }
  }
  throw UnsupportedMethod("compare_lt_plain: unknown method");
}

CmpResult compare_eq_plain(EvalContext& ctx, const EncVec& a,
                           const std::vector<uint64_t>& k) {
  require_word(ctx, a);
  switch (ctx.method()) {
    case Method::EncodingSwitching: {
      RangeMeterPause pause(ctx);
      DigitVec da = reduce_to_digits(ctx, a.wc);
      auto kd = plain_digits(k, ctx.p, ctx.r);
      std::vector<WordCipher> eqs;
      for (size_t i = 0; i < da.digits.size(); ++i)
        eqs.push_back(fermat_eq_of_diff(
            ctx, ct_add_plain(ctx, da.digits[i], negate_plain(kd[i], ctx.p))));
      RangeProduct prod(ctx, eqs);
      WordCipher all = prod.prefix(eqs.size());
      return encoding_mask(ctx, std::move(all), true);
    }
    case Method::SchemeSwitching: {
      std::vector<uint64_t> bits(ctx.slot_count);
      for (size_t i = 0; i < ctx.slot_count; ++i)
        bits[i] = a.wc.slots[i] == k[i] ? 1 : 0;
      return scheme_mask(ctx, std::move(bits), true);
    }
    case Method::BitwiseTfhe: {
      CmpResult out;
      out.mask.word = false;
      out.mask.lanes.reserve(a.lanes.size());
      for (size_t i = 0; i < a.lanes.size(); ++i) {
        BitCipher c = bit_encode(ctx, k[i]);
        out.mask.lanes.push_back(
            BitCipher{{bit_eq_core(ctx, a.lanes[i], c)}});
      }
      ++ctx.ledger.equalities;
      return out;
    }
  }
  throw UnsupportedMethod("compare_eq_plain: unknown method");
}

CmpResult compare_eq_zero(EvalContext& ctx, const EncVec& a) {
  require_word(ctx, a);
  if (ctx.method() == Method::EncodingSwitching) {
    // The caller guarantees the value sits below p, so only the base digit
    // can be nonzero and one Fermat power settles the test.
    RangeMeterPause pause(ctx);
    DigitVec da = reduce_to_digits(ctx, a.wc);
    WordCipher eq = fermat_eq_of_diff(ctx, da.digits.back());
    return encoding_mask(ctx, std::move(eq), true);
  }
  return compare_eq_plain(ctx, a, std::vector<uint64_t>(a.size(ctx), 0));
}

EncVec apply_mask(EvalContext& ctx, const CmpResult& mask, const EncVec& x) {
  EncVec out;
  out.word = x.word;
  if (x.word) {
    out.wc = ct_mul(ctx, mask.mask.wc, x.wc);
    out.wc.range_bound = x.wc.range_bound;
  } else {
    if (mask.mask.lanes.size() != x.lanes.size())
      throw WidthMismatch("apply_mask: lane counts differ");
    out.lanes.reserve(x.lanes.size());
    for (size_t i = 0; i < x.lanes.size(); ++i) {
      BitCipher zero = bit_encode(ctx, 0, x.lanes[i].width());
      out.lanes.push_back(
          bit_select(ctx, mask.mask.lanes[i].bits[0], x.lanes[i], zero));
    }
  }
  return out;
}

EncVec mask_xor_plain(EvalContext& ctx, const EncVec& mask,
                      const std::vector<uint64_t>& bits) {
  EncVec out;
  out.word = mask.word;
  if (mask.word) {
    const uint64_t m = mask.wc.modulus;
    std::vector<uint64_t> sel(bits.size()), off(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
      sel[i] = bits[i] & 1 ? m - 1 : 1;  // 1 - 2e mod m
      off[i] = bits[i] & 1;
    }
    RangeMeterPause pause(ctx);
    out.wc = ct_add_plain(ctx, ct_mul_plain(ctx, mask.wc, sel), off);
    out.wc.range_bound = 1;
  } else {
    out.lanes.reserve(mask.lanes.size());
    for (size_t i = 0; i < mask.lanes.size(); ++i) {
      uint8_t b = mask.lanes[i].bits[0];
      if (bits[i] & 1) b = bit_gate(ctx, GateOp::Not, b);
      out.lanes.push_back(BitCipher{{b}});
    }
  }
  return out;
}

EncVec mask_not(EvalContext& ctx, const EncVec& mask) {
  return mask_xor_plain(ctx, mask,
                        std::vector<uint64_t>(mask.size(ctx), 1));
}

std::vector<uint64_t> mask_bits(const EvalContext& ctx, const CmpResult& m) {
  return enc_decode(ctx, m.mask);
}

}  // namespace fhegen
