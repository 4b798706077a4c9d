// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "fhegen/apps.hpp"

namespace fhegen {

const std::vector<uint64_t>& Table::column(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return cols[i];
  throw ParseError("table has no column named '" + name + "'");
}

const EncVec& EncTable::column(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return cols[i];
  throw ParseError("table has no column named '" + name + "'");
}

Predicate pred_column(std::string name) {
  Predicate p;
  p.kind = Predicate::Kind::Column;
  p.column = std::move(name);
  return p;
}

Predicate pred_const(uint64_t v) {
  Predicate p;
  p.kind = Predicate::Kind::Constant;
  p.value = v;
  return p;
}

namespace {

Predicate binary(Predicate::Kind kind, Predicate a, Predicate b) {
  Predicate p;
  p.kind = kind;
  p.kids.push_back(std::move(a));
  p.kids.push_back(std::move(b));
  return p;
}

}  // namespace

Predicate pred_add(Predicate a, Predicate b) {
  return binary(Predicate::Kind::Add, std::move(a), std::move(b));
}
Predicate pred_mul(Predicate a, Predicate b) {
  return binary(Predicate::Kind::Mul, std::move(a), std::move(b));
}
Predicate pred_and(Predicate a, Predicate b) {
  return binary(Predicate::Kind::And, std::move(a), std::move(b));
}
Predicate pred_or(Predicate a, Predicate b) {
  return binary(Predicate::Kind::Or, std::move(a), std::move(b));
}

Predicate pred_between(Predicate expr, uint64_t lo, uint64_t hi) {
  Predicate p;
  p.kind = Predicate::Kind::Between;
  p.lo = lo;
  p.hi = hi;
  p.kids.push_back(std::move(expr));
  return p;
}

Predicate pred_cmp(Predicate::Kind kind, Predicate expr, uint64_t bound) {
  Predicate p;
  p.kind = kind;
  p.value = bound;
  p.kids.push_back(std::move(expr));
  return p;
}

// ---------------------------------------------------------------------------
// Plaintext oracle.

namespace {

uint64_t eval_expr_plain(const Table& t, const Predicate& p, size_t row) {
  switch (p.kind) {
    case Predicate::Kind::Column: return t.column(p.column)[row];
    case Predicate::Kind::Constant: return p.value;
    case Predicate::Kind::Add:
      return eval_expr_plain(t, p.kids[0], row) +
             eval_expr_plain(t, p.kids[1], row);
    case Predicate::Kind::Mul:
      return eval_expr_plain(t, p.kids[0], row) *
             eval_expr_plain(t, p.kids[1], row);
    default:
      throw ParseError("db: comparison node inside a linear expression");
  }
}

uint64_t eval_mask_plain(const Table& t, const Predicate& p, size_t row) {
  switch (p.kind) {
    case Predicate::Kind::Between: {
      const uint64_t x = eval_expr_plain(t, p.kids[0], row);
      return x >= p.lo && x <= p.hi ? 1 : 0;
    }
    case Predicate::Kind::Lt:
      return eval_expr_plain(t, p.kids[0], row) < p.value ? 1 : 0;
    case Predicate::Kind::Le:
      return eval_expr_plain(t, p.kids[0], row) <= p.value ? 1 : 0;
    case Predicate::Kind::Gt:
      return eval_expr_plain(t, p.kids[0], row) > p.value ? 1 : 0;
    case Predicate::Kind::Ge:
      return eval_expr_plain(t, p.kids[0], row) >= p.value ? 1 : 0;
    case Predicate::Kind::And:
      return eval_mask_plain(t, p.kids[0], row) &
             eval_mask_plain(t, p.kids[1], row);
    case Predicate::Kind::Or:
      return eval_mask_plain(t, p.kids[0], row) |
             eval_mask_plain(t, p.kids[1], row);
    default:
      throw ParseError("db: linear node at predicate position");
  }
}

}  // namespace

std::vector<uint64_t> db_filter_plain(const Table& t, const Predicate& p) {
  std::vector<uint64_t> mask(t.rows);
  for (size_t row = 0; row < t.rows; ++row) mask[row] = eval_mask_plain(t, p, row);
  return mask;
}

// ---------------------------------------------------------------------------
// Encrypted evaluation.

EncTable encrypt_table(EvalContext& ctx, const Table& t, uint64_t value_bound) {
  if (is_word_wise(ctx.method()) && ctx.slot_count != t.rows)
    throw ContextMismatch("encrypt_table: context must provide one slot per row");
  EncTable out;
  out.names = t.names;
  out.rows = t.rows;
  for (const auto& col : t.cols) out.cols.push_back(enc_encode(ctx, col, value_bound));
  return out;
}

namespace {

EncVec eval_expr_enc(EvalContext& ctx, const EncTable& t, const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::Column: return t.column(p.column);
    case Predicate::Kind::Constant:
      return enc_encode(ctx, std::vector<uint64_t>(t.rows, p.value), p.value);
    case Predicate::Kind::Add: {
      // Constant operands ride the cheap plaintext path.
      if (p.kids[1].kind == Predicate::Kind::Constant)
        return enc_add_plain(ctx, eval_expr_enc(ctx, t, p.kids[0]),
                             std::vector<uint64_t>(t.rows, p.kids[1].value));
      if (p.kids[0].kind == Predicate::Kind::Constant)
        return enc_add_plain(ctx, eval_expr_enc(ctx, t, p.kids[1]),
                             std::vector<uint64_t>(t.rows, p.kids[0].value));
      return enc_add(ctx, eval_expr_enc(ctx, t, p.kids[0]),
                     eval_expr_enc(ctx, t, p.kids[1]));
    }
    case Predicate::Kind::Mul: {
      if (p.kids[1].kind == Predicate::Kind::Constant)
        return enc_mul_plain(ctx, eval_expr_enc(ctx, t, p.kids[0]),
                             std::vector<uint64_t>(t.rows, p.kids[1].value));
      if (p.kids[0].kind == Predicate::Kind::Constant)
        return enc_mul_plain(ctx, eval_expr_enc(ctx, t, p.kids[1]),
                             std::vector<uint64_t>(t.rows, p.kids[0].value));
      return enc_mul(ctx, eval_expr_enc(ctx, t, p.kids[0]),
                     eval_expr_enc(ctx, t, p.kids[1]));
    }
    default:
      throw ParseError("db: comparison node inside a linear expression");
  }
}

std::vector<uint64_t> fill(size_t n, uint64_t v) {
  return std::vector<uint64_t>(n, v);
}

// [x >= bound] as the complement of the strict comparison; bound 0 yields
// the all-ones mask through the same circuit shape.
EncVec ge_mask(EvalContext& ctx, const EncVec& x, uint64_t bound) {
  CmpResult below = compare_lt_plain(ctx, x, fill(x.size(ctx), bound));
  return mask_not(ctx, below.mask);
}

EncVec le_mask(EvalContext& ctx, const EncVec& x, uint64_t bound) {
  const uint64_t modulus =
      x.word ? x.wc.modulus : (uint64_t{1} << ctx.bits);
  if (bound + 1 >= modulus)
    throw RangeViolation("db: upper bound leaves no headroom in the modulus");
  CmpResult below = compare_lt_plain(ctx, x, fill(x.size(ctx), bound + 1));
  return below.mask;
}

EncVec mask_and(EvalContext& ctx, const EncVec& a, const EncVec& b) {
  EncVec out = enc_mul(ctx, a, b);
  if (out.word) out.wc.range_bound = 1;
  return out;
}

EncVec mask_or(EvalContext& ctx, const EncVec& a, const EncVec& b) {
  if (!a.word) {
    EncVec out;
    out.word = false;
    out.lanes.reserve(a.lanes.size());
    for (size_t i = 0; i < a.lanes.size(); ++i)
      out.lanes.push_back(BitCipher{{bit_gate(ctx, GateOp::Or,
                                              a.lanes[i].bits[0],
                                              b.lanes[i].bits[0])}});
    return out;
  }
  // m1 + m2 - m1*m2
  EncVec prod = enc_mul(ctx, a, b);
  EncVec out;
  out.word = true;
  out.wc = ct_sub(ctx, ct_add(ctx, a.wc, b.wc), prod.wc);
  out.wc.range_bound = 1;
  return out;
}

EncVec eval_mask_enc(EvalContext& ctx, const EncTable& t, const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::Between: {
      EncVec x = eval_expr_enc(ctx, t, p.kids[0]);
      EncVec ge = ge_mask(ctx, x, p.lo);
      EncVec le = le_mask(ctx, x, p.hi);
      return mask_and(ctx, ge, le);
    }
    case Predicate::Kind::Lt: {
      EncVec x = eval_expr_enc(ctx, t, p.kids[0]);
      return compare_lt_plain(ctx, x, fill(t.rows, p.value)).mask;
    }
    case Predicate::Kind::Le: {
      EncVec x = eval_expr_enc(ctx, t, p.kids[0]);
      return le_mask(ctx, x, p.value);
    }
    case Predicate::Kind::Gt: {
      EncVec x = eval_expr_enc(ctx, t, p.kids[0]);
      return mask_not(ctx, le_mask(ctx, x, p.value));
    }
    case Predicate::Kind::Ge: {
      EncVec x = eval_expr_enc(ctx, t, p.kids[0]);
      return ge_mask(ctx, x, p.value);
    }
    case Predicate::Kind::And:
      return mask_and(ctx, eval_mask_enc(ctx, t, p.kids[0]),
                      eval_mask_enc(ctx, t, p.kids[1]));
    case Predicate::Kind::Or:
      return mask_or(ctx, eval_mask_enc(ctx, t, p.kids[0]),
                     eval_mask_enc(ctx, t, p.kids[1]));
    default:
      throw ParseError("db: linear node at predicate position");
  }
}

}  // namespace

EncVec db_filter(EvalContext& ctx, const EncTable& t, const Predicate& p) {
  return eval_mask_enc(ctx, t, p);
}

EncVec db_select_ids(EvalContext& ctx, const EncTable& t,
                     const std::string& id_column, const EncVec& mask) {
  CmpResult m;
  m.mask = mask;
  return apply_mask(ctx, m, t.column(id_column));
}

Predicate salary_hours_query() {
  return pred_and(
      pred_between(pred_mul(pred_column("salary"), pred_column("work_hours")),
                   5000, 6000),
      pred_between(pred_add(pred_column("salary"), pred_column("bonus")), 700,
                   800));
}

Table random_salary_table(Rng& rng, size_t rows) {
  Table t;
  t.names = {"id", "salary", "work_hours", "bonus"};
  t.cols.assign(4, {});
  t.rows = rows;
  for (size_t i = 0; i < rows; ++i) {
    t.cols[0].push_back(1000 + i);
    t.cols[1].push_back(rng.range(50, 100));
    t.cols[2].push_back(rng.range(40, 80));
    t.cols[3].push_back(rng.range(600, 750));
  }
  return t;
}

namespace {

struct PredShape {
  uint64_t comparisons = 0;
  uint64_t mask_products = 0;  // word-wise products combining masks
  uint64_t expr_mults = 0;     // ciphertext products in linear expressions
  uint64_t expr_depth = 0;
  uint64_t combine_depth = 0;
};

PredShape expr_shape(const Predicate& p) {
  PredShape s;
  switch (p.kind) {
    case Predicate::Kind::Column:
    case Predicate::Kind::Constant:
      return s;
    case Predicate::Kind::Add:
    case Predicate::Kind::Mul: {
      PredShape a = expr_shape(p.kids[0]);
      PredShape b = expr_shape(p.kids[1]);
      s.expr_mults = a.expr_mults + b.expr_mults;
      s.expr_depth = std::max(a.expr_depth, b.expr_depth);
      const bool cipher_product =
          p.kind == Predicate::Kind::Mul &&
          p.kids[0].kind != Predicate::Kind::Constant &&
          p.kids[1].kind != Predicate::Kind::Constant;
      if (cipher_product) {
        ++s.expr_mults;
        ++s.expr_depth;
      }
      return s;
    }
    default:
      throw ParseError("db: comparison node inside a linear expression");
  }
}

PredShape mask_shape(const Predicate& p) {
  PredShape s;
  switch (p.kind) {
    case Predicate::Kind::Between: {
      PredShape e = expr_shape(p.kids[0]);
      s = e;
      s.comparisons = 2;
      s.mask_products = 1;
      s.combine_depth = 1;
      return s;
    }
    case Predicate::Kind::Lt:
    case Predicate::Kind::Le:
    case Predicate::Kind::Gt:
    case Predicate::Kind::Ge: {
      PredShape e = expr_shape(p.kids[0]);
      s = e;
      s.comparisons = 1;
      return s;
    }
    case Predicate::Kind::And:
    case Predicate::Kind::Or: {
      PredShape a = mask_shape(p.kids[0]);
      PredShape b = mask_shape(p.kids[1]);
      s.comparisons = a.comparisons + b.comparisons;
      s.mask_products = a.mask_products + b.mask_products + 1;
      s.expr_mults = a.expr_mults + b.expr_mults;
      s.expr_depth = std::max(a.expr_depth, b.expr_depth);
      s.combine_depth = std::max(a.combine_depth, b.combine_depth) + 1;
      return s;
    }
    default:
      throw ParseError("db: linear node at predicate position");
  }
}

}  // namespace

namespace {

uint64_t expr_ceiling(const Table& t, const Predicate& p) {
  uint64_t top = 0;
  for (size_t row = 0; row < t.rows; ++row)
    top = std::max(top, eval_expr_plain(t, p, row));
  return top;
}

uint64_t mask_ceiling(const Table& t, const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::Between:
      return std::max(expr_ceiling(t, p.kids[0]), p.hi + 1);
    case Predicate::Kind::Lt:
    case Predicate::Kind::Le:
    case Predicate::Kind::Gt:
    case Predicate::Kind::Ge:
      return std::max(expr_ceiling(t, p.kids[0]), p.value + 1);
    case Predicate::Kind::And:
    case Predicate::Kind::Or:
      return std::max(mask_ceiling(t, p.kids[0]), mask_ceiling(t, p.kids[1]));
    default:
      throw ParseError("db: linear node at predicate position");
  }
}

}  // namespace

uint64_t db_value_ceiling(const Table& t, const Predicate& p) {
  return mask_ceiling(t, p);
}

unsigned db_effective_bits(Method method, unsigned requested,
                           uint64_t ceiling) {
  for (unsigned bits : {6u, 8u, 12u, 16u}) {
    if (bits < requested) continue;
    const uint64_t capacity = is_word_wise(method)
                                  ? plain_params_for_bits(bits).pow_pr
                                  : (uint64_t{1} << bits);
    if (capacity > ceiling) return bits;
  }
  throw RangeViolation(
      "db: predicate arithmetic does not fit any scheduled plaintext space");
}

unsigned db_depth_budget(Method method, unsigned bits, const Predicate& p) {
  if (method == Method::BitwiseTfhe) return 1;
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  const PredShape s = mask_shape(p);
  return static_cast<unsigned>(s.expr_depth + unit.cmp_depth +
                               s.combine_depth + 4);
}

ScenarioPrediction predict_db(Method method, unsigned bits, size_t rows,
                              const Predicate& p) {
  ScenarioPrediction pred;
  const PredShape s = mask_shape(p);
  if (method == Method::BitwiseTfhe) {
    const Predicted unit = predict(CostRow::BitwiseTfhe, bits);
    pred.gate_bootstraps =
        rows * (s.expr_mults * unit.mul_gates + s.comparisons * unit.cmp_gates +
                s.mask_products);
    pred.max_depth = 0;
    return pred;
  }
  PlainParams pp = plain_params_for_bits(bits);
  const Predicted unit = predict(cost_row_for(method), bits, pp.p, pp.r);
  pred.nonscalar_mults = s.expr_mults + s.mask_products +
                         s.comparisons * unit.cmp_nonscalar_mults;
  pred.switch_units = s.comparisons * rows * unit.cmp_switch_units;
  pred.max_depth = s.expr_depth + unit.cmp_depth + s.combine_depth;
  return pred;
}

}  // namespace fhegen
