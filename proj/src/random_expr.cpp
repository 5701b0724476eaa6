#include "eqgen/random_expr.hpp"

#include <array>

#include "eqgen/rewrite.hpp"

namespace eqgen {

namespace {

struct Weighted {
  Op op;
  int weight;
};

constexpr std::array<Weighted, 28> kUnaryWeights = {{
    {Op::Neg, 4},   {Op::Sin, 6},   {Op::Cos, 6},   {Op::Tan, 3},   {Op::Cot, 1},   {Op::Sec, 1},   {Op::Csc, 1},
    {Op::Asin, 1},  {Op::Acos, 1},  {Op::Atan, 2},  {Op::Acot, 1},  {Op::Asec, 1},  {Op::Acsc, 1},  {Op::Sinh, 1},
    {Op::Cosh, 1},  {Op::Tanh, 1},  {Op::Coth, 1},  {Op::Sech, 1},  {Op::Csch, 1},  {Op::Asinh, 1}, {Op::Acosh, 1},
    {Op::Atanh, 1}, {Op::Acoth, 1}, {Op::Asech, 1}, {Op::Acsch, 1}, {Op::Exp, 3},   {Op::Log, 2},   {Op::Sqrt, 2},
}};

constexpr std::array<Weighted, 5> kBinaryWeights = {{
    {Op::Add, 4}, {Op::Mul, 4}, {Op::Pow, 2}, {Op::Sub, 2}, {Op::Div, 1},
}};

template <std::size_t N>
Op pick_weighted(const std::array<Weighted, N>& table, Rng& rng) {
  int total = 0;
  for (const auto& w : table) total += w.weight;
  auto r = static_cast<int>(rng.index(static_cast<std::size_t>(total)));
  for (const auto& w : table) {
    if (r < w.weight) return w.op;
    r -= w.weight;
  }
  return table.back().op;
}

Expr random_node(const RandomExprConfig& cfg, int depth_left, Rng& rng) {
  if (depth_left == 0 || rng.chance(cfg.leaf_probability)) return random_leaf(rng, cfg.decimal_probability);
  if (rng.chance(0.5)) return Expr::unary(random_unary_op(rng), random_node(cfg, depth_left - 1, rng));
  const Op op = random_binary_op(rng);
  Expr a = random_node(cfg, depth_left - 1, rng);
  Expr b = random_node(cfg, depth_left - 1, rng);
  return Expr::binary(op, std::move(a), std::move(b));
}

}  // namespace

Constant random_constant(Rng& rng, double decimal_probability) {
  if (rng.chance(decimal_probability)) {
    return Constant::decimal(static_cast<int>(rng.index(629)) - 314);
  }
  switch (rng.index(9)) {
    case 0: return Constant::integer(-1);
    case 1: return Constant::integer(0);
    case 2: return Constant::integer(1);
    case 3: return Constant::integer(2);
    case 4: return Constant::integer(3);
    case 5: return Constant::integer(4);
    case 6: return Constant::integer(10);
    case 7: return Constant::pi();
    default: return Constant::half();
  }
}

Expr random_leaf(Rng& rng, double decimal_probability) {
  if (rng.chance(0.5)) return Expr::variable(kAllVars[rng.index(kVarCount)]);
  return Expr::constant(random_constant(rng, decimal_probability));
}

Op random_unary_op(Rng& rng) { return pick_weighted(kUnaryWeights, rng); }
Op random_binary_op(Rng& rng) { return pick_weighted(kBinaryWeights, rng); }

Expr random_expr(const RandomExprConfig& cfg, Rng& rng) { return random_node(cfg, cfg.max_depth, rng); }

Expr random_positive_expr(const RandomExprConfig& cfg, Rng& rng) {
  for (int i = 0; i < 32; ++i) {
    Expr e = random_expr(cfg, rng);
    if (is_syntactically_positive(e)) return e;
  }
  return Expr::integer(2);
}

}  // namespace eqgen
