#pragma once

#include "eqgen/expr.hpp"
#include "eqgen/rng.hpp"

namespace eqgen {

/// Grammar-driven random expressions, shared by axiom instantiation and
/// subtree grafting so that both draw from one size distribution.
///
/// Each node below max_depth is a leaf with probability leaf_probability,
/// otherwise a unary or binary operator with equal odds. Leaves are split
/// 50/50 between variables and constants. Unary operators favour sin, cos,
/// tan, exp, log, sqrt and neg over the rest of the catalogue.
struct RandomExprConfig {
  int max_depth = 2;
  double leaf_probability = 0.4;
  double decimal_probability = 0.1;  // among constants
};

Expr random_expr(const RandomExprConfig& cfg, Rng& rng);

Expr random_leaf(Rng& rng, double decimal_probability = 0.1);
Constant random_constant(Rng& rng, double decimal_probability = 0.1);
Op random_unary_op(Rng& rng);
Op random_binary_op(Rng& rng);

/// A random expression accepted by is_syntactically_positive; falls back to
/// a positive constant after a bounded number of draws.
Expr random_positive_expr(const RandomExprConfig& cfg, Rng& rng);

}  // namespace eqgen
