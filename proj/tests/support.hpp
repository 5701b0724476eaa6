#pragma once
// Test-side reference implementations. These deliberately avoid the library's
// own evaluator and matcher so that the unit tests compare two independent
// computations.

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "eqgen/axioms.hpp"
#include "eqgen/expr.hpp"
#include "eqgen/rewrite.hpp"

namespace ref {

inline constexpr long double kPi = 3.14159265358979323846264338327950288L;

// Evaluates by dispatching on the rendered operator token, in long double.
// Returns nullopt whenever any intermediate leaves the reals or is not finite.
// `peak` tracks the largest intermediate magnitude.
inline std::optional<long double> eval(const eqgen::Expr& e, const std::map<char, long double>& env,
                                       long double* peak = nullptr) {
  using eqgen::Constant;
  const auto& s = e.symbol();
  if (s.is_constant()) {
    const Constant& c = s.constant();
    switch (c.kind()) {
      case Constant::Kind::Integer: return static_cast<long double>(c.raw());
      case Constant::Kind::Pi: return M_PI;  // the double the library sees, not kPi
      case Constant::Kind::Half: return 0.5L;
      case Constant::Kind::Decimal: return static_cast<long double>(c.raw()) / 100.0L;
    }
  }
  if (s.is_variable()) return env.at(eqgen::var_name(s.var())[0]);
  const std::string tok(eqgen::op_info(s.op()).token);
  auto a = eval(e.child(0), env, peak);
  if (!a) return std::nullopt;
  long double r = NAN;
  if (s.arity() == 2) {
    auto b = eval(e.child(1), env, peak);
    if (!b) return std::nullopt;
    const long double x = *a, y = *b;
    if (tok == "+") r = x + y;
    else if (tok == "-") r = x - y;
    else if (tok == "*") r = x * y;
    else if (tok == "/") r = y == 0 ? NAN : x / y;
    else if (tok == "pow") {
      if (x == 0 && y < 0) return std::nullopt;
      if (x < 0 && std::trunc(y) != y) return std::nullopt;
      r = std::pow(x, y);
    }
  } else {
    const long double x = *a;
    if (tok == "neg") r = -x;
    else if (tok == "sin") r = std::sin(x);
    else if (tok == "cos") r = std::cos(x);
    else if (tok == "tan") r = std::tan(x);
    else if (tok == "cot") r = std::sin(x) == 0 ? NAN : std::cos(x) / std::sin(x);
    else if (tok == "sec") r = std::cos(x) == 0 ? NAN : 1 / std::cos(x);
    else if (tok == "csc") r = std::sin(x) == 0 ? NAN : 1 / std::sin(x);
    else if (tok == "asin") r = std::asin(x);
    else if (tok == "acos") r = std::acos(x);
    else if (tok == "atan") r = std::atan(x);
    else if (tok == "acot") r = x == 0 ? kPi / 2 : std::atan(1 / x);
    else if (tok == "asec") r = std::fabs(x) < 1 ? NAN : std::acos(1 / x);
    else if (tok == "acsc") r = std::fabs(x) < 1 ? NAN : std::asin(1 / x);
    else if (tok == "sinh") r = std::sinh(x);
    else if (tok == "cosh") r = std::cosh(x);
    else if (tok == "tanh") r = std::tanh(x);
    else if (tok == "coth") r = x == 0 ? NAN : 1 / std::tanh(x);
    else if (tok == "sech") r = 1 / std::cosh(x);
    else if (tok == "csch") r = x == 0 ? NAN : 1 / std::sinh(x);
    else if (tok == "asinh") r = std::asinh(x);
    else if (tok == "acosh") r = std::acosh(x);
    else if (tok == "atanh") r = std::fabs(x) >= 1 ? NAN : std::atanh(x);
    else if (tok == "acoth") r = std::fabs(x) <= 1 ? NAN : std::atanh(1 / x);
    else if (tok == "asech") r = (x <= 0 || x > 1) ? NAN : std::acosh(1 / x);
    else if (tok == "acsch") r = x == 0 ? NAN : std::asinh(1 / x);
    else if (tok == "exp") r = std::exp(x);
    else if (tok == "log") r = x <= 0 ? NAN : std::log(x);
    else if (tok == "sqrt") r = std::sqrt(x);
  }
  if (!std::isfinite(r)) return std::nullopt;
  if (peak) *peak = std::max(*peak, std::fabs(r));
  return r;
}

// Plain recursive matcher over (variable -> rendered binding).
inline bool match(const eqgen::Expr& pat, const eqgen::Expr& subj, std::map<char, std::string>& b) {
  if (pat.symbol().is_variable()) {
    const char v = eqgen::var_name(pat.symbol().var())[0];
    const std::string r = eqgen::render(subj);
    auto [it, fresh] = b.emplace(v, r);
    return fresh || it->second == r;
  }
  if (!(pat.symbol() == subj.symbol())) return false;
  for (std::size_t i = 0; i < pat.children().size(); ++i) {
    if (!match(pat.child(i), subj.child(i), b)) return false;
  }
  return true;
}

inline bool guarded_ok(const eqgen::RewriteRule& r, const std::map<char, std::string>& b) {
  for (eqgen::Var v : eqgen::kAllVars) {
    if (!r.positive_vars.contains(v)) continue;
    auto it = b.find(eqgen::var_name(v)[0]);
    if (it != b.end() && !eqgen::is_syntactically_positive(eqgen::parse_expr(it->second))) return false;
  }
  return true;
}

// Counts (side, position, rule, direction) combinations whose source matches.
inline std::size_t count_applicable(const eqgen::Equation& eq, const eqgen::AxiomSet& ax) {
  std::size_t n = 0;
  for (eqgen::Side s : eqgen::kSides) {
    for (const auto& p : eqgen::positions(eq.side(s))) {
      for (const auto* r : ax.generative_rules()) {
        for (const eqgen::Expr* src : {&r->lhs, &r->rhs}) {
          std::map<char, std::string> b;
          if (match(*src, p.expr, b) && guarded_ok(*r, b)) ++n;
        }
      }
    }
  }
  return n;
}

}  // namespace ref
