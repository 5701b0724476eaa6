#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "eqgen/expr.hpp"

namespace eqgen {

/// Variable bindings for evaluation.
class Env {
 public:
  Env() = default;

  Env& bind(Var v, double value) {
    values_[static_cast<std::size_t>(v)] = value;
    return *this;
  }
  std::optional<double> get(Var v) const { return values_[static_cast<std::size_t>(v)]; }
  bool binds(Var v) const { return values_[static_cast<std::size_t>(v)].has_value(); }

  friend bool operator==(const Env&, const Env&) = default;

 private:
  std::array<std::optional<double>, kVarCount> values_{};
};

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(Var v)
      : std::runtime_error("unbound variable '" + std::string(var_name(v)) + "'"), var_(v) {}
  Var var() const { return var_; }

 private:
  Var var_;
};

struct EvalResult {
  enum class Outcome { Finite, DomainError, Overflow };

  Outcome outcome = Outcome::Finite;
  double value = 0.0;  // meaningful only for Finite
  Path at;             // meaningful only for DomainError

  static EvalResult finite(double v) { return {Outcome::Finite, v, {}}; }
  static EvalResult domain_error(Path p) { return {Outcome::DomainError, 0.0, std::move(p)}; }
  static EvalResult overflow() { return {Outcome::Overflow, 0.0, {}}; }

  bool is_finite() const { return outcome == Outcome::Finite; }
};

bool operator==(const EvalResult& a, const EvalResult& b);

/// IEEE double evaluation with real-domain tracking. The first subterm (in
/// evaluation order) that leaves its real domain yields DomainError at its
/// path; any non-finite intermediate yields Overflow.
/// Throws UnboundVariable if `env` misses a free variable of `e`.
EvalResult evaluate(const Expr& e, const Env& env);

}  // namespace eqgen
