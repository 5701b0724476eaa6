#include "eqgen/evaluate.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace eqgen {

bool operator==(const EvalResult& a, const EvalResult& b) {
  if (a.outcome != b.outcome) return false;
  switch (a.outcome) {
    case EvalResult::Outcome::Finite:
      return std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value);
    case EvalResult::Outcome::DomainError:
      return a.at == b.at;
    case EvalResult::Outcome::Overflow:
      return true;
  }
  return false;
}

namespace {

// nullopt marks a domain error; non-finite values are reported as overflow by
// the caller.
std::optional<double> apply_unary(Op op, double a) {
  using std::nullopt;
  switch (op) {
    case Op::Neg: return -a;
    case Op::Sin: return std::sin(a);
    case Op::Cos: return std::cos(a);
    case Op::Tan: return std::tan(a);
    case Op::Cot: {
      const double s = std::sin(a);
      if (s == 0.0) return nullopt;
      return std::cos(a) / s;
    }
    case Op::Sec: {
      const double c = std::cos(a);
      if (c == 0.0) return nullopt;
      return 1.0 / c;
    }
    case Op::Csc: {
      const double s = std::sin(a);
      if (s == 0.0) return nullopt;
      return 1.0 / s;
    }
    case Op::Asin:
      if (a < -1.0 || a > 1.0) return nullopt;
      return std::asin(a);
    case Op::Acos:
      if (a < -1.0 || a > 1.0) return nullopt;
      return std::acos(a);
    case Op::Atan: return std::atan(a);
    case Op::Acot:
      if (a == 0.0) return std::numbers::pi / 2;
      return std::atan(1.0 / a);
    case Op::Asec:
      if (std::abs(a) < 1.0) return nullopt;
      return std::acos(1.0 / a);
    case Op::Acsc:
      if (std::abs(a) < 1.0) return nullopt;
      return std::asin(1.0 / a);
    case Op::Sinh: return std::sinh(a);
    case Op::Cosh: return std::cosh(a);
    case Op::Tanh: return std::tanh(a);
    case Op::Coth: {
      if (a == 0.0) return nullopt;
      return 1.0 / std::tanh(a);
    }
    case Op::Sech: return 1.0 / std::cosh(a);
    case Op::Csch: {
      if (a == 0.0) return nullopt;
      return 1.0 / std::sinh(a);
    }
    case Op::Asinh: return std::asinh(a);
    case Op::Acosh:
      if (a < 1.0) return nullopt;
      return std::acosh(a);
    case Op::Atanh:
      if (a <= -1.0 || a >= 1.0) return nullopt;
      return std::atanh(a);
    case Op::Acoth:
      if (a >= -1.0 && a <= 1.0) return nullopt;
      return std::atanh(1.0 / a);
    case Op::Asech:
      if (a <= 0.0 || a > 1.0) return nullopt;
      return std::acosh(1.0 / a);
    case Op::Acsch:
      if (a == 0.0) return nullopt;
      return std::asinh(1.0 / a);
    case Op::Exp: return std::exp(a);
    case Op::Log:
      if (a <= 0.0) return nullopt;
      return std::log(a);
    case Op::Sqrt:
      if (a < 0.0) return nullopt;
      return std::sqrt(a);
    default:
      break;
  }
  return nullopt;
}

std::optional<double> apply_binary(Op op, double a, double b) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div:
      if (b == 0.0) return std::nullopt;
      return a / b;
    case Op::Pow:
      if (a < 0.0 && std::trunc(b) != b) return std::nullopt;
      if (a == 0.0 && b < 0.0) return std::nullopt;
      return std::pow(a, b);
    default:
      break;
  }
  return std::nullopt;
}

class Evaluator {
 public:
  explicit Evaluator(const Env& env) : env_(env) {}

  EvalResult run(const Expr& e) {
    Path path;
    return eval(e, path);
  }

 private:
  EvalResult eval(const Expr& e, Path& path) {
    const Symbol& s = e.symbol();
    switch (s.kind()) {
      case SymbolKind::Constant:
        return EvalResult::finite(s.constant().value());
      case SymbolKind::Variable: {
        const auto v = env_.get(s.var());
        if (!v) throw UnboundVariable(s.var());
        if (!std::isfinite(*v)) return EvalResult::overflow();
        return EvalResult::finite(*v);
      }
      default:
        break;
    }
    double args[2] = {0.0, 0.0};
    const auto children = e.children();
    for (std::uint32_t i = 0; i < children.size(); ++i) {
      path.indices.push_back(i);
      EvalResult r = eval(children[i], path);
      path.indices.pop_back();
      if (!r.is_finite()) return r;
      args[i] = r.value;
    }
    const auto out = children.size() == 1 ? apply_unary(s.op(), args[0]) : apply_binary(s.op(), args[0], args[1]);
    if (!out || std::isnan(*out)) return EvalResult::domain_error(path);
    if (!std::isfinite(*out)) return EvalResult::overflow();
    return EvalResult::finite(*out);
  }

  const Env& env_;
};

}  // namespace

EvalResult evaluate(const Expr& e, const Env& env) { return Evaluator(env).run(e); }

}  // namespace eqgen
