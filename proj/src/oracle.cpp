#include "eqgen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqgen {

void OracleConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("oracle epsilon must be > 0");
  if (trials < 1) throw std::invalid_argument("oracle trials must be >= 1");
  if (min_valid_samples < 1) throw std::invalid_argument("oracle min_valid_samples must be >= 1");
  if (resample_limit < 1) throw std::invalid_argument("oracle resample_limit must be >= 1");
  if (!(interval_lo < interval_hi)) throw std::invalid_argument("oracle interval is empty");
  if (min_valid_samples > trials) {
    throw std::invalid_argument("oracle min_valid_samples exceeds trials");
  }
}

std::string_view to_string(VerdictOutcome v) {
  switch (v) {
    case VerdictOutcome::True: return "True";
    case VerdictOutcome::False: return "False";
    case VerdictOutcome::Unknown: return "Unknown";
  }
  return "?";
}

double Verdict::max_deviation() const {
  double m = 0.0;
  for (const auto& s : evidence) m = std::max(m, s.deviation);
  return m;
}

bool exceeds_tolerance(double lhs, double rhs, const OracleConfig& cfg) {
  const double dev = std::abs(lhs - rhs);
  if (cfg.tolerance_mode == ToleranceMode::Absolute) return dev > cfg.epsilon;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return dev > cfg.epsilon * scale;
}

Env sample_env(VarSet vars, const OracleConfig& cfg, Rng& rng) {
  Env env;
  for (Var v : kAllVars) {
    if (vars.contains(v)) env.bind(v, rng.uniform(cfg.interval_lo, cfg.interval_hi));
  }
  return env;
}

namespace {

enum class Attempt { Valid, Invalid };

// Evaluates one environment; appends to the verdict's evidence when both
// sides are finite.
Attempt evaluate_sample(const Equation& eq, const Env& env, Verdict& verdict) {
  const EvalResult l = evaluate(eq.lhs, env);
  const EvalResult r = evaluate(eq.rhs, env);
  if (l.is_finite() && r.is_finite()) {
    verdict.evidence.push_back({env, l.value, r.value, std::abs(l.value - r.value)});
    return Attempt::Valid;
  }
  for (const EvalResult* side : {&l, &r}) {
    if (side->outcome == EvalResult::Outcome::DomainError) ++verdict.domain_errors;
    if (side->outcome == EvalResult::Outcome::Overflow) ++verdict.overflows;
  }
  return Attempt::Invalid;
}

bool last_sample_deviates(const Verdict& v, const OracleConfig& cfg) {
  const Sample& s = v.evidence.back();
  return exceeds_tolerance(s.lhs, s.rhs, cfg);
}

void conclude(Verdict& v, int required) {
  v.outcome = v.valid_samples() >= required ? VerdictOutcome::True : VerdictOutcome::Unknown;
}

}  // namespace

Verdict verify(const Equation& eq, const OracleConfig& cfg, Rng& rng) {
  const VarSet vars = free_variables(eq);
  Verdict verdict;
  if (vars.empty()) {
    if (evaluate_sample(eq, Env{}, verdict) == Attempt::Valid && last_sample_deviates(verdict, cfg)) {
      verdict.outcome = VerdictOutcome::False;
      return verdict;
    }
    conclude(verdict, 1);
    return verdict;
  }
  for (int trial = 0; trial < cfg.trials; ++trial) {
    for (int attempt = 0; attempt < cfg.resample_limit; ++attempt) {
      if (evaluate_sample(eq, sample_env(vars, cfg, rng), verdict) == Attempt::Valid) {
        if (last_sample_deviates(verdict, cfg)) {
          verdict.outcome = VerdictOutcome::False;
          return verdict;
        }
        break;
      }
    }
  }
  conclude(verdict, cfg.min_valid_samples);
  return verdict;
}

Verdict verify_at(const Equation& eq, std::span<const Env> envs, const OracleConfig& cfg) {
  Verdict verdict;
  for (const Env& env : envs) {
    if (evaluate_sample(eq, env, verdict) == Attempt::Valid && last_sample_deviates(verdict, cfg)) {
      verdict.outcome = VerdictOutcome::False;
      return verdict;
    }
  }
  conclude(verdict, free_variables(eq).empty() ? 1 : cfg.min_valid_samples);
  return verdict;
}

}  // namespace eqgen
