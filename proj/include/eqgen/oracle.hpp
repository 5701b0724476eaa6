#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "eqgen/evaluate.hpp"
#include "eqgen/expr.hpp"
#include "eqgen/rng.hpp"

namespace eqgen {

enum class ToleranceMode { Absolute, RelativeWithFloor };

/// Random-evaluation verifier settings. Defaults: relative-with-floor
/// eps = 1e-6, 8 trials, 3 valid samples, 16 draws per trial, (-3.14, 3.14).
struct OracleConfig {
  double epsilon = 1e-6;
  int trials = 8;
  double interval_lo = -3.14;
  double interval_hi = 3.14;
  int min_valid_samples = 3;
  int resample_limit = 16;
  ToleranceMode tolerance_mode = ToleranceMode::RelativeWithFloor;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

enum class VerdictOutcome { True, False, Unknown };

std::string_view to_string(VerdictOutcome v);

struct Sample {
  Env env;
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
};

struct Verdict {
  VerdictOutcome outcome = VerdictOutcome::Unknown;
  /// Valid samples in trial order. A False verdict ends with the deviating one.
  std::vector<Sample> evidence;
  int domain_errors = 0;
  int overflows = 0;

  int valid_samples() const { return static_cast<int>(evidence.size()); }
  double max_deviation() const;
};

/// Whether |lhs - rhs| exceeds the configured tolerance.
bool exceeds_tolerance(double lhs, double rhs, const OracleConfig& cfg);

/// Each variable in `vars` drawn independently and uniformly over the
/// configured interval, in x, y, z order.
Env sample_env(VarSet vars, const OracleConfig& cfg, Rng& rng);

/// Samples environments, evaluates both sides, and compares against eps.
/// Domain errors and overflows are resampled up to resample_limit per
/// trial. Ground equations are evaluated once and need one valid sample.
Verdict verify(const Equation& eq, const OracleConfig& cfg, Rng& rng);

/// Same decision rule over a fixed list of environments, one per trial and
/// without resampling.
Verdict verify_at(const Equation& eq, std::span<const Env> envs, const OracleConfig& cfg);

}  // namespace eqgen
