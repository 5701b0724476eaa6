#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "eqgen/axioms.hpp"
#include "eqgen/oracle.hpp"
#include "eqgen/random_expr.hpp"
#include "eqgen/record.hpp"
#include "eqgen/rng.hpp"

namespace eqgen {

struct TrueGenConfig {
  int depth_walk = 3;
  int instantiation_depth = 2;
  std::size_t max_nodes = 80;
  std::uint64_t seed = 0;
  int retry_budget = 20;
  OracleConfig oracle;

  /// Throws std::invalid_argument. `ax` is used to check that max_nodes
  /// admits every seed axiom.
  void validate(const AxiomSet& ax) const;
  RandomExprConfig random_expr_config() const;
};

/// Counters accumulated while generating.
struct GenStats {
  int retries = 0;                // records restarted for any reason
  int unknown_regenerations = 0;  // candidates whose verdict was Unknown
  int oversize_aborts = 0;
  int rejected_steps = 0;         // walk steps that broke the truth gate
  int rejected_true_mutants = 0;  // mutants the oracle found true
  int filtered_mutants = 0;       // mutants dropped by the artifact filter
  int truncated_walks = 0;

  GenStats& operator+=(const GenStats& o);
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generative rule chosen uniformly, each pattern variable bound to an
/// independent random expression of depth <= instantiation_depth.
std::pair<Equation, Provenance> random_instance(const AxiomSet& ax, const TrueGenConfig& cfg, Rng& rng);

enum class WalkGate { None, RequireTrue };

enum class WalkStatus { Completed, Exhausted, Oversize };

/// Applies up to `steps` rewrites drawn uniformly from applicable_rewrites,
/// skipping no-op steps and any step that returns to the equation before the
/// previous one. Target-only pattern variables are bound to fresh random
/// expressions. With RequireTrue, a step is kept only if the oracle still
/// says True; rejected candidates are dropped and another is drawn.
/// Appends accepted steps to `trace`.
WalkStatus random_walk(Equation& eq, std::vector<RewriteStep>& trace, int steps, const AxiomSet& ax,
                       const TrueGenConfig& cfg, WalkGate gate, Rng& rng, GenStats& stats);

/// random_instance followed by cfg.depth_walk truth-preserving steps; the
/// record is labelled true and carries the full trace. Retries up to
/// cfg.retry_budget times; throws GenerationError when exhausted.
DatasetRecord generate_true(const AxiomSet& ax, const TrueGenConfig& cfg, Rng& rng, GenStats* stats = nullptr);

/// A record for an explicitly chosen instance, with no walk.
DatasetRecord instance_record(const RewriteRule& rule, const Substitution& sigma, const OracleConfig& oracle,
                              Rng& rng);

}  // namespace eqgen
