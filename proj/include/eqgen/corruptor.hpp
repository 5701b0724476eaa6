#pragma once

#include <stdexcept>
#include <utility>

#include "eqgen/axioms.hpp"
#include "eqgen/record.hpp"
#include "eqgen/truegen.hpp"

namespace eqgen {

struct FalseGenConfig {
  /// Sound rewrites around the mutation, split uniformly into before/after.
  int valid_steps = 3;
  /// Reject mutants whose mutation adds a composed transcendental or a
  /// transcendental raised to a non-integer power.
  bool filter_artifacts = false;
  int max_retries = 20;
  /// Instantiation depth, size cap, oracle and seed are shared with truegen.
  TrueGenConfig base;

  void validate(const AxiomSet& ax) const;
};

class NoLegalSite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whether `m` is a well-formed mutation of kind m.kind for `eq`: the site
/// holds m.before, after differs from before, and the kind's constraint holds
/// (same syntactic role for symbol-swap, neighbouring constant for
/// constant-perturb, same operator family for operator-swap, depth <= 2
/// replacement for subtree-graft).
bool is_legal_mutation(const Equation& eq, const Mutation& m);

/// Neighbours of a constant in the ordered grammar constants
/// -1 < 0 < 1/2 < 1 < 2 < 3 < pi < 4 < 10; decimals step by 0.01 within range.
std::vector<Constant> adjacent_constants(const Constant& c);

/// One random mutation of the given kind. Throws NoLegalSite when `eq` has
/// no site for it.
std::pair<Equation, Mutation> mutate(const Equation& eq, MutationKind kind, const RandomExprConfig& graft,
                                     Rng& rng);

/// random_instance, k1 truth-preserving rewrites, one mutation, k2 rewrites
/// (k1 + k2 = valid_steps); kept only if the oracle says False. Throws
/// GenerationError after max_retries rejected candidates.
DatasetRecord generate_false(const AxiomSet& ax, const FalseGenConfig& cfg, Rng& rng, GenStats* stats = nullptr);

}  // namespace eqgen
