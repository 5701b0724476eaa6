#include "eqgen/truegen.hpp"

#include <algorithm>
#include <optional>

namespace eqgen {

void TrueGenConfig::validate(const AxiomSet& ax) const {
  if (depth_walk < 0) throw std::invalid_argument("depth_walk must be >= 0");
  if (instantiation_depth < 0) throw std::invalid_argument("instantiation_depth must be >= 0");
  if (retry_budget < 1) throw std::invalid_argument("retry budget must be >= 1");
  for (const auto& r : ax.rules()) {
    if (r.lhs.size() + r.rhs.size() > max_nodes) {
      throw std::invalid_argument("max_nodes " + std::to_string(max_nodes) + " is smaller than axiom " + r.id);
    }
  }
  oracle.validate();
}

RandomExprConfig TrueGenConfig::random_expr_config() const {
  RandomExprConfig rc;
  rc.max_depth = instantiation_depth;
  return rc;
}

GenStats& GenStats::operator+=(const GenStats& o) {
  retries += o.retries;
  unknown_regenerations += o.unknown_regenerations;
  oversize_aborts += o.oversize_aborts;
  rejected_steps += o.rejected_steps;
  rejected_true_mutants += o.rejected_true_mutants;
  filtered_mutants += o.filtered_mutants;
  truncated_walks += o.truncated_walks;
  return *this;
}

namespace {

Expr random_binding(const RewriteRule& rule, Var v, const RandomExprConfig& rc, Rng& rng) {
  return rule.positive_vars.contains(v) ? random_positive_expr(rc, rng) : random_expr(rc, rng);
}

}  // namespace

std::pair<Equation, Provenance> random_instance(const AxiomSet& ax, const TrueGenConfig& cfg, Rng& rng) {
  const auto rules = ax.generative_rules();
  if (rules.empty()) throw GenerationError("axiom set has no generative rules");
  const RewriteRule& rule = *rules[rng.index(rules.size())];
  const RandomExprConfig rc = cfg.random_expr_config();
  Provenance prov;
  prov.seed_axiom_id = rule.id;
  for (Var v : free_variables(rule.as_equation()).to_vector()) {
    prov.instantiation.bind(v, random_binding(rule, v, rc, rng));
  }
  return {instantiate_axiom(rule, prov.instantiation), std::move(prov)};
}

WalkStatus random_walk(Equation& eq, std::vector<RewriteStep>& trace, int steps, const AxiomSet& ax,
                       const TrueGenConfig& cfg, WalkGate gate, Rng& rng, GenStats& stats) {
  const RandomExprConfig rc = cfg.random_expr_config();
  std::optional<Equation> previous;
  for (int taken = 0; taken < steps; ++taken) {
    std::vector<RewriteStep> candidates = applicable_rewrites(eq, ax);
    bool accepted = false;
    while (!candidates.empty() && !accepted) {
      const std::size_t pick = rng.index(candidates.size());
      RewriteStep step = std::move(candidates[pick]);
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));

      const RewriteRule& rule = *ax.find(step.rule_id);
      const Expr& target = step.direction == Direction::Forward ? rule.rhs : rule.lhs;
      for (Var v : free_variables(target).to_vector()) {
        if (!step.substitution.binds(v)) step.substitution.bind(v, random_binding(rule, v, rc, rng));
      }
      Equation next = apply_rewrite(eq, step, rule);
      if (next == eq || (previous && next == *previous)) continue;
      if (next.size() > cfg.max_nodes) {
        ++stats.oversize_aborts;
        return WalkStatus::Oversize;
      }
      if (gate == WalkGate::RequireTrue && verify(next, cfg.oracle, rng).outcome != VerdictOutcome::True) {
        ++stats.rejected_steps;
        continue;
      }
      previous = eq;
      eq = std::move(next);
      trace.push_back(std::move(step));
      accepted = true;
    }
    if (!accepted) return WalkStatus::Exhausted;
  }
  return WalkStatus::Completed;
}

DatasetRecord generate_true(const AxiomSet& ax, const TrueGenConfig& cfg, Rng& rng, GenStats* stats) {
  GenStats local;
  GenStats& st = stats ? *stats : local;
  for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    if (attempt > 0) ++st.retries;
    auto [eq, prov] = random_instance(ax, cfg, rng);
    Verdict v = verify(eq, cfg.oracle, rng);
    if (v.outcome != VerdictOutcome::True) {
      if (v.outcome == VerdictOutcome::Unknown) ++st.unknown_regenerations;
      continue;
    }
    const WalkStatus ws = random_walk(eq, prov.trace, cfg.depth_walk, ax, cfg, WalkGate::RequireTrue, rng, st);
    if (ws == WalkStatus::Oversize) continue;
    if (ws == WalkStatus::Exhausted) {
      prov.walk_truncated = true;
      ++st.truncated_walks;
    }
    // Final verdict on a fresh set of samples.
    v = verify(eq, cfg.oracle, rng);
    if (v.outcome != VerdictOutcome::True) {
      if (v.outcome == VerdictOutcome::Unknown) ++st.unknown_regenerations;
      continue;
    }
    DatasetRecord rec;
    rec.equation = std::move(eq);
    rec.label = true;
    rec.provenance = std::move(prov);
    rec.verdict_at_generation = VerdictSummary::of(v);
    return rec;
  }
  throw GenerationError("true generation exhausted its retry budget of " + std::to_string(cfg.retry_budget));
}

DatasetRecord instance_record(const RewriteRule& rule, const Substitution& sigma, const OracleConfig& oracle,
                              Rng& rng) {
  DatasetRecord rec;
  rec.equation = instantiate_axiom(rule, sigma);
  rec.label = true;
  rec.provenance.seed_axiom_id = rule.id;
  rec.provenance.instantiation = sigma;
  rec.verdict_at_generation = VerdictSummary::of(verify(rec.equation, oracle, rng));
  return rec;
}

}  // namespace eqgen
