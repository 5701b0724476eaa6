#include "eqgen/corruptor.hpp"

#include <algorithm>
#include <array>

#include "eqgen/audit.hpp"

namespace eqgen {

void FalseGenConfig::validate(const AxiomSet& ax) const {
  if (valid_steps < 0) throw std::invalid_argument("valid_steps must be >= 0");
  if (max_retries < 1) throw std::invalid_argument("max_retries must be >= 1");
  base.validate(ax);
}

namespace {

const std::array<Constant, 9>& ordered_constants() {
  static const std::array<Constant, 9> cs = {
      Constant::integer(-1), Constant::integer(0), Constant::half(),      Constant::integer(1), Constant::integer(2),
      Constant::integer(3),  Constant::pi(),       Constant::integer(4), Constant::integer(10)};
  return cs;
}

struct Site {
  Side side;
  Path path;
  Expr expr;
};

std::vector<Site> all_sites(const Equation& eq) {
  std::vector<Site> out;
  for (Side s : kSides) {
    for (auto& p : positions(eq.side(s))) out.push_back({s, std::move(p.path), std::move(p.expr)});
  }
  return out;
}

bool same_children(const Expr& a, const Expr& b) {
  const auto ca = a.children();
  const auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

std::vector<Op> family_alternatives(Op op) {
  std::vector<Op> out;
  for (const auto& info : all_ops()) {
    if (info.op != op && info.family == op_info(op).family && info.arity == op_info(op).arity) out.push_back(info.op);
  }
  return out;
}

std::vector<Symbol> role_alternatives(const Symbol& s) {
  std::vector<Symbol> out;
  switch (s.kind()) {
    case SymbolKind::Constant:
      for (const auto& c : ordered_constants()) {
        if (!(c == s.constant())) out.emplace_back(c);
      }
      break;
    case SymbolKind::Variable:
      for (Var v : kAllVars) {
        if (v != s.var()) out.emplace_back(v);
      }
      break;
    case SymbolKind::Unary:
      for (Op op : unary_ops()) {
        if (op != s.op()) out.emplace_back(op);
      }
      break;
    case SymbolKind::Binary:
      for (Op op : binary_ops()) {
        if (op != s.op()) out.emplace_back(op);
      }
      break;
  }
  return out;
}

bool has_site(const Expr& e, MutationKind kind) {
  switch (kind) {
    case MutationKind::SymbolSwap:
    case MutationKind::SubtreeGraft:
      return true;
    case MutationKind::ConstantPerturb:
      return e.symbol().is_constant();
    case MutationKind::OperatorSwap:
      return e.symbol().is_op() && !family_alternatives(e.symbol().op()).empty();
  }
  return false;
}

}  // namespace

std::vector<Constant> adjacent_constants(const Constant& c) {
  if (c.kind() == Constant::Kind::Decimal) {
    std::vector<Constant> out;
    if (c.raw() > -314) out.push_back(Constant::decimal(c.raw() - 1));
    if (c.raw() < 314) out.push_back(Constant::decimal(c.raw() + 1));
    return out;
  }
  const auto& cs = ordered_constants();
  const auto it = std::find(cs.begin(), cs.end(), c);
  std::vector<Constant> out;
  if (it != cs.begin()) out.push_back(*(it - 1));
  if (it + 1 != cs.end()) out.push_back(*(it + 1));
  return out;
}

bool is_legal_mutation(const Equation& eq, const Mutation& m) {
  const Expr& side = eq.side(m.side);
  if (!is_valid_path(side, m.path) || !(subterm_at(side, m.path) == m.before) || m.before == m.after) return false;
  const Symbol& b = m.before.symbol();
  const Symbol& a = m.after.symbol();
  switch (m.kind) {
    case MutationKind::SymbolSwap:
      return a.kind() == b.kind() && !(a == b) && same_children(m.before, m.after);
    case MutationKind::ConstantPerturb: {
      if (!b.is_constant() || !a.is_constant()) return false;
      const auto adj = adjacent_constants(b.constant());
      return std::find(adj.begin(), adj.end(), a.constant()) != adj.end();
    }
    case MutationKind::SubtreeGraft:
      return m.after.depth() <= 2;
    case MutationKind::OperatorSwap: {
      if (!b.is_op() || !a.is_op() || !same_children(m.before, m.after)) return false;
      const auto alts = family_alternatives(b.op());
      return std::find(alts.begin(), alts.end(), a.op()) != alts.end();
    }
  }
  return false;
}

std::pair<Equation, Mutation> mutate(const Equation& eq, MutationKind kind, const RandomExprConfig& graft, Rng& rng) {
  std::vector<Site> sites = all_sites(eq);
  std::erase_if(sites, [&](const Site& s) { return !has_site(s.expr, kind); });
  if (sites.empty()) throw NoLegalSite("no legal site for " + std::string(to_string(kind)) + " in " + render(eq));
  Site site = sites[rng.index(sites.size())];

  Mutation m{kind, site.side, site.path, site.expr, site.expr};
  const auto children = site.expr.children();
  const std::vector<Expr> kids(children.begin(), children.end());
  switch (kind) {
    case MutationKind::SymbolSwap: {
      const auto alts = role_alternatives(site.expr.symbol());
      m.after = Expr(alts[rng.index(alts.size())], kids);
      break;
    }
    case MutationKind::ConstantPerturb: {
      const auto adj = adjacent_constants(site.expr.symbol().constant());
      m.after = Expr::constant(adj[rng.index(adj.size())]);
      break;
    }
    case MutationKind::SubtreeGraft: {
      RandomExprConfig rc = graft;
      rc.max_depth = std::min(rc.max_depth, 2);
      do {
        m.after = random_expr(rc, rng);
      } while (m.after == m.before);
      break;
    }
    case MutationKind::OperatorSwap: {
      const auto alts = family_alternatives(site.expr.symbol().op());
      m.after = Expr(Symbol(alts[rng.index(alts.size())]), kids);
      break;
    }
  }
  Equation out = apply_mutation(eq, m);
  return {std::move(out), std::move(m)};
}

DatasetRecord generate_false(const AxiomSet& ax, const FalseGenConfig& cfg, Rng& rng, GenStats* stats) {
  GenStats local;
  GenStats& st = stats ? *stats : local;
  const TrueGenConfig& base = cfg.base;
  const RandomExprConfig graft = base.random_expr_config();

  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    if (attempt > 0) ++st.retries;
    auto [eq, prov] = random_instance(ax, base, rng);
    const Verdict seed_verdict = verify(eq, base.oracle, rng);
    if (seed_verdict.outcome != VerdictOutcome::True) {
      if (seed_verdict.outcome == VerdictOutcome::Unknown) ++st.unknown_regenerations;
      continue;
    }

    const int before_steps = static_cast<int>(rng.index(static_cast<std::size_t>(cfg.valid_steps) + 1));
    const int after_steps = cfg.valid_steps - before_steps;
    WalkStatus ws = random_walk(eq, prov.trace, before_steps, ax, base, WalkGate::RequireTrue, rng, st);
    if (ws == WalkStatus::Oversize) continue;
    bool truncated = ws == WalkStatus::Exhausted;

    // Kinds in random order; the first with a legal site is used.
    std::array<MutationKind, 4> kinds = {MutationKind::SymbolSwap, MutationKind::ConstantPerturb,
                                         MutationKind::SubtreeGraft, MutationKind::OperatorSwap};
    for (std::size_t i = kinds.size() - 1; i > 0; --i) std::swap(kinds[i], kinds[rng.index(i + 1)]);
    std::optional<std::pair<Equation, Mutation>> mutated;
    for (MutationKind k : kinds) {
      try {
        mutated = mutate(eq, k, graft, rng);
        break;
      } catch (const NoLegalSite&) {
      }
    }
    if (!mutated) continue;
    if (cfg.filter_artifacts) {
      const FeatureVector pre = extract_features(eq, ax);
      const FeatureVector post = extract_features(mutated->first, ax);
      if (post.composed_transcendental > pre.composed_transcendental ||
          (post.noninteger_power_of_transcendental && !pre.noninteger_power_of_transcendental)) {
        ++st.filtered_mutants;
        continue;
      }
    }
    prov.mutation_index = prov.trace.size();
    prov.mutation = std::move(mutated->second);
    eq = std::move(mutated->first);
    if (eq.size() > base.max_nodes) {
      ++st.oversize_aborts;
      continue;
    }

    ws = random_walk(eq, prov.trace, after_steps, ax, base, WalkGate::None, rng, st);
    if (ws == WalkStatus::Oversize) continue;
    truncated = truncated || ws == WalkStatus::Exhausted;

    const Verdict v = verify(eq, base.oracle, rng);
    if (v.outcome != VerdictOutcome::False) {
      if (v.outcome == VerdictOutcome::True) ++st.rejected_true_mutants;
      else ++st.unknown_regenerations;
      continue;
    }
    if (truncated) ++st.truncated_walks;
    prov.walk_truncated = truncated;
    DatasetRecord rec;
    rec.equation = std::move(eq);
    rec.label = false;
    rec.provenance = std::move(prov);
    rec.verdict_at_generation = VerdictSummary::of(v);
    return rec;
  }
  throw GenerationError("false generation exhausted its retry budget of " + std::to_string(cfg.max_retries));
}

}  // namespace eqgen
