#include "eqgen/rewrite.hpp"

#include <algorithm>

namespace eqgen {

std::string_view to_string(RuleTag t) {
  switch (t) {
    case RuleTag::Algebraic: return "algebraic";
    case RuleTag::Trigonometric: return "trigonometric";
    case RuleTag::Augmented: return "augmented";
    case RuleTag::PureIdentity: return "pure-identity";
  }
  return "?";
}

std::optional<RuleTag> parse_rule_tag(std::string_view s) {
  for (auto t : {RuleTag::Algebraic, RuleTag::Trigonometric, RuleTag::Augmented, RuleTag::PureIdentity}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

void AxiomSet::add(RewriteRule rule) {
  if (index_.contains(rule.id)) throw std::invalid_argument("duplicate rule id '" + rule.id + "'");
  index_.emplace(rule.id, rules_.size());
  rules_.push_back(std::move(rule));
}

const RewriteRule* AxiomSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &rules_[it->second];
}

std::vector<const RewriteRule*> AxiomSet::generative_rules() const {
  std::vector<const RewriteRule*> out;
  for (const auto& r : rules_) {
    if (!r.has_tag(RuleTag::PureIdentity) && !r.is_pure_identity()) out.push_back(&r);
  }
  return out;
}

bool Substitution::empty() const {
  return std::none_of(bindings_.begin(), bindings_.end(), [](const auto& b) { return b.has_value(); });
}

VarSet Substitution::domain() const {
  VarSet vs;
  for (Var v : kAllVars) {
    if (binds(v)) vs.insert(v);
  }
  return vs;
}

bool match_into(const Expr& pattern, const Expr& subject, Substitution& sigma) {
  const Symbol& ps = pattern.symbol();
  if (ps.is_variable()) {
    const auto& bound = sigma.get(ps.var());
    if (bound) return *bound == subject;
    sigma.bind(ps.var(), subject);
    return true;
  }
  if (!(ps == subject.symbol())) return false;
  const auto pc = pattern.children();
  const auto sc = subject.children();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (!match_into(pc[i], sc[i], sigma)) return false;
  }
  return true;
}

std::optional<Substitution> match_pattern(const Expr& pattern, const Expr& subject) {
  Substitution sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

Expr substitute(const Expr& e, const Substitution& sigma) {
  const Symbol& s = e.symbol();
  if (s.is_variable()) {
    const auto& bound = sigma.get(s.var());
    return bound ? *bound : e;
  }
  if (e.is_leaf()) return e;
  std::vector<Expr> children;
  children.reserve(e.children().size());
  bool changed = false;
  for (const auto& c : e.children()) {
    children.push_back(substitute(c, sigma));
    changed = changed || !(children.back() == c);
  }
  return changed ? Expr(s, std::move(children)) : e;
}

Equation substitute(const Equation& eq, const Substitution& sigma) {
  return {substitute(eq.lhs, sigma), substitute(eq.rhs, sigma)};
}

bool is_syntactically_positive(const Expr& e) {
  const Symbol& s = e.symbol();
  if (s.is_constant()) return s.constant().value() > 0.0;
  if (s.is_variable()) return false;
  switch (s.op()) {
    case Op::Exp:
    case Op::Cosh:
    case Op::Sech:
      return true;
    case Op::Add:
    case Op::Mul:
    case Op::Div:
      return is_syntactically_positive(e.child(0)) && is_syntactically_positive(e.child(1));
    case Op::Pow:
    case Op::Sqrt:
      return is_syntactically_positive(e.child(0));
    default:
      return false;
  }
}

bool guards_hold(const RewriteRule& rule, const Substitution& sigma) {
  for (Var v : rule.positive_vars.to_vector()) {
    const auto& b = sigma.get(v);
    if (!b || !is_syntactically_positive(*b)) return false;
  }
  return true;
}

std::string_view to_string(Direction d) { return d == Direction::Forward ? "lhs->rhs" : "rhs->lhs"; }

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "lhs->rhs") return Direction::Forward;
  if (s == "rhs->lhs") return Direction::Backward;
  return std::nullopt;
}

RewriteStep inverse_of(const RewriteStep& step) {
  RewriteStep inv = step;
  inv.direction = step.direction == Direction::Forward ? Direction::Backward : Direction::Forward;
  return inv;
}

namespace {

const Expr& source_of(const RewriteRule& r, Direction d) { return d == Direction::Forward ? r.lhs : r.rhs; }
const Expr& target_of(const RewriteRule& r, Direction d) { return d == Direction::Forward ? r.rhs : r.lhs; }

}  // namespace

std::vector<RewriteStep> applicable_rewrites(const Equation& eq, const AxiomSet& ax, const RewriteOptions& opts) {
  std::vector<RewriteStep> out;
  for (Side side : kSides) {
    for (const auto& pos : positions(eq.side(side))) {
      for (const auto& rule : ax.rules()) {
        const bool pure = rule.has_tag(RuleTag::PureIdentity) || rule.is_pure_identity();
        if (pure && !opts.include_pure_identities) continue;
        for (Direction dir : {Direction::Forward, Direction::Backward}) {
          auto sigma = match_pattern(source_of(rule, dir), pos.expr);
          if (!sigma) continue;
          // Guards on variables that only occur in the target are checked once
          // the caller binds them.
          bool guarded_ok = true;
          for (Var v : rule.positive_vars.to_vector()) {
            const auto& b = sigma->get(v);
            if (b && !is_syntactically_positive(*b)) guarded_ok = false;
          }
          if (!guarded_ok) continue;
          out.push_back({rule.id, dir, side, pos.path, std::move(*sigma)});
        }
      }
    }
  }
  return out;
}

Equation apply_rewrite(const Equation& eq, const RewriteStep& step, const RewriteRule& rule) {
  if (rule.id != step.rule_id) throw StaleStep("step names rule '" + step.rule_id + "' but got '" + rule.id + "'");
  const Expr& side = eq.side(step.side);
  if (!is_valid_path(side, step.path)) {
    throw StaleStep("path " + to_string(step.path) + " invalid on " + std::string(side_name(step.side)));
  }
  Substitution sigma = step.substitution;
  if (!match_into(source_of(rule, step.direction), subterm_at(side, step.path), sigma)) {
    throw StaleStep("rule '" + rule.id + "' (" + std::string(to_string(step.direction)) + ") no longer matches at " +
                    std::string(side_name(step.side)) + to_string(step.path));
  }
  if (!guards_hold(rule, sigma)) {
    throw StaleStep("rule '" + rule.id + "' guard not satisfied at " + to_string(step.path));
  }
  Expr replaced = replace_at(side, step.path, substitute(target_of(rule, step.direction), sigma));
  return eq.with_side(step.side, std::move(replaced));
}

Equation apply_rewrite(const Equation& eq, const RewriteStep& step, const AxiomSet& ax) {
  const RewriteRule* rule = ax.find(step.rule_id);
  if (!rule) throw StaleStep("unknown rule '" + step.rule_id + "'");
  return apply_rewrite(eq, step, *rule);
}

Equation instantiate_axiom(const RewriteRule& rule, const Substitution& sigma) {
  return {substitute(rule.lhs, sigma), substitute(rule.rhs, sigma)};
}

}  // namespace eqgen
