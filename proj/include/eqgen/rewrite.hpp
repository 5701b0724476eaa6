#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eqgen/expr.hpp"

namespace eqgen {

enum class RuleTag : std::uint8_t { Algebraic, Trigonometric, Augmented, PureIdentity };

std::string_view to_string(RuleTag t);
std::optional<RuleTag> parse_rule_tag(std::string_view s);

class TagSet {
 public:
  TagSet() = default;
  TagSet(std::initializer_list<RuleTag> tags) {
    for (auto t : tags) insert(t);
  }
  void insert(RuleTag t) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(t)); }
  bool contains(RuleTag t) const { return (bits_ >> static_cast<unsigned>(t)) & 1u; }
  friend bool operator==(const TagSet&, const TagSet&) = default;

 private:
  std::uint8_t bits_ = 0;
};

/// A bidirectional identity. All variables in lhs and rhs are pattern
/// variables. `positive_vars` restricts matching: each listed variable must
/// bind to a syntactically positive expression (see is_syntactically_positive).
struct RewriteRule {
  std::string id;
  Expr lhs;
  Expr rhs;
  TagSet tags;
  VarSet positive_vars;

  bool has_tag(RuleTag t) const { return tags.contains(t); }
  bool is_pure_identity() const { return lhs == rhs; }
  Equation as_equation() const { return {lhs, rhs}; }
  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

/// Ordered rule collection with unique ids.
class AxiomSet {
 public:
  AxiomSet() = default;
  explicit AxiomSet(std::string provenance) : provenance_(std::move(provenance)) {}

  /// Throws std::invalid_argument on a duplicate id.
  void add(RewriteRule rule);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const RewriteRule* find(std::string_view id) const;
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const std::string& provenance() const { return provenance_; }

  /// Rules usable for generation: everything except pure identities.
  std::vector<const RewriteRule*> generative_rules() const;

 private:
  std::vector<RewriteRule> rules_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string provenance_;
};

/// Bindings for x, y, z. Each variable is bound at most once.
class Substitution {
 public:
  const std::optional<Expr>& get(Var v) const { return bindings_[static_cast<std::size_t>(v)]; }
  bool binds(Var v) const { return get(v).has_value(); }
  void bind(Var v, Expr e) { bindings_[static_cast<std::size_t>(v)] = std::move(e); }
  bool empty() const;
  VarSet domain() const;
  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::array<std::optional<Expr>, kVarCount> bindings_{};
};

/// Nonlinear first-order matching: a variable occurring twice in `pattern`
/// must bind structurally equal subterms.
std::optional<Substitution> match_pattern(const Expr& pattern, const Expr& subject);

/// Extends `sigma` so that substitute(pattern, sigma) == subject. Leaves
/// `sigma` in an unspecified state on failure.
bool match_into(const Expr& pattern, const Expr& subject, Substitution& sigma);

/// Simultaneous replacement of every occurrence of each bound variable.
Expr substitute(const Expr& e, const Substitution& sigma);
Equation substitute(const Equation& eq, const Substitution& sigma);

/// Positive constants, exp/cosh/sech of anything, and sums, products,
/// quotients, square roots and powers built from positive operands.
bool is_syntactically_positive(const Expr& e);

/// Whether every positive-guarded variable of `rule` is bound in `sigma` to a
/// syntactically positive expression.
bool guards_hold(const RewriteRule& rule, const Substitution& sigma);

enum class Direction : std::uint8_t { Forward, Backward };  // lhs->rhs, rhs->lhs

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

struct RewriteStep {
  std::string rule_id;
  Direction direction = Direction::Forward;
  Side side = Side::Lhs;
  Path path;
  Substitution substitution;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

/// Same rule, side and path with the direction reversed.
RewriteStep inverse_of(const RewriteStep& step);

struct RewriteOptions {
  bool include_pure_identities = false;
};

/// All (side, path, rule, direction) steps whose source pattern matches, in
/// that lexicographic order (rules in AxiomSet order, Forward before
/// Backward). The substitution of each step holds the match bindings only.
std::vector<RewriteStep> applicable_rewrites(const Equation& eq, const AxiomSet& ax,
                                             const RewriteOptions& opts = {});

class StaleStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replaces the matched subterm with the instantiated opposite side. Pattern
/// variables bound in step.substitution but absent from the source side are
/// used for the target; unbound ones stay as object variables.
/// Throws StaleStep when the path is invalid, the source no longer matches
/// consistently with step.substitution, a guard fails, or the rule is unknown.
Equation apply_rewrite(const Equation& eq, const RewriteStep& step, const AxiomSet& ax);
Equation apply_rewrite(const Equation& eq, const RewriteStep& step, const RewriteRule& rule);

/// Equation(substitute(lhs, sigma), substitute(rhs, sigma)).
Equation instantiate_axiom(const RewriteRule& rule, const Substitution& sigma);

}  // namespace eqgen
