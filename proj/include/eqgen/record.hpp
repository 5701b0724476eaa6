#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqgen/expr.hpp"
#include "eqgen/oracle.hpp"
#include "eqgen/rewrite.hpp"

namespace eqgen {

enum class MutationKind : std::uint8_t { SymbolSwap, ConstantPerturb, SubtreeGraft, OperatorSwap };

inline constexpr MutationKind kMutationKinds[] = {MutationKind::SymbolSwap, MutationKind::ConstantPerturb,
                                                  MutationKind::SubtreeGraft, MutationKind::OperatorSwap};

std::string_view to_string(MutationKind k);
std::optional<MutationKind> parse_mutation_kind(std::string_view s);

/// One localized change: the subterm `before` at (side, path) becomes `after`.
struct Mutation {
  MutationKind kind = MutationKind::SymbolSwap;
  Side side = Side::Lhs;
  Path path;
  Expr before;
  Expr after;

  friend bool operator==(const Mutation&, const Mutation&) = default;
};

class MutationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replays a mutation. Throws MutationMismatch when the subterm at the path
/// is not `before`.
Equation apply_mutation(const Equation& eq, const Mutation& m);

struct VerdictSummary {
  VerdictOutcome outcome = VerdictOutcome::Unknown;
  int valid_samples = 0;
  double max_deviation = 0.0;
  int domain_errors = 0;
  int overflows = 0;

  static VerdictSummary of(const Verdict& v);
  friend bool operator==(const VerdictSummary&, const VerdictSummary&) = default;
};

/// How a record's equation was derived: an instantiated seed axiom, a rewrite
/// trace, and for false records one mutation inserted after
/// `mutation_index` trace steps.
struct Provenance {
  std::string seed_axiom_id;
  Substitution instantiation;
  std::vector<RewriteStep> trace;
  std::optional<Mutation> mutation;
  std::size_t mutation_index = 0;
  bool walk_truncated = false;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct DatasetRecord {
  std::string id;
  Equation equation;
  bool label = true;
  Provenance provenance;
  std::uint64_t seed = 0;
  VerdictSummary verdict_at_generation;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

class RecordFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single-line JSON with a fixed key order.
std::string to_jsonl(const DatasetRecord& r);
/// Throws RecordFormatError (or ParseError for malformed expressions).
DatasetRecord record_from_jsonl(std::string_view line);

/// Rebuilds the equation from provenance alone. Throws StaleStep,
/// MutationMismatch or RecordFormatError when the provenance is inconsistent.
Equation replay(const Provenance& p, const AxiomSet& ax);

}  // namespace eqgen
