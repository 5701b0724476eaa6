#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqgen/oracle.hpp"
#include "eqgen/rewrite.hpp"

namespace eqgen {

enum class RuleStatus { Sound, Unsound, Unverifiable };

std::string_view to_string(RuleStatus s);

struct RuleValidation {
  RuleStatus status = RuleStatus::Unverifiable;
  int samples = 0;  // valid samples (both sides finite)
  double max_deviation = 0.0;
  int lhs_only_defined = 0;
  int rhs_only_defined = 0;
  std::string detail;
};

/// Tolerance for admitting rules: 20 valid samples, relative eps 1e-9.
OracleConfig validation_config();

/// Sound iff the oracle returns True at `cfg`. Unsound if some sample
/// deviates, or if the two sides were never simultaneously defined while one
/// of them was. Unverifiable otherwise.
RuleValidation validate_axiom(const RewriteRule& rule, const OracleConfig& cfg, Rng& rng);

enum class RejectReason { Unsound, Unverifiable, Duplicate };

std::string_view to_string(RejectReason r);

struct Rejection {
  std::string rule_id;
  std::string source;
  int line = 0;
  std::string text;
  RejectReason reason = RejectReason::Unsound;
  std::string detail;
};

struct ValidationEntry {
  std::string rule_id;
  std::string source;
  int line = 0;
  RuleValidation validation;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;  // every non-duplicate rule, in file order
  std::vector<Rejection> rejections;
  std::vector<std::string> warnings;

  const Rejection* rejection_for(std::string_view rule_id) const;
};

class AxiomParseError : public std::runtime_error {
 public:
  AxiomParseError(std::string source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line) {}
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

struct AxiomSource {
  std::string name;  // used for default ids and messages
  std::string text;
};

struct LoadOptions {
  OracleConfig validation = validation_config();
  std::uint64_t seed = 0x5eed;
};

/// Parses and validates axiom files. Line format:
///   [<id>:] <lhs> == <rhs> [@tag ...]      # comment
/// Tags: algebraic, trigonometric, augmented, pure-identity, positive:<var>.
/// Rules without an explicit id get "<source>:<ordinal>". Duplicates (same
/// pair of sides in either orientation) are reported and admitted once;
/// rules that are not Sound are reported and never admitted.
/// Throws AxiomParseError on malformed lines.
std::pair<AxiomSet, ValidationReport> load_axioms(std::span<const AxiomSource> sources,
                                                  const LoadOptions& opts = {});
std::pair<AxiomSet, ValidationReport> load_axioms(std::string_view text, std::string_view source_name = "axioms",
                                                  const LoadOptions& opts = {});

/// One line per rule in the load_axioms format, explicit ids and tags.
std::string serialize(const AxiomSet& ax);
std::string serialize(const RewriteRule& r);

/// The shipped axiom files, embedded at build time.
std::span<const AxiomSource> shipped_axiom_sources();

/// Algebraic listing minus rejects, the sound trigonometric subset, and the
/// distributive and exponent-law augmentations. Built once per process.
const AxiomSet& curated_axiom_set();
const ValidationReport& curated_validation_report();

}  // namespace eqgen
