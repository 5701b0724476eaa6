#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqgen/axioms.hpp"
#include "eqgen/record.hpp"

namespace eqgen {

/// Shallow syntactic features that may separate generated true equations
/// from generated false ones.
struct FeatureVector {
  /// Transcendental nodes whose argument is itself a transcendental node.
  int composed_transcendental = 0;
  /// Some pow node has a transcendental base and an exponent that is not a
  /// ground integer.
  bool noninteger_power_of_transcendental = false;
  /// A distinctive axiom side occurs as an instance strictly below the root
  /// of either side.
  bool embedded_identity_fragment = false;
  int node_count = 0;
  int depth = 0;
  int constant_count = 0;

  static constexpr std::size_t kCount = 6;
  static constexpr std::array<std::string_view, kCount> kNames = {
      "composed_transcendental", "noninteger_power_of_transcendental", "embedded_identity_fragment",
      "node_count",              "depth",                              "constant_count"};

  std::array<double, kCount> values() const;
  /// composed_transcendental > 0 or noninteger_power_of_transcendental.
  bool has_implausible_pattern() const;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Axiom sides that count as identity fragments: at least three nodes and
/// not a linear skeleton of binary operators over variables (such as x + y,
/// which matches any sum).
bool is_distinctive_pattern(const Expr& pattern);

FeatureVector extract_features(const Equation& eq, const AxiomSet& ax);

struct FeatureStats {
  std::string_view name;
  double true_rate = 0.0;   // fraction of true records with value > 0
  double false_rate = 0.0;
  double true_mean = 0.0;
  double false_mean = 0.0;
  double threshold = 0.0;
  bool true_above = true;   // predicts true when value > threshold
  double train_accuracy = 0.0;
};

struct LeakageReport {
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  std::size_t train_size = 0;
  std::size_t eval_size = 0;
  std::vector<FeatureStats> features;
  double accuracy = 0.0;  // held-out accuracy of the majority-vote classifier
  double bound = 0.0;
  bool leaky = false;
  /// |flag rate among false records - flag rate among true records|, where the
  /// flag is has_implausible_pattern.
  double implausible_rate_gap = 0.0;

  std::string to_text() const;
  /// key=value lines.
  std::string to_key_values() const;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledFeatures {
  FeatureVector features;
  bool label = false;
};

/// Even-indexed records train and odd-indexed records evaluate. Each
/// feature gets the single threshold that maximizes train accuracy; the
/// classifier is their majority vote, ties going to the best single
/// feature. Features whose threshold does no better on train than the
/// larger class's share do not vote. Throws InsufficientData with fewer than 50 records per class.
LeakageReport leakage_report(std::span<const LabeledFeatures> data, double bound);
LeakageReport leakage_report(std::span<const DatasetRecord> records, const AxiomSet& ax, double bound);

}  // namespace eqgen
