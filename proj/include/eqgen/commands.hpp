#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqgen/audit.hpp"
#include "eqgen/axioms.hpp"
#include "eqgen/corruptor.hpp"
#include "eqgen/oracle.hpp"
#include "eqgen/record.hpp"
#include "eqgen/truegen.hpp"

namespace eqgen {

/// Process exit codes of the command-line front-end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitGate = 3,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateOptions {
  std::uint64_t seed = 1;
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  int depth_walk = 3;
  int valid_steps = 3;
  bool filter_artifacts = false;
  int instantiation_depth = 2;
  std::size_t max_nodes = 80;
  int max_retries = 20;
  OracleConfig oracle;
  unsigned jobs = 0;  // 0: hardware concurrency

  TrueGenConfig true_config() const;
  FalseGenConfig false_config() const;
};

/// Flat "key = value" text; '#' starts a comment. Keys mirror the CLI flags
/// without leading dashes (seed, true-count, false-count, epsilon, trials,
/// filter-artifacts, valid-steps, depth-walk, instantiation-depth, max-nodes,
/// max-retries, min-valid-samples, resample-limit, tolerance, jobs, out).
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies recognized keys; throws ConfigError on unknown keys or bad values.
void apply_config(const std::map<std::string, std::string>& kv, GenerateOptions& opts);

struct GenerateSummary {
  std::size_t true_records = 0;
  std::size_t false_records = 0;
  GenStats stats;

  std::string to_text() const;
};

/// Generates true records (ids t-NNNNNN) then false records (f-NNNNNN). Each
/// record's RNG stream is derived from (seed, label, index), so output is
/// independent of the worker count. Throws GenerationError when a record
/// exhausts its retries.
std::vector<DatasetRecord> generate_dataset(const AxiomSet& ax, const GenerateOptions& opts,
                                            GenerateSummary* summary = nullptr);

GenerateSummary write_dataset(const AxiomSet& ax, const GenerateOptions& opts, std::ostream& out);

struct VerifySummary {
  std::size_t lines = 0;
  std::size_t parse_errors = 0;
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  std::size_t unknown_count = 0;
  std::size_t labeled = 0;
  std::size_t agreements = 0;

  double agreement_rate() const;
  double unknown_rate() const;
  std::string to_text() const;
};

/// Each input line is either a dataset record (JSON) or a bare "(= lhs rhs)".
/// Writes one JSON verdict per line; parse errors are reported in place and
/// processing continues. Line i is verified with a stream derived from
/// (seed, i).
VerifySummary verify_stream(std::istream& in, std::ostream& out, const OracleConfig& cfg, std::uint64_t seed);

/// Reads dataset records; throws RecordFormatError with the line number.
std::vector<DatasetRecord> read_records(std::istream& in);

/// Summary and rejections; with `verbose`, one line per validated rule too.
std::string format_validation_report(const ValidationReport& report, const AxiomSet& admitted, bool verbose = false);

}  // namespace eqgen
