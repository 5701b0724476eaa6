#include "eqgen/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace eqgen {

using json = nlohmann::ordered_json;

TrueGenConfig GenerateOptions::true_config() const {
  TrueGenConfig c;
  c.depth_walk = depth_walk;
  c.instantiation_depth = instantiation_depth;
  c.max_nodes = max_nodes;
  c.seed = seed;
  c.retry_budget = max_retries;
  c.oracle = oracle;
  return c;
}

FalseGenConfig GenerateOptions::false_config() const {
  FalseGenConfig c;
  c.valid_steps = valid_steps;
  c.filter_artifacts = filter_artifacts;
  c.max_retries = max_retries;
  c.base = true_config();
  return c;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("bad value '" + value + "' for " + key);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad value '" + value + "' for " + key);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad value '" + value + "' for " + key);
}

}  // namespace

void apply_config(const std::map<std::string, std::string>& kv, GenerateOptions& o) {
  for (const auto& [k, v] : kv) {
    if (k == "seed") o.seed = parse_number<std::uint64_t>(k, v);
    else if (k == "true-count") o.true_count = parse_number<std::size_t>(k, v);
    else if (k == "false-count") o.false_count = parse_number<std::size_t>(k, v);
    else if (k == "depth-walk") o.depth_walk = parse_number<int>(k, v);
    else if (k == "valid-steps") o.valid_steps = parse_number<int>(k, v);
    else if (k == "filter-artifacts") o.filter_artifacts = parse_bool(k, v);
    else if (k == "instantiation-depth") o.instantiation_depth = parse_number<int>(k, v);
    else if (k == "max-nodes") o.max_nodes = parse_number<std::size_t>(k, v);
    else if (k == "max-retries") o.max_retries = parse_number<int>(k, v);
    else if (k == "epsilon") o.oracle.epsilon = parse_double(k, v);
    else if (k == "trials") o.oracle.trials = parse_number<int>(k, v);
    else if (k == "min-valid-samples") o.oracle.min_valid_samples = parse_number<int>(k, v);
    else if (k == "resample-limit") o.oracle.resample_limit = parse_number<int>(k, v);
    else if (k == "tolerance") {
      if (v == "absolute") o.oracle.tolerance_mode = ToleranceMode::Absolute;
      else if (v == "relative") o.oracle.tolerance_mode = ToleranceMode::RelativeWithFloor;
      else throw ConfigError("tolerance must be 'absolute' or 'relative'");
    } else if (k == "jobs") o.jobs = parse_number<unsigned>(k, v);
    else if (k == "out") continue;  // consumed by the front-end
    else throw ConfigError("unknown config key '" + k + "'");
  }
}

std::string GenerateSummary::to_text() const {
  std::ostringstream os;
  os << "generated " << true_records << " true and " << false_records << " false records\n"
     << "  record retries:          " << stats.retries << "\n"
     << "  unknown regenerations:   " << stats.unknown_regenerations << "\n"
     << "  oversize aborts:         " << stats.oversize_aborts << "\n"
     << "  rejected walk steps:     " << stats.rejected_steps << "\n"
     << "  rejected true mutants:   " << stats.rejected_true_mutants << "\n"
     << "  filtered mutants:        " << stats.filtered_mutants << "\n"
     << "  truncated walks:         " << stats.truncated_walks << "\n";
  return os.str();
}

namespace {

std::string record_id(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c-%06zu", prefix, i);
  return buf;
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<DatasetRecord> generate_dataset(const AxiomSet& ax, const GenerateOptions& opts,
                                            GenerateSummary* summary) {
  const TrueGenConfig tcfg = opts.true_config();
  const FalseGenConfig fcfg = opts.false_config();
  fcfg.validate(ax);

  const std::size_t total = opts.true_count + opts.false_count;
  std::vector<DatasetRecord> records(total);
  std::vector<GenStats> stats(total);
  parallel_for(total, opts.jobs, [&](std::size_t i) {
    const bool is_true = i < opts.true_count;
    const std::size_t k = is_true ? i : i - opts.true_count;
    const std::uint64_t seed = derive_seed(opts.seed, stream_id(is_true ? "true" : "false"), k);
    Rng rng(seed);
    DatasetRecord rec = is_true ? generate_true(ax, tcfg, rng, &stats[i]) : generate_false(ax, fcfg, rng, &stats[i]);
    rec.id = record_id(is_true ? 't' : 'f', k);
    rec.seed = seed;
    records[i] = std::move(rec);
  });
  if (summary) {
    summary->true_records = opts.true_count;
    summary->false_records = opts.false_count;
    for (const auto& s : stats) summary->stats += s;
  }
  return records;
}

GenerateSummary write_dataset(const AxiomSet& ax, const GenerateOptions& opts, std::ostream& out) {
  GenerateSummary summary;
  for (const auto& r : generate_dataset(ax, opts, &summary)) out << to_jsonl(r) << '\n';
  return summary;
}

double VerifySummary::agreement_rate() const {
  return labeled == 0 ? 0.0 : static_cast<double>(agreements) / static_cast<double>(labeled);
}

double VerifySummary::unknown_rate() const {
  const std::size_t verified = true_count + false_count + unknown_count;
  return verified == 0 ? 0.0 : static_cast<double>(unknown_count) / static_cast<double>(verified);
}

std::string VerifySummary::to_text() const {
  std::ostringstream os;
  os << "lines=" << lines << " parse_errors=" << parse_errors << " True=" << true_count << " False=" << false_count
     << " Unknown=" << unknown_count;
  if (labeled > 0) {
    os.precision(6);
    os << " labeled=" << labeled << " agreement=" << agreement_rate();
  }
  return os.str();
}

VerifySummary verify_stream(std::istream& in, std::ostream& out, const OracleConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  VerifySummary sum;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++sum.lines;
    json result{{"line", line_no}};
    try {
      std::optional<bool> label;
      Equation eq;
      const auto first = line.find_first_not_of(" \t");
      if (line[first] == '{') {
        const DatasetRecord r = record_from_jsonl(line);
        result["id"] = r.id;
        eq = r.equation;
        label = r.label;
      } else {
        eq = parse_equation(line);
      }
      Rng rng(derive_seed(seed, stream_id("verify"), line_no));
      const Verdict v = verify(eq, cfg, rng);
      switch (v.outcome) {
        case VerdictOutcome::True: ++sum.true_count; break;
        case VerdictOutcome::False: ++sum.false_count; break;
        case VerdictOutcome::Unknown: ++sum.unknown_count; break;
      }
      result["equation"] = render(eq);
      result["verdict"] = std::string(to_string(v.outcome));
      result["valid_samples"] = v.valid_samples();
      result["max_deviation"] = v.max_deviation();
      result["domain_errors"] = v.domain_errors;
      result["overflows"] = v.overflows;
      if (label) {
        const bool agree = (v.outcome == VerdictOutcome::True && *label) ||
                           (v.outcome == VerdictOutcome::False && !*label);
        ++sum.labeled;
        sum.agreements += agree;
        result["label"] = *label;
        result["agree"] = agree;
      }
    } catch (const std::exception& e) {
      ++sum.parse_errors;
      result["error"] = e.what();
    }
    out << result.dump() << '\n';
  }
  return sum;
}

std::vector<DatasetRecord> read_records(std::istream& in) {
  std::vector<DatasetRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_jsonl(line));
    } catch (const std::exception& e) {
      throw RecordFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string format_validation_report(const ValidationReport& report, const AxiomSet& admitted, bool verbose) {
  std::ostringstream os;
  os << "admitted " << admitted.size() << " rules from " << admitted.provenance() << "; rejected "
     << report.rejections.size() << "\n";
  for (const auto& r : report.rejections) {
    os << "REJECT " << r.rule_id << " (" << r.source << ":" << r.line << ") " << to_string(r.reason) << ": "
       << r.detail << "\n";
  }
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  if (!verbose) return os.str();
  os.precision(3);
  for (const auto& e : report.entries) {
    os << "rule " << e.rule_id << " " << to_string(e.validation.status) << " samples=" << e.validation.samples
       << " max_dev=" << e.validation.max_deviation << "\n";
  }
  return os.str();
}

}  // namespace eqgen
