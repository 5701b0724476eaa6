// eqgen: generate, verify, audit and axiom-check symbolic equation datasets.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "eqgen/commands.hpp"

using namespace eqgen;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output sink: a file when a path is given, otherwise stdout.
struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;

  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw std::runtime_error("cannot write " + path);
    os = file.get();
  }
};

struct Source {
  std::unique_ptr<std::ifstream> file;
  std::istream* is = &std::cin;

  explicit Source(const std::string& path) {
    if (path.empty() || path == "-") return;
    file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file) throw std::runtime_error("cannot open " + path);
    is = file.get();
  }
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate and check datasets of true and false symbolic equations"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a labeled JSONL dataset");
  std::string gen_config, gen_out;
  std::optional<std::uint64_t> gen_seed;
  std::optional<std::size_t> gen_true, gen_false;
  std::optional<double> gen_eps;
  std::optional<int> gen_trials, gen_valid_steps, gen_depth_walk;
  std::optional<unsigned> gen_jobs;
  bool gen_filter = false;
  gen->add_option("--config", gen_config, "Flat key = value config file")->check(CLI::ExistingFile);
  gen->add_option("--out", gen_out, "Output JSONL path (default stdout)");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--true-count", gen_true, "Number of true records");
  gen->add_option("--false-count", gen_false, "Number of false records");
  gen->add_option("--epsilon", gen_eps, "Oracle tolerance");
  gen->add_option("--trials", gen_trials, "Oracle sample points");
  gen->add_flag("--filter-artifacts", gen_filter, "Reject mutants that add implausible patterns");
  gen->add_option("--valid-steps", gen_valid_steps, "Sound rewrites around each mutation");
  gen->add_option("--depth-walk", gen_depth_walk, "Rewrite steps per true record");
  gen->add_option("--jobs", gen_jobs, "Worker threads (0 = all cores)");

  // verify
  auto* ver = app.add_subcommand("verify", "Verify equations or dataset records");
  std::string ver_in, ver_out;
  std::uint64_t ver_seed = 1;
  std::optional<double> ver_eps;
  std::optional<int> ver_trials;
  bool ver_absolute = false;
  ver->add_option("input", ver_in, "Input file (default stdin)");
  ver->add_option("--out", ver_out, "Per-line verdicts (default stdout)");
  ver->add_option("--seed", ver_seed, "Sampling seed");
  ver->add_option("--epsilon", ver_eps, "Oracle tolerance");
  ver->add_option("--trials", ver_trials, "Oracle sample points");
  ver->add_flag("--absolute", ver_absolute, "Absolute instead of relative tolerance");

  // audit
  auto* aud = app.add_subcommand("audit", "Leakage audit of a labeled dataset");
  std::string aud_in;
  double aud_bound = 0.6;
  bool aud_kv = false;
  aud->add_option("input", aud_in, "Dataset JSONL (default stdin)");
  aud->add_option("--bound", aud_bound, "Accuracy above which the dataset is flagged leaky");
  aud->add_flag("--key-values", aud_kv, "Machine-readable key=value output");

  // axioms-check
  auto* axc = app.add_subcommand("axioms-check", "Validate axiom files");
  std::vector<std::string> axc_paths;
  std::uint64_t axc_seed = LoadOptions{}.seed;
  bool axc_verbose = false;
  axc->add_option("paths", axc_paths, "Axiom files (default: the shipped axioms)")->check(CLI::ExistingFile);
  axc->add_option("--seed", axc_seed, "Validation seed");
  axc->add_flag("-v,--verbose", axc_verbose, "List every rule's validation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      GenerateOptions opts;
      std::string out_path = gen_out;
      try {
        if (!gen_config.empty()) {
          const auto kv = parse_config_text(slurp(gen_config));
          apply_config(kv, opts);
          if (auto it = kv.find("out"); it != kv.end() && out_path.empty()) out_path = it->second;
        }
        if (gen_seed) opts.seed = *gen_seed;
        if (gen_true) opts.true_count = *gen_true;
        if (gen_false) opts.false_count = *gen_false;
        if (gen_eps) opts.oracle.epsilon = *gen_eps;
        if (gen_trials) opts.oracle.trials = *gen_trials;
        if (gen_filter) opts.filter_artifacts = true;
        if (gen_valid_steps) opts.valid_steps = *gen_valid_steps;
        if (gen_depth_walk) opts.depth_walk = *gen_depth_walk;
        if (gen_jobs) opts.jobs = *gen_jobs;
        opts.false_config().validate(curated_axiom_set());
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
      }
      Sink sink(out_path);
      GenerateSummary summary;
      try {
        summary = write_dataset(curated_axiom_set(), opts, *sink.os);
      } catch (const GenerationError& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kExitGate;
      }
      std::cerr << summary.to_text();
      return kExitOk;
    }

    if (*ver) {
      OracleConfig cfg;
      if (ver_eps) cfg.epsilon = *ver_eps;
      if (ver_trials) cfg.trials = *ver_trials;
      if (ver_absolute) cfg.tolerance_mode = ToleranceMode::Absolute;
      try {
        cfg.validate();
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
      }
      Source src(ver_in);
      Sink sink(ver_out);
      const VerifySummary s = verify_stream(*src.is, *sink.os, cfg, ver_seed);
      std::cerr << s.to_text() << "\n";
      return s.parse_errors > 0 ? kExitData : kExitOk;
    }

    if (*aud) {
      Source src(aud_in);
      std::vector<DatasetRecord> records;
      try {
        records = read_records(*src.is);
      } catch (const RecordFormatError& e) {
        throw DataError(e.what());
      }
      LeakageReport rep;
      try {
        rep = leakage_report(records, curated_axiom_set(), aud_bound);
      } catch (const InsufficientData& e) {
        throw DataError(e.what());
      }
      std::cout << (aud_kv ? rep.to_key_values() : rep.to_text());
      return rep.leaky ? kExitGate : kExitOk;
    }

    if (*axc) {
      LoadOptions lo;
      lo.seed = axc_seed;
      std::pair<AxiomSet, ValidationReport> loaded;
      try {
        if (axc_paths.empty()) {
          loaded = load_axioms(shipped_axiom_sources(), lo);
        } else {
          std::vector<std::string> texts;
          for (const auto& p : axc_paths) texts.push_back(slurp(p));
          std::vector<AxiomSource> sources;
          for (std::size_t i = 0; i < axc_paths.size(); ++i) sources.push_back({axc_paths[i], texts[i]});
          loaded = load_axioms(sources, lo);
        }
      } catch (const AxiomParseError& e) {
        throw DataError(e.what());
      }
      std::cout << format_validation_report(loaded.second, loaded.first, axc_verbose);
      return kExitOk;
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
