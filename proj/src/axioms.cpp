#include "eqgen/axioms.hpp"

#include <algorithm>
#include <sstream>

namespace eqgen {

std::string_view to_string(RuleStatus s) {
  switch (s) {
    case RuleStatus::Sound: return "sound";
    case RuleStatus::Unsound: return "unsound";
    case RuleStatus::Unverifiable: return "unverifiable";
  }
  return "?";
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::Unsound: return "unsound";
    case RejectReason::Unverifiable: return "unverifiable";
    case RejectReason::Duplicate: return "duplicate";
  }
  return "?";
}

const Rejection* ValidationReport::rejection_for(std::string_view rule_id) const {
  for (const auto& r : rejections) {
    if (r.rule_id == rule_id) return &r;
  }
  return nullptr;
}

OracleConfig validation_config() {
  OracleConfig cfg;
  cfg.epsilon = 1e-9;
  cfg.trials = 20;
  cfg.min_valid_samples = 20;
  cfg.resample_limit = 16;
  cfg.tolerance_mode = ToleranceMode::RelativeWithFloor;
  return cfg;
}

RuleValidation validate_axiom(const RewriteRule& rule, const OracleConfig& cfg, Rng& rng) {
  const Equation eq = rule.as_equation();
  const Verdict v = verify(eq, cfg, rng);
  RuleValidation out;
  out.samples = v.valid_samples();
  out.max_deviation = v.max_deviation();
  if (v.outcome == VerdictOutcome::True) {
    out.status = RuleStatus::Sound;
    return out;
  }
  if (v.outcome == VerdictOutcome::False) {
    const Sample& s = v.evidence.back();
    out.status = RuleStatus::Unsound;
    std::ostringstream msg;
    msg.precision(6);
    msg << "sides differ: lhs=" << s.lhs << " rhs=" << s.rhs << " deviation=" << s.deviation;
    out.detail = msg.str();
    return out;
  }

  // Not enough jointly defined samples: probe where each side is defined.
  const VarSet vars = free_variables(eq);
  const int probes = vars.empty() ? 1 : cfg.trials * cfg.resample_limit;
  int both = 0;
  for (int i = 0; i < probes; ++i) {
    const Env env = sample_env(vars, cfg, rng);
    const bool l = evaluate(eq.lhs, env).is_finite();
    const bool r = evaluate(eq.rhs, env).is_finite();
    both += l && r;
    out.lhs_only_defined += l && !r;
    out.rhs_only_defined += r && !l;
  }
  if (both == 0 && out.lhs_only_defined + out.rhs_only_defined > 0) {
    out.status = RuleStatus::Unsound;
    out.detail = "sides never jointly defined (lhs alone " + std::to_string(out.lhs_only_defined) + ", rhs alone " +
                 std::to_string(out.rhs_only_defined) + " of " + std::to_string(probes) + " probes)";
  } else {
    out.status = RuleStatus::Unverifiable;
    out.detail = "only " + std::to_string(out.samples) + " valid samples";
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct ParsedLine {
  std::string id;
  RewriteRule rule;
  std::string text;
};

ParsedLine parse_rule_line(std::string_view line, const std::string& source, int line_no, int ordinal,
                           std::vector<std::string>& warnings) {
  ParsedLine out;
  out.text = std::string(line);
  std::string_view rest = line;

  // Leading "<id>:"
  const auto first_space = rest.find_first_of(" \t");
  const std::string_view head = rest.substr(0, first_space);
  if (!head.empty() && head.back() == ':' && head.front() != '(') {
    out.rule.id = std::string(head.substr(0, head.size() - 1));
    if (out.rule.id.empty()) throw AxiomParseError(source, line_no, "empty rule id");
    rest = first_space == std::string_view::npos ? std::string_view{} : trim(rest.substr(first_space));
  } else {
    out.rule.id = source + ":" + std::to_string(ordinal);
  }

  // Trailing "@tag" tokens.
  while (true) {
    const auto sp = rest.find_last_of(" \t");
    const std::string_view last = sp == std::string_view::npos ? rest : rest.substr(sp + 1);
    if (last.empty() || last.front() != '@') break;
    const std::string_view tag = last.substr(1);
    if (tag.starts_with("positive:")) {
      const std::string_view var = tag.substr(9);
      if (var == "x") out.rule.positive_vars.insert(Var::X);
      else if (var == "y") out.rule.positive_vars.insert(Var::Y);
      else if (var == "z") out.rule.positive_vars.insert(Var::Z);
      else throw AxiomParseError(source, line_no, "bad guard variable '" + std::string(var) + "'");
    } else if (auto t = parse_rule_tag(tag)) {
      out.rule.tags.insert(*t);
    } else {
      throw AxiomParseError(source, line_no, "unknown tag '@" + std::string(tag) + "'");
    }
    rest = sp == std::string_view::npos ? std::string_view{} : trim(rest.substr(0, sp));
  }

  const auto eq = rest.find("==");
  if (eq == std::string_view::npos) throw AxiomParseError(source, line_no, "missing '=='");
  if (rest.find("==", eq + 2) != std::string_view::npos) throw AxiomParseError(source, line_no, "more than one '=='");
  try {
    std::vector<std::string> w;
    out.rule.lhs = parse_expr(trim(rest.substr(0, eq)), &w);
    out.rule.rhs = parse_expr(trim(rest.substr(eq + 2)), &w);
    for (auto& msg : w) warnings.push_back(source + ":" + std::to_string(line_no) + ": " + msg);
  } catch (const ParseError& e) {
    throw AxiomParseError(source, line_no, e.what());
  }
  if (out.rule.is_pure_identity()) out.rule.tags.insert(RuleTag::PureIdentity);
  return out;
}

bool same_rule(const RewriteRule& a, const RewriteRule& b) {
  return (a.lhs == b.lhs && a.rhs == b.rhs) || (a.lhs == b.rhs && a.rhs == b.lhs);
}

}  // namespace

std::pair<AxiomSet, ValidationReport> load_axioms(std::span<const AxiomSource> sources, const LoadOptions& opts) {
  opts.validation.validate();
  std::string provenance;
  for (const auto& s : sources) provenance += (provenance.empty() ? "" : ",") + s.name;
  AxiomSet set(provenance);
  ValidationReport report;

  struct Seen {
    RewriteRule rule;
    std::string id;
  };
  std::vector<Seen> seen;
  std::vector<std::string> ids;

  for (const auto& source : sources) {
    std::istringstream in(source.text);
    std::string raw;
    int line_no = 0;
    int ordinal = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view line = raw;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      ++ordinal;
      ParsedLine parsed = parse_rule_line(line, source.name, line_no, ordinal, report.warnings);
      RewriteRule& rule = parsed.rule;
      if (std::find(ids.begin(), ids.end(), rule.id) != ids.end()) {
        throw AxiomParseError(source.name, line_no, "duplicate rule id '" + rule.id + "'");
      }
      ids.push_back(rule.id);

      auto dup = std::find_if(seen.begin(), seen.end(), [&](const Seen& s) { return same_rule(s.rule, rule); });
      if (dup != seen.end()) {
        report.rejections.push_back({rule.id, source.name, line_no, parsed.text, RejectReason::Duplicate,
                                     "repeats rule '" + dup->id + "'"});
        continue;
      }
      seen.push_back({rule, rule.id});

      Rng rng(derive_seed(opts.seed, stream_id(rule.id)));
      RuleValidation v = validate_axiom(rule, opts.validation, rng);
      report.entries.push_back({rule.id, source.name, line_no, v});
      if (v.status == RuleStatus::Sound) {
        set.add(std::move(rule));
      } else {
        const auto reason = v.status == RuleStatus::Unsound ? RejectReason::Unsound : RejectReason::Unverifiable;
        report.rejections.push_back({rule.id, source.name, line_no, parsed.text, reason, v.detail});
      }
    }
  }
  return {std::move(set), std::move(report)};
}

std::pair<AxiomSet, ValidationReport> load_axioms(std::string_view text, std::string_view source_name,
                                                  const LoadOptions& opts) {
  const AxiomSource src{std::string(source_name), std::string(text)};
  return load_axioms(std::span<const AxiomSource>(&src, 1), opts);
}

std::string serialize(const RewriteRule& r) {
  std::string out = r.id + ": " + render(r.lhs) + " == " + render(r.rhs);
  for (auto t : {RuleTag::Algebraic, RuleTag::Trigonometric, RuleTag::Augmented, RuleTag::PureIdentity}) {
    if (r.has_tag(t)) out += " @" + std::string(to_string(t));
  }
  for (Var v : r.positive_vars.to_vector()) out += " @positive:" + std::string(var_name(v));
  return out;
}

std::string serialize(const AxiomSet& ax) {
  std::string out;
  for (const auto& r : ax.rules()) out += serialize(r) + "\n";
  return out;
}


namespace {
struct Curated {
  AxiomSet set;
  ValidationReport report;
};

const Curated& curated() {
  static const Curated c = [] {
    auto [set, report] = load_axioms(shipped_axiom_sources());
    return Curated{std::move(set), std::move(report)};
  }();
  return c;
}
}  // namespace

const AxiomSet& curated_axiom_set() { return curated().set; }
const ValidationReport& curated_validation_report() { return curated().report; }

}  // namespace eqgen
