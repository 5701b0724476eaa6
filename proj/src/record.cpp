#include "eqgen/record.hpp"

#include "json.hpp"

namespace eqgen {

using json = nlohmann::ordered_json;

std::string_view to_string(MutationKind k) {
  switch (k) {
    case MutationKind::SymbolSwap: return "symbol-swap";
    case MutationKind::ConstantPerturb: return "constant-perturb";
    case MutationKind::SubtreeGraft: return "subtree-graft";
    case MutationKind::OperatorSwap: return "operator-swap";
  }
  return "?";
}

std::optional<MutationKind> parse_mutation_kind(std::string_view s) {
  for (auto k : kMutationKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Equation apply_mutation(const Equation& eq, const Mutation& m) {
  const Expr& side = eq.side(m.side);
  if (!is_valid_path(side, m.path) || !(subterm_at(side, m.path) == m.before)) {
    throw MutationMismatch("mutation site " + std::string(side_name(m.side)) + to_string(m.path) +
                           " does not hold " + render(m.before));
  }
  return eq.with_side(m.side, replace_at(side, m.path, m.after));
}

VerdictSummary VerdictSummary::of(const Verdict& v) {
  return {v.outcome, v.valid_samples(), v.max_deviation(), v.domain_errors, v.overflows};
}

namespace {

json path_json(const Path& p) {
  json a = json::array();
  for (auto i : p.indices) a.push_back(i);
  return a;
}

Path path_from(const json& j) {
  Path p;
  for (const auto& i : j) p.indices.push_back(i.get<std::uint32_t>());
  return p;
}

json sigma_json(const Substitution& s) {
  json o = json::object();
  for (Var v : kAllVars) {
    if (const auto& b = s.get(v)) o[std::string(var_name(v))] = render(*b);
  }
  return o;
}

Substitution sigma_from(const json& j) {
  Substitution s;
  for (Var v : kAllVars) {
    const std::string name(var_name(v));
    if (j.contains(name)) s.bind(v, parse_expr(j.at(name).get<std::string>()));
  }
  return s;
}

Side side_from(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "lhs") return Side::Lhs;
  if (s == "rhs") return Side::Rhs;
  throw RecordFormatError("bad side '" + s + "'");
}

VerdictOutcome outcome_from(const std::string& s) {
  for (auto o : {VerdictOutcome::True, VerdictOutcome::False, VerdictOutcome::Unknown}) {
    if (to_string(o) == s) return o;
  }
  throw RecordFormatError("bad verdict '" + s + "'");
}

}  // namespace

std::string to_jsonl(const DatasetRecord& r) {
  json trace = json::array();
  for (const auto& st : r.provenance.trace) {
    trace.push_back(json{{"rule_id", st.rule_id},
                         {"direction", std::string(to_string(st.direction))},
                         {"side", std::string(side_name(st.side))},
                         {"path", path_json(st.path)},
                         {"substitution", sigma_json(st.substitution)}});
  }
  json mutation = nullptr;
  if (const auto& m = r.provenance.mutation) {
    mutation = json{{"kind", std::string(to_string(m->kind))},
                    {"side", std::string(side_name(m->side))},
                    {"path", path_json(m->path)},
                    {"before", render(m->before)},
                    {"after", render(m->after)}};
  }
  const auto& v = r.verdict_at_generation;
  json j{{"id", r.id},
         {"equation", render(r.equation)},
         {"label", r.label},
         {"provenance",
          {{"seed_axiom_id", r.provenance.seed_axiom_id},
           {"instantiation", sigma_json(r.provenance.instantiation)},
           {"trace", trace},
           {"mutation", mutation},
           {"mutation_index", r.provenance.mutation_index},
           {"walk_truncated", r.provenance.walk_truncated}}},
         {"seed", r.seed},
         {"verdict_at_generation",
          {{"outcome", std::string(to_string(v.outcome))},
           {"valid_samples", v.valid_samples},
           {"max_deviation", v.max_deviation},
           {"domain_errors", v.domain_errors},
           {"overflows", v.overflows}}}};
  return j.dump();
}

DatasetRecord record_from_jsonl(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw RecordFormatError(std::string("invalid JSON: ") + e.what());
  }
  try {
    DatasetRecord r;
    r.id = j.at("id").get<std::string>();
    r.equation = parse_equation(j.at("equation").get<std::string>());
    r.label = j.at("label").get<bool>();
    const json& p = j.at("provenance");
    r.provenance.seed_axiom_id = p.at("seed_axiom_id").get<std::string>();
    r.provenance.instantiation = sigma_from(p.at("instantiation"));
    for (const auto& st : p.at("trace")) {
      RewriteStep step;
      step.rule_id = st.at("rule_id").get<std::string>();
      const auto dir = parse_direction(st.at("direction").get<std::string>());
      if (!dir) throw RecordFormatError("bad direction");
      step.direction = *dir;
      step.side = side_from(st.at("side"));
      step.path = path_from(st.at("path"));
      step.substitution = sigma_from(st.at("substitution"));
      r.provenance.trace.push_back(std::move(step));
    }
    if (!p.at("mutation").is_null()) {
      const json& m = p.at("mutation");
      const auto kind = parse_mutation_kind(m.at("kind").get<std::string>());
      if (!kind) throw RecordFormatError("bad mutation kind");
      r.provenance.mutation = Mutation{*kind, side_from(m.at("side")), path_from(m.at("path")),
                                       parse_expr(m.at("before").get<std::string>()),
                                       parse_expr(m.at("after").get<std::string>())};
    }
    if (r.label == r.provenance.mutation.has_value()) {
      throw RecordFormatError(r.label ? "true record carries a mutation" : "false record without a mutation");
    }
    r.provenance.mutation_index = p.at("mutation_index").get<std::size_t>();
    r.provenance.walk_truncated = p.at("walk_truncated").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const json& v = j.at("verdict_at_generation");
    r.verdict_at_generation = {outcome_from(v.at("outcome").get<std::string>()), v.at("valid_samples").get<int>(),
                               v.at("max_deviation").get<double>(), v.at("domain_errors").get<int>(),
                               v.at("overflows").get<int>()};
    return r;
  } catch (const json::exception& e) {
    throw RecordFormatError(std::string("record schema: ") + e.what());
  } catch (const ParseError& e) {
    throw RecordFormatError(std::string("record expression: ") + e.what());
  }
}

Equation replay(const Provenance& p, const AxiomSet& ax) {
  const RewriteRule* seed = ax.find(p.seed_axiom_id);
  if (!seed) throw RecordFormatError("unknown seed axiom '" + p.seed_axiom_id + "'");
  if (p.mutation && p.mutation_index > p.trace.size()) throw RecordFormatError("mutation index past end of trace");
  Equation eq = instantiate_axiom(*seed, p.instantiation);
  for (std::size_t i = 0; i <= p.trace.size(); ++i) {
    if (p.mutation && i == p.mutation_index) eq = apply_mutation(eq, *p.mutation);
    if (i < p.trace.size()) eq = apply_rewrite(eq, p.trace[i], ax);
  }
  return eq;
}

}  // namespace eqgen
