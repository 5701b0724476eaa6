#include "doctest.h"

#include <sstream>

#include "eqgen/commands.hpp"
#include "json.hpp"

using namespace eqgen;

namespace {
GenerateOptions small(std::size_t t, std::size_t f) {
  GenerateOptions o;
  o.seed = 1234;
  o.true_count = t;
  o.false_count = f;
  return o;
}

std::string dataset_text(const GenerateOptions& o) {
  std::ostringstream os;
  write_dataset(curated_axiom_set(), o, os);
  return os.str();
}
}  // namespace

TEST_CASE("records round trip through JSONL") {
  const auto recs = generate_dataset(curated_axiom_set(), small(30, 30));
  for (const auto& r : recs) {
    const std::string line = to_jsonl(r);
    CHECK(line.find('\n') == std::string::npos);
    const DatasetRecord back = record_from_jsonl(line);
    CHECK(back == r);
    CHECK(to_jsonl(back) == line);
  }
}

TEST_CASE("JSONL key order") {
  const auto recs = generate_dataset(curated_axiom_set(), small(1, 1));
  const auto j = nlohmann::ordered_json::parse(to_jsonl(recs[1]));
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"id", "equation", "label", "provenance", "seed", "verdict_at_generation"});
  CHECK(j["id"] == "f-000000");
  CHECK(j["label"] == false);
  CHECK(j["provenance"]["mutation"].is_object());
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(record_from_jsonl("not json"), RecordFormatError);
  CHECK_THROWS_AS(record_from_jsonl("{\"id\": \"x\"}"), RecordFormatError);
  auto recs = generate_dataset(curated_axiom_set(), small(1, 0));
  std::string line = to_jsonl(recs[0]);
  line.replace(line.find("\"label\":true"), 12, "\"label\":false");
  CHECK_THROWS_AS(record_from_jsonl(line), RecordFormatError);  // false without a mutation
}

TEST_CASE("generation is deterministic and independent of the worker count") {
  GenerateOptions a = small(10, 10);
  a.jobs = 1;
  GenerateOptions b = a;
  b.jobs = 4;
  const std::string one = dataset_text(a);
  CHECK(one == dataset_text(a));
  CHECK(one == dataset_text(b));
  GenerateOptions c = a;
  c.seed = 1235;
  CHECK(one != dataset_text(c));
}

TEST_CASE("counts are honoured") {
  const auto recs = generate_dataset(curated_axiom_set(), small(0, 7));
  CHECK(recs.size() == 7);
  for (const auto& r : recs) CHECK_FALSE(r.label);
}

TEST_CASE("generated file re-verifies with full agreement") {
  std::istringstream in(dataset_text(small(50, 50)));
  std::ostringstream out;
  const VerifySummary s = verify_stream(in, out, {}, 77);
  CHECK(s.lines == 100);
  CHECK(s.labeled == 100);
  CHECK(s.agreement_rate() == 1.0);
}

TEST_CASE("verify_stream on bare equations") {
  std::istringstream in("(= (+ 2 2) 4)\n(= (+ 2 2) 3)\n\n(= (+ 2\n(= (sin x) (cos x))\n");
  std::ostringstream out;
  const VerifySummary s = verify_stream(in, out, {}, 1);
  CHECK(s.lines == 4);
  CHECK(s.parse_errors == 1);
  CHECK(s.true_count == 1);
  CHECK(s.false_count == 2);
  CHECK(s.labeled == 0);

  std::istringstream lines(out.str());
  std::string l;
  std::vector<nlohmann::json> rows;
  while (std::getline(lines, l)) rows.push_back(nlohmann::json::parse(l));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["verdict"] == "True");
  CHECK(rows[1]["verdict"] == "False");
  CHECK(rows[2].contains("error"));
  CHECK(rows[2]["line"] == 4);
}

TEST_CASE("config text") {
  const auto kv = parse_config_text("# comment\nseed = 9\ntrue-count=3\n false-count = 4 # trailing\nfilter-artifacts = true\n"
                                    "epsilon = 1e-7\ntolerance = absolute\n");
  GenerateOptions o;
  apply_config(kv, o);
  CHECK(o.seed == 9);
  CHECK(o.true_count == 3);
  CHECK(o.false_count == 4);
  CHECK(o.filter_artifacts);
  CHECK(o.oracle.epsilon == 1e-7);
  CHECK(o.oracle.tolerance_mode == ToleranceMode::Absolute);

  CHECK_THROWS_AS(apply_config(parse_config_text("sed = 1"), o), ConfigError);
  CHECK_THROWS_AS(apply_config(parse_config_text("seed = x"), o), ConfigError);
  CHECK_THROWS_AS(parse_config_text("seed"), ConfigError);
}

TEST_CASE("replay catches tampering") {
  auto recs = generate_dataset(curated_axiom_set(), small(3, 3));
  for (auto& r : recs) {
    if (r.provenance.trace.empty()) continue;
    r.provenance.trace.front().path.indices.push_back(7);
    CHECK_THROWS(replay(r.provenance, curated_axiom_set()));
  }
}
