#include "doctest.h"

#include <cmath>

#include "eqgen/audit.hpp"

using namespace eqgen;

namespace {
FeatureVector F(const char* eq) { return extract_features(parse_equation(eq), curated_axiom_set()); }
}  // namespace

TEST_CASE("features of the worked examples") {
  CHECK(F("(= (sin (sin x)) (cos x))").composed_transcendental == 1);
  CHECK(F("(= (+ (+ (pow (sin x) 2) (pow (cos x) 2)) 2) 3)").embedded_identity_fragment);
  const FeatureVector plain = F("(= (+ 1 1) 2)");
  CHECK(plain.composed_transcendental == 0);
  CHECK_FALSE(plain.noninteger_power_of_transcendental);
  CHECK_FALSE(plain.embedded_identity_fragment);
  CHECK(plain.node_count == 4);
  CHECK(plain.depth == 2);
  CHECK(plain.constant_count == 3);

  CHECK(F("(= (pow (sin x) (+ y 2)) 1)").noninteger_power_of_transcendental);
  CHECK_FALSE(F("(= (pow (sin x) (+ 1 2)) 1)").noninteger_power_of_transcendental);
  CHECK_FALSE(F("(= (pow (sqrt x) y) 1)").noninteger_power_of_transcendental);
  CHECK(F("(= (exp (log (tan x))) 0)").composed_transcendental == 2);
}

TEST_CASE("distinctive patterns") {
  CHECK_FALSE(is_distinctive_pattern(parse_expr("(+ x y)")));
  CHECK_FALSE(is_distinctive_pattern(parse_expr("(* (* x y) z)")));
  CHECK_FALSE(is_distinctive_pattern(parse_expr("x")));
  CHECK(is_distinctive_pattern(parse_expr("(+ x x)")));
  CHECK(is_distinctive_pattern(parse_expr("(pow x 0)")));
  CHECK(is_distinctive_pattern(parse_expr("(+ (pow (sin x) 2) (pow (cos x) 2))")));
}

namespace {
std::vector<LabeledFeatures> coin_flip_dataset(std::uint64_t seed, int n) {
  Rng rng(seed);
  const FeatureVector same = F("(= (+ (sin x) 1) (cos y))");
  std::vector<LabeledFeatures> d;
  for (int i = 0; i < n; ++i) d.push_back({same, rng.chance(0.5)});
  return d;
}
}  // namespace

TEST_CASE("no signal gives chance accuracy") {
  const int n = 4000;
  const auto d = coin_flip_dataset(1, n);
  const LeakageReport rep = leakage_report(d, 0.6);
  const double sigma = std::sqrt(0.25 / (n / 2));
  CHECK(std::fabs(rep.accuracy - 0.5) < 4 * sigma);
  CHECK_FALSE(rep.leaky);
  CHECK(rep.train_size + rep.eval_size == static_cast<std::size_t>(n));
}

TEST_CASE("an informative feature is found") {
  std::vector<LabeledFeatures> d;
  Rng rng(2);
  for (int i = 0; i < 400; ++i) {
    FeatureVector f;
    const bool label = rng.chance(0.5);
    f.constant_count = label ? 5 : 2;
    f.node_count = static_cast<int>(rng.index(10));
    d.push_back({f, label});
  }
  const LeakageReport rep = leakage_report(d, 0.6);
  CHECK(rep.accuracy > 0.95);
  CHECK(rep.leaky);
  CHECK(rep.features[5].train_accuracy == doctest::Approx(1.0));
}

TEST_CASE("frequencies per class") {
  std::vector<LabeledFeatures> d;
  for (int i = 0; i < 100; ++i) {
    FeatureVector f;
    f.embedded_identity_fragment = i < 30;  // 30 of the 50 true records
    d.push_back({f, i < 50});
  }
  const LeakageReport rep = leakage_report(d, 0.6);
  CHECK(rep.true_count == 50);
  CHECK(rep.false_count == 50);
  CHECK(rep.features[2].true_rate == doctest::Approx(0.6));
  CHECK(rep.features[2].false_rate == doctest::Approx(0.0));
  CHECK(rep.accuracy >= 0.0);
  CHECK(rep.accuracy <= 1.0);
}

TEST_CASE("too few records") {
  const auto d = coin_flip_dataset(3, 60);
  CHECK_THROWS_AS(leakage_report(d, 0.6), InsufficientData);
}

TEST_CASE("feature extraction ignores labels") {
  DatasetRecord a;
  a.equation = parse_equation("(= (sin (cos x)) (pow (tan y) (const 1/2)))");
  a.label = true;
  DatasetRecord b = a;
  b.label = false;
  CHECK(extract_features(a.equation, curated_axiom_set()) == extract_features(b.equation, curated_axiom_set()));
}

TEST_CASE("report text is deterministic") {
  const auto d = coin_flip_dataset(4, 500);
  CHECK(leakage_report(d, 0.6).to_key_values() == leakage_report(d, 0.6).to_key_values());
  CHECK(leakage_report(d, 0.6).to_key_values().find("accuracy=") != std::string::npos);
}
