#include "doctest.h"

#include "eqgen/axioms.hpp"

using namespace eqgen;

TEST_CASE("a single ground line is admitted with its tag") {
  const auto [ax, rep] = load_axioms("(+ 1 1) == 2 @algebraic", "t");
  REQUIRE(ax.size() == 1);
  const RewriteRule& r = ax.rules()[0];
  CHECK(r.id == "t:1");
  CHECK(r.has_tag(RuleTag::Algebraic));
  CHECK(r.lhs == parse_expr("(+ 1 1)"));
  CHECK(rep.rejections.empty());
}

TEST_CASE("sound, unsound and duplicate rules") {
  const char* text =
      "comm: (+ x y) == (+ y x)\n"
      "# comment\n"
      "\n"
      "zero: (pow x 0) == 1\n"
      "bad: (- 4 1) == 2\n"
      "again: (+ y x) == (+ x y)\n"
      "trig: (sin x) == (cos x)\n";
  const auto [ax, rep] = load_axioms(text, "t");
  CHECK(ax.find("comm") != nullptr);
  CHECK(ax.find("zero") != nullptr);
  CHECK(ax.find("bad") == nullptr);
  CHECK(ax.find("again") == nullptr);
  CHECK(ax.find("trig") == nullptr);
  REQUIRE(rep.rejection_for("bad"));
  CHECK(rep.rejection_for("bad")->reason == RejectReason::Unsound);
  CHECK(rep.rejection_for("bad")->line == 5);
  REQUIRE(rep.rejection_for("again"));
  CHECK(rep.rejection_for("again")->reason == RejectReason::Duplicate);
  CHECK(rep.rejection_for("trig")->reason == RejectReason::Unsound);
}

TEST_CASE("parse problems are errors with a line number") {
  try {
    load_axioms("ok: 1 == 1\n(+ 1 == 2\n", "src");
    FAIL("expected AxiomParseError");
  } catch (const AxiomParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.source() == "src");
  }
  CHECK_THROWS_AS(load_axioms("(+ 1 1) 2", "src"), AxiomParseError);
  CHECK_THROWS_AS(load_axioms("1 == 1 @nonsense", "src"), AxiomParseError);
  CHECK_THROWS_AS(load_axioms("a: 1 == 1\na: 2 == 2", "src"), AxiomParseError);
}

TEST_CASE("rules whose sides are never defined together are unsound") {
  Rng rng(1);
  RewriteRule r{"r", parse_expr("(acosh x)"), parse_expr("(atanh x)"), {}, {}};
  CHECK(validate_axiom(r, validation_config(), rng).status == RuleStatus::Unsound);
  RewriteRule u{"u", parse_expr("(sqrt (neg (pow x 2)))"), parse_expr("(sqrt (neg (pow x 4)))"), {}, {}};
  CHECK(validate_axiom(u, validation_config(), rng).status == RuleStatus::Unverifiable);
}

TEST_CASE("shipped listing") {
  const AxiomSet& ax = curated_axiom_set();
  const ValidationReport& rep = curated_validation_report();

  CHECK(ax.find("A1") != nullptr);
  CHECK(ax.find("A11") != nullptr);
  CHECK(ax.find("A10") != nullptr);
  CHECK(ax.find("A34") != nullptr);

  REQUIRE(rep.rejection_for("A24"));
  CHECK(rep.rejection_for("A24")->reason == RejectReason::Unsound);
  REQUIRE(rep.rejection_for("A18"));
  CHECK(rep.rejection_for("A18")->reason == RejectReason::Duplicate);
  CHECK(rep.rejection_for("A18")->detail.find("A11") != std::string::npos);
  REQUIRE(rep.rejection_for("T0"));
  CHECK(rep.rejection_for("T0")->reason == RejectReason::Unsound);

  for (const char* id : {"T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "G1", "G2", "G3"}) {
    CHECK_MESSAGE(ax.find(id) != nullptr, id);
  }
  CHECK(ax.find("G3")->positive_vars.contains(Var::X));
  CHECK(ax.find("A57")->has_tag(RuleTag::PureIdentity));
}

TEST_CASE("every admitted rule is sound under a fresh seed") {
  Rng rng(424242);
  for (const auto& r : curated_axiom_set().rules()) {
    if (r.is_pure_identity()) continue;
    const RuleValidation v = validate_axiom(r, validation_config(), rng);
    CHECK_MESSAGE(v.status == RuleStatus::Sound, r.id << " " << v.detail);
  }
}

TEST_CASE("loading the serialized set is idempotent") {
  const AxiomSet& ax = curated_axiom_set();
  const std::string text = serialize(ax);
  const auto [again, rep] = load_axioms(text, "reload");
  CHECK(rep.rejections.empty());
  REQUIRE(again.size() == ax.size());
  for (std::size_t i = 0; i < ax.size(); ++i) {
    CHECK(again.rules()[i].id == ax.rules()[i].id);
    CHECK(again.rules()[i].lhs == ax.rules()[i].lhs);
    CHECK(again.rules()[i].rhs == ax.rules()[i].rhs);
    CHECK(again.rules()[i].tags == ax.rules()[i].tags);
    CHECK(again.rules()[i].positive_vars == ax.rules()[i].positive_vars);
  }
  CHECK(serialize(again) == text);
}
