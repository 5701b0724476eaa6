#include "doctest.h"

#include "eqgen/audit.hpp"
#include "eqgen/corruptor.hpp"
#include "eqgen/truegen.hpp"

using namespace eqgen;

namespace {
OracleConfig doubled() {
  OracleConfig c;
  c.trials *= 2;
  return c;
}
}  // namespace

TEST_CASE("axiom instances verify true") {
  const AxiomSet& ax = curated_axiom_set();
  TrueGenConfig cfg;
  Rng rng(1);
  int unknown = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto [eq, prov] = random_instance(ax, cfg, rng);
    CHECK(replay(prov, ax) == eq);
    const Verdict v = verify(eq, {}, rng);
    CHECK_MESSAGE(v.outcome != VerdictOutcome::False, render(eq));
    unknown += v.outcome == VerdictOutcome::Unknown;
  }
  // Random instantiation may leave a domain empty; that is Unknown, never False.
  CHECK(unknown < 150);
}

TEST_CASE("instance_record: commutativity with 2 and pi") {
  const AxiomSet& ax = curated_axiom_set();
  Substitution s;
  s.bind(Var::X, Expr::integer(2));
  s.bind(Var::Y, Expr::constant(Constant::pi()));
  Rng rng(2);
  const DatasetRecord r = instance_record(*ax.find("A34"), s, {}, rng);
  CHECK(r.equation == parse_equation("(= (+ 2 pi) (+ pi 2))"));
  CHECK(r.label);
  CHECK(r.verdict_at_generation.outcome == VerdictOutcome::True);
  CHECK(replay(r.provenance, ax) == r.equation);
}

TEST_CASE("walk of length zero returns the instance") {
  const AxiomSet& ax = curated_axiom_set();
  TrueGenConfig cfg;
  cfg.depth_walk = 0;
  Rng rng(3);
  const DatasetRecord r = generate_true(ax, cfg, rng);
  CHECK(r.provenance.trace.empty());
  const RewriteRule* seed = ax.find(r.provenance.seed_axiom_id);
  REQUIRE(seed);
  CHECK(instantiate_axiom(*seed, r.provenance.instantiation) == r.equation);
}

TEST_CASE("true records: sound under a stricter oracle and replayable") {
  const AxiomSet& ax = curated_axiom_set();
  TrueGenConfig cfg;
  Rng rng(4);
  int with_steps = 0;
  for (int i = 0; i < 1000; ++i) {
    const DatasetRecord r = generate_true(ax, cfg, rng);
    CHECK(r.label);
    CHECK_FALSE(r.provenance.mutation);
    CHECK(r.equation.size() <= cfg.max_nodes);
    CHECK(replay(r.provenance, ax) == r.equation);
    CHECK_MESSAGE(verify(r.equation, doubled(), rng).outcome == VerdictOutcome::True, render(r.equation));
    with_steps += r.provenance.trace.size() == 3;
  }
  CHECK(with_steps > 900);
}

TEST_CASE("true generation can produce sin(sin x)") {
  const AxiomSet& ax = curated_axiom_set();
  TrueGenConfig cfg;
  const Expr target = parse_expr("(sin (sin x))");
  bool seen = false;
  for (std::uint64_t i = 0; i < 20000 && !seen; ++i) {
    Rng rng(derive_seed(5, 0, i));
    const DatasetRecord r = generate_true(ax, cfg, rng);
    if (contains_subterm(r.equation.lhs, target) || contains_subterm(r.equation.rhs, target)) {
      seen = true;
      Rng check(6);
      CHECK(verify(r.equation, {}, check).outcome == VerdictOutcome::True);
      CHECK(replay(r.provenance, ax) == r.equation);
    }
  }
  CHECK(seen);
}

TEST_CASE("mutation examples") {
  const Equation pyth = parse_equation("(= (+ (pow (cos z) 2) (pow (sin z) 2)) 1)");
  const Mutation cube{MutationKind::SymbolSwap, Side::Lhs, Path{{0, 1}}, Expr::integer(2), Expr::integer(3)};
  CHECK(is_legal_mutation(pyth, cube));
  CHECK(apply_mutation(pyth, cube) == parse_equation("(= (+ (pow (cos z) 3) (pow (sin z) 2)) 1)"));

  const Equation two = parse_equation("(= (+ 1 1) 2)");
  const Mutation bump{MutationKind::ConstantPerturb, Side::Rhs, Path{}, Expr::integer(2), Expr::integer(3)};
  CHECK(is_legal_mutation(two, bump));
  CHECK(apply_mutation(two, bump) == parse_equation("(= (+ 1 1) 3)"));
  const Mutation jump{MutationKind::ConstantPerturb, Side::Rhs, Path{}, Expr::integer(2), Expr::integer(10)};
  CHECK_FALSE(is_legal_mutation(two, jump));

  const Equation ss = parse_equation("(= (sin x) (sin x))");
  const Mutation oswap{MutationKind::OperatorSwap, Side::Rhs, Path{}, parse_expr("(sin x)"), parse_expr("(cos x)")};
  CHECK(is_legal_mutation(ss, oswap));
  const Equation sc = apply_mutation(ss, oswap);
  CHECK(sc == parse_equation("(= (sin x) (cos x))"));
  Rng rng(7);
  CHECK(verify(sc, {}, rng).outcome == VerdictOutcome::False);
  const Mutation cross{MutationKind::OperatorSwap, Side::Rhs, Path{}, parse_expr("(sin x)"), parse_expr("(exp x)")};
  CHECK_FALSE(is_legal_mutation(ss, cross));

  const Equation p1 = parse_equation("(= (+ (pow (sin x) 2) (pow (cos x) 2)) 1)");
  const Mutation four{MutationKind::SymbolSwap, Side::Rhs, Path{}, Expr::integer(1), Expr::integer(4)};
  CHECK(verify(apply_mutation(p1, four), {}, rng).outcome == VerdictOutcome::False);

  CHECK_THROWS_AS(apply_mutation(two, cube), MutationMismatch);
}

TEST_CASE("adjacent constants") {
  CHECK(adjacent_constants(Constant::integer(2)) == std::vector<Constant>{Constant::integer(1), Constant::integer(3)});
  CHECK(adjacent_constants(Constant::integer(-1)) == std::vector<Constant>{Constant::integer(0)});
  CHECK(adjacent_constants(Constant::half()) == std::vector<Constant>{Constant::integer(0), Constant::integer(1)});
  CHECK(adjacent_constants(Constant::pi()) == std::vector<Constant>{Constant::integer(3), Constant::integer(4)});
  CHECK(adjacent_constants(Constant::decimal(314)) == std::vector<Constant>{Constant::decimal(313)});
}

TEST_CASE("random mutations are legal") {
  Rng rng(8);
  const Equation eq = parse_equation("(= (+ (pow (sin x) 2) (* 3 (log y))) (- 2 pi))");
  for (int i = 0; i < 500; ++i) {
    const MutationKind k = kMutationKinds[i % 4];
    const auto [out, m] = mutate(eq, k, {}, rng);
    CHECK(is_legal_mutation(eq, m));
    CHECK(apply_mutation(eq, m) == out);
    CHECK_FALSE(out == eq);
  }
  CHECK_THROWS_AS(mutate(parse_equation("(= x y)"), MutationKind::ConstantPerturb, {}, rng), NoLegalSite);
}

TEST_CASE("false records: all false, replayable, mutation recorded") {
  const AxiomSet& ax = curated_axiom_set();
  FalseGenConfig cfg;
  Rng rng(9);
  GenStats st;
  for (int i = 0; i < 1000; ++i) {
    const DatasetRecord r = generate_false(ax, cfg, rng, &st);
    CHECK_FALSE(r.label);
    REQUIRE(r.provenance.mutation);
    CHECK(r.provenance.mutation_index <= r.provenance.trace.size());
    CHECK(replay(r.provenance, ax) == r.equation);
    CHECK_MESSAGE(verify(r.equation, doubled(), rng).outcome == VerdictOutcome::False, render(r.equation));
  }
  CHECK(st.rejected_true_mutants > 0);  // e.g. mutants like 2+pi == pi+2 are discarded
}

TEST_CASE("artifact filter closes the implausible-pattern gap") {
  const AxiomSet& ax = curated_axiom_set();
  FalseGenConfig fcfg;
  fcfg.filter_artifacts = true;
  TrueGenConfig tcfg;
  Rng rng(10);
  const int n = 1500;
  int t_flag = 0, f_flag = 0;
  for (int i = 0; i < n; ++i) {
    t_flag += extract_features(generate_true(ax, tcfg, rng).equation, ax).has_implausible_pattern();
    f_flag += extract_features(generate_false(ax, fcfg, rng).equation, ax).has_implausible_pattern();
  }
  CHECK(std::abs(f_flag - t_flag) / static_cast<double>(n) <= 0.05);
}

TEST_CASE("config validation") {
  const AxiomSet& ax = curated_axiom_set();
  TrueGenConfig t;
  t.depth_walk = -1;
  CHECK_THROWS_AS(t.validate(ax), std::invalid_argument);
  t = {};
  t.max_nodes = 3;
  CHECK_THROWS_AS(t.validate(ax), std::invalid_argument);
  FalseGenConfig f;
  f.max_retries = 0;
  CHECK_THROWS_AS(f.validate(ax), std::invalid_argument);
}
