#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ascentlab/generators.hpp"
#include "ascentlab/io.hpp"
#include "ascentlab/search.hpp"

using namespace ascentlab;

namespace {

Instance edgeless_rewarding(int n) {
  Instance inst;
  for (VarId v = 1; v <= n; ++v) {
    inst.add_variable(v, 2);
    Constraint c = Constraint::zeros({v}, {2});
    c.table[1] = 1;
    inst.add_constraint(c);
  }
  return inst;
}

}  // namespace

TEST_CASE("the >-ordered star ascent has length n^2+4n+1 with unit steps") {
  for (int n = 1; n <= 12; ++n) {
    Instance star = gen_star(n);
    Trace trace = ascend(star, all_zeros(star),
                         Policy::ordered(OrderSpec::descending_index()));
    REQUIRE(trace.complete);
    CHECK(trace.length() == static_cast<std::size_t>(n * n + 4 * n + 1));
    Fitness prev = trace.start_fitness;
    for (const TraceStep& s : trace.steps) {
      CHECK(s.fitness_after - prev == 1);
      prev = s.fitness_after;
    }
  }
}

TEST_CASE("edgeless rewarding landscape: ascent length is exactly n") {
  for (int n : {1, 4, 9}) {
    Instance inst = edgeless_rewarding(n);
    for (const Policy& policy :
         {Policy::ordered(OrderSpec::descending_index()),
          Policy::steepest_neighbor(), Policy::first_improvement(),
          Policy::random_improvement(3)}) {
      Trace trace = ascend(inst, all_zeros(inst), policy);
      REQUIRE(trace.complete);
      CHECK(trace.length() == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("engine traces pass every check the policy promises") {
  for (std::uint64_t seed : {21u, 22u, 23u, 24u, 25u}) {
    Instance inst = gen_random(7, seed % 2 ? 2 : 3, 0.45, 8, seed);
    TreedepthDecomposition tdd = dfs_decomposition(constraint_graph(inst));

    struct Case {
      Policy policy;
      VerifyChecks checks;
    };
    std::vector<Case> cases;
    {
      Policy p = Policy::ordered(OrderSpec::descending_index());
      VerifyChecks c;
      c.ordered = p.order;
      cases.push_back({p, c});
    }
    {
      Policy p = Policy::ordered(OrderSpec::descendants(tdd),
                                 Policy::ValueRule::BestValue);
      VerifyChecks c;
      c.ordered = p.order;
      c.step_steepest = true;
      cases.push_back({p, c});
    }
    {
      Policy p = Policy::steepest_neighbor();
      VerifyChecks c;
      c.step_steepest = true;
      cases.push_back({p, c});
    }
    cases.push_back({Policy::first_improvement(), {}});
    cases.push_back({Policy::random_improvement(seed), {}});

    for (const Case& cs : cases) {
      Trace trace = ascend(inst, all_zeros(inst), cs.policy);
      REQUIRE(trace.complete);
      CheckReport report = verify_trace(inst, trace, cs.checks);
      CHECK(report.all_pass());
    }
  }
}

TEST_CASE("the star >-ordered trace is not decomposition-ordered") {
  Instance star = gen_star(2);
  Trace trace = ascend(star, all_zeros(star),
                       Policy::ordered(OrderSpec::descending_index()));
  TreedepthDecomposition tdd =
      exact_treedepth(constraint_graph(star)).decomposition;
  REQUIRE(tdd.height() == 1);

  VerifyChecks checks;
  checks.ordered = OrderSpec::descendants(tdd);
  CheckReport report = verify_trace(star, trace, checks);
  const CheckEntry* ordered = report.find("ordered");
  REQUIRE(ordered != nullptr);
  CHECK(!ordered->pass);
  // the violation is the center flipping while left leaves can still improve
  REQUIRE(ordered->violation_step.has_value());
  CHECK(*ordered->violation_step == 3);
  CHECK(trace.steps[*ordered->violation_step - 1].var == 3);
  const CheckEntry* ascent = report.find("ascent");
  REQUIRE(ascent != nullptr);
  CHECK(ascent->pass);
}

TEST_CASE("a tampered step fails the ascent check at that step") {
  Instance star = gen_star(2);
  Trace trace = ascend(star, all_zeros(star),
                       Policy::ordered(OrderSpec::descending_index()));
  Trace bad = trace;
  // redo step 5 as a fitness-decreasing move and fix the bookkeeping
  bad.steps.resize(5);
  TraceStep& s = bad.steps[4];
  Assignment before = bad.start;
  for (std::size_t i = 0; i + 1 < 5; ++i)
    before[bad.steps[i].var] = bad.steps[i].new_value;
  s = {3, before.at(3), before.at(3) == 1 ? 0 : 1, 0};
  Assignment after = before;
  after[s.var] = s.new_value;
  s.fitness_after = fitness(star, after);
  bad.complete = true;

  CheckReport report = verify_trace(star, bad, {});
  const CheckEntry* ascent = report.find("ascent");
  REQUIRE(ascent != nullptr);
  CHECK(!ascent->pass);
  CHECK(report.find("structure")->pass);
  CHECK(*ascent->violation_step == 5);
}

TEST_CASE("a corrupted fitness entry fails structure validation") {
  Instance star = gen_star(2);
  Trace trace = ascend(star, all_zeros(star),
                       Policy::ordered(OrderSpec::descending_index()));
  trace.steps[2].fitness_after += 1;
  CheckReport report = verify_trace(star, trace, {});
  CHECK(!report.find("structure")->pass);
  CHECK(*report.find("structure")->violation_step == 3);
}

TEST_CASE("ordered ascents respect the theorem bounds") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    int v = seed % 2 ? 2 : 3;
    Instance inst = gen_random(8, v, 0.4, 6, seed);
    TreedepthDecomposition tdd = dfs_decomposition(constraint_graph(inst));

    for (bool steepest : {false, true}) {
      Policy policy = Policy::ordered(
          OrderSpec::descendants(tdd),
          steepest ? Policy::ValueRule::BestValue : Policy::ValueRule::FirstImproving);
      Trace trace = ascend(inst, all_zeros(inst), policy);
      REQUIRE(trace.complete);
      BoundsReport bounds = check_bounds(inst, trace, tdd, steepest);
      CHECK(bounds.all_ok());
    }
  }
}

TEST_CASE("bounds on the unary landscape: length <= 2n, flips <= 2") {
  Instance inst = edgeless_rewarding(6);
  TreedepthDecomposition tdd = dfs_decomposition(constraint_graph(inst));
  REQUIRE(tdd.height() == 0);
  Trace trace =
      ascend(inst, all_zeros(inst), Policy::ordered(OrderSpec::descendants(tdd)));
  BoundsReport bounds = check_bounds(inst, trace, tdd, false);
  CHECK(bounds.length_bound == 12);
  CHECK(bounds.all_ok());
  for (const VariableBound& b : bounds.per_variable) CHECK(b.bound == 2);
}

TEST_CASE("check_bounds rejects a decomposition that does not fit") {
  Instance star = gen_star(2);
  std::map<VarId, VarId> flat;
  for (const auto& [id, dom] : star.variables()) flat[id] = 0;
  TreedepthDecomposition bad{flat};
  Trace trace = ascend(star, all_zeros(star),
                       Policy::ordered(OrderSpec::descending_index()));
  CHECK_THROWS_AS(check_bounds(star, trace, bad, false), std::invalid_argument);
}

TEST_CASE("identical policy and seed give byte-identical traces") {
  Instance inst = gen_random(8, 2, 0.5, 7, 31);
  for (const Policy& policy :
       {Policy::random_improvement(9), Policy::steepest_neighbor(),
        Policy::ordered(OrderSpec::descending_index())}) {
    Trace a = ascend(inst, all_zeros(inst), policy);
    Trace b = ascend(inst, all_zeros(inst), policy);
    CHECK(write_trace(a) == write_trace(b));
  }
  Trace c = ascend(inst, all_zeros(inst), Policy::random_improvement(9));
  Trace d = ascend(inst, all_zeros(inst), Policy::random_improvement(10));
  // different seeds are allowed to differ; both must still verify
  CHECK(verify_trace(inst, c, {}).all_pass());
  CHECK(verify_trace(inst, d, {}).all_pass());
}

TEST_CASE("budget exhaustion is a distinct, non-ascent outcome") {
  Instance star = gen_star(4);
  Trace trace = ascend(star, all_zeros(star),
                       Policy::ordered(OrderSpec::descending_index()), 3);
  CHECK(!trace.complete);
  CHECK(trace.length() == 3);
  CheckReport report = verify_trace(star, trace, {});
  CHECK(report.find("structure")->pass);
  CHECK(!report.find("ascent")->pass);
}

TEST_CASE("starting at a local solution yields the empty trace") {
  Instance star = gen_star(2);
  Trace first = ascend(star, all_zeros(star),
                       Policy::ordered(OrderSpec::descending_index()));
  Trace again = ascend(star, first.final_assignment(),
                       Policy::steepest_neighbor());
  CHECK(again.complete);
  CHECK(again.length() == 0);
  CHECK(improving_moves(star, again.final_assignment()).empty());
}

TEST_CASE("explicit orders and minimality") {
  OrderSpec desc = OrderSpec::descending_index();
  CHECK(desc.precedes(5, 2));
  CHECK(!desc.precedes(2, 5));
  CHECK(desc.minimal({2, 4, 5}) == std::vector<VarId>{5});

  OrderSpec expl = OrderSpec::explicit_order({3, 1, 2});
  CHECK(expl.precedes(3, 2));
  CHECK(expl.minimal({1, 2}) == std::vector<VarId>{1});
  CHECK_THROWS(OrderSpec::explicit_order({1, 1}));

  TreedepthDecomposition t({{1, 0}, {2, 1}, {3, 1}});
  OrderSpec tdd = OrderSpec::descendants(t);
  CHECK(tdd.precedes(2, 1));   // descendant before ancestor
  CHECK(!tdd.precedes(2, 3));  // siblings incomparable
  CHECK(tdd.minimal({1, 2, 3}) == std::vector<VarId>{2, 3});
}

TEST_CASE("flip counts sum to the trace length") {
  Instance inst = gen_random(6, 3, 0.5, 5, 77);
  Trace trace = ascend(inst, all_zeros(inst), Policy::first_improvement());
  std::size_t total = 0;
  for (const auto& [var, count] : trace.flip_counts())
    total += static_cast<std::size_t>(count);
  CHECK(total == trace.length());
}
