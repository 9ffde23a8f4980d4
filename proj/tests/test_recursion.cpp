#include "doctest.h"
#include "mapf/bypass.hpp"
#include "mapf/recursion.hpp"
#include "mapf/search.hpp"
#include "mapf/validate.hpp"
#include "support.hpp"

using namespace mapf;

namespace {

std::vector<CellId> start_ids(const Instance& inst) {
  std::vector<CellId> out;
  for (Cell c : inst.starts) out.push_back(inst.map.id(c));
  return out;
}

}  // namespace

TEST_CASE("recursion: conflicts in {0,1} and {1,2} query only those pairs") {
  const Instance inst = testing::fixture(testing::kTwoPairs);
  const auto oracle = oracle_solve(inst);
  REQUIRE(oracle.outcome == Outcome::Solved);
  for (bool use_bypass : {false, true}) {
    const auto r = solve_recursive(inst, use_bypass);
    REQUIRE(r.outcome == Outcome::Solved);
    CHECK(r.solution->total_cost == oracle.solution->total_cost);
    CHECK(r.stats.invoked_groups == std::vector<std::uint64_t>{AgentSet{0, 1}.bits(), AgentSet{1, 2}.bits()});
    CHECK(r.stats.subplanner_calls > 0);
  }
}

TEST_CASE("recursion: conflict-free instance never recurses") {
  const Instance inst = testing::fixture("3 4\n....\n@@@@\n....\n0 0 0 3\n2 3 2 1\n");
  const auto b = solve_bpmstar(inst);
  const auto r = solve_recursive(inst, true);
  REQUIRE(r.outcome == Outcome::Solved);
  CHECK(r.stats.expansions == b.stats.expansions);
  CHECK(r.stats.subplanner_calls == 0);
  CHECK(r.stats.invoked_groups.empty());
}

TEST_CASE("property: recursive solvers match BPM* and the oracle") {
  testing::CaseGen gen(55);
  std::uint64_t spot_checks = 0, sub_calls = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance inst = gen.instance(2, 6, 2, 3);
    SolveOptions opts;
    opts.model = i % 2 ? ConflictModel::VertexOnly : ConflictModel::VertexAndSwap;
    opts.cache_spot_check = true;
    const auto o = oracle_solve(inst, opts);
    const auto b = solve_bpmstar(inst, opts);
    for (bool use_bypass : {false, true}) {
      const auto r = solve_recursive(inst, use_bypass, opts);
      REQUIRE(r.outcome == o.outcome);
      REQUIRE(r.outcome == b.outcome);
      if (r.solution) {
        REQUIRE(r.solution->total_cost == o.solution->total_cost);
        REQUIRE(validate(inst, *r.solution, opts.model).ok);
      }
      REQUIRE(r.stats.spot_check_mismatches == 0);
      spot_checks += r.stats.spot_checks;
      sub_calls += r.stats.subplanner_calls;
    }
  }
  CHECK(sub_calls > 0);
  CHECK(spot_checks > 0);
}

TEST_CASE("recursion: bypass inside sub-planners can be switched off") {
  const Instance inst = testing::fixture(testing::kTwoPairs);
  SolveOptions opts;
  opts.bypass_in_subplanners = false;
  const auto top_only = solve_recursive(inst, true, opts);
  const auto both = solve_recursive(inst, true);
  REQUIRE(top_only.outcome == Outcome::Solved);
  CHECK(top_only.solution->total_cost == both.solution->total_cost);
}

TEST_CASE("SubplannerCache: steps follow an optimal sub-solution") {
  const Instance inst = testing::fixture(testing::kCrossing);
  const auto pols = compute_policies(inst);
  std::vector<const Policy*> ptrs{&pols[0], &pols[1]};
  SolveOptions opts;
  SearchContext ctx(opts);
  SubplannerCache cache(inst.map, ptrs, false, ctx, false);
  std::vector<CellId> config = start_ids(inst);
  const Cost total = cache.step(AgentSet{0, 1}, config).cost_to_go;
  CHECK(total == oracle_solve(inst).solution->total_cost);
  const std::uint64_t calls = ctx.stats.subplanner_calls;
  Cost paid = 0;
  for (int guard = 0; guard < 20; ++guard) {
    const SubplanStep step = cache.step(AgentSet{0, 1}, config);
    REQUIRE(step.solvable);
    if (step.cost_to_go == 0) break;
    for (std::size_t i = 0; i < 2; ++i) {
      if (!(config[i] == pols[i].goal() && step.next[i] == pols[i].goal())) ++paid;
    }
    config = step.next;
  }
  CHECK(paid == total);
  CHECK(ctx.stats.subplanner_calls == calls);
  CHECK(ctx.stats.cache_hits > 0);
  CHECK_THROWS_AS(cache.step(AgentSet{0}, config), std::invalid_argument);

  // A singleton group just follows its own policy.
  const SubplanStep solo = cache.step(AgentSet{1}, std::vector<CellId>{config[1]});
  CHECK(solo.solvable);
}

TEST_CASE("SubplannerCache: unsolvable groups are remembered") {
  const Instance inst = testing::fixture("1 3\n...\n0 0 0 2\n0 2 0 0\n");
  const auto pols = compute_policies(inst);
  SolveOptions opts;
  SearchContext ctx(opts);
  SubplannerCache cache(inst.map, {&pols[0], &pols[1]}, true, ctx, false);
  CHECK_FALSE(cache.step(AgentSet{0, 1}, start_ids(inst)).solvable);
  CHECK_FALSE(cache.step(AgentSet{0, 1}, start_ids(inst)).solvable);
  CHECK(ctx.stats.subplanner_calls == 1);
  CHECK(solve_recursive(inst, false).outcome == Outcome::NoPath);
}
