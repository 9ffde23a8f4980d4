#include "doctest.h"
#include "mapf/bypass.hpp"
#include "mapf/mstar.hpp"
#include "mapf/search.hpp"
#include "mapf/search_graph.hpp"
#include "mapf/validate.hpp"
#include "support.hpp"

using namespace mapf;

namespace {

struct Classified {
  Conflict conflict;
  CollisionKind kind;
  AgentSet c_pred;
  std::size_t calls;
};

struct Tap : SearchObserver {
  std::vector<Classified> conflicts;
  std::vector<std::pair<PathSegment, Cost>> installs;
  std::vector<AgentSet> grown_to;

  void on_conflict_classified(const Conflict& c, CollisionKind kind, AgentSet c_pred, std::size_t calls) override {
    conflicts.push_back({c, kind, c_pred, calls});
  }
  void on_bypass_installed(const PathSegment& seg, Cost h) override { installs.emplace_back(seg, h); }
  void on_collision_set_grow(const SearchGraph&, std::uint32_t, const CollisionSet&, const CollisionSet& after) override {
    grown_to.push_back(after.members());
  }
};

SolveResult run_with(const Instance& inst, bool bypass, Tap& tap, ConflictModel model = ConflictModel::VertexAndSwap) {
  SolveOptions opts;
  opts.model = model;
  opts.observer = &tap;
  return bypass ? solve_bpmstar(inst, opts) : solve_mstar(inst, opts);
}

}  // namespace

TEST_CASE("classify: the three collision kinds") {
  const Conflict c{0, 1, ConflictKind::Vertex, 4, 0};
  CHECK(classify(c, AgentSet{0, 1}).kind == CollisionKind::UC);
  const auto hc = classify(c, AgentSet{0});
  CHECK(hc.kind == CollisionKind::HC);
  CHECK(hc.in_set == AgentSet{0});
  CHECK(classify(c, AgentSet{1}).in_set == AgentSet{1});
  CHECK(classify(c, AgentSet{}).kind == CollisionKind::AC);
  CHECK(classify(c, AgentSet{2, 3}).kind == CollisionKind::AC);
  CHECK_THROWS_AS(classify(Conflict{2, 2, ConflictKind::Vertex, 0, 0}, AgentSet{}), std::invalid_argument);
  CHECK(to_string(CollisionKind::HC) == "HC");
}

TEST_CASE("property: classification partitions by membership count") {
  testing::CaseGen gen(8);
  for (int i = 0; i < 500; ++i) {
    const std::size_t a = static_cast<std::size_t>(gen.between(0, 9));
    std::size_t b = static_cast<std::size_t>(gen.between(0, 9));
    if (a == b) b = (a + 1) % 10;
    const AgentSet pred(gen.seed() & 0x3ff);
    const auto cls = classify(Conflict{std::min(a, b), std::max(a, b), ConflictKind::Vertex, 0, 0}, pred);
    const int inside = static_cast<int>(pred.contains(a)) + static_cast<int>(pred.contains(b));
    REQUIRE(cls.kind == (inside == 2 ? CollisionKind::UC : inside == 1 ? CollisionKind::HC : CollisionKind::AC));
    REQUIRE(cls.in_set == (pred & AgentSet{a, b}));
  }
}

TEST_CASE("back_to_start_point walks to where the agent left the collision set") {
  SearchGraph g(2, MergeMode::Flat);
  std::vector<VertexId> chain;
  for (CellId d = 0; d < 6; ++d) {
    const VertexId v = g.intern(std::vector<CellId>{d, d + 10}, 0);
    g.vertex(v).parent = chain.empty() ? kNoVertex : chain.back();
    chain.push_back(v);
  }
  CHECK(g.back_to_start_point(chain[0], 0) == chain[0]);
  CHECK(g.back_to_start_point(chain[5], 0) == chain[0]);
  CollisionSet zero;
  zero.absorb(AgentSet{0}, MergeMode::Flat);
  g.merge(chain[2], zero);
  CHECK(g.back_to_start_point(chain[5], 0) == chain[3]);
  CHECK(g.back_to_start_point(chain[2], 0) == chain[0]);
  CHECK(g.back_to_start_point(chain[5], 1) == chain[0]);
}

TEST_CASE("bypass: conflict-free instance behaves exactly like M*") {
  const Instance inst = testing::fixture("3 4\n....\n@@@@\n....\n0 0 0 3\n2 3 2 1\n");
  Tap t1, t2;
  const auto m = run_with(inst, false, t1);
  const auto b = run_with(inst, true, t2);
  REQUIRE(b.outcome == Outcome::Solved);
  CHECK(*b.solution == *m.solution);
  CHECK(b.stats.expansions == m.stats.expansions);
  CHECK(t2.conflicts.empty());
}

TEST_CASE("bypass: avoidable crossing is repaired by one new path") {
  const Instance inst = testing::fixture(testing::kCrossing);
  Tap tap;
  const auto b = run_with(inst, true, tap);
  REQUIRE(b.outcome == Outcome::Solved);
  CHECK(b.solution->total_cost == 6);
  REQUIRE(tap.installs.size() == 1);
  const auto& [seg, h] = tap.installs.front();
  CHECK(seg.cost() == h);
  CHECK(tap.conflicts.front().kind == CollisionKind::AC);
  CHECK(b.stats.bypass_failures == 0);
  CHECK(b.stats.root_distinct_successors == 2);
  // The bypassed agent follows the installed segment.
  std::vector<CellId> route;
  for (std::size_t t = static_cast<std::size_t>(seg.start_time); t < b.solution->paths[seg.agent].size(); ++t) {
    route.push_back(inst.map.id(b.solution->paths[seg.agent][t]));
  }
  route.resize(seg.cells.size());
  CHECK(route == seg.cells);
  // No agent ever entered a collision set.
  CHECK(tap.grown_to.empty());

  Tap m_tap;
  const auto m = run_with(inst, false, m_tap);
  CHECK(m.solution->total_cost == b.solution->total_cost);
  CHECK(b.stats.expansions < m.stats.expansions);
  const auto pols = compute_policies(inst);
  std::vector<CellId> start;
  for (Cell c : inst.starts) start.push_back(inst.map.id(c));
  CHECK(b.solution->total_cost == sic_heuristic(pols, start));
}

TEST_CASE("bypass: width-1 corridor admits no detour") {
  const Instance inst = testing::fixture("1 4\n....\n0 0 0 3\n0 3 0 0\n");
  Tap tap;
  const auto b = run_with(inst, true, tap);
  CHECK(b.outcome == Outcome::NoPath);
  REQUIRE_FALSE(tap.conflicts.empty());
  CHECK(tap.conflicts.front().kind == CollisionKind::AC);
  CHECK(tap.conflicts.front().calls == 2);
  CHECK(b.stats.bypass_successes == 0);
  REQUIRE_FALSE(tap.grown_to.empty());
  CHECK(tap.grown_to.front() == AgentSet{0, 1});
  CHECK(tap.installs.empty());
}

TEST_CASE("property: bypass solver invariants on random instances") {
  testing::CaseGen gen(1234);
  std::size_t uc = 0, installs = 0;
  for (int i = 0; i < 200; ++i) {
    const Instance inst = gen.instance(2, 6, 2, 3);
    const ConflictModel model = i % 2 ? ConflictModel::VertexOnly : ConflictModel::VertexAndSwap;
    Tap tap;
    const auto b = run_with(inst, true, tap, model);
    Tap unused;
    const auto m = run_with(inst, false, unused, model);
    REQUIRE(b.outcome == m.outcome);
    if (b.solution) {
      REQUIRE(b.solution->total_cost == m.solution->total_cost);
      REQUIRE(validate(inst, *b.solution, model).ok);
    }
    for (const auto& c : tap.conflicts) {
      REQUIRE(c.kind == classify(c.conflict, c.c_pred).kind);
      if (c.kind == CollisionKind::UC) {
        REQUIRE(c.calls == 0);
        ++uc;
      }
      if (c.kind == CollisionKind::HC) REQUIRE(c.calls == 1);
      if (c.kind == CollisionKind::AC) REQUIRE((c.calls == 1 || c.calls == 2));
    }
    for (const auto& [seg, h] : tap.installs) REQUIRE(seg.cost() == h);
    REQUIRE(b.stats.bypass_cost_violations == 0);
    installs += tap.installs.size();
  }
  CHECK(uc > 0);
  CHECK(installs > 0);
}

TEST_CASE("bypass: installed segments are exposed by the search") {
  const Instance inst = testing::fixture(testing::kCrossing);
  const auto pols = compute_policies(inst);
  SolveOptions opts;
  SearchContext ctx(opts);
  SearchProblem problem;
  problem.map = &inst.map;
  for (std::size_t i = 0; i < inst.n_agents(); ++i) {
    problem.policies.push_back(&pols[i]);
    problem.global_ids.push_back(i);
    problem.starts.push_back(inst.map.id(inst.starts[i]));
  }
  Search search(std::move(problem), SearchFlags{.bypass = true}, ctx);
  const VertexId goal = search.run();
  REQUIRE(goal != kNoVertex);
  REQUIRE(search.installed_segments().size() == 1);
  const PathSegment& seg = search.installed_segments().front();
  CHECK(seg.cells.back() == pols[seg.agent].goal());
  CHECK(seg.cells != canonical_path(pols[seg.agent], seg.cells.front()));
  CHECK(search.solution(goal).total_cost == 6);
}
