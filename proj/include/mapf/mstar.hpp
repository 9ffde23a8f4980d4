#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mapf/agent_set.hpp"
#include "mapf/grid.hpp"
#include "mapf/instance.hpp"
#include "mapf/policy.hpp"
#include "mapf/solution.hpp"

namespace mapf {

/// Sum of individual cost-to-go values. Throws std::invalid_argument when an
/// agent cannot reach its goal.
Cost sic_heuristic(std::span<const Policy> policies, std::span<const CellId> cells);

/// Limited neighbors of a joint configuration: every agent in `collision`
/// takes each of its moves (wait included), every other agent takes the single
/// move `next_of(agent)`. Agent 0 varies fastest.
std::vector<std::vector<CellId>> limited_neighbors(const GridMap& map, std::span<const CellId> cells,
                                                   AgentSet collision, std::span<const CellId> next_of);

/// Canonical policy steps of every agent, for use as `next_of`.
std::vector<CellId> policy_steps(std::span<const Policy> policies, std::span<const CellId> cells);

/// Subdimensional-expansion M*.
SolveResult solve_mstar(const Instance& instance, const SolveOptions& options = {});

}  // namespace mapf
