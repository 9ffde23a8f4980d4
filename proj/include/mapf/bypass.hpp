#pragma once

#include "mapf/agent_set.hpp"
#include "mapf/conflicts.hpp"
#include "mapf/instance.hpp"
#include "mapf/solution.hpp"

namespace mapf {

/// UC: both colliding agents are already in the predecessor's collision set.
/// HC: exactly one is; `in_set` names it. AC: neither is.
struct CollisionClass {
  CollisionKind kind = CollisionKind::AC;
  AgentSet in_set;
};

CollisionClass classify(const Conflict& conflict, AgentSet c_pred);

std::string_view to_string(CollisionKind kind);

/// M* whose avoidable conflicts are first repaired with equal-cost bypass paths.
SolveResult solve_bpmstar(const Instance& instance, const SolveOptions& options = {});

}  // namespace mapf
