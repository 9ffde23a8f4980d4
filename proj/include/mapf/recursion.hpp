#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "mapf/agent_set.hpp"
#include "mapf/instance.hpp"
#include "mapf/policy.hpp"
#include "mapf/solution.hpp"

namespace mapf {

struct SearchContext;

/// Next joint step of an optimal sub-solution for one agent group.
struct SubplanStep {
  bool solvable = false;
  std::vector<CellId> next;
  Cost cost_to_go = 0;
};

/// Memoized sub-planners keyed by (global agent group, group configuration).
/// Solving a group caches every configuration along its optimal path.
class SubplannerCache {
 public:
  SubplannerCache(const GridMap& map, std::vector<const Policy*> global_policies, bool use_bypass,
                  SearchContext& ctx, bool spot_check);

  /// `config` lists the group's cells in ascending agent order. Throws
  /// BudgetExceeded.
  const SubplanStep& step(AgentSet group, std::span<const CellId> config);
  std::size_t size() const { return entries_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<CellId>& key) const;
  };
  static std::vector<CellId> make_key(AgentSet group, std::span<const CellId> config);
  void solve_into(AgentSet group, std::span<const CellId> config);

  const GridMap& map_;
  std::vector<const Policy*> policies_;
  bool use_bypass_;
  SearchContext& ctx_;
  bool spot_check_;
  std::uint64_t hits_ = 0;
  std::unordered_map<std::vector<CellId>, SubplanStep, KeyHash> entries_;
};

/// rM* (use_bypass = false) or rBPM* (use_bypass = true): strict sub-groups of
/// a collision set follow memoized optimal sub-solutions; a group spanning
/// every agent of a level is expanded jointly.
SolveResult solve_recursive(const Instance& instance, bool use_bypass, const SolveOptions& options = {});

}  // namespace mapf
