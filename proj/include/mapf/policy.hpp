#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mapf/grid.hpp"
#include "mapf/instance.hpp"

namespace mapf {

using Cost = std::int32_t;
inline constexpr Cost kUnreachable = -1;

/// Individually optimal policy of one agent: exact cost-to-go to its goal and
/// the canonical optimal successor of every reachable cell.
///
/// Moves cost 1; waiting at the goal costs 0, so cost_to_go is the unit-move
/// BFS distance. The canonical successor of the goal is the goal itself; for
/// other cells it is the first of up, down, left, right whose cost_to_go is
/// one less.
class Policy {
 public:
  Policy(std::size_t agent, int height, int width, CellId goal, std::vector<Cost> cost_to_go,
         std::vector<CellId> canonical_next);

  std::size_t agent() const { return agent_; }
  CellId goal() const { return goal_; }
  int height() const { return height_; }
  int width() const { return width_; }

  bool reachable(CellId c) const { return c < cost_.size() && cost_[c] != kUnreachable; }
  /// kUnreachable for cells that cannot reach the goal.
  Cost cost_to_go(CellId c) const { return cost_[c]; }
  /// Precondition: reachable(c).
  CellId canonical_next(CellId c) const { return next_[c]; }

  CellId id(Cell c) const { return static_cast<CellId>(c.row * width_ + c.col); }

 private:
  std::size_t agent_;
  int height_;
  int width_;
  CellId goal_;
  std::vector<Cost> cost_;
  std::vector<CellId> next_;
};

/// Breadth-first search from the goal. Throws std::invalid_argument when the
/// goal is out of bounds or blocked.
Policy compute_policy(const GridMap& map, std::size_t agent, Cell goal);

/// Out-edges of the optimal-path DAG at `c`: the goal maps to {goal}, any
/// other cell to its neighbors one step closer to the goal, in up, down,
/// left, right order. Throws std::invalid_argument for unreachable cells.
std::vector<CellId> optimal_successors(const Policy& policy, CellId c);

/// Canonical path from `from` to the goal, both ends included.
std::vector<CellId> canonical_path(const Policy& policy, CellId from);

/// A time-anchored stretch of one agent's path. `cells[k]` is occupied at
/// absolute time `start_time + k`.
struct PathSegment {
  std::size_t agent = 0;
  std::vector<CellId> cells;
  int start_time = 0;

  Cost cost() const { return cells.empty() ? 0 : static_cast<Cost>(cells.size() - 1); }
  bool operator==(const PathSegment&) const = default;
};

/// Time-indexed positions of other agents. Path `k` of an agent is its cell at
/// absolute time k; after its last entry the agent rests on that cell. Agents
/// without a path are ignored. Spans are not owned.
class OccupancyView {
 public:
  explicit OccupancyView(std::size_t n_agents) : paths_(n_agents) {}

  void set_path(std::size_t agent, std::span<const CellId> path) { paths_[agent] = path; }
  std::size_t size() const { return paths_.size(); }
  bool present(std::size_t agent) const { return !paths_[agent].empty(); }

  CellId at(std::size_t agent, int t) const {
    const auto& p = paths_[agent];
    return t < static_cast<int>(p.size()) ? p[t] : p.back();
  }
  /// Latest time at which any present agent still changes position.
  int horizon() const;

 private:
  std::vector<std::span<const CellId>> paths_;
};

/// Depth-first search over the optimal-path DAG from `start` at `start_time`
/// for a route to the goal that is conflict-free against `blocked` under
/// `model`, including while the agent rests on its goal afterwards. Canonical
/// successors are tried first, so an empty view yields the canonical path.
/// Returns std::nullopt when no DAG path avoids every conflict.
std::optional<PathSegment> find_bypass(const Policy& policy, CellId start, int start_time,
                                       const OccupancyView& blocked, ConflictModel model);

/// True when `segment` stays clear of `blocked` under `model`, including
/// while resting on its final cell afterwards.
bool segment_is_clear(const PathSegment& segment, const OccupancyView& blocked, ConflictModel model);

}  // namespace mapf
