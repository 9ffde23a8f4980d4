#include "mapf/policy.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace mapf {

Policy::Policy(std::size_t agent, int height, int width, CellId goal, std::vector<Cost> cost_to_go,
               std::vector<CellId> canonical_next)
    : agent_(agent),
      height_(height),
      width_(width),
      goal_(goal),
      cost_(std::move(cost_to_go)),
      next_(std::move(canonical_next)) {}

Policy compute_policy(const GridMap& map, std::size_t agent, Cell goal) {
  if (!map.passable(goal)) {
    throw std::invalid_argument("compute_policy: goal (" + std::to_string(goal.row) + "," +
                                std::to_string(goal.col) + ") is out of bounds or blocked");
  }
  const CellId g = map.id(goal);
  std::vector<Cost> cost(map.cell_count(), kUnreachable);
  std::vector<CellId> next(map.cell_count(), g);
  std::deque<CellId> queue{g};
  cost[g] = 0;
  std::array<CellId, 5> adj{};
  while (!queue.empty()) {
    const CellId c = queue.front();
    queue.pop_front();
    const std::size_t n = neighbors(map, c, adj);
    for (std::size_t i = 1; i < n; ++i) {
      if (cost[adj[i]] == kUnreachable) {
        cost[adj[i]] = cost[c] + 1;
        queue.push_back(adj[i]);
      }
    }
  }
  for (CellId c = 0; c < map.cell_count(); ++c) {
    if (c == g || cost[c] == kUnreachable) continue;
    const std::size_t n = neighbors(map, c, adj);
    for (std::size_t i = 1; i < n; ++i) {
      if (cost[adj[i]] == cost[c] - 1) {
        next[c] = adj[i];
        break;
      }
    }
  }
  return Policy(agent, map.height(), map.width(), g, std::move(cost), std::move(next));
}

namespace {

// Optimal successors without allocation; returns count written.
std::size_t dag_successors(const Policy& p, CellId c, std::array<CellId, 4>& out) {
  if (c == p.goal()) {
    out[0] = c;
    return 1;
  }
  const int w = p.width();
  const int row = static_cast<int>(c) / w;
  const int col = static_cast<int>(c) % w;
  const Cost want = p.cost_to_go(c) - 1;
  std::size_t n = 0;
  auto consider = [&](CellId d) {
    if (p.cost_to_go(d) == want) out[n++] = d;
  };
  if (row > 0) consider(c - w);
  if (row + 1 < p.height()) consider(c + w);
  if (col > 0) consider(c - 1);
  if (col + 1 < w) consider(c + 1);
  return n;
}

}  // namespace

std::vector<CellId> optimal_successors(const Policy& policy, CellId c) {
  if (!policy.reachable(c)) {
    throw std::invalid_argument("optimal_successors: cell " + std::to_string(c) + " cannot reach goal");
  }
  std::array<CellId, 4> buf{};
  const std::size_t n = dag_successors(policy, c, buf);
  return {buf.begin(), buf.begin() + n};
}

std::vector<CellId> canonical_path(const Policy& policy, CellId from) {
  if (!policy.reachable(from)) {
    throw std::invalid_argument("canonical_path: cell " + std::to_string(from) + " cannot reach goal");
  }
  std::vector<CellId> path{from};
  while (path.back() != policy.goal()) path.push_back(policy.canonical_next(path.back()));
  return path;
}

int OccupancyView::horizon() const {
  int h = 0;
  for (const auto& p : paths_) {
    if (!p.empty()) h = std::max(h, static_cast<int>(p.size()) - 1);
  }
  return h;
}

namespace {

bool step_blocked(const OccupancyView& view, CellId from, CellId to, int t, ConflictModel model) {
  for (std::size_t j = 0; j < view.size(); ++j) {
    if (!view.present(j)) continue;
    const CellId next = view.at(j, t + 1);
    if (next == to) return true;
    if (model == ConflictModel::VertexAndSwap && to != from && next == from && view.at(j, t) == to) {
      return true;
    }
  }
  return false;
}

bool goal_rest_blocked(const OccupancyView& view, CellId goal, int arrival) {
  const int last = view.horizon();
  for (std::size_t j = 0; j < view.size(); ++j) {
    if (!view.present(j)) continue;
    for (int t = arrival + 1; t <= last; ++t) {
      if (view.at(j, t) == goal) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<PathSegment> find_bypass(const Policy& policy, CellId start, int start_time,
                                       const OccupancyView& blocked, ConflictModel model) {
  if (!policy.reachable(start)) {
    throw std::invalid_argument("find_bypass: start cannot reach goal");
  }
  for (std::size_t j = 0; j < blocked.size(); ++j) {
    if (blocked.present(j) && blocked.at(j, start_time) == start) return std::nullopt;
  }
  // Time is a function of the cell inside the DAG, so dead cells stay dead.
  std::vector<std::uint8_t> dead(static_cast<std::size_t>(policy.height()) * policy.width(), 0);
  struct Frame {
    CellId cell;
    std::array<CellId, 4> succ;
    std::size_t count;
    std::size_t next;
  };
  const int base = start_time + policy.cost_to_go(start);
  auto time_of = [&](CellId c) { return base - policy.cost_to_go(c); };
  auto make_frame = [&](CellId c) {
    Frame f{c, {}, 0, 0};
    if (c != policy.goal()) {
      f.count = dag_successors(policy, c, f.succ);
      // Canonical successor first.
      const CellId canon = policy.canonical_next(c);
      auto it = std::find(f.succ.begin(), f.succ.begin() + f.count, canon);
      std::rotate(f.succ.begin(), it, it + 1);
    }
    return f;
  };

  std::vector<Frame> stack{make_frame(start)};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.cell == policy.goal()) {
      if (!goal_rest_blocked(blocked, top.cell, time_of(top.cell))) {
        PathSegment seg{policy.agent(), {}, start_time};
        seg.cells.reserve(stack.size());
        for (const Frame& f : stack) seg.cells.push_back(f.cell);
        return seg;
      }
      dead[top.cell] = 1;
      stack.pop_back();
      continue;
    }
    if (top.next == top.count) {
      dead[top.cell] = 1;
      stack.pop_back();
      continue;
    }
    const CellId to = top.succ[top.next++];
    if (dead[to] || step_blocked(blocked, top.cell, to, time_of(top.cell), model)) continue;
    stack.push_back(make_frame(to));
  }
  return std::nullopt;
}

bool segment_is_clear(const PathSegment& segment, const OccupancyView& blocked, ConflictModel model) {
  if (segment.cells.empty()) return true;
  const int t0 = segment.start_time;
  for (std::size_t j = 0; j < blocked.size(); ++j) {
    if (blocked.present(j) && blocked.at(j, t0) == segment.cells.front()) return false;
  }
  for (std::size_t k = 0; k + 1 < segment.cells.size(); ++k) {
    if (step_blocked(blocked, segment.cells[k], segment.cells[k + 1], t0 + static_cast<int>(k), model)) {
      return false;
    }
  }
  return !goal_rest_blocked(blocked, segment.cells.back(), t0 + segment.cost());
}

}  // namespace mapf
