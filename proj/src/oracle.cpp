// Brute-force reference solver. Shares only the map type with the solvers.

#include <chrono>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "mapf/validate.hpp"

namespace mapf {

namespace {

constexpr int kDr[5] = {0, -1, 1, 0, 0};
constexpr int kDc[5] = {0, 0, 0, -1, 1};

std::vector<int> distances_to(const GridMap& map, Cell goal) {
  const int h = map.height(), w = map.width();
  std::vector<int> dist(static_cast<std::size_t>(h) * w, -1);
  std::deque<Cell> q{goal};
  dist[goal.row * w + goal.col] = 0;
  while (!q.empty()) {
    const Cell c = q.front();
    q.pop_front();
    for (int d = 1; d < 5; ++d) {
      const Cell nb{c.row + kDr[d], c.col + kDc[d]};
      if (nb.row < 0 || nb.row >= h || nb.col < 0 || nb.col >= w || !map.passable(nb)) continue;
      int& slot = dist[nb.row * w + nb.col];
      if (slot < 0) {
        slot = dist[c.row * w + c.col] + 1;
        q.push_back(nb);
      }
    }
  }
  return dist;
}

struct Node {
  int f;
  int g;
  std::uint64_t order;
  std::uint64_t key;
  bool operator>(const Node& o) const {
    if (f != o.f) return f > o.f;
    if (g != o.g) return g < o.g;
    return order > o.order;
  }
};

}  // namespace

SolveResult oracle_solve(const Instance& inst, const SolveOptions& options) {
  check_instance(inst);
  const std::size_t n = inst.n_agents();
  const int w = inst.map.width();
  const std::uint64_t cells = static_cast<std::uint64_t>(inst.map.height()) * w;
  if (std::pow(static_cast<double>(cells), static_cast<double>(n)) > 9.0e18) {
    throw std::invalid_argument("oracle_solve: joint space too large to index");
  }
  const bool swaps = options.model == ConflictModel::VertexAndSwap;
  const auto deadline = std::chrono::steady_clock::now() + options.budget.timeout;

  std::vector<std::vector<int>> dist;
  std::vector<int> goal_idx;
  for (std::size_t i = 0; i < n; ++i) {
    dist.push_back(distances_to(inst.map, inst.goals[i]));
    goal_idx.push_back(inst.goals[i].row * w + inst.goals[i].col);
  }
  auto encode = [&](const std::vector<int>& s) {
    std::uint64_t k = 0;
    for (std::size_t i = n; i-- > 0;) k = k * cells + static_cast<std::uint64_t>(s[i]);
    return k;
  };
  auto decode = [&](std::uint64_t k) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<int>(k % cells);
      k /= cells;
    }
    return s;
  };
  auto heuristic = [&](const std::vector<int>& s) {
    int h = 0;
    for (std::size_t i = 0; i < n; ++i) h += dist[i][s[i]];
    return h;
  };

  std::vector<int> start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = inst.starts[i].row * w + inst.starts[i].col;
  const std::uint64_t goal_key = encode(goal_idx);

  struct Info {
    int g;
    std::uint64_t parent;
    bool closed;
  };
  std::unordered_map<std::uint64_t, Info> info;
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  std::uint64_t order = 0;
  const std::uint64_t start_key = encode(start);
  info[start_key] = {0, start_key, false};
  open.push({heuristic(start), 0, order++, start_key});

  SolveResult result;
  std::vector<int> moves(n, 0), next(n);
  while (!open.empty()) {
    if ((result.stats.expansions & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
      result.outcome = Outcome::Timeout;
      return result;
    }
    const Node top = open.top();
    open.pop();
    Info& cur = info[top.key];
    if (cur.closed || cur.g != top.g) continue;
    cur.closed = true;
    ++result.stats.expansions;
    if (top.key == goal_key) {
      std::vector<std::uint64_t> keys{top.key};
      while (keys.back() != start_key) keys.push_back(info[keys.back()].parent);
      Solution sol;
      sol.paths.assign(n, {});
      for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
        const auto s = decode(*it);
        for (std::size_t i = 0; i < n; ++i) sol.paths[i].push_back({s[i] / w, s[i] % w});
      }
      sol.total_cost = top.g;
      result.outcome = Outcome::Solved;
      result.solution = std::move(sol);
      return result;
    }
    const auto s = decode(top.key);
    std::fill(moves.begin(), moves.end(), 0);
    while (true) {
      bool legal = true;
      int step_cost = 0;
      for (std::size_t i = 0; i < n && legal; ++i) {
        const int r = s[i] / w + kDr[moves[i]], c = s[i] % w + kDc[moves[i]];
        if (r < 0 || r >= inst.map.height() || c < 0 || c >= w || !inst.map.passable(Cell{r, c})) {
          legal = false;
          break;
        }
        next[i] = r * w + c;
        if (!(s[i] == goal_idx[i] && next[i] == goal_idx[i])) ++step_cost;
        for (std::size_t j = 0; j < i && legal; ++j) {
          if (next[j] == next[i]) legal = false;
          if (swaps && next[i] == s[j] && next[j] == s[i] && s[i] != s[j]) legal = false;
        }
      }
      if (legal && step_cost > 0) {
        const std::uint64_t k = encode(next);
        const int g = top.g + step_cost;
        auto [it, fresh] = info.try_emplace(k, Info{g, top.key, false});
        if (fresh || (!it->second.closed && g < it->second.g)) {
          it->second = {g, top.key, false};
          open.push({g + heuristic(next), g, order++, k});
        }
      }
      std::size_t i = 0;
      while (i < n && ++moves[i] == 5) moves[i++] = 0;
      if (i == n) break;
    }
  }
  result.outcome = Outcome::NoPath;
  return result;
}

}  // namespace mapf
