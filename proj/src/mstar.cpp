#include "mapf/mstar.hpp"

#include <stdexcept>

#include "mapf/search.hpp"

namespace mapf {

Cost sic_heuristic(std::span<const Policy> policies, std::span<const CellId> cells) {
  if (policies.size() != cells.size()) throw std::invalid_argument("sic_heuristic: size mismatch");
  Cost h = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!policies[i].reachable(cells[i])) {
      throw std::invalid_argument("sic_heuristic: agent " + std::to_string(i) + " cannot reach its goal");
    }
    h += policies[i].cost_to_go(cells[i]);
  }
  return h;
}

std::vector<CellId> policy_steps(std::span<const Policy> policies, std::span<const CellId> cells) {
  std::vector<CellId> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) out[i] = policies[i].canonical_next(cells[i]);
  return out;
}

std::vector<std::vector<CellId>> limited_neighbors(const GridMap& map, std::span<const CellId> cells,
                                                   AgentSet collision, std::span<const CellId> next_of) {
  const std::size_t n = cells.size();
  if (next_of.size() != n) throw std::invalid_argument("limited_neighbors: size mismatch");
  std::vector<std::vector<CellId>> moves(n);
  std::array<CellId, 5> adj{};
  for (std::size_t i = 0; i < n; ++i) {
    if (collision.contains(i)) {
      const std::size_t cnt = neighbors(map, cells[i], adj);
      moves[i].assign(adj.begin(), adj.begin() + cnt);
    } else {
      moves[i] = {next_of[i]};
    }
  }
  std::vector<std::vector<CellId>> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    auto& t = out.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = moves[i][idx[i]];
    std::size_t i = 0;
    while (i < n && ++idx[i] == moves[i].size()) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

SolveResult solve_mstar(const Instance& instance, const SolveOptions& options) {
  return run_search(instance, SearchFlags{.bypass = false, .recursive = false}, options);
}

}  // namespace mapf
