#include "mapf/validate.hpp"

#include <cstdlib>
#include <sstream>

namespace mapf {

namespace {

std::string cell_text(Cell c) { return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")"; }

Cell at(const std::vector<Cell>& path, std::size_t t) { return t < path.size() ? path[t] : path.back(); }

}  // namespace

ValidationReport validate(const Instance& inst, const Solution& sol, ConflictModel model) {
  ValidationReport rep;
  auto add = [&](int t, std::string what, std::optional<Conflict> c = std::nullopt) {
    rep.violations.push_back({t, std::move(what), c});
  };
  const std::size_t n = inst.n_agents();
  if (sol.paths.size() != n) {
    add(-1, "solution has " + std::to_string(sol.paths.size()) + " paths for " + std::to_string(n) + " agents");
    return rep;
  }
  std::size_t horizon = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.paths[i].empty()) {
      add(-1, "agent " + std::to_string(i) + " has an empty path");
      return rep;
    }
    horizon = std::max(horizon, sol.paths[i].size());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = sol.paths[i];
    const std::string who = "agent " + std::to_string(i);
    if (p.size() != horizon) add(-1, who + " path length " + std::to_string(p.size()) + " differs from " + std::to_string(horizon));
    if (p.front() != inst.starts[i]) add(0, who + " starts at " + cell_text(p.front()) + ", expected " + cell_text(inst.starts[i]));
    if (p.back() != inst.goals[i]) {
      add(static_cast<int>(p.size()) - 1, who + " ends at " + cell_text(p.back()) + ", expected " + cell_text(inst.goals[i]));
    }
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (!inst.map.passable(p[t])) add(static_cast<int>(t), who + " on blocked or outside cell " + cell_text(p[t]));
      if (t + 1 < p.size()) {
        const int d = std::abs(p[t].row - p[t + 1].row) + std::abs(p[t].col - p[t + 1].col);
        if (d > 1) {
          add(static_cast<int>(t), who + " jumps " + cell_text(p[t]) + " -> " + cell_text(p[t + 1]));
        }
      }
    }
    for (std::size_t t = 0; t + 1 < horizon; ++t) {
      const Cell a = at(p, t), b = at(p, t + 1);
      if (!(a == inst.goals[i] && b == inst.goals[i])) ++rep.recomputed_cost;
    }
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Cell ci = at(sol.paths[i], t), cj = at(sol.paths[j], t);
        if (ci == cj) {
          const CellId id = inst.map.in_bounds(ci) ? inst.map.id(ci) : 0;
          add(static_cast<int>(t),
              "vertex conflict between agents " + std::to_string(i) + " and " + std::to_string(j) + " at " + cell_text(ci),
              Conflict{i, j, ConflictKind::Vertex, id, id});
        }
        if (model == ConflictModel::VertexAndSwap && t + 1 < horizon) {
          const Cell ni = at(sol.paths[i], t + 1), nj = at(sol.paths[j], t + 1);
          if (ci != ni && ci == nj && cj == ni) {
            const CellId a = inst.map.in_bounds(ci) ? inst.map.id(ci) : 0;
            const CellId b = inst.map.in_bounds(ni) ? inst.map.id(ni) : 0;
            add(static_cast<int>(t), "swap conflict between agents " + std::to_string(i) + " and " + std::to_string(j) +
                                         " across " + cell_text(ci) + " <-> " + cell_text(ni),
                Conflict{i, j, ConflictKind::Swap, a, b});
          }
        }
      }
    }
  }
  if (rep.recomputed_cost != sol.total_cost) {
    add(-1, "reported cost " + std::to_string(sol.total_cost) + " but recomputed " + std::to_string(rep.recomputed_cost));
  }
  rep.ok = rep.violations.empty();
  return rep;
}

std::string to_text(const ValidationReport& rep) {
  std::ostringstream os;
  for (const auto& v : rep.violations) {
    if (v.time >= 0) {
      os << "t=" << v.time << ": ";
    } else {
      os << "solution: ";
    }
    os << v.description << '\n';
  }
  os << (rep.ok ? "OK" : "INVALID") << " cost=" << rep.recomputed_cost << " violations=" << rep.violations.size()
     << '\n';
  return os.str();
}

}  // namespace mapf
