#include "mapf/instance.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>

#include "rng.hpp"

namespace mapf {

std::string_view to_string(ConflictModel model) {
  return model == ConflictModel::VertexOnly ? "vertex" : "vertex_swap";
}

ConflictModel parse_conflict_model(std::string_view text) {
  if (text == "vertex" || text == "vertex_only") return ConflictModel::VertexOnly;
  if (text == "vertex_swap" || text == "vertex_and_swap") return ConflictModel::VertexAndSwap;
  throw std::invalid_argument("unknown conflict model '" + std::string(text) + "'");
}

namespace {

std::string describe(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

// Connected-component label per cell, -1 for obstacles.
std::vector<int> components(const GridMap& map) {
  std::vector<int> label(map.cell_count(), -1);
  int next = 0;
  std::array<CellId, 5> adj{};
  std::vector<CellId> stack;
  for (CellId seed = 0; seed < map.cell_count(); ++seed) {
    if (!map.passable(seed) || label[seed] >= 0) continue;
    label[seed] = next;
    stack.assign(1, seed);
    while (!stack.empty()) {
      const CellId c = stack.back();
      stack.pop_back();
      const std::size_t n = neighbors(map, c, adj);
      for (std::size_t i = 1; i < n; ++i) {
        if (label[adj[i]] < 0) {
          label[adj[i]] = next;
          stack.push_back(adj[i]);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace

std::vector<std::string> instance_defects(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.starts.empty()) out.emplace_back("instance has no agents");
  if (inst.starts.size() != inst.goals.size()) {
    out.emplace_back("start count " + std::to_string(inst.starts.size()) + " != goal count " +
                     std::to_string(inst.goals.size()));
    return out;
  }
  bool cells_ok = true;
  for (std::size_t i = 0; i < inst.starts.size(); ++i) {
    for (const auto& [what, c] : {std::pair{"start", inst.starts[i]}, std::pair{"goal", inst.goals[i]}}) {
      if (!inst.map.passable(c)) {
        out.push_back(std::string("agent ") + std::to_string(i) + " " + what + " " + describe(c) +
                      " is out of bounds or blocked");
        cells_ok = false;
      }
    }
  }
  for (const auto* cells : {&inst.starts, &inst.goals}) {
    std::set<Cell> seen;
    for (const Cell& c : *cells) {
      if (!seen.insert(c).second) {
        out.push_back(std::string(cells == &inst.starts ? "duplicate start " : "duplicate goal ") +
                      describe(c));
      }
    }
  }
  if (cells_ok) {
    const auto label = components(inst.map);
    for (std::size_t i = 0; i < inst.starts.size(); ++i) {
      if (label[inst.map.id(inst.starts[i])] != label[inst.map.id(inst.goals[i])]) {
        out.push_back("agent " + std::to_string(i) + " goal " + describe(inst.goals[i]) +
                      " unreachable from start " + describe(inst.starts[i]));
      }
    }
  }
  return out;
}

void check_instance(const Instance& instance) {
  const auto defects = instance_defects(instance);
  if (!defects.empty()) throw std::invalid_argument("invalid instance: " + defects.front());
}

std::pair<int, int> generator_shape(int n_agents, double obstacle_prob, double density) {
  if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must be in (0,1]");
  if (!(obstacle_prob >= 0.0 && obstacle_prob < 1.0)) {
    throw std::invalid_argument("obstacle_prob must be in [0,1)");
  }
  const double target_cells = (n_agents / density) / (1.0 - obstacle_prob);
  int best_h = 1, best_w = 1;
  double best_err = std::abs(1.0 - target_cells);
  const int max_side = static_cast<int>(std::ceil(std::sqrt(target_cells))) + 1;
  for (int h = 1; h <= max_side; ++h) {
    for (int w = h; w <= 2 * h; ++w) {
      const double err = std::abs(static_cast<double>(h) * w - target_cells);
      const bool better = err < best_err - 1e-9 ||
                          (std::abs(err - best_err) <= 1e-9 && (w - h) < (best_w - best_h));
      if (better) {
        best_err = err;
        best_h = h;
        best_w = w;
      }
    }
  }
  return {best_h, best_w};
}

namespace {

std::vector<Cell> sample_distinct(std::mt19937_64& rng, std::vector<Cell> pool, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + detail::uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

Instance generate_instance_on(int height, int width, int n_agents, std::uint64_t seed,
                              double obstacle_prob) {
  if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (!(obstacle_prob >= 0.0 && obstacle_prob < 1.0)) {
    throw std::invalid_argument("obstacle_prob must be in [0,1)");
  }
  constexpr int kMaxAttempts = 1000;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Cell> obstacles;
    std::vector<Cell> free;
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        if (detail::uniform01(rng) < obstacle_prob) {
          obstacles.push_back({r, c});
        } else {
          free.push_back({r, c});
        }
      }
    }
    if (free.size() < static_cast<std::size_t>(n_agents)) continue;
    Instance inst{GridMap(height, width, obstacles), {}, {}};
    inst.starts = sample_distinct(rng, free, n_agents);
    inst.goals = sample_distinct(rng, free, n_agents);
    if (instance_defects(inst).empty()) return inst;
  }
  throw GenerationError("no valid " + std::to_string(height) + "x" + std::to_string(width) +
                        " instance with " + std::to_string(n_agents) + " agents after " +
                        std::to_string(kMaxAttempts) + " attempts (seed " + std::to_string(seed) +
                        ")");
}

Instance generate_instance(int n_agents, std::uint64_t seed, double obstacle_prob, double density) {
  const auto [h, w] = generator_shape(n_agents, obstacle_prob, density);
  return generate_instance_on(h, w, n_agents, seed, obstacle_prob);
}

}  // namespace mapf
