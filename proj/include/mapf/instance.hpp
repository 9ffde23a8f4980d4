#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapf/grid.hpp"

namespace mapf {

enum class ConflictModel { VertexOnly, VertexAndSwap };

std::string_view to_string(ConflictModel model);
/// Accepts "vertex"/"vertex_only" and "vertex_swap"/"vertex_and_swap".
ConflictModel parse_conflict_model(std::string_view text);

struct Instance {
  GridMap map;
  std::vector<Cell> starts;
  std::vector<Cell> goals;

  std::size_t n_agents() const { return starts.size(); }
  bool operator==(const Instance&) const = default;
};

/// Every violated Instance invariant, as readable messages. Empty means valid.
std::vector<std::string> instance_defects(const Instance& instance);

/// Throws std::invalid_argument listing the first defect, if any.
void check_instance(const Instance& instance);

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Map shape used by the random generator: the rectangle with aspect ratio at
/// most 2 whose expected passable count is closest to n_agents / density.
/// Returns {height, width}.
std::pair<int, int> generator_shape(int n_agents, double obstacle_prob, double density);

/// Random instance following the benchmark protocol: independent obstacles,
/// distinct starts and distinct goals on passable cells, every goal reachable
/// from its start. Deterministic in `seed`. Throws GenerationError after 1000
/// failed attempts and std::invalid_argument on bad parameters.
Instance generate_instance(int n_agents, std::uint64_t seed, double obstacle_prob = 0.2,
                           double density = 0.01);

/// Same sampling procedure on a caller-chosen map size.
Instance generate_instance_on(int height, int width, int n_agents, std::uint64_t seed,
                              double obstacle_prob = 0.2);

}  // namespace mapf
