#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "mapf/agent_set.hpp"
#include "mapf/conflicts.hpp"
#include "mapf/grid.hpp"
#include "mapf/instance.hpp"
#include "mapf/policy.hpp"

namespace mapf {

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();

/// Per-agent paths of equal length (padded with goal waits). Entry t of each
/// path is the agent's cell at time t.
struct Solution {
  std::vector<std::vector<Cell>> paths;
  Cost total_cost = 0;

  std::size_t makespan() const { return paths.empty() ? 0 : paths.front().size() - 1; }
  bool operator==(const Solution&) const = default;
};

enum class Outcome { Solved, NoPath, Timeout };
std::string_view to_string(Outcome outcome);

struct Budget {
  std::chrono::milliseconds timeout{60'000};
  /// Joint vertices across every search level of one solve; 0 means no cap.
  std::size_t max_vertices = 4'000'000;
};

struct SearchStats {
  std::uint64_t expansions = 0;
  std::uint64_t generated = 0;
  std::uint64_t bypass_attempts = 0;
  std::uint64_t bypass_successes = 0;
  std::uint64_t bypass_failures = 0;
  std::uint64_t bypass_installs = 0;
  /// Installed segments whose cost differs from the cost-to-go at their start.
  std::uint64_t bypass_cost_violations = 0;
  /// Conflicts skipped because both agents were already colliding.
  std::uint64_t uc_exemptions = 0;
  std::uint64_t deferred_activations = 0;
  std::vector<std::size_t> root_expansion_sizes;
  std::size_t root_distinct_successors = 0;
  std::uint64_t subplanner_calls = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t spot_checks = 0;
  std::uint64_t spot_check_mismatches = 0;
  /// Global agent masks for which a sub-planner was queried, sorted.
  std::vector<std::uint64_t> invoked_groups;
};

struct SolveResult {
  Outcome outcome = Outcome::NoPath;
  std::optional<Solution> solution;
  SearchStats stats;
};

class SearchGraph;
enum class CollisionKind { UC, HC, AC };

/// Hooks into a running search. Every call happens on the solving thread.
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  /// `limited` is the number of limited-neighbor tuples of the expansion.
  virtual void on_expand(const SearchGraph&, std::uint32_t /*vertex*/, std::size_t /*limited*/) {}
  virtual void on_collision_set_grow(const SearchGraph&, std::uint32_t /*vertex*/,
                                     const CollisionSet& /*before*/, const CollisionSet& /*after*/) {}
  /// One call per conflict handled by bypass, after its attempts ran.
  virtual void on_conflict_classified(const Conflict&, CollisionKind, AgentSet /*c_pred*/,
                                      std::size_t /*find_bypass_calls*/) {}
  virtual void on_bypass_installed(const PathSegment& /*segment*/, Cost /*cost_to_go_at_start*/) {}
};

struct SolveOptions {
  ConflictModel model = ConflictModel::VertexAndSwap;
  Budget budget;
  SearchObserver* observer = nullptr;
  /// Re-opens predecessors of conflicts that a bypass resolved upstream
  /// before accepting a goal, which keeps bypass searches exact.
  bool strict_optimality = true;
  /// Recursive solvers: re-solve every tenth cache hit from scratch.
  bool cache_spot_check = false;
  /// Recursive bypass solver: also bypass inside sub-planners.
  bool bypass_in_subplanners = true;
};

}  // namespace mapf
