#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "mapf/agent_set.hpp"
#include "mapf/conflicts.hpp"
#include "mapf/grid.hpp"
#include "mapf/policy.hpp"
#include "mapf/search_graph.hpp"
#include "mapf/solution.hpp"

namespace mapf {

class SubplannerCache;

/// Thrown from inside a search when the time or vertex budget runs out.
struct BudgetExceeded {};

/// State shared by every search level of one solve.
struct SearchContext {
  SolveOptions options;
  std::chrono::steady_clock::time_point deadline;
  std::size_t vertices = 0;
  SearchStats stats;
  std::set<std::uint64_t> invoked_groups;

  explicit SearchContext(const SolveOptions& opts)
      : options(opts), deadline(std::chrono::steady_clock::now() + opts.budget.timeout) {}

  void check_deadline() const {
    if (std::chrono::steady_clock::now() > deadline) throw BudgetExceeded{};
  }
  void count_vertex() {
    ++vertices;
    if (options.budget.max_vertices != 0 && vertices > options.budget.max_vertices) throw BudgetExceeded{};
  }
};

/// A (sub-)problem in local agent order. Local agent i is global agent
/// global_ids[i]; global ids ascend.
struct SearchProblem {
  const GridMap* map = nullptr;
  std::vector<const Policy*> policies;
  std::vector<std::size_t> global_ids;
  std::vector<CellId> starts;
};

struct SearchFlags {
  bool bypass = false;
  /// Partitioned collision sets whose strict sub-groups follow sub-planners.
  bool recursive = false;
  /// Records root statistics and notifies the observer.
  bool top_level = true;
};

/// One best-first subdimensional-expansion search.
class Search {
 public:
  /// `cache` is required when flags.recursive is set.
  Search(SearchProblem problem, SearchFlags flags, SearchContext& ctx, SubplannerCache* cache = nullptr);
  Search(const Search&) = delete;
  Search& operator=(const Search&) = delete;

  /// Goal vertex, or kNoVertex when no conflict-free path exists. Throws
  /// BudgetExceeded.
  VertexId run();

  const SearchGraph& graph() const { return graph_; }
  VertexId root() const { return root_; }
  Solution solution(VertexId goal) const { return graph_.back_track(goal, problem_.map->width()); }
  const std::vector<PathSegment>& installed_segments() const { return segments_; }

 private:
  struct Pending {
    VertexId start;
    PathSegment segment;
  };

  std::size_t n() const { return problem_.global_ids.size(); }
  const Policy& policy(std::size_t agent) const { return *problem_.policies[agent]; }
  Cost sic(std::span<const CellId> cells) const;
  Cost edge_cost(std::span<const CellId> from, std::span<const CellId> to) const;
  bool is_goal(std::span<const CellId> cells) const;
  CellId free_next(const JointVertex& v, std::size_t agent, CellId cell) const;

  /// Per-agent move choices for the limited neighbors of `k`; false when a
  /// sub-group has no solution from here.
  bool choices(VertexId k, std::span<const CellId> from, std::vector<std::vector<CellId>>& out);
  void expand(VertexId k);
  void process_successor(VertexId k, std::span<const CellId> from, std::span<const CellId> to);
  void inherit_overrides(VertexId k, VertexId l, std::span<const CellId> to);

  CollisionSet bypass(VertexId k, std::span<const CellId> from, std::span<const CellId> to,
                      const std::vector<Conflict>& conflicts);
  bool try_bypass(VertexId k, std::span<const CellId> to, std::size_t agent, AgentSet pair,
                  std::vector<Pending>& pending, std::vector<std::vector<CellId>>& view_paths);
  void build_view(VertexId k, std::span<const CellId> to, std::vector<std::vector<CellId>>& paths);
  void generate_new_path(std::vector<Pending>& pending);
  bool activate_deferred(Cost bound);

  SearchProblem problem_;
  SearchFlags flags_;
  SearchContext& ctx_;
  SubplannerCache* cache_;
  SearchGraph graph_;
  std::vector<CellId> goals_;
  VertexId root_ = kNoVertex;
  std::vector<PathSegment> segments_;
  std::unordered_map<std::uint64_t, std::uint32_t> installed_;
  std::vector<VertexId> deferred_vertices_;
  std::set<std::vector<CellId>> root_successors_;
};

/// Policies for every agent of `instance`, indexed by agent.
std::vector<Policy> compute_policies(const Instance& instance);

/// Shared driver behind the public solvers.
SolveResult run_search(const Instance& instance, SearchFlags flags, const SolveOptions& options);

}  // namespace mapf
