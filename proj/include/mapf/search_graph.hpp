#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <unordered_set>
#include <vector>

#include "mapf/agent_set.hpp"
#include "mapf/policy.hpp"
#include "mapf/solution.hpp"

namespace mapf {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Agent `agent` continues along installed segment `segment` from `index`.
struct Override {
  std::size_t agent;
  std::uint32_t segment;
  std::uint32_t index;
};

struct JointVertex {
  Cost g = kInfiniteCost;
  Cost h = 0;
  VertexId parent = kNoVertex;
  std::vector<VertexId> back_set;
  CollisionSet collision;
  std::vector<Override> overrides;
  /// Conflicts resolved by a bypass that began at an ancestor.
  CollisionSet deferred;
  bool in_open = false;
  std::uint32_t expansions = 0;

  const Override* override_for(std::size_t agent) const {
    for (const Override& o : overrides) {
      if (o.agent == agent) return &o;
    }
    return nullptr;
  }
};

/// Explored joint graph: vertices keyed by their cell tuple, an open list
/// ordered by f = g + h (ties: larger g, then earlier insertion) and the
/// collision-set propagation of subdimensional expansion.
class SearchGraph {
 public:
  SearchGraph(std::size_t n_agents, MergeMode mode);
  SearchGraph(const SearchGraph&) = delete;
  SearchGraph& operator=(const SearchGraph&) = delete;

  std::size_t n_agents() const { return n_; }
  MergeMode merge_mode() const { return mode_; }
  std::size_t size() const { return vertices_.size(); }

  /// Returns the vertex for `cells`, creating it with heuristic `h` if new.
  /// `created` reports whether it was new. Cells are copied.
  VertexId intern(std::span<const CellId> cells, Cost h, bool* created = nullptr);
  /// kNoVertex when the tuple is unknown.
  VertexId find(std::span<const CellId> cells) const;

  std::span<const CellId> cells(VertexId v) const { return {pool_.data() + std::size_t{v} * n_, n_}; }
  JointVertex& vertex(VertexId v) { return vertices_[v]; }
  const JointVertex& vertex(VertexId v) const { return vertices_[v]; }

  void add_back_edge(VertexId to, VertexId from);

  /// Pushes `v` with its current g and marks it open.
  void push_open(VertexId v);
  /// Pops the best live entry, or kNoVertex when the list is exhausted.
  VertexId pop_open();
  bool open_empty() const { return open_.empty(); }
  std::uint64_t open_insertions() const { return seq_; }

  /// Merges `c` into C_v. When anything changed, re-opens v if it is not on
  /// the open list and continues through v's back set. Covered sets stop the
  /// walk without any mutation. Returns the number of vertices changed.
  std::size_t backprop(VertexId v, const CollisionSet& c);
  /// Merges `c` into C_v without re-opening or propagating.
  bool merge(VertexId v, const CollisionSet& c);

  /// Walks parent links from `v` and stops at the first vertex whose parent is
  /// absent or holds `agent` in its collision set.
  VertexId back_to_start_point(VertexId v, std::size_t agent) const;

  /// Parent chain from the root to `v`, both included.
  std::vector<VertexId> chain(VertexId v) const;

  /// Per-agent paths along the parent chain of `v`; total cost is v's g.
  Solution back_track(VertexId v, int map_width) const;

  /// Called for each vertex whose collision set grows.
  void set_grow_hook(std::function<void(VertexId, const CollisionSet&, const CollisionSet&)> hook) {
    grow_hook_ = std::move(hook);
  }

 private:
  struct Entry {
    Cost f;
    Cost g;
    std::uint64_t seq;
    VertexId id;
  };
  struct EntryAfter {
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.f != y.f) return x.f > y.f;
      if (x.g != y.g) return x.g < y.g;
      return x.seq > y.seq;
    }
  };
  struct TupleHash {
    const SearchGraph* g;
    std::size_t operator()(VertexId v) const;
  };
  struct TupleEq {
    const SearchGraph* g;
    bool operator()(VertexId x, VertexId y) const;
  };

  std::span<const CellId> tuple(VertexId v) const;

  std::size_t n_;
  MergeMode mode_;
  std::vector<CellId> pool_;
  std::deque<JointVertex> vertices_;
  std::unordered_set<VertexId, TupleHash, TupleEq> index_;
  std::priority_queue<Entry, std::vector<Entry>, EntryAfter> open_;
  std::uint64_t seq_ = 0;
  std::function<void(VertexId, const CollisionSet&, const CollisionSet&)> grow_hook_;
  mutable std::vector<CellId> probe_;
};

}  // namespace mapf
