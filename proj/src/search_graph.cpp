#include "mapf/search_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mapf {

namespace {
constexpr VertexId kProbe = kNoVertex - 1;
}

SearchGraph::SearchGraph(std::size_t n_agents, MergeMode mode)
    : n_(n_agents), mode_(mode), index_(0, TupleHash{this}, TupleEq{this}), probe_(n_agents) {
  if (n_agents == 0) throw std::invalid_argument("SearchGraph: no agents");
}

std::span<const CellId> SearchGraph::tuple(VertexId v) const {
  if (v == kProbe) return probe_;
  return cells(v);
}

std::size_t SearchGraph::TupleHash::operator()(VertexId v) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (CellId c : g->tuple(v)) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool SearchGraph::TupleEq::operator()(VertexId x, VertexId y) const {
  const auto a = g->tuple(x), b = g->tuple(y);
  return std::equal(a.begin(), a.end(), b.begin());
}

VertexId SearchGraph::find(std::span<const CellId> cells) const {
  std::copy(cells.begin(), cells.end(), probe_.begin());
  const auto it = index_.find(kProbe);
  return it == index_.end() ? kNoVertex : *it;
}

VertexId SearchGraph::intern(std::span<const CellId> cells, Cost h, bool* created) {
  if (cells.size() != n_) throw std::invalid_argument("SearchGraph::intern: tuple size mismatch");
  const VertexId known = find(cells);
  if (known != kNoVertex) {
    if (created) *created = false;
    return known;
  }
  if (vertices_.size() >= kProbe) throw std::length_error("SearchGraph: vertex id space exhausted");
  const auto id = static_cast<VertexId>(vertices_.size());
  pool_.insert(pool_.end(), cells.begin(), cells.end());
  vertices_.emplace_back().h = h;
  index_.insert(id);
  if (created) *created = true;
  return id;
}

void SearchGraph::add_back_edge(VertexId to, VertexId from) {
  auto& bs = vertices_[to].back_set;
  if (std::find(bs.begin(), bs.end(), from) == bs.end()) bs.push_back(from);
}

void SearchGraph::push_open(VertexId v) {
  JointVertex& jv = vertices_[v];
  jv.in_open = true;
  open_.push({jv.g + jv.h, jv.g, seq_++, v});
}

VertexId SearchGraph::pop_open() {
  while (!open_.empty()) {
    const Entry e = open_.top();
    open_.pop();
    JointVertex& jv = vertices_[e.id];
    if (!jv.in_open || jv.g != e.g) continue;
    jv.in_open = false;
    return e.id;
  }
  return kNoVertex;
}

std::size_t SearchGraph::backprop(VertexId v, const CollisionSet& c) {
  std::size_t changed = 0;
  std::vector<std::pair<VertexId, CollisionSet>> work{{v, c}};
  while (!work.empty()) {
    auto [k, incoming] = std::move(work.back());
    work.pop_back();
    JointVertex& jv = vertices_[k];
    if (jv.collision.covers(incoming, mode_)) continue;
    CollisionSet before;
    if (grow_hook_) before = jv.collision;
    jv.collision.absorb(incoming, mode_);
    ++changed;
    if (grow_hook_) grow_hook_(k, before, jv.collision);
    if (!jv.in_open) push_open(k);
    for (VertexId m : jv.back_set) work.emplace_back(m, jv.collision);
  }
  return changed;
}

bool SearchGraph::merge(VertexId v, const CollisionSet& c) {
  JointVertex& jv = vertices_[v];
  if (jv.collision.covers(c, mode_)) return false;
  CollisionSet before;
  if (grow_hook_) before = jv.collision;
  jv.collision.absorb(c, mode_);
  if (grow_hook_) grow_hook_(v, before, jv.collision);
  return true;
}

VertexId SearchGraph::back_to_start_point(VertexId v, std::size_t agent) const {
  while (true) {
    const VertexId t = vertices_[v].parent;
    if (t == kNoVertex || vertices_[t].collision.members().contains(agent)) return v;
    v = t;
  }
}

std::vector<VertexId> SearchGraph::chain(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId cur = v; cur != kNoVertex; cur = vertices_[cur].parent) {
    out.push_back(cur);
    if (out.size() > vertices_.size()) throw std::logic_error("SearchGraph: parent cycle");
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Solution SearchGraph::back_track(VertexId v, int map_width) const {
  const auto ids = chain(v);
  if (vertices_[ids.front()].g != 0) throw std::logic_error("back_track: chain does not reach the root");
  Solution sol;
  sol.paths.assign(n_, {});
  for (VertexId id : ids) {
    const auto cs = cells(id);
    for (std::size_t i = 0; i < n_; ++i) {
      sol.paths[i].push_back(Cell{static_cast<int>(cs[i]) / map_width, static_cast<int>(cs[i]) % map_width});
    }
  }
  sol.total_cost = vertices_[v].g;
  return sol;
}

}  // namespace mapf
