#include "mapf/recursion.hpp"

#include <stdexcept>

#include "mapf/search.hpp"

namespace mapf {

SubplannerCache::SubplannerCache(const GridMap& map, std::vector<const Policy*> global_policies, bool use_bypass,
                                 SearchContext& ctx, bool spot_check)
    : map_(map), policies_(std::move(global_policies)), use_bypass_(use_bypass), ctx_(ctx), spot_check_(spot_check) {}

std::size_t SubplannerCache::KeyHash::operator()(const std::vector<CellId>& key) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (CellId c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

std::vector<CellId> SubplannerCache::make_key(AgentSet group, std::span<const CellId> config) {
  std::vector<CellId> key;
  key.reserve(config.size() + 2);
  key.push_back(static_cast<CellId>(group.bits() & 0xffffffffU));
  key.push_back(static_cast<CellId>(group.bits() >> 32));
  key.insert(key.end(), config.begin(), config.end());
  return key;
}

const SubplanStep& SubplannerCache::step(AgentSet group, std::span<const CellId> config) {
  if (group.size() != config.size()) throw std::invalid_argument("SubplannerCache: group/config size mismatch");
  ctx_.invoked_groups.insert(group.bits());
  const auto key = make_key(group, config);
  if (auto it = entries_.find(key); it != entries_.end()) {
    ++ctx_.stats.cache_hits;
    if (spot_check_ && ++hits_ % 10 == 0) {
      SubplannerCache fresh(map_, policies_, use_bypass_, ctx_, false);
      const SubplanStep& again = fresh.step(group, config);
      ++ctx_.stats.spot_checks;
      if (again.solvable != it->second.solvable || again.cost_to_go != it->second.cost_to_go) {
        ++ctx_.stats.spot_check_mismatches;
      }
    }
    return it->second;
  }
  solve_into(group, config);
  return entries_.at(key);
}

void SubplannerCache::solve_into(AgentSet group, std::span<const CellId> config) {
  ++ctx_.stats.subplanner_calls;
  SearchProblem problem;
  problem.map = &map_;
  for (std::size_t g : group.members()) {
    problem.global_ids.push_back(g);
    problem.policies.push_back(policies_.at(g));
  }
  problem.starts.assign(config.begin(), config.end());
  Search sub(std::move(problem), SearchFlags{.bypass = use_bypass_, .recursive = true, .top_level = false}, ctx_,
             this);
  const VertexId goal = sub.run();
  if (goal == kNoVertex) {
    entries_[make_key(group, config)] = SubplanStep{false, {}, 0};
    return;
  }
  const SearchGraph& g = sub.graph();
  const auto chain = g.chain(goal);
  const Cost total = g.vertex(goal).g;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto here = g.cells(chain[i]);
    const auto next = g.cells(chain[i + 1 < chain.size() ? i + 1 : i]);
    SubplanStep s{true, std::vector<CellId>(next.begin(), next.end()), total - g.vertex(chain[i]).g};
    entries_.try_emplace(make_key(group, here), std::move(s));
  }
}

SolveResult solve_recursive(const Instance& instance, bool use_bypass, const SolveOptions& options) {
  return run_search(instance, SearchFlags{.bypass = use_bypass, .recursive = true}, options);
}

}  // namespace mapf
