#include "mapf/search.hpp"

#include <algorithm>
#include <stdexcept>

#include "mapf/bypass.hpp"
#include "mapf/recursion.hpp"

namespace mapf {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Solved:
      return "solved";
    case Outcome::NoPath:
      return "nopath";
    case Outcome::Timeout:
      return "timeout";
  }
  return "unknown";
}

Search::Search(SearchProblem problem, SearchFlags flags, SearchContext& ctx, SubplannerCache* cache)
    : problem_(std::move(problem)),
      flags_(flags),
      ctx_(ctx),
      cache_(cache),
      graph_(problem_.global_ids.size(), flags.recursive ? MergeMode::Partitioned : MergeMode::Flat) {
  if (problem_.map == nullptr) throw std::invalid_argument("Search: no map");
  if (problem_.policies.size() != n() || problem_.starts.size() != n()) {
    throw std::invalid_argument("Search: per-agent inputs differ in length");
  }
  if (flags_.recursive && cache_ == nullptr) throw std::invalid_argument("Search: recursive mode needs a cache");
  for (std::size_t i = 0; i < n(); ++i) goals_.push_back(policy(i).goal());
  if (SearchObserver* obs = ctx_.options.observer) {
    graph_.set_grow_hook([this, obs](VertexId v, const CollisionSet& before, const CollisionSet& after) {
      obs->on_collision_set_grow(graph_, v, before, after);
    });
  }
}

Cost Search::sic(std::span<const CellId> cells) const {
  Cost h = 0;
  for (std::size_t i = 0; i < n(); ++i) {
    const Cost c = policy(i).cost_to_go(cells[i]);
    if (c == kUnreachable) throw std::invalid_argument("sic: agent cannot reach its goal");
    h += c;
  }
  return h;
}

Cost Search::edge_cost(std::span<const CellId> from, std::span<const CellId> to) const {
  Cost c = 0;
  for (std::size_t i = 0; i < n(); ++i) {
    if (!(from[i] == goals_[i] && to[i] == goals_[i])) ++c;
  }
  return c;
}

bool Search::is_goal(std::span<const CellId> cells) const {
  return std::equal(cells.begin(), cells.end(), goals_.begin());
}

CellId Search::free_next(const JointVertex& v, std::size_t agent, CellId cell) const {
  if (const Override* o = v.override_for(agent)) {
    const auto& seg = segments_[o->segment].cells;
    return o->index + 1 < seg.size() ? seg[o->index + 1] : seg.back();
  }
  return policy(agent).canonical_next(cell);
}

VertexId Search::run() {
  root_ = graph_.intern(problem_.starts, sic(problem_.starts));
  ctx_.count_vertex();
  graph_.vertex(root_).g = 0;
  graph_.push_open(root_);
  const bool strict = flags_.bypass && ctx_.options.strict_optimality;
  while (true) {
    const VertexId v = graph_.pop_open();
    if (v == kNoVertex) {
      if (strict && activate_deferred(kInfiniteCost)) continue;
      return kNoVertex;
    }
    if (is_goal(graph_.cells(v))) {
      if (strict && activate_deferred(graph_.vertex(v).g)) {
        graph_.push_open(v);
        continue;
      }
      return v;
    }
    expand(v);
  }
}

bool Search::choices(VertexId k, std::span<const CellId> from, std::vector<std::vector<CellId>>& out) {
  out.assign(n(), {});
  const JointVertex& vk = graph_.vertex(k);
  const AgentSet level = AgentSet::first_n(n());
  AgentSet assigned;
  std::array<CellId, 5> adj{};
  for (AgentSet group : vk.collision.groups()) {
    assigned |= group;
    if (!flags_.recursive || group == level) {
      for (std::size_t i : group.members()) {
        const std::size_t cnt = neighbors(*problem_.map, from[i], adj);
        out[i].assign(adj.begin(), adj.begin() + cnt);
      }
    } else if (group.size() == 1) {
      const std::size_t i = group.members().front();
      out[i] = {policy(i).canonical_next(from[i])};
    } else {
      const auto members = group.members();
      AgentSet global;
      std::vector<CellId> config;
      for (std::size_t i : members) {
        global.insert(problem_.global_ids[i]);
        config.push_back(from[i]);
      }
      const SubplanStep& step = cache_->step(global, config);
      if (!step.solvable) return false;
      for (std::size_t j = 0; j < members.size(); ++j) out[members[j]] = {step.next[j]};
    }
  }
  for (std::size_t i = 0; i < n(); ++i) {
    if (!assigned.contains(i)) out[i] = {free_next(vk, i, from[i])};
  }
  return true;
}

void Search::expand(VertexId k) {
  ctx_.check_deadline();
  ++graph_.vertex(k).expansions;
  ++ctx_.stats.expansions;
  const auto cs = graph_.cells(k);
  const std::vector<CellId> from(cs.begin(), cs.end());
  std::vector<std::vector<CellId>> opts;
  const bool live = choices(k, from, opts);

  std::size_t count = live ? 1 : 0;
  if (live) {
    for (const auto& o : opts) {
      count = count > std::numeric_limits<std::size_t>::max() / o.size() ? std::numeric_limits<std::size_t>::max()
                                                                         : count * o.size();
    }
  }
  const bool at_root = flags_.top_level && k == root_;
  if (flags_.top_level && ctx_.options.observer) ctx_.options.observer->on_expand(graph_, k, count);
  if (at_root) ctx_.stats.root_expansion_sizes.push_back(count);
  if (!live) return;

  std::vector<std::size_t> idx(n(), 0);
  std::vector<CellId> to(n());
  std::uint64_t produced = 0;
  while (true) {
    for (std::size_t i = 0; i < n(); ++i) to[i] = opts[i][idx[i]];
    if (at_root) root_successors_.insert(to);
    if (to != from) process_successor(k, from, to);
    if ((++produced & 255) == 0) ctx_.check_deadline();
    std::size_t i = 0;
    while (i < n() && ++idx[i] == opts[i].size()) idx[i++] = 0;
    if (i == n()) break;
  }
  if (at_root) ctx_.stats.root_distinct_successors = root_successors_.size();
}

void Search::process_successor(VertexId k, std::span<const CellId> from, std::span<const CellId> to) {
  bool created = false;
  const VertexId l = graph_.intern(to, sic(to), &created);
  if (created) {
    ctx_.count_vertex();
    ++ctx_.stats.generated;
  }
  graph_.add_back_edge(l, k);
  const auto conflicts = detect_conflicts(from, to, ctx_.options.model);
  if (!conflicts.empty()) {
    CollisionSet c_new;
    if (flags_.bypass) {
      c_new = bypass(k, from, to, conflicts);
    } else {
      for (const Conflict& c : conflicts) c_new.absorb(AgentSet{c.a, c.b}, graph_.merge_mode());
    }
    graph_.merge(l, c_new);
  }
  graph_.backprop(k, CollisionSet(graph_.vertex(l).collision));
  if (!conflicts.empty()) return;
  JointVertex& vk = graph_.vertex(k);
  JointVertex& vl = graph_.vertex(l);
  const Cost g = vk.g + edge_cost(from, to);
  if (g < vl.g) {
    vl.g = g;
    vl.parent = k;
    graph_.push_open(l);
  }
  inherit_overrides(k, l, to);
}

void Search::inherit_overrides(VertexId k, VertexId l, std::span<const CellId> to) {
  const JointVertex& vk = graph_.vertex(k);
  JointVertex& vl = graph_.vertex(l);
  const AgentSet in_set = vk.collision.members();
  bool added = false;
  for (const Override& o : vk.overrides) {
    if (in_set.contains(o.agent) || vl.override_for(o.agent)) continue;
    const auto& seg = segments_[o.segment].cells;
    const auto next = static_cast<std::uint32_t>(std::min<std::size_t>(o.index + 1, seg.size() - 1));
    if (to[o.agent] != seg[next]) continue;
    vl.overrides.push_back({o.agent, o.segment, next});
    added = true;
  }
  if (added && vl.expansions > 0 && !vl.in_open && vl.g != kInfiniteCost) graph_.push_open(l);
}

CollisionSet Search::bypass(VertexId k, std::span<const CellId> from, std::span<const CellId> to,
                            const std::vector<Conflict>& conflicts) {
  (void)from;
  const MergeMode mode = graph_.merge_mode();
  const CollisionSet& ck = graph_.vertex(k).collision;
  const AgentSet c_pred = ck.members();
  CollisionSet c_new;
  std::vector<Pending> pending;
  std::vector<std::vector<CellId>> view_paths;
  bool any_failed = false;
  SearchObserver* obs = ctx_.options.observer;

  for (const Conflict& c : conflicts) {
    const CollisionClass cls = classify(c, c_pred);
    const AgentSet pair{c.a, c.b};
    std::size_t calls = 0;
    auto attempt = [&](std::size_t agent) {
      ++calls;
      return try_bypass(k, to, agent, pair, pending, view_paths);
    };
    switch (cls.kind) {
      case CollisionKind::UC:
        // Distinct groups still have to be merged into one.
        if (mode == MergeMode::Partitioned && ck.group_of(c.a) != ck.group_of(c.b)) {
          c_new.absorb(pair, mode);
        } else {
          ++ctx_.stats.uc_exemptions;
        }
        break;
      case CollisionKind::HC: {
        const std::size_t inside = cls.in_set.contains(c.a) ? c.a : c.b;
        const std::size_t outside = inside == c.a ? c.b : c.a;
        if (attempt(outside)) {
          c_new.absorb(AgentSet::of(inside), mode);
        } else {
          c_new.absorb(pair, mode);
          any_failed = true;
        }
        break;
      }
      case CollisionKind::AC:
        if (!attempt(c.a) && !attempt(c.b)) {
          c_new.absorb(pair, mode);
          any_failed = true;
        }
        break;
    }
    if (obs) obs->on_conflict_classified(c, cls.kind, c_pred, calls);
  }
  if (!any_failed && !pending.empty()) generate_new_path(pending);
  return c_new;
}

bool Search::try_bypass(VertexId k, std::span<const CellId> to, std::size_t agent, AgentSet pair,
                        std::vector<Pending>& pending, std::vector<std::vector<CellId>>& view_paths) {
  auto defer = [&](VertexId start) {
    if (start == k || !ctx_.options.strict_optimality) return;
    JointVertex& vk = graph_.vertex(k);
    if (vk.deferred.empty()) deferred_vertices_.push_back(k);
    vk.deferred.absorb(pair, graph_.merge_mode());
  };
  for (const Pending& p : pending) {
    if (p.segment.agent == agent) {
      defer(p.start);
      return true;
    }
  }
  ++ctx_.stats.bypass_attempts;
  if (view_paths.empty()) build_view(k, to, view_paths);
  const VertexId s = graph_.back_to_start_point(k, agent);
  int t0 = 0;
  for (VertexId v = s; graph_.vertex(v).parent != kNoVertex; v = graph_.vertex(v).parent) ++t0;
  OccupancyView view(n());
  for (std::size_t j = 0; j < n(); ++j) {
    if (j != agent) view.set_path(j, view_paths[j]);
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(agent) << 32) | s;
  bool ok = false;
  if (const auto it = installed_.find(key); it != installed_.end()) {
    PathSegment seg = segments_[it->second];
    seg.start_time = t0;
    ok = segment_is_clear(seg, view, ctx_.options.model);
  } else {
    auto seg = find_bypass(policy(agent), graph_.cells(s)[agent], t0, view, ctx_.options.model);
    if (seg) {
      seg->agent = agent;
      pending.push_back({s, std::move(*seg)});
      ok = true;
    }
  }
  if (ok) {
    ++ctx_.stats.bypass_successes;
    defer(s);
  } else {
    ++ctx_.stats.bypass_failures;
  }
  return ok;
}

void Search::build_view(VertexId k, std::span<const CellId> to, std::vector<std::vector<CellId>>& paths) {
  const auto chain = graph_.chain(k);
  const JointVertex& vk = graph_.vertex(k);
  const AgentSet in_set = vk.collision.members();
  paths.assign(n(), {});
  for (std::size_t j = 0; j < n(); ++j) {
    auto& p = paths[j];
    p.reserve(chain.size() + 1);
    for (VertexId v : chain) p.push_back(graph_.cells(v)[j]);
    p.push_back(to[j]);
    const Override* o = in_set.contains(j) ? nullptr : vk.override_for(j);
    if (o != nullptr) {
      const auto& seg = segments_[o->segment].cells;
      for (std::size_t i = o->index + 2; i < seg.size(); ++i) p.push_back(seg[i]);
    } else {
      for (CellId c = to[j]; c != goals_[j];) {
        c = policy(j).canonical_next(c);
        p.push_back(c);
      }
    }
  }
}

void Search::generate_new_path(std::vector<Pending>& pending) {
  for (Pending& p : pending) {
    const std::size_t agent = p.segment.agent;
    const Cost h = policy(agent).cost_to_go(p.segment.cells.front());
    ++ctx_.stats.bypass_installs;
    if (p.segment.cost() != h) ++ctx_.stats.bypass_cost_violations;
    if (ctx_.options.observer) ctx_.options.observer->on_bypass_installed(p.segment, h);
    const auto id = static_cast<std::uint32_t>(segments_.size());
    segments_.push_back(std::move(p.segment));
    installed_[(static_cast<std::uint64_t>(agent) << 32) | p.start] = id;
    JointVertex& vs = graph_.vertex(p.start);
    auto it = std::find_if(vs.overrides.begin(), vs.overrides.end(),
                           [&](const Override& o) { return o.agent == agent; });
    if (it != vs.overrides.end()) {
      *it = {agent, id, 0};
    } else {
      vs.overrides.push_back({agent, id, 0});
    }
    if (!vs.in_open) graph_.push_open(p.start);
  }
}

bool Search::activate_deferred(Cost bound) {
  bool any = false;
  std::vector<VertexId> keep;
  for (VertexId v : deferred_vertices_) {
    JointVertex& jv = graph_.vertex(v);
    if (jv.deferred.empty()) continue;
    if (jv.g != kInfiniteCost && jv.g + jv.h < bound) {
      const CollisionSet d = std::move(jv.deferred);
      jv.deferred = CollisionSet{};
      if (graph_.backprop(v, d) > 0) {
        any = true;
        ++ctx_.stats.deferred_activations;
      }
    } else {
      keep.push_back(v);
    }
  }
  deferred_vertices_ = std::move(keep);
  return any;
}

std::vector<Policy> compute_policies(const Instance& instance) {
  std::vector<Policy> out;
  out.reserve(instance.n_agents());
  for (std::size_t i = 0; i < instance.n_agents(); ++i) out.push_back(compute_policy(instance.map, i, instance.goals[i]));
  return out;
}

SolveResult run_search(const Instance& instance, SearchFlags flags, const SolveOptions& options) {
  check_instance(instance);
  if (instance.n_agents() > kMaxAgents) throw std::invalid_argument("more than 64 agents");
  const auto policies = compute_policies(instance);
  SearchContext ctx(options);
  SearchProblem problem;
  problem.map = &instance.map;
  for (std::size_t i = 0; i < instance.n_agents(); ++i) {
    problem.policies.push_back(&policies[i]);
    problem.global_ids.push_back(i);
    problem.starts.push_back(instance.map.id(instance.starts[i]));
  }
  std::optional<SubplannerCache> cache;
  if (flags.recursive) {
    cache.emplace(instance.map, problem.policies, flags.bypass && options.bypass_in_subplanners, ctx,
                  options.cache_spot_check);
  }
  flags.top_level = true;
  SolveResult result;
  try {
    Search search(std::move(problem), flags, ctx, cache ? &*cache : nullptr);
    const VertexId goal = search.run();
    if (goal == kNoVertex) {
      result.outcome = Outcome::NoPath;
    } else {
      result.outcome = Outcome::Solved;
      result.solution = search.solution(goal);
    }
  } catch (const BudgetExceeded&) {
    result.outcome = Outcome::Timeout;
  }
  result.stats = std::move(ctx.stats);
  result.stats.invoked_groups.assign(ctx.invoked_groups.begin(), ctx.invoked_groups.end());
  return result;
}

}  // namespace mapf
