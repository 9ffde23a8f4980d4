#include "mapf/bypass.hpp"

#include <stdexcept>

#include "mapf/search.hpp"

namespace mapf {

CollisionClass classify(const Conflict& conflict, AgentSet c_pred) {
  if (conflict.a == conflict.b) throw std::invalid_argument("classify: conflict agents must differ");
  const AgentSet in_set = c_pred & AgentSet{conflict.a, conflict.b};
  switch (in_set.size()) {
    case 2:
      return {CollisionKind::UC, in_set};
    case 1:
      return {CollisionKind::HC, in_set};
    default:
      return {CollisionKind::AC, in_set};
  }
}

std::string_view to_string(CollisionKind kind) {
  switch (kind) {
    case CollisionKind::UC:
      return "UC";
    case CollisionKind::HC:
      return "HC";
    case CollisionKind::AC:
      return "AC";
  }
  return "?";
}

SolveResult solve_bpmstar(const Instance& instance, const SolveOptions& options) {
  return run_search(instance, SearchFlags{.bypass = true, .recursive = false}, options);
}

}  // namespace mapf
