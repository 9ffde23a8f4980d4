#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapf/conflicts.hpp"
#include "mapf/instance.hpp"
#include "mapf/solution.hpp"

namespace mapf {

struct Violation {
  /// Time step of the defect, or -1 for whole-solution defects.
  int time = -1;
  std::string description;
  std::optional<Conflict> conflict;
};

struct ValidationReport {
  bool ok = false;
  std::vector<Violation> violations;
  Cost recomputed_cost = 0;
};

/// Checks endpoints, move legality, obstacles, pairwise conflicts at every
/// time under `model`, and that the recomputed sum of costs (waits on one's
/// own goal are free) matches `solution.total_cost`.
ValidationReport validate(const Instance& instance, const Solution& solution, ConflictModel model);

/// One line per violation, then a summary line.
std::string to_text(const ValidationReport& report);

/// Independent joint-space A* over every agent's full move set.
SolveResult oracle_solve(const Instance& instance, const SolveOptions& options = {});

}  // namespace mapf
