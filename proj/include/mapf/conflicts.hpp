#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mapf/grid.hpp"
#include "mapf/instance.hpp"

namespace mapf {

enum class ConflictKind { Vertex, Swap };

/// Conflict between agents a < b. A vertex conflict is at `cell`; a swap
/// moves a from `cell` to `other_cell` while b goes the opposite way.
struct Conflict {
  std::size_t a = 0;
  std::size_t b = 0;
  ConflictKind kind = ConflictKind::Vertex;
  CellId cell = 0;
  CellId other_cell = 0;

  bool operator==(const Conflict&) const = default;
};

/// Conflicts on the joint transition `from` -> `to`, ordered by (a, b) with
/// the vertex conflict of a pair before its swap conflict.
std::vector<Conflict> detect_conflicts(std::span<const CellId> from, std::span<const CellId> to,
                                       ConflictModel model);

}  // namespace mapf
