#include "mapf/conflicts.hpp"

#include <stdexcept>

namespace mapf {

std::vector<Conflict> detect_conflicts(std::span<const CellId> from, std::span<const CellId> to,
                                       ConflictModel model) {
  if (from.size() != to.size()) throw std::invalid_argument("detect_conflicts: tuple size mismatch");
  std::vector<Conflict> out;
  const std::size_t n = to.size();
  const bool swaps = model == ConflictModel::VertexAndSwap;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (to[a] == to[b]) out.push_back({a, b, ConflictKind::Vertex, to[a], to[a]});
      if (swaps && from[a] != to[a] && from[a] == to[b] && from[b] == to[a]) {
        out.push_back({a, b, ConflictKind::Swap, from[a], to[a]});
      }
    }
  }
  return out;
}

}  // namespace mapf
