#include "mapf/grid.hpp"

#include <stdexcept>
#include <string>

namespace mapf {

GridMap::GridMap(int height, int width, const std::vector<Cell>& obstacles)
    : height_(height), width_(width) {
  if (height <= 0 || width <= 0) {
    throw std::invalid_argument("grid dimensions must be positive, got " + std::to_string(height) +
                                "x" + std::to_string(width));
  }
  blocked_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), 0);
  for (const Cell& c : obstacles) {
    if (!in_bounds(c)) {
      throw std::invalid_argument("obstacle (" + std::to_string(c.row) + "," +
                                  std::to_string(c.col) + ") outside map");
    }
    auto& slot = blocked_[id(c)];
    if (!slot) {
      slot = 1;
      ++obstacle_count_;
    }
  }
}

std::vector<Cell> GridMap::obstacles() const {
  std::vector<Cell> out;
  out.reserve(obstacle_count_);
  for (CellId i = 0; i < blocked_.size(); ++i) {
    if (blocked_[i]) out.push_back(cell(i));
  }
  return out;
}

std::vector<Cell> neighbors(const GridMap& map, Cell c) {
  if (!map.passable(c)) {
    throw std::invalid_argument("neighbors: cell (" + std::to_string(c.row) + "," +
                                std::to_string(c.col) + ") is out of bounds or blocked");
  }
  std::array<CellId, 5> ids{};
  const std::size_t n = neighbors(map, map.id(c), ids);
  std::vector<Cell> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(map.cell(ids[i]));
  return out;
}

std::size_t neighbors(const GridMap& map, CellId c, std::array<CellId, 5>& out) {
  const int w = map.width();
  const int row = static_cast<int>(c) / w;
  const int col = static_cast<int>(c) % w;
  std::size_t n = 0;
  out[n++] = c;
  if (row > 0 && map.passable(c - w)) out[n++] = c - w;
  if (row + 1 < map.height() && map.passable(c + w)) out[n++] = c + w;
  if (col > 0 && map.passable(c - 1)) out[n++] = c - 1;
  if (col + 1 < w && map.passable(c + 1)) out[n++] = c + 1;
  return n;
}

}  // namespace mapf
