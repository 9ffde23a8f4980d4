#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mapf {

using CellId = std::uint32_t;

struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

/// Rectangular 4-connected occupancy grid. Immutable after construction.
class GridMap {
 public:
  GridMap() = default;
  /// Builds a map of the given size. Throws std::invalid_argument when a
  /// dimension is not positive or an obstacle lies outside the map.
  GridMap(int height, int width, const std::vector<Cell>& obstacles = {});

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t cell_count() const { return blocked_.size(); }

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  bool passable(Cell c) const { return in_bounds(c) && !blocked_[id(c)]; }
  bool passable(CellId id) const { return id < blocked_.size() && !blocked_[id]; }

  CellId id(Cell c) const { return static_cast<CellId>(c.row * width_ + c.col); }
  Cell cell(CellId id) const {
    return {static_cast<int>(id) / width_, static_cast<int>(id) % width_};
  }

  std::size_t obstacle_count() const { return obstacle_count_; }
  std::size_t passable_count() const { return cell_count() - obstacle_count_; }
  std::vector<Cell> obstacles() const;

  bool operator==(const GridMap&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::size_t obstacle_count_ = 0;
  std::vector<std::uint8_t> blocked_;
};

/// Move set of a passable cell: the cell itself (wait), then up, down, left,
/// right, keeping only in-bounds passable targets. Throws
/// std::invalid_argument for an out-of-bounds or obstacle cell.
std::vector<Cell> neighbors(const GridMap& map, Cell c);

/// Allocation-free variant over cell ids with the same ordering; returns the
/// number of entries written into `out`. `c` must be passable.
std::size_t neighbors(const GridMap& map, CellId c, std::array<CellId, 5>& out);

}  // namespace mapf
