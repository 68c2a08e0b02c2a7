#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ril/world/occupancy_grid.hpp"

namespace ril {

/// Blocked mask (1 = blocked) of cells that are occupied or whose center lies
/// within `radius` of an occupied cell.
std::vector<std::uint8_t> inflate_obstacles(const OccupancyGrid& grid, double radius);

struct GridEdge {
  CellIndex to;
  double cost = 0.0;
};

/// 8-connected traversal graph over an inflated grid. Straight moves cost one
/// resolution, diagonal moves resolution*sqrt(2); a diagonal move is allowed
/// only when both cells it cuts past are traversable.
class GridGraph {
 public:
  GridGraph(const OccupancyGrid& grid, double inflate);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  std::size_t cell_count() const { return blocked_.size(); }
  std::size_t index(CellIndex c) const { return static_cast<std::size_t>(c.iy) * width_ + c.ix; }
  CellIndex cell(std::size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }

  bool traversable(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < width_ && iy < height_ && blocked_[static_cast<std::size_t>(iy) * width_ + ix] == 0;
  }
  bool traversable(CellIndex c) const { return traversable(c.ix, c.iy); }

  /// Writes the outgoing edges of `from` into `out`, returns how many.
  int neighbors(CellIndex from, std::array<GridEdge, 8>& out) const;

  /// Connected-component label per cell; -1 for blocked cells.
  const std::vector<int>& components() const { return components_; }

  const std::vector<std::uint8_t>& blocked() const { return blocked_; }

 private:
  int width_ = 0;
  int height_ = 0;
  double resolution_ = 0.0;
  std::vector<std::uint8_t> blocked_;
  std::vector<int> components_;
};

}  // namespace ril
