#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ril/world/pose.hpp"

namespace ril {

/// Integer cell coordinates. `iy` counts rows from the top edge (row 0),
/// matching the RILMAP1 text layout.
struct CellIndex {
  int ix = 0;
  int iy = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Immutable binary occupancy map with a closed boundary.
///
/// World frame: x to the right, y upward. Cell (ix, iy) covers
/// [ix*res, (ix+1)*res) x [(height-1-iy)*res, (height-iy)*res).
class OccupancyGrid {
 public:
  OccupancyGrid() = default;

  /// Validates dimensions, cell count and boundary closure; throws ParseError.
  OccupancyGrid(int width, int height, double resolution, std::vector<std::uint8_t> cells,
                std::string name = {});

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const std::string& name() const { return name_; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  double width_m() const { return width_ * resolution_; }
  double height_m() const { return height_ * resolution_; }

  bool in_bounds(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < width_ && iy < height_; }
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * width_ + ix; }

  /// Out-of-bounds cells count as occupied.
  bool occupied(int ix, int iy) const { return !in_bounds(ix, iy) || cells_[index(ix, iy)] != 0; }
  bool occupied(CellIndex c) const { return occupied(c.ix, c.iy); }

  /// Cell containing a world point (may be out of bounds).
  CellIndex cell_at(double x, double y) const;
  CellIndex cell_at(const Point2& p) const { return cell_at(p.x, p.y); }
  Point2 cell_center(int ix, int iy) const;
  Point2 cell_center(CellIndex c) const { return cell_center(c.ix, c.iy); }

  std::size_t free_cell_count() const;

 private:
  int width_ = 0;
  int height_ = 0;
  double resolution_ = 0.0;
  std::vector<std::uint8_t> cells_;
  std::string name_;
};

/// Parses RILMAP1 text. Errors name the offending line.
OccupancyGrid load_map(std::string_view text, std::string name = {});

/// Reads a RILMAP1 file; the map name is the file stem.
OccupancyGrid load_map_file(const std::filesystem::path& path);

std::string to_text(const OccupancyGrid& grid);
void save_map_file(const OccupancyGrid& grid, const std::filesystem::path& path);

/// True if the disc (x, y, radius) overlaps any occupied cell square.
bool disc_collides(const OccupancyGrid& grid, double x, double y, double radius);

}  // namespace ril
