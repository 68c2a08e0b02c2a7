#include "ril/world/occupancy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ril/common/error.hpp"
#include "ril/common/format.hpp"

namespace ril {
namespace {

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

bool on_boundary(int ix, int iy, int width, int height) {
  return ix == 0 || iy == 0 || ix == width - 1 || iy == height - 1;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  // A trailing newline produces one empty line; drop trailing empties.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

OccupancyGrid::OccupancyGrid(int width, int height, double resolution, std::vector<std::uint8_t> cells,
                             std::string name)
    : width_(width), height_(height), resolution_(resolution), cells_(std::move(cells)), name_(std::move(name)) {
  if (width_ < 3 || height_ < 3) throw ParseError("map must be at least 3x3 cells");
  if (!(resolution_ > 0.0) || !std::isfinite(resolution_)) throw ParseError("map resolution must be positive");
  if (cells_.size() != static_cast<std::size_t>(width_) * height_) {
    throw ParseError("cell count " + std::to_string(cells_.size()) + " does not match " + std::to_string(width_) +
                     "x" + std::to_string(height_));
  }
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) {
      if (on_boundary(ix, iy, width_, height_) && cells_[index(ix, iy)] == 0) {
        throw ParseError("row " + std::to_string(iy + 1) + ": boundary cell " + std::to_string(ix) +
                         " is free (map must be closed)");
      }
    }
  }
}

CellIndex OccupancyGrid::cell_at(double x, double y) const {
  const int ix = static_cast<int>(std::floor(x / resolution_));
  const int row_from_bottom = static_cast<int>(std::floor(y / resolution_));
  return {ix, height_ - 1 - row_from_bottom};
}

Point2 OccupancyGrid::cell_center(int ix, int iy) const {
  return {(ix + 0.5) * resolution_, (height_ - 1 - iy + 0.5) * resolution_};
}

std::size_t OccupancyGrid::free_cell_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{0}));
}

OccupancyGrid load_map(std::string_view text, std::string name) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "RILMAP1") throw ParseError(line_prefix(1) + "expected header 'RILMAP1'");
  if (lines.size() < 2) throw ParseError(line_prefix(2) + "missing '<width> <height> <resolution>'");

  int width = 0;
  int height = 0;
  double resolution = 0.0;
  {
    std::istringstream header{std::string(lines[1])};
    std::string trailing;
    if (!(header >> width >> height >> resolution) || (header >> trailing)) {
      throw ParseError(line_prefix(2) + "malformed '<width> <height> <resolution>'");
    }
  }
  if (width < 3 || height < 3) throw ParseError(line_prefix(2) + "width and height must be >= 3");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) throw ParseError(line_prefix(2) + "resolution must be > 0");

  const std::size_t rows_available = lines.size() - 2;
  if (rows_available != static_cast<std::size_t>(height)) {
    throw ParseError(line_prefix(lines.size() + 1) + "expected " + std::to_string(height) + " rows, got " +
                     std::to_string(rows_available));
  }

  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height, 1);
  for (int iy = 0; iy < height; ++iy) {
    const std::size_t line_no = static_cast<std::size_t>(iy) + 3;
    const std::string_view row = lines[iy + 2];
    const std::string where = line_prefix(line_no) + "row " + std::to_string(iy + 1) + ": ";
    if (row.size() != static_cast<std::size_t>(width)) {
      throw ParseError(where + "expected " + std::to_string(width) + " cells, got " + std::to_string(row.size()));
    }
    for (int ix = 0; ix < width; ++ix) {
      const char c = row[ix];
      if (c != '#' && c != '.') throw ParseError(where + "invalid character '" + std::string(1, c) + "'");
      const bool occ = c == '#';
      if (!occ && on_boundary(ix, iy, width, height)) {
        throw ParseError(where + "boundary cell " + std::to_string(ix) + " is free (map must be closed)");
      }
      cells[static_cast<std::size_t>(iy) * width + ix] = occ ? 1 : 0;
    }
  }
  return OccupancyGrid(width, height, resolution, std::move(cells), std::move(name));
}

OccupancyGrid load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open map file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return load_map(buffer.str(), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string to_text(const OccupancyGrid& grid) {
  std::ostringstream out;
  out << "RILMAP1\n" << grid.width() << ' ' << grid.height() << ' ' << format_double(grid.resolution()) << '\n';
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) out << (grid.occupied(ix, iy) ? '#' : '.');
    out << '\n';
  }
  return out.str();
}

void save_map_file(const OccupancyGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write map file '" + path.string() + "'");
  out << to_text(grid);
  if (!out) throw IoError("failed writing map file '" + path.string() + "'");
}

bool disc_collides(const OccupancyGrid& grid, double x, double y, double radius) {
  const double res = grid.resolution();
  const CellIndex lo = grid.cell_at(x - radius, y + radius);
  const CellIndex hi = grid.cell_at(x + radius, y - radius);
  const double r2 = radius * radius;
  for (int iy = lo.iy; iy <= hi.iy; ++iy) {
    for (int ix = lo.ix; ix <= hi.ix; ++ix) {
      if (!grid.occupied(ix, iy)) continue;
      const double x0 = ix * res;
      const double y0 = (grid.height() - 1 - iy) * res;
      const double cx = std::clamp(x, x0, x0 + res);
      const double cy = std::clamp(y, y0, y0 + res);
      const double dx = x - cx;
      const double dy = y - cy;
      if (dx * dx + dy * dy < r2) return true;
    }
  }
  return false;
}

}  // namespace ril
