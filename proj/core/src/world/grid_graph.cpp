#include "ril/world/grid_graph.hpp"

#include <cmath>
#include <deque>

namespace ril {

std::vector<std::uint8_t> inflate_obstacles(const OccupancyGrid& grid, double radius) {
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(grid.width()) * grid.height(), 0);
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      const Point2 c = grid.cell_center(ix, iy);
      if (grid.occupied(ix, iy) || (radius > 0.0 && disc_collides(grid, c.x, c.y, radius))) {
        blocked[grid.index(ix, iy)] = 1;
      }
    }
  }
  return blocked;
}

GridGraph::GridGraph(const OccupancyGrid& grid, double inflate)
    : width_(grid.width()),
      height_(grid.height()),
      resolution_(grid.resolution()),
      blocked_(inflate_obstacles(grid, inflate)),
      components_(blocked_.size(), -1) {
  int label = 0;
  std::array<GridEdge, 8> edges;
  for (std::size_t seed = 0; seed < blocked_.size(); ++seed) {
    if (blocked_[seed] != 0 || components_[seed] >= 0) continue;
    std::deque<std::size_t> frontier{seed};
    components_[seed] = label;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      const int n = neighbors(cell(u), edges);
      for (int k = 0; k < n; ++k) {
        const std::size_t v = index(edges[k].to);
        if (components_[v] < 0) {
          components_[v] = label;
          frontier.push_back(v);
        }
      }
    }
    ++label;
  }
}

int GridGraph::neighbors(CellIndex from, std::array<GridEdge, 8>& out) const {
  static constexpr int kOffsets[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const double diagonal = resolution_ * std::sqrt(2.0);
  int n = 0;
  for (const auto& [ox, oy] : kOffsets) {
    const CellIndex to{from.ix + ox, from.iy + oy};
    if (!traversable(to)) continue;
    const bool is_diagonal = ox != 0 && oy != 0;
    if (is_diagonal && (!traversable(from.ix + ox, from.iy) || !traversable(from.ix, from.iy + oy))) continue;
    out[n++] = {to, is_diagonal ? diagonal : resolution_};
  }
  return n;
}

}  // namespace ril
