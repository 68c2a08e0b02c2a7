#include "ril/reward/distance_field.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <sstream>

#include "ril/common/error.hpp"
#include "ril/common/format.hpp"

namespace ril {

DistanceField::DistanceField(GridGraph graph, CellIndex goal, std::vector<double> dist, int search_radius)
    : graph_(std::move(graph)), goal_(goal), dist_(std::move(dist)), search_radius_(search_radius) {}

double DistanceField::at(CellIndex c) const {
  if (c.ix < 0 || c.iy < 0 || c.ix >= width() || c.iy >= height()) return kUnreachable;
  return dist_[graph_.index(c)];
}

CellIndex DistanceField::cell_at(const Point2& p) const {
  const double res = resolution();
  return {static_cast<int>(std::floor(p.x / res)), height() - 1 - static_cast<int>(std::floor(p.y / res))};
}

double DistanceField::lookup(const Point2& p) const {
  const CellIndex c = cell_at(p);
  const double direct = at(c);
  if (direct < kUnreachable) return direct;

  // Nearest reachable cell center; ties broken by scan order.
  const double res = resolution();
  double best_d2 = kUnreachable;
  double best = kUnreachable;
  for (int dy = -search_radius_; dy <= search_radius_; ++dy) {
    for (int dx = -search_radius_; dx <= search_radius_; ++dx) {
      const CellIndex n{c.ix + dx, c.iy + dy};
      const double value = at(n);
      if (value == kUnreachable) continue;
      const double cx = (n.ix + 0.5) * res;
      const double cy = (height() - 1 - n.iy + 0.5) * res;
      const double d2 = (cx - p.x) * (cx - p.x) + (cy - p.y) * (cy - p.y);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = value;
      }
    }
  }
  return best;
}

std::string DistanceField::to_csv() const {
  std::ostringstream out;
  for (int iy = 0; iy < height(); ++iy) {
    for (int ix = 0; ix < width(); ++ix) {
      if (ix > 0) out << ',';
      const double v = at({ix, iy});
      out << (v == kUnreachable ? std::string("inf") : format_double(v));
    }
    out << '\n';
  }
  return out.str();
}

DistanceField dijkstra_field(const OccupancyGrid& grid, const Pose& goal, double inflate) {
  GridGraph graph(grid, inflate);
  const CellIndex goal_cell = grid.cell_at(goal.position());
  if (!graph.traversable(goal_cell)) {
    throw GeometryError("goal (" + std::to_string(goal.x) + ", " + std::to_string(goal.y) +
                        ") lies inside an inflated obstacle");
  }

  std::vector<double> dist(graph.cell_count(), DistanceField::kUnreachable);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t g = graph.index(goal_cell);
  dist[g] = 0.0;
  open.push({0.0, g});

  std::array<GridEdge, 8> edges;
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[u]) continue;
    const int n = graph.neighbors(graph.cell(u), edges);
    for (int k = 0; k < n; ++k) {
      const std::size_t v = graph.index(edges[k].to);
      const double candidate = d + edges[k].cost;
      if (candidate < dist[v]) {
        dist[v] = candidate;
        open.push({candidate, v});
      }
    }
  }
  const int search_radius = static_cast<int>(std::ceil(inflate / grid.resolution())) + 2;
  return DistanceField(std::move(graph), goal_cell, std::move(dist), search_radius);
}

}  // namespace ril
