#include "ril/expert/planner.hpp"

#include <cmath>
#include <limits>

#include "ril/common/error.hpp"

namespace ril {

std::vector<CellIndex> descend_field(const DistanceField& field, CellIndex start) {
  if (!field.reachable(start)) throw GeometryError("start cell is not connected to the goal");
  std::vector<CellIndex> cells{start};
  std::array<GridEdge, 8> edges;
  CellIndex current = start;
  while (!(current == field.goal_cell())) {
    const double here = field.at(current);
    const int n = field.graph().neighbors(current, edges);
    CellIndex next = current;
    double best = here;
    for (int k = 0; k < n; ++k) {
      const double via = field.at(edges[k].to);
      if (via < best) {
        best = via;
        next = edges[k].to;
      }
    }
    if (next == current) throw GeometryError("distance field descent stalled");
    cells.push_back(next);
    current = next;
  }
  return cells;
}

bool line_of_sight(const GridGraph& graph, const Point2& a, const Point2& b) {
  const double res = graph.resolution();
  const int height = graph.height();
  const auto blocked = [&](int cx, int cy) { return !graph.traversable(cx, height - 1 - cy); };

  const double gx = a.x / res;
  const double gy = a.y / res;
  int cx = static_cast<int>(std::floor(gx));
  int cy = static_cast<int>(std::floor(gy));
  const int end_x = static_cast<int>(std::floor(b.x / res));
  const int end_y = static_cast<int>(std::floor(b.y / res));
  if (blocked(cx, cy)) return false;

  const double dx = (b.x - a.x) / res;
  const double dy = (b.y - a.y) / res;
  const double inf = std::numeric_limits<double>::infinity();
  const int step_x = dx > 0.0 ? 1 : -1;
  const int step_y = dy > 0.0 ? 1 : -1;
  // Segment parameter t in [0, 1].
  double t_max_x = dx > 0.0 ? (cx + 1 - gx) / dx : dx < 0.0 ? (gx - cx) / -dx : inf;
  double t_max_y = dy > 0.0 ? (cy + 1 - gy) / dy : dy < 0.0 ? (gy - cy) / -dy : inf;
  const double t_delta_x = dx != 0.0 ? 1.0 / std::abs(dx) : inf;
  const double t_delta_y = dy != 0.0 ? 1.0 / std::abs(dy) : inf;

  while (!(cx == end_x && cy == end_y)) {
    if (t_max_x < t_max_y) {
      if (t_max_x > 1.0) break;
      t_max_x += t_delta_x;
      cx += step_x;
    } else if (t_max_y < t_max_x) {
      if (t_max_y > 1.0) break;
      t_max_y += t_delta_y;
      cy += step_y;
    } else {
      // Exact corner crossing: both side cells must be clear.
      if (t_max_x > 1.0) break;
      if (blocked(cx + step_x, cy) || blocked(cx, cy + step_y)) return false;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
      cx += step_x;
      cy += step_y;
    }
    if (blocked(cx, cy)) return false;
  }
  return true;
}

std::vector<Point2> plan_path(const OccupancyGrid& grid, const Pose& start, const Pose& goal, double inflate) {
  const DistanceField field = dijkstra_field(grid, goal, inflate);
  const CellIndex start_cell = grid.cell_at(start.position());
  const auto cells = descend_field(field, start_cell);

  std::vector<Point2> raw;
  raw.reserve(cells.size());
  for (const auto& c : cells) raw.push_back(grid.cell_center(c));
  raw.back() = goal.position();
  if (raw.size() == 1) return raw;

  std::vector<Point2> path{raw.front()};
  std::size_t i = 0;
  while (i + 1 < raw.size()) {
    std::size_t j = raw.size() - 1;
    while (j > i + 1 && !line_of_sight(field.graph(), raw[i], raw[j])) --j;
    path.push_back(raw[j]);
    i = j;
  }
  return path;
}

double path_length(std::span<const Point2> path) {
  double length = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) length += distance(path[i - 1], path[i]);
  return length;
}

}  // namespace ril
