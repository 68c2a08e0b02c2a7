#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ril/world/grid_graph.hpp"
#include "ril/world/occupancy_grid.hpp"

namespace ril {

/// Shortest feasible path length (meters) from every cell to a goal cell over
/// the 8-connected inflated grid. Unreachable and blocked cells hold +inf.
class DistanceField {
 public:
  static constexpr double kUnreachable = std::numeric_limits<double>::infinity();

  DistanceField(GridGraph graph, CellIndex goal, std::vector<double> dist, int search_radius);

  int width() const { return graph_.width(); }
  int height() const { return graph_.height(); }
  double resolution() const { return graph_.resolution(); }
  CellIndex goal_cell() const { return goal_; }
  const GridGraph& graph() const { return graph_; }
  const std::vector<double>& values() const { return dist_; }

  double at(CellIndex c) const;
  bool reachable(CellIndex c) const { return at(c) < kUnreachable; }

  CellIndex cell_at(const Point2& p) const;

  /// Value at the cell containing `p`; when that cell is not reachable (a
  /// robot hugging an obstacle), the value of the nearest reachable cell
  /// within `search_radius` cells. +inf if there is none.
  double lookup(const Point2& p) const;

  /// Row-major CSV dump, one grid row per line, "inf" for unreachable cells.
  std::string to_csv() const;

 private:
  GridGraph graph_;
  CellIndex goal_;
  std::vector<double> dist_;
  int search_radius_ = 0;
};

/// Dijkstra from the goal cell with obstacles inflated by `inflate` meters.
/// Throws GeometryError when the goal cell is blocked after inflation.
DistanceField dijkstra_field(const OccupancyGrid& grid, const Pose& goal, double inflate);

}  // namespace ril
