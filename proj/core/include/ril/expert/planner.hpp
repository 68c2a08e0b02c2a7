#pragma once

#include <span>
#include <vector>

#include "ril/reward/distance_field.hpp"
#include "ril/world/grid_graph.hpp"
#include "ril/world/occupancy_grid.hpp"

namespace ril {

/// Cell sequence from `start` to the field's goal cell, descending the
/// distance field. Throws GeometryError when the start is unreachable.
std::vector<CellIndex> descend_field(const DistanceField& field, CellIndex start);

/// True when the segment a-b only crosses traversable cells of `graph`.
bool line_of_sight(const GridGraph& graph, const Point2& a, const Point2& b);

/// Shortest feasible path on the grid inflated by `inflate`, then collapsed
/// greedily to the farthest visible waypoint. The first waypoint is the start
/// cell center, the last is the goal position. Throws GeometryError when the
/// goal is unreachable.
std::vector<Point2> plan_path(const OccupancyGrid& grid, const Pose& start, const Pose& goal, double inflate);

double path_length(std::span<const Point2> path);

}  // namespace ril
