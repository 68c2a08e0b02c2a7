#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ril/world/occupancy_grid.hpp"

namespace ril {

enum class MapKind {
  Empty,     ///< boundary walls only
  Simple,    ///< a few box obstacles
  Complex,   ///< many boxes and wall segments
  Corridor,  ///< straight corridor along x, one cell of wall each side
  Circle,    ///< circular room inscribed in the bounds
};

std::string_view to_string(MapKind kind);
MapKind parse_map_kind(std::string_view text);

struct MapSpec {
  MapKind kind = MapKind::Simple;
  double width_m = 10.0;
  double height_m = 10.0;
  double resolution = 0.1;
  std::uint64_t seed = 0;
  /// Obstacle count for Simple / Complex; negative picks the kind's default.
  int obstacles = -1;
  /// Free space reachable by the robot must form one component after this
  /// clearance inflation. Random layouts are redrawn until it does.
  double connect_clearance = 0.28;
};

/// Deterministic in `spec`. Throws GeometryError for sizes that cannot hold a
/// closed boundary, or when no connected layout is found.
OccupancyGrid generate_map(const MapSpec& spec, std::string name = {});

}  // namespace ril
