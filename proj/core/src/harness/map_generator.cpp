#include "ril/harness/map_generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ril/common/error.hpp"
#include "ril/common/random.hpp"
#include "ril/world/grid_graph.hpp"

namespace ril {
namespace {

struct Canvas {
  int width;
  int height;
  std::vector<std::uint8_t> cells;

  Canvas(int w, int h) : width(w), height(h), cells(static_cast<std::size_t>(w) * h, 0) {
    for (int x = 0; x < w; ++x) set(x, 0), set(x, h - 1);
    for (int y = 0; y < h; ++y) set(0, y), set(w - 1, y);
  }
  void set(int x, int y) {
    if (x >= 0 && y >= 0 && x < width && y < height) cells[static_cast<std::size_t>(y) * width + x] = 1;
  }
  void box(int x0, int y0, int w, int h) {
    for (int y = y0; y < y0 + h; ++y)
      for (int x = x0; x < x0 + w; ++x) set(x, y);
  }
};

// True when every cell traversable at `clearance` lies in one component.
bool connected(const OccupancyGrid& grid, double clearance) {
  const GridGraph graph(grid, clearance);
  const auto& labels = graph.components();
  int label = -1;
  for (int c : labels) {
    if (c < 0) continue;
    if (label < 0) label = c;
    if (c != label) return false;
  }
  return label >= 0;
}

OccupancyGrid random_boxes(const MapSpec& spec, int w, int h, std::string name, bool walls) {
  const int count = spec.obstacles >= 0 ? spec.obstacles : (walls ? 10 : 4);
  const double res = spec.resolution;
  const int min_side = std::max(1, static_cast<int>(std::lround(0.4 / res)));
  const int max_side = std::max(min_side, static_cast<int>(std::lround(1.2 / res)));
  const int wall_len = std::max(min_side, static_cast<int>(std::lround(2.5 / res)));
  const int wall_thick = std::max(1, static_cast<int>(std::lround(0.2 / res)));

  for (int attempt = 0; attempt < 200; ++attempt) {
    Rng rng = make_rng(spec.seed, {static_cast<std::uint64_t>(attempt)});
    Canvas canvas(w, h);
    std::uniform_int_distribution<int> side(min_side, max_side);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < count; ++i) {
      int bw = side(rng);
      int bh = side(rng);
      if (walls && i % 3 == 2) {
        const bool horizontal = coin(rng);
        bw = horizontal ? wall_len : wall_thick;
        bh = horizontal ? wall_thick : wall_len;
      }
      bw = std::min(bw, w - 2);
      bh = std::min(bh, h - 2);
      std::uniform_int_distribution<int> px(1, w - 1 - bw);
      std::uniform_int_distribution<int> py(1, h - 1 - bh);
      canvas.box(px(rng), py(rng), bw, bh);
    }
    OccupancyGrid grid(w, h, res, std::move(canvas.cells), name);
    if (connected(grid, spec.connect_clearance)) return grid;
  }
  throw GeometryError("no connected " + std::string(to_string(spec.kind)) + " layout found");
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Empty: return "empty";
    case MapKind::Simple: return "simple";
    case MapKind::Complex: return "complex";
    case MapKind::Corridor: return "corridor";
    case MapKind::Circle: return "circle";
  }
  return "unknown";
}

MapKind parse_map_kind(std::string_view text) {
  for (MapKind k : {MapKind::Empty, MapKind::Simple, MapKind::Complex, MapKind::Corridor, MapKind::Circle})
    if (text == to_string(k)) return k;
  throw ConfigError("unknown map kind '" + std::string(text) + "'");
}

OccupancyGrid generate_map(const MapSpec& spec, std::string name) {
  if (!(spec.resolution > 0.0)) throw GeometryError("resolution must be > 0");
  const int w = static_cast<int>(std::lround(spec.width_m / spec.resolution));
  const int h = static_cast<int>(std::lround(spec.height_m / spec.resolution));
  if (w < 3 || h < 3) throw GeometryError("map must be at least 3x3 cells");
  if (name.empty()) name = std::string(to_string(spec.kind));

  switch (spec.kind) {
    case MapKind::Empty:
    case MapKind::Corridor: {
      Canvas canvas(w, h);
      return OccupancyGrid(w, h, spec.resolution, std::move(canvas.cells), name);
    }
    case MapKind::Circle: {
      Canvas canvas(w, h);
      const double cx = 0.5 * w;
      const double cy = 0.5 * h;
      const double r = 0.5 * std::min(w, h) - 1.0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
          if (std::hypot(x + 0.5 - cx, y + 0.5 - cy) > r) canvas.set(x, y);
      return OccupancyGrid(w, h, spec.resolution, std::move(canvas.cells), name);
    }
    case MapKind::Simple: return random_boxes(spec, w, h, name, false);
    case MapKind::Complex: return random_boxes(spec, w, h, name, true);
  }
  throw GeometryError("unknown map kind");
}

}  // namespace ril
