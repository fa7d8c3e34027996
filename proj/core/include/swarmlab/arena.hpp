#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swarmlab/geometry.hpp"
#include "swarmlab/reference_model.hpp"

namespace swarmlab {

// Floor patches paint the ground in declaration order; the last patch under a
// point wins. Coordinates are meters.
struct FloorPatch {
    enum class Shape { Circle, Rect };
    Shape shape = Shape::Circle;
    Vec2 center{0.0, 0.0};   // circle
    double radius = 0.0;     // circle
    Vec2 lo{0.0, 0.0};       // rect corners, lo <= hi per axis
    Vec2 hi{0.0, 0.0};
    GroundColor color = GroundColor::Black;

    bool contains(const Vec2& p) const;
};

struct Light {
    Vec2 position{0.0, 0.0};
    double intensity = 1.0;
};

// Optional uniform cell grid over an axis-aligned rectangular arena; used by
// missions that score coverage.
struct GridSpec {
    int rows = 0;
    int cols = 0;
};

// Where initial robot poses may be drawn from.
struct StartRegion {
    enum class Kind { All, Rect, Circle };
    Kind kind = Kind::All;
    Vec2 lo{0.0, 0.0};  // rect
    Vec2 hi{0.0, 0.0};
    Vec2 center{0.0, 0.0};  // circle
    double radius = 0.0;

    bool contains(const Vec2& p) const;
};

struct ArenaSpec {
    ConvexPolygon bounds;  // CCW vertices, meters
    GroundColor default_floor = GroundColor::Gray;
    std::vector<FloorPatch> patches;
    std::vector<Light> lights;
    std::optional<GridSpec> grid;
    StartRegion start;

    GroundColor floor_color_at(const Vec2& p) const;
    // Cell index (row * cols + col) for a point, or -1 when outside the grid.
    int grid_cell_at(const Vec2& p) const;
};

void validate(const ArenaSpec& arena);

// Uniformly scales every length in the arena (bounds, patches, lights,
// start region) by `factor`. Light intensities are unitless and unchanged.
ArenaSpec scale_arena(const ArenaSpec& arena, double factor);

std::string serialize_arena(const ArenaSpec& arena);
ArenaSpec parse_arena(const std::string& text);
ArenaSpec load_arena_file(const std::string& path);
void save_arena_file(const ArenaSpec& arena, const std::string& path);

}  // namespace swarmlab
