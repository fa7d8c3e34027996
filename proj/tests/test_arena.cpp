#include <stdexcept>

#include <doctest.h>

#include "swarmlab/arena.hpp"
#include "swarmlab/errors.hpp"
#include "support/tmpdir.hpp"

using namespace swarmlab;

namespace {

ArenaSpec kitchen_sink() {
    ArenaSpec a;
    a.bounds = {{{-1.0, -0.5}, {1.0, -0.5}, {1.0, 0.5}, {-1.0, 0.5}}};
    a.default_floor = GroundColor::Gray;

    FloorPatch spot;
    spot.shape = FloorPatch::Shape::Circle;
    spot.center = {0.25, 0.0};
    spot.radius = 0.2;
    spot.color = GroundColor::Black;
    a.patches.push_back(spot);

    FloorPatch band;
    band.shape = FloorPatch::Shape::Rect;
    band.lo = {-1.0, -0.5};
    band.hi = {-0.5, 0.5};
    band.color = GroundColor::White;
    a.patches.push_back(band);

    a.lights.push_back({{0.9, 0.4}, 1.5});
    a.grid = GridSpec{2, 4};
    a.start.kind = StartRegion::Kind::Circle;
    a.start.center = {0.0, 0.0};
    a.start.radius = 0.3;
    return a;
}

}  // namespace

TEST_CASE("floor colors, last patch wins") {
    ArenaSpec a = kitchen_sink();
    CHECK(a.floor_color_at({0.0, 0.4}) == GroundColor::Gray);
    CHECK(a.floor_color_at({0.25, 0.1}) == GroundColor::Black);
    CHECK(a.floor_color_at({-0.75, 0.0}) == GroundColor::White);

    FloorPatch cover;
    cover.shape = FloorPatch::Shape::Circle;
    cover.center = {0.25, 0.0};
    cover.radius = 0.05;
    cover.color = GroundColor::White;
    a.patches.push_back(cover);
    CHECK(a.floor_color_at({0.25, 0.0}) == GroundColor::White);
    CHECK(a.floor_color_at({0.25, 0.1}) == GroundColor::Black);
}

TEST_CASE("grid cells") {
    const ArenaSpec a = kitchen_sink();  // 2 rows x 4 cols over [-1,1]x[-0.5,0.5]
    CHECK(a.grid_cell_at({-0.99, -0.49}) == 0);
    CHECK(a.grid_cell_at({-0.99, 0.49}) == 4);
    CHECK(a.grid_cell_at({0.99, 0.49}) == 7);
    CHECK(a.grid_cell_at({-0.3, -0.2}) == 1);
    CHECK(a.grid_cell_at({1.5, 0.0}) == -1);

    ArenaSpec no_grid = a;
    no_grid.grid.reset();
    CHECK(no_grid.grid_cell_at({0.0, 0.0}) == -1);
}

TEST_CASE("start region membership") {
    const ArenaSpec a = kitchen_sink();
    CHECK(a.start.contains({0.1, 0.1}));
    CHECK_FALSE(a.start.contains({0.4, 0.0}));

    StartRegion all;
    CHECK(all.contains({100.0, -3.0}));

    StartRegion rect;
    rect.kind = StartRegion::Kind::Rect;
    rect.lo = {0.0, 0.0};
    rect.hi = {1.0, 2.0};
    CHECK(rect.contains({0.5, 1.0}));
    CHECK_FALSE(rect.contains({-0.1, 1.0}));
}

TEST_CASE("scale_arena") {
    const ArenaSpec a = kitchen_sink();
    const ArenaSpec s = scale_arena(a, 3.0);
    CHECK(s.bounds.vertices[0] == Vec2{-3.0, -1.5});
    CHECK(s.patches[0].center == Vec2{0.75, 0.0});
    CHECK(s.patches[0].radius == doctest::Approx(0.6));
    CHECK(s.patches[1].lo == Vec2{-3.0, -1.5});
    CHECK(s.lights[0].position.x == doctest::Approx(2.7));
    CHECK(s.lights[0].position.y == doctest::Approx(1.2));
    CHECK(s.lights[0].intensity == 1.5);  // unitless, unchanged
    CHECK(s.start.radius == doctest::Approx(0.9));
    REQUIRE(s.grid.has_value());
    CHECK(s.grid->rows == 2);
    CHECK(s.grid->cols == 4);
    // Colors travel with the scaled geometry.
    CHECK(s.floor_color_at({0.75, 0.3}) == GroundColor::Black);
}

TEST_CASE("arena file round trip") {
    testsupport::TmpDir tmp;
    const ArenaSpec a = kitchen_sink();
    save_arena_file(a, tmp.file("arena.conf"));
    const ArenaSpec b = load_arena_file(tmp.file("arena.conf"));
    CHECK(serialize_arena(a) == serialize_arena(b));
    CHECK(b.bounds.vertices == a.bounds.vertices);
    CHECK(b.patches.size() == a.patches.size());
    CHECK(b.lights.size() == 1);
    CHECK(b.grid.has_value());
    CHECK(b.start.kind == StartRegion::Kind::Circle);
    // Second generation parse is a fixed point.
    CHECK(serialize_arena(parse_arena(serialize_arena(b))) == serialize_arena(b));
}

TEST_CASE("arena parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_arena(""), ParseError);
    CHECK_THROWS_AS(parse_arena("bounds = 0 0 1\n"), ParseError);  // odd coord count
    CHECK_THROWS_AS(parse_arena("bounds = 0 0 1 0 1 1 0 1\nwhat = 3\n"), ParseError);
    CHECK_THROWS_AS(
        parse_arena("bounds = 0 0 1 0 1 1 0 1\npatch = circle 0 0 0.1 purple\n"), ParseError);
    try {
        parse_arena("bounds = 0 0 1 0 1 1 0 1\nlight = 1 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 1);  // zero-based line of the bad light
    }
}

TEST_CASE("validate rejects broken arenas") {
    ArenaSpec cw;
    cw.bounds = {{{-1.0, -1.0}, {-1.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}}};  // clockwise
    CHECK_THROWS_AS(validate(cw), std::invalid_argument);

    ArenaSpec bad_patch = kitchen_sink();
    bad_patch.patches[0].radius = -0.1;
    CHECK_THROWS_AS(validate(bad_patch), std::invalid_argument);

    ArenaSpec bad_grid = kitchen_sink();
    bad_grid.bounds = {{{-1.0, -1.0}, {1.0, -0.8}, {1.0, 1.0}, {-1.0, 1.0}}};
    CHECK_THROWS_AS(validate(bad_grid), std::invalid_argument);  // grid needs an axis rect

    CHECK_NOTHROW(validate(kitchen_sink()));
}
