#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "swarmlab/mission.hpp"

using namespace swarmlab;

namespace {

FsmDescriptor stop_fsm() {
    FsmDescriptor fsm;
    fsm.states.resize(1);
    fsm.states[0].behavior = Behavior::Stop;
    return fsm;
}

EpisodeTrace blank_trace(Mission m, const PlatformSpec& p) {
    EpisodeTrace t;
    t.mission = m;
    t.arena = build_arena(m, p);
    t.cycle_period = p.control_period;
    return t;
}

}  // namespace

TEST_CASE("mission names round trip") {
    for (Mission m : {Mission::Aggregation, Mission::Foraging, Mission::GridExploration})
        CHECK(mission_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(mission_from_string("herding"), std::invalid_argument);
}

TEST_CASE("episode length in cycles") {
    CHECK(mission_cycles(epuck_spec()) == 1200);
    CHECK(mission_cycles(mercator_spec()) == 1200);  // same period, same count
}

TEST_CASE("arena layouts") {
    const PlatformSpec ep = epuck_spec();

    SUBCASE("aggregation: one black spot in a gray square") {
        const ArenaSpec a = build_arena(Mission::Aggregation, ep);
        CHECK(a.default_floor == GroundColor::Gray);
        REQUIRE(a.patches.size() == 1);
        CHECK(a.patches[0].shape == FloorPatch::Shape::Circle);
        CHECK(a.patches[0].radius == 0.3);
        CHECK(a.patches[0].color == GroundColor::Black);
        CHECK(a.floor_color_at({0.0, 0.0}) == GroundColor::Black);
        CHECK(a.floor_color_at({0.5, 0.5}) == GroundColor::Gray);
        CHECK(!a.grid.has_value());
    }

    SUBCASE("foraging: sources up top, nest and light down south") {
        const ArenaSpec a = build_arena(Mission::Foraging, ep);
        REQUIRE(a.patches.size() == 3);
        CHECK(a.floor_color_at({0.0, -0.45}) == GroundColor::White);
        CHECK(a.floor_color_at({-0.3, 0.45}) == GroundColor::Black);
        CHECK(a.floor_color_at({0.3, 0.45}) == GroundColor::Black);
        CHECK(a.floor_color_at({0.0, 0.0}) == GroundColor::Gray);
        REQUIRE(a.lights.size() == 1);
        CHECK(a.lights[0].position == Vec2{0.0, -0.45});
        CHECK(a.lights[0].intensity == 1.0);
        CHECK(a.start.kind == StartRegion::Kind::Rect);
        CHECK(a.start.hi.y == -0.3);  // robots start in the nest
    }

    SUBCASE("exploration: bare grid arena") {
        const ArenaSpec a = build_arena(Mission::GridExploration, ep);
        REQUIRE(a.grid.has_value());
        CHECK(a.grid->rows == 5);
        CHECK(a.grid->cols == 5);
        CHECK(a.patches.empty());
        CHECK(a.start.kind == StartRegion::Kind::Rect);
    }

    SUBCASE("a larger platform gets a proportionally larger arena") {
        const PlatformSpec mc = mercator_spec();
        const ArenaSpec small = build_arena(Mission::Aggregation, ep);
        const ArenaSpec big = build_arena(Mission::Aggregation, mc);
        const auto [small_lo, small_hi] = small.bounds.bounding_box();
        const auto [big_lo, big_hi] = big.bounds.bounding_box();
        CHECK(big_hi.x == doctest::Approx(3.0 * small_hi.x));
        CHECK(big.patches[0].radius == doctest::Approx(0.9));

        const ArenaSpec forage = build_arena(Mission::Foraging, mc);
        CHECK(forage.lights[0].position.y == doctest::Approx(-1.35));
        CHECK(forage.lights[0].intensity == 1.0);  // intensity does not scale
    }
}

TEST_CASE("aggregation scoring counts samples on the spot") {
    const PlatformSpec ep = epuck_spec();
    EpisodeTrace t = blank_trace(Mission::Aggregation, ep);
    t.initial = {{{0.0, 0.0}, 0.0}};  // on black, but initial samples do not count

    SUBCASE("no steps means zero") { CHECK(aggregation_score(t) == 0.0); }

    SUBCASE("three of four samples on black") {
        t.steps = {
            {{{0.0, 0.0}, 0.0}},
            {{{0.1, 0.1}, 0.0}},
            {{{0.2, 0.0}, 0.0}},
            {{{0.5, 0.5}, 0.0}},
        };
        CHECK(aggregation_score(t) == 0.75);
        CHECK(mission_score(t) == 0.75);
    }

    SUBCASE("two robots are pooled") {
        t.initial.push_back({{0.5, 0.5}, 0.0});
        t.steps = {
            {{{0.0, 0.0}, 0.0}, {{0.5, 0.5}, 0.0}},
            {{{0.0, 0.1}, 0.0}, {{0.1, 0.0}, 0.0}},
        };
        CHECK(aggregation_score(t) == 0.75);
    }
}

TEST_CASE("foraging scoring alternates pickup and delivery") {
    const PlatformSpec ep = epuck_spec();
    EpisodeTrace t = blank_trace(Mission::Foraging, ep);
    const Pose nest{{0.0, -0.45}, 0.0};
    const Pose source{{-0.3, 0.45}, 0.0};
    const Pose source2{{0.3, 0.45}, 0.0};
    const Pose open{{0.0, 0.0}, 0.0};

    SUBCASE("one full round trip") {
        t.initial = {nest};
        t.steps = {{source}, {open}, {nest}};
        CHECK(foraging_score(t) == 1.0);
    }

    SUBCASE("white floor without cargo does nothing") {
        t.initial = {nest};
        t.steps = {{nest}, {open}, {nest}};
        CHECK(foraging_score(t) == 0.0);
    }

    SUBCASE("staying on black picks up a single item") {
        t.initial = {nest};
        t.steps = {{source}, {source}, {source2}, {nest}};
        CHECK(foraging_score(t) == 1.0);
    }

    SUBCASE("two round trips") {
        t.initial = {nest};
        t.steps = {{source}, {nest}, {source2}, {nest}};
        CHECK(foraging_score(t) == 2.0);
        CHECK(mission_score(t) == 2.0);
    }

    SUBCASE("a start on the source already picks up") {
        t.initial = {source};
        t.steps = {{nest}};
        CHECK(foraging_score(t) == 1.0);
    }

    SUBCASE("robots carry independently") {
        t.initial = {nest, source};
        t.steps = {
            {source, open},
            {nest, nest},
            {open, source},
            {nest, nest},
        };
        // Robot 0: one trip. Robot 1: starts loaded, delivers, reloads, delivers.
        CHECK(foraging_score(t) == 3.0);
    }
}

TEST_CASE("exploration scoring averages cell ages") {
    const PlatformSpec ep = epuck_spec();
    EpisodeTrace t = blank_trace(Mission::GridExploration, ep);
    const Pose center{{0.0, 0.0}, 0.0};

    SUBCASE("no steps means zero") {
        t.initial = {center};
        CHECK(exploration_score(t) == 0.0);
    }

    SUBCASE("one stationary robot, ten cycles") {
        t.initial = {center};
        t.steps.assign(10, {center});
        // 24 of 25 cells age linearly; mean age over the run is the mean of
        // 0.1..1.0 in each of them.
        CHECK(exploration_score(t) == doctest::Approx(-(24.0 / 25.0) * 0.55).epsilon(1e-12));
    }

    SUBCASE("three stationary robots in distinct cells") {
        t.initial = {{{-0.6, -0.6}, 0.0}, center, {{0.6, 0.6}, 0.0}};
        t.steps.assign(10, t.initial);
        CHECK(exploration_score(t) == doctest::Approx(-(22.0 / 25.0) * 0.55).epsilon(1e-12));
    }

    SUBCASE("visits reset a cell's age") {
        t.initial = {center};
        t.steps.assign(2, {center});
        t.steps.push_back({Pose{{0.3, 0.0}, 0.0}});  // hop one cell east
        // Ages: cycle 1: 24 cells at 0.1; cycle 2: 24 at 0.2; cycle 3: the
        // abandoned center cell is 0.1 old, 23 cells at 0.3.
        const double expected = -(24 * 0.1 + 24 * 0.2 + 23 * 0.3 + 0.1) / (25.0 * 3.0);
        CHECK(exploration_score(t) == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("a gridless arena cannot be scored") {
        EpisodeTrace bad = blank_trace(Mission::Aggregation, ep);
        bad.mission = Mission::GridExploration;
        bad.initial = {center};
        bad.steps = {{center}};
        CHECK_THROWS_AS(exploration_score(bad), std::invalid_argument);
    }
}

TEST_CASE("stationary swarm scores match the closed form over a full episode") {
    const PlatformSpec ep = epuck_spec();
    EpisodeOptions opts;
    opts.sim.seed = 5;
    const std::vector<RobotState> initial = {
        {{-0.6, -0.6}, 0.0, 1.0, 1.0},
        {{0.0, 0.0}, 0.0, 1.0, 1.0},
        {{0.6, 0.6}, 0.0, 1.0, 1.0},
    };
    const EpisodeResult r =
        run_episode_from(Mission::GridExploration, stop_fsm(), ep, opts, initial);
    // Three cells stay fresh, 22 age linearly over 1200 cycles of 0.1 s.
    CHECK(r.score == doctest::Approx(-(22.0 / 25.0) * 60.05).epsilon(1e-9));
}

TEST_CASE("trace csv output") {
    const PlatformSpec ep = epuck_spec();
    EpisodeTrace t = blank_trace(Mission::Aggregation, ep);
    t.initial = {{{0.05, -0.1}, 0.0}, {{0.5, 0.5}, 1.5}};
    t.steps = {{{{0.0, 0.0}, -0.25}, {{0.5, 0.5}, 1.5}}};
    CHECK(trace_to_csv(t) ==
          "time,robot_id,x,y,theta,gnd\n"
          "0,0,0.05,-0.1,0,black\n"
          "0,1,0.5,0.5,1.5,gray\n"
          "0.1,0,0,0,-0.25,black\n"
          "0.1,1,0.5,0.5,1.5,gray\n");
}

TEST_CASE("episodes are reproducible from the seed") {
    const PlatformSpec ep = epuck_spec();
    EpisodeOptions opts;
    opts.sim.seed = 99;
    opts.record_trace = true;
    const Controller ctrl = stop_fsm();

    const EpisodeResult a = run_episode(Mission::Aggregation, ctrl, ep, opts);
    const EpisodeResult b = run_episode(Mission::Aggregation, ctrl, ep, opts);
    REQUIRE(a.trace.has_value());
    REQUIRE(b.trace.has_value());
    CHECK(a.score == b.score);
    CHECK(trace_to_csv(*a.trace) == trace_to_csv(*b.trace));
    CHECK(a.trace->initial.size() == kMissionRobots);
    CHECK(a.trace->steps.size() == 1200);

    opts.sim.seed = 100;
    const EpisodeResult c = run_episode(Mission::Aggregation, ctrl, ep, opts);
    CHECK(c.trace->initial[0].position != a.trace->initial[0].position);
}

TEST_CASE("score is recomputable from the recorded trace") {
    const PlatformSpec ep = epuck_spec();
    EpisodeOptions opts;
    opts.sim.seed = 31;
    opts.record_trace = true;
    FsmDescriptor wander;
    wander.states.resize(1);
    wander.states[0].behavior = Behavior::Exploration;
    wander.states[0].rwm = 20;
    for (Mission m : {Mission::Aggregation, Mission::Foraging, Mission::GridExploration}) {
        const EpisodeResult r = run_episode(m, Controller{wander}, ep, opts);
        REQUIRE(r.trace.has_value());
        CHECK(mission_score(*r.trace) == r.score);
    }
}

TEST_CASE("network controllers run episodes too") {
    const PlatformSpec ep = epuck_spec();
    EpisodeOptions opts;
    opts.sim.seed = 8;
    Rng rng(8);
    const Controller ctrl = random_genome(rng);
    const EpisodeResult a = run_episode(Mission::Foraging, ctrl, ep, opts);
    const EpisodeResult b = run_episode(Mission::Foraging, ctrl, ep, opts);
    CHECK(a.score == b.score);
}

TEST_CASE("run_episode_from rejects an empty swarm") {
    EpisodeOptions opts;
    CHECK_THROWS_AS(
        run_episode_from(Mission::Aggregation, stop_fsm(), epuck_spec(), opts, {}),
        std::invalid_argument);
}
