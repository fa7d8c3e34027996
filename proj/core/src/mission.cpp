#include "swarmlab/mission.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "swarmlab/text.hpp"

namespace swarmlab {

const char* to_string(Mission m) {
    switch (m) {
        case Mission::Aggregation: return "aggregation";
        case Mission::Foraging: return "foraging";
        case Mission::GridExploration: return "grid_exploration";
    }
    return "aggregation";
}

Mission mission_from_string(const std::string& s) {
    if (s == "aggregation") return Mission::Aggregation;
    if (s == "foraging") return Mission::Foraging;
    if (s == "grid_exploration") return Mission::GridExploration;
    throw std::invalid_argument("unknown mission: " + s);
}

int mission_cycles(const PlatformSpec& platform) {
    return static_cast<int>(std::llround(kMissionDuration / platform.control_period));
}

namespace {

ConvexPolygon square(double half) {
    return {{{-half, -half}, {half, -half}, {half, half}, {-half, half}}};
}

ArenaSpec aggregation_arena() {
    ArenaSpec a;
    a.bounds = square(0.6);
    a.default_floor = GroundColor::Gray;
    FloorPatch spot;
    spot.shape = FloorPatch::Shape::Circle;
    spot.center = {0.0, 0.0};
    spot.radius = 0.3;
    spot.color = GroundColor::Black;
    a.patches.push_back(spot);
    return a;
}

ArenaSpec foraging_arena() {
    ArenaSpec a;
    a.bounds = square(0.6);
    a.default_floor = GroundColor::Gray;
    FloorPatch nest;
    nest.shape = FloorPatch::Shape::Rect;
    nest.lo = {-0.6, -0.6};
    nest.hi = {0.6, -0.3};
    nest.color = GroundColor::White;
    a.patches.push_back(nest);
    for (double cx : {-0.3, 0.3}) {
        FloorPatch source;
        source.shape = FloorPatch::Shape::Circle;
        source.center = {cx, 0.45};
        source.radius = 0.15;
        source.color = GroundColor::Black;
        a.patches.push_back(source);
    }
    a.lights.push_back({{0.0, -0.45}, 1.0});
    a.start.kind = StartRegion::Kind::Rect;
    a.start.lo = nest.lo;
    a.start.hi = nest.hi;
    return a;
}

ArenaSpec exploration_arena() {
    ArenaSpec a;
    a.bounds = square(0.75);
    a.default_floor = GroundColor::Gray;
    a.grid = GridSpec{5, 5};
    a.start.kind = StartRegion::Kind::Rect;
    a.start.lo = {-0.15, -0.15};
    a.start.hi = {0.15, 0.15};
    return a;
}

}  // namespace

ArenaSpec build_arena(Mission mission, const PlatformSpec& platform) {
    validate(platform);
    ArenaSpec base;
    switch (mission) {
        case Mission::Aggregation: base = aggregation_arena(); break;
        case Mission::Foraging: base = foraging_arena(); break;
        case Mission::GridExploration: base = exploration_arena(); break;
    }
    const double factor = platform.body_radius / epuck_spec().body_radius;
    ArenaSpec scaled = factor == 1.0 ? base : scale_arena(base, factor);
    validate(scaled);
    return scaled;
}

double aggregation_score(const EpisodeTrace& trace) {
    if (trace.steps.empty() || trace.steps.front().empty()) return 0.0;
    long long on_spot = 0;
    long long total = 0;
    for (const std::vector<Pose>& poses : trace.steps) {
        for (const Pose& p : poses) {
            if (trace.arena.floor_color_at(p.position) == GroundColor::Black) ++on_spot;
            ++total;
        }
    }
    return static_cast<double>(on_spot) / static_cast<double>(total);
}

double foraging_score(const EpisodeTrace& trace) {
    const std::size_t robots = trace.initial.size();
    std::vector<bool> carrying(robots, false);
    long long delivered = 0;
    auto visit = [&](std::size_t i, const Vec2& pos) {
        const GroundColor c = trace.arena.floor_color_at(pos);
        if (!carrying[i] && c == GroundColor::Black) {
            carrying[i] = true;
        } else if (carrying[i] && c == GroundColor::White) {
            carrying[i] = false;
            ++delivered;
        }
    };
    for (std::size_t i = 0; i < robots; ++i) visit(i, trace.initial[i].position);
    for (const std::vector<Pose>& poses : trace.steps)
        for (std::size_t i = 0; i < poses.size(); ++i) visit(i, poses[i].position);
    return static_cast<double>(delivered);
}

double exploration_score(const EpisodeTrace& trace) {
    if (!trace.arena.grid) throw std::invalid_argument("exploration needs a grid arena");
    const int cells = trace.arena.grid->rows * trace.arena.grid->cols;
    std::vector<double> last_visit(cells, 0.0);
    for (const Pose& p : trace.initial) {
        const int cell = trace.arena.grid_cell_at(p.position);
        if (cell >= 0) last_visit[cell] = 0.0;
    }
    double age_sum = 0.0;
    for (std::size_t c = 0; c < trace.steps.size(); ++c) {
        const double t = static_cast<double>(c + 1) * trace.cycle_period;
        for (const Pose& p : trace.steps[c]) {
            const int cell = trace.arena.grid_cell_at(p.position);
            if (cell >= 0) last_visit[cell] = t;
        }
        for (int k = 0; k < cells; ++k) age_sum += t - last_visit[k];
    }
    if (trace.steps.empty()) return 0.0;
    return -age_sum / (static_cast<double>(cells) * static_cast<double>(trace.steps.size()));
}

double mission_score(const EpisodeTrace& trace) {
    switch (trace.mission) {
        case Mission::Aggregation: return aggregation_score(trace);
        case Mission::Foraging: return foraging_score(trace);
        case Mission::GridExploration: return exploration_score(trace);
    }
    return 0.0;
}

std::string trace_to_csv(const EpisodeTrace& trace) {
    std::string out = "time,robot_id,x,y,theta,gnd\n";
    auto row = [&](double t, std::size_t id, const Pose& p) {
        out += format_double(t) + "," + format_int(static_cast<long long>(id)) + "," +
               format_double(p.position.x) + "," + format_double(p.position.y) + "," +
               format_double(p.heading) + "," +
               to_string(trace.arena.floor_color_at(p.position)) + "\n";
    };
    for (std::size_t i = 0; i < trace.initial.size(); ++i) row(0.0, i, trace.initial[i]);
    for (std::size_t c = 0; c < trace.steps.size(); ++c) {
        const double t = static_cast<double>(c + 1) * trace.cycle_period;
        for (std::size_t i = 0; i < trace.steps[c].size(); ++i) row(t, i, trace.steps[c][i]);
    }
    return out;
}

void save_trace_csv(const EpisodeTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    out << trace_to_csv(trace);
}

namespace {

EpisodeResult run_world(Mission mission, const Controller& controller,
                        const PlatformSpec& platform, const EpisodeOptions& opts, World world) {
    const int cycles = mission_cycles(platform);
    EpisodeTrace trace;
    trace.mission = mission;
    trace.arena = world.arena;
    trace.cycle_period = platform.control_period;
    trace.initial.reserve(world.robots.size());
    for (const RobotState& r : world.robots) trace.initial.push_back({r.position, r.heading});
    trace.steps.reserve(cycles);

    const bool is_fsm = std::holds_alternative<FsmDescriptor>(controller);
    std::vector<FsmRuntime> runtimes;
    std::vector<Rng> rngs;
    if (is_fsm) {
        const FsmDescriptor& fsm = std::get<FsmDescriptor>(controller);
        runtimes.reserve(world.robots.size());
        for (std::size_t i = 0; i < world.robots.size(); ++i) {
            runtimes.emplace_back(fsm, platform);
            rngs.push_back(Rng::stream(opts.sim.seed, stream_tag(StreamTag::Controller), i));
        }
    } else {
        validate(std::get<Genome>(controller));
    }

    std::vector<SensorSnapshot> snaps;
    std::vector<ActuatorCommand> commands(world.robots.size());
    for (int c = 0; c < cycles; ++c) {
        sense_into(world, snaps);
        for (std::size_t i = 0; i < world.robots.size(); ++i) {
            commands[i] = is_fsm
                              ? runtimes[i].tick(snaps[i], rngs[i])
                              : ann_forward(std::get<Genome>(controller), snaps[i], platform);
            commands[i] = clamp_command(commands[i], platform);
        }
        step_in_place(world, commands);
        std::vector<Pose> poses;
        poses.reserve(world.robots.size());
        for (const RobotState& r : world.robots) poses.push_back({r.position, r.heading});
        trace.steps.push_back(std::move(poses));
    }

    EpisodeResult result;
    result.score = mission_score(trace);
    if (opts.record_trace) result.trace = std::move(trace);
    return result;
}

}  // namespace

EpisodeResult run_episode(Mission mission, const Controller& controller,
                          const PlatformSpec& platform, const EpisodeOptions& opts) {
    World world = make_world(build_arena(mission, platform), platform, opts.sim, kMissionRobots);
    return run_world(mission, controller, platform, opts, std::move(world));
}

EpisodeResult run_episode_from(Mission mission, const Controller& controller,
                               const PlatformSpec& platform, const EpisodeOptions& opts,
                               const std::vector<RobotState>& initial) {
    if (initial.empty()) throw std::invalid_argument("need at least one robot");
    validate(platform);
    validate(opts.sim);
    World world;
    world.arena = build_arena(mission, platform);
    world.platform = platform;
    world.config = opts.sim;
    world.robots = initial;
    return run_world(mission, controller, platform, opts, std::move(world));
}

}  // namespace swarmlab
