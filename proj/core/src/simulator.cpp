#include "swarmlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "swarmlab/errors.hpp"

namespace swarmlab {

namespace {

constexpr double kCmPerMeter = 100.0;

// Platform lengths converted to the simulator's meter units.
struct Body {
    double radius;
    double axle;
    double v_max;
    double prox_range;
    double light_range;
    double rab_range;
};

Body body_of(const PlatformSpec& p) {
    return {p.body_radius / kCmPerMeter, p.axle_length / kCmPerMeter,
            p.v_max / kCmPerMeter,       p.prox_range / kCmPerMeter,
            p.light_range / kCmPerMeter, p.rab_range / kCmPerMeter};
}

double ray_angle(int k) { return wrap_angle(static_cast<double>(k) * (kPi / 4.0)); }

}  // namespace

void validate(const SimConfig& config) {
    if (!(config.sensor_noise_sd >= 0.0))
        throw std::invalid_argument("sensor noise sd must be >= 0");
    if (!(config.actuator_noise_sd >= 0.0))
        throw std::invalid_argument("actuator noise sd must be >= 0");
    if (config.substeps_per_cycle < 1)
        throw std::invalid_argument("substeps per cycle must be >= 1");
}

std::vector<RobotState> place_robots(const ArenaSpec& arena, const PlatformSpec& platform,
                                     int count, Rng& rng) {
    if (count < 1) throw std::invalid_argument("robot count must be >= 1");
    const Body body = body_of(platform);
    auto [lo, hi] = arena.bounds.bounding_box();
    if (arena.start.kind == StartRegion::Kind::Rect) {
        lo.x = std::max(lo.x, arena.start.lo.x);
        lo.y = std::max(lo.y, arena.start.lo.y);
        hi.x = std::min(hi.x, arena.start.hi.x);
        hi.y = std::min(hi.y, arena.start.hi.y);
    } else if (arena.start.kind == StartRegion::Kind::Circle) {
        lo.x = std::max(lo.x, arena.start.center.x - arena.start.radius);
        lo.y = std::max(lo.y, arena.start.center.y - arena.start.radius);
        hi.x = std::min(hi.x, arena.start.center.x + arena.start.radius);
        hi.y = std::min(hi.y, arena.start.center.y + arena.start.radius);
    }
    if (!(lo.x < hi.x && lo.y < hi.y))
        throw PlacementError("start region does not overlap the arena");

    std::vector<RobotState> robots;
    robots.reserve(count);
    const double min_gap_sq = (2.0 * body.radius) * (2.0 * body.radius);
    for (int i = 0; i < count; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            const Vec2 p{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
            if (!arena.start.contains(p)) continue;
            if (arena.bounds.inner_clearance(p) < body.radius) continue;
            bool clash = false;
            for (const RobotState& other : robots)
                if ((other.position - p).norm_sq() < min_gap_sq) { clash = true; break; }
            if (clash) continue;
            RobotState state;
            state.position = p;
            state.heading = rng.uniform(-kPi, kPi);
            robots.push_back(state);
            placed = true;
            break;
        }
        if (!placed)
            throw PlacementError("no room for robot " + std::to_string(i) +
                                 " after 10000 attempts");
    }
    return robots;
}

World make_world(ArenaSpec arena, PlatformSpec platform, SimConfig config, int count) {
    validate(arena);
    validate(platform);
    validate(config);
    World world;
    world.arena = std::move(arena);
    world.platform = std::move(platform);
    world.config = config;
    Rng rng = Rng::stream(config.seed, stream_tag(StreamTag::Place));
    world.robots = place_robots(world.arena, world.platform, count, rng);
    if (config.pseudo_reality) {
        for (std::size_t i = 0; i < world.robots.size(); ++i) {
            Rng bias = Rng::stream(config.seed, stream_tag(StreamTag::Bias), i);
            world.robots[i].bias_left = 1.0 + bias.uniform(-0.05, 0.05);
            world.robots[i].bias_right = 1.0 + bias.uniform(-0.05, 0.05);
        }
    }
    return world;
}

namespace {

// Pushes overlapping discs apart and keeps everyone inside the walls. Runs a
// few relaxation sweeps; if they fail to settle (wedged three-way contact in
// a corner, say) every robot falls back to its previous valid position.
void resolve_overlaps(const ArenaSpec& arena, double radius,
                      std::vector<RobotState>& robots,
                      const std::vector<Vec2>& previous) {
    const double gap = 2.0 * radius;
    const double tol = 1e-12;
    bool settled = false;
    for (int sweep = 0; sweep < 8 && !settled; ++sweep) {
        settled = true;
        for (std::size_t i = 0; i < robots.size(); ++i) {
            const Vec2 clamped = arena.bounds.clamp_inside(robots[i].position, radius);
            if ((clamped - robots[i].position).norm_sq() > tol * tol) settled = false;
            robots[i].position = clamped;
            for (std::size_t j = 0; j < robots.size(); ++j) {
                if (j == i) continue;
                Vec2 delta = robots[i].position - robots[j].position;
                double dist = delta.norm();
                if (dist >= gap - tol) continue;
                settled = false;
                if (dist < 1e-12) {
                    delta = {1.0, 0.0};
                    dist = 0.0;
                }
                const Vec2 dir = delta * (1.0 / (dist > 0.0 ? dist : 1.0));
                const double push = 0.5 * (gap - dist);
                robots[i].position += dir * push;
                robots[j].position += dir * (-push);
            }
        }
    }
    if (settled) return;
    // Final check; anything still invalid reverts the whole substep.
    for (std::size_t i = 0; i < robots.size(); ++i) {
        if (arena.bounds.inner_clearance(robots[i].position) < radius - 1e-9) {
            for (std::size_t k = 0; k < robots.size(); ++k) robots[k].position = previous[k];
            return;
        }
        for (std::size_t j = i + 1; j < robots.size(); ++j) {
            if ((robots[i].position - robots[j].position).norm() < gap - 1e-9) {
                for (std::size_t k = 0; k < robots.size(); ++k) robots[k].position = previous[k];
                return;
            }
        }
    }
}

}  // namespace

void step_in_place(World& world, const std::vector<ActuatorCommand>& commands) {
    if (commands.size() != world.robots.size())
        throw std::invalid_argument("command count does not match robot count");
    const Body body = body_of(world.platform);
    const int substeps = world.config.substeps_per_cycle;
    const double dt = world.platform.control_period / static_cast<double>(substeps);
    const double noise_sd =
        world.config.actuator_noise_sd * (world.config.pseudo_reality ? 2.0 : 1.0);

    // Effective wheel speeds for this cycle, in m/s.
    static thread_local std::vector<std::pair<double, double>> wheels;
    wheels.resize(world.robots.size());
    for (std::size_t i = 0; i < world.robots.size(); ++i) {
        const ActuatorCommand cmd = clamp_command(commands[i], world.platform);
        double left = cmd.left / kCmPerMeter;
        double right = cmd.right / kCmPerMeter;
        if (noise_sd > 0.0) {
            Rng rng = Rng::stream(world.config.seed, stream_tag(StreamTag::Actuator), world.cycle, i);
            left *= 1.0 + rng.gaussian(0.0, noise_sd);
            right *= 1.0 + rng.gaussian(0.0, noise_sd);
        }
        left *= world.robots[i].bias_left;
        right *= world.robots[i].bias_right;
        wheels[i] = {left, right};
    }

    static thread_local std::vector<Vec2> previous;
    previous.resize(world.robots.size());
    for (int s = 0; s < substeps; ++s) {
        for (std::size_t i = 0; i < world.robots.size(); ++i)
            previous[i] = world.robots[i].position;
        for (std::size_t i = 0; i < world.robots.size(); ++i) {
            RobotState& robot = world.robots[i];
            const auto [left, right] = wheels[i];
            const double v = 0.5 * (left + right);
            const double omega = (right - left) / body.axle;
            const double theta = robot.heading;
            if (std::abs(omega) < 1e-12) {
                robot.position += Vec2{std::cos(theta), std::sin(theta)} * (v * dt);
            } else {
                const double theta2 = theta + omega * dt;
                const double r = v / omega;
                robot.position.x += r * (std::sin(theta2) - std::sin(theta));
                robot.position.y += r * (std::cos(theta) - std::cos(theta2));
                robot.heading = wrap_angle(theta2);
            }
        }
        resolve_overlaps(world.arena, body.radius, world.robots, previous);
    }
    ++world.cycle;
}

World step(World world, const std::vector<ActuatorCommand>& commands) {
    step_in_place(world, commands);
    return world;
}

namespace {

double clamp01_noisy(double value, Rng& rng, double sd) {
    if (sd > 0.0) value += rng.gaussian(0.0, sd);
    return clamp01(value);
}

}  // namespace

void sense_into(const World& world, std::vector<SensorSnapshot>& out) {
    const Body body = body_of(world.platform);
    const double sd =
        world.config.sensor_noise_sd * (world.config.pseudo_reality ? 2.0 : 1.0);
    const std::size_t n = world.robots.size();
    out.resize(n);

    static thread_local std::vector<Polar> parts;
    for (std::size_t i = 0; i < n; ++i) {
        const RobotState& robot = world.robots[i];
        SensorSnapshot& snap = out[i];
        snap.swarm_size = static_cast<int>(n);

        Rng prox_rng = Rng::stream(world.config.seed, stream_tag(StreamTag::Prox), world.cycle, i);
        parts.clear();
        for (int k = 0; k < kNumProxRays; ++k) {
            const double local = ray_angle(k);
            const double bearing = robot.heading + local;
            const Vec2 dir{std::cos(bearing), std::sin(bearing)};
            double hit = std::numeric_limits<double>::infinity();
            if (auto t = world.arena.bounds.ray_hit(robot.position, dir)) hit = *t;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                if (auto t = ray_circle_hit(robot.position, dir, world.robots[j].position,
                                            body.radius))
                    hit = std::min(hit, *t);
            }
            double reading = 0.0;
            const double d = hit - body.radius;  // distance between surfaces
            if (d < body.prox_range) reading = clamp01(1.0 - d / body.prox_range);
            reading = clamp01_noisy(reading, prox_rng, sd);
            snap.prox_rays[k] = reading;
            parts.push_back({reading, local});
        }
        snap.prox = aggregate_vector(parts);

        Rng light_rng = Rng::stream(world.config.seed, stream_tag(StreamTag::Light), world.cycle, i);
        parts.clear();
        for (int k = 0; k < kNumLightRays; ++k) {
            const double local = ray_angle(k);
            double reading = 0.0;
            for (const Light& light : world.arena.lights) {
                const Vec2 offset = light.position - robot.position;
                const double d = offset.norm();
                if (d > body.light_range) continue;
                const double rel = d / body.light_range;
                const double strength = clamp01(light.intensity / (1.0 + rel * rel));
                const double toward = std::atan2(offset.y, offset.x) - robot.heading;
                const double lobe = std::cos(wrap_angle(toward - local));
                if (lobe > 0.0) reading += strength * lobe;
            }
            reading = clamp01_noisy(clamp01(reading), light_rng, sd);
            snap.light_rays[k] = reading;
            parts.push_back({reading, local});
        }
        snap.light = aggregate_vector(parts);

        snap.gnd = world.arena.floor_color_at(robot.position);

        Rng nbr_rng = Rng::stream(world.config.seed, stream_tag(StreamTag::Neighbor), world.cycle, i);
        parts.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec2 offset = world.robots[j].position - robot.position;
            if (offset.norm() > body.rab_range) continue;
            bool blocked = false;
            for (std::size_t m = 0; m < n && !blocked; ++m) {
                if (m == i || m == j) continue;
                blocked = circle_blocks_segment(robot.position, world.robots[j].position,
                                                world.robots[m].position, body.radius);
            }
            if (blocked) continue;
            const double bearing = wrap_angle(std::atan2(offset.y, offset.x) - robot.heading);
            parts.push_back({clamp01_noisy(1.0, nbr_rng, sd), bearing});
        }
        snap.neighbor_count = static_cast<int>(parts.size());
        snap.neighbors = aggregate_vector(parts);
    }
}

std::vector<SensorSnapshot> sense(const World& world) {
    std::vector<SensorSnapshot> out;
    sense_into(world, out);
    return out;
}

}  // namespace swarmlab
