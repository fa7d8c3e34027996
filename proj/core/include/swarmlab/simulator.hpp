#pragma once

#include <cstdint>
#include <vector>

#include "swarmlab/arena.hpp"
#include "swarmlab/reference_model.hpp"
#include "swarmlab/rng.hpp"

namespace swarmlab {

// Purpose labels for noise streams, so each draw is keyed by what it is for
// rather than by execution order. Keyed as (seed, tag, cycle, robot).
enum class StreamTag : std::uint64_t {
    Place = 1,
    Bias = 2,
    Prox = 3,
    Light = 4,
    Neighbor = 5,
    Actuator = 6,
    Controller = 7,
};

inline constexpr std::uint64_t stream_tag(StreamTag t) {
    return static_cast<std::uint64_t>(t);
}

struct SimConfig {
    std::uint64_t seed = 0;
    double sensor_noise_sd = 0.05;
    double actuator_noise_sd = 0.05;
    int substeps_per_cycle = 10;
    // Pseudo-reality doubles both noise levels and adds a fixed per-episode
    // wheel bias, so a controller tuned in the plain model sees a slightly
    // different world. Used to mimic a design/deployment mismatch.
    bool pseudo_reality = false;
};

void validate(const SimConfig& config);

struct RobotState {
    Vec2 position{0.0, 0.0};  // meters
    double heading = 0.0;     // radians in [-pi, pi)
    double bias_left = 1.0;   // multiplicative wheel bias, 1.0 unless pseudo-reality
    double bias_right = 1.0;
};

struct World {
    ArenaSpec arena;  // meters
    PlatformSpec platform;
    SimConfig config;
    std::vector<RobotState> robots;
    std::uint64_t cycle = 0;

    double time() const { return static_cast<double>(cycle) * platform.control_period; }
};

// Draws non-overlapping poses inside the arena's start region. Throws
// PlacementError after 10000 rejected attempts for any robot.
std::vector<RobotState> place_robots(const ArenaSpec& arena, const PlatformSpec& platform,
                                     int count, Rng& rng);

// Builds a world and places `count` robots using a stream derived from
// config.seed. Pseudo-reality wheel biases are drawn here, once per episode.
World make_world(ArenaSpec arena, PlatformSpec platform, SimConfig config, int count);

// Advances one control cycle: wheel commands are clamped, perturbed by
// actuator noise, and integrated over substeps as exact circular arcs.
// Overlaps are resolved positionally, so robots slide along obstacles.
// Command count must match the robot count.
void step_in_place(World& world, const std::vector<ActuatorCommand>& commands);
World step(World world, const std::vector<ActuatorCommand>& commands);

// Sensor snapshots for every robot at the world's current cycle. Noise is
// keyed by (seed, cycle, robot), so repeated calls return identical values.
void sense_into(const World& world, std::vector<SensorSnapshot>& out);
std::vector<SensorSnapshot> sense(const World& world);

}  // namespace swarmlab
