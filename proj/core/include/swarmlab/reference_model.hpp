#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmlab/geometry.hpp"

namespace swarmlab {

enum class GroundColor { Black, Gray, White };

const char* to_string(GroundColor c);
GroundColor ground_color_from_string(const std::string& s);

inline constexpr int kNumProxRays = 8;
inline constexpr int kNumLightRays = 8;

// Everything a controller may read in one control cycle.
//
// The aggregated vector quantities (prox, light, neighbors) are the
// reference-model contract shared by both platforms; prox_rays and
// light_rays keep the raw per-sensor readings the vectors were built
// from, for controllers that consume individual sensors. Ray k points
// at body angle k*pi/4 counterclockwise from the heading.
struct SensorSnapshot {
    Polar prox;
    Polar light;
    GroundColor gnd = GroundColor::Gray;
    int neighbor_count = 0;
    Polar neighbors;
    int swarm_size = 1;
    std::array<double, kNumProxRays> prox_rays{};
    std::array<double, kNumLightRays> light_rays{};
};

// Throws std::invalid_argument when any reference-model invariant is
// violated (magnitudes outside [0,1], angles outside [-pi,pi],
// neighbor count out of range, nonzero neighbor vector with no
// neighbors). Usable as a property check in tests.
void validate(const SensorSnapshot& snap);
bool is_valid(const SensorSnapshot& snap) noexcept;

// Per-wheel target velocity in cm/s.
struct ActuatorCommand {
    double left = 0.0;
    double right = 0.0;
    constexpr bool operator==(const ActuatorCommand&) const = default;
};

// Geometric, kinematic, and sensing parameters of a robot platform.
// Lengths in cm, speeds in cm/s, control period in seconds.
struct PlatformSpec {
    std::string name;
    double body_radius = 0.0;
    double axle_length = 0.0;
    double v_max = 0.0;
    double prox_range = 0.0;
    double light_range = 0.0;
    double rab_range = 0.0;
    double control_period = 0.1;

    bool operator==(const PlatformSpec&) const = default;
};

void validate(const PlatformSpec& spec);

// The two shipped profiles. Mercator is the e-puck scaled by 3 in
// every length and speed, control period unchanged.
PlatformSpec epuck_spec();
PlatformSpec mercator_spec();

// Looks up a shipped profile by name ("epuck" or "mercator").
// Throws std::invalid_argument for anything else.
PlatformSpec platform_by_name(const std::string& name);

// Shipped profile name, or a path to a profile file.
PlatformSpec resolve_platform(const std::string& name_or_path);

// Clips both wheel speeds to [-v_max, +v_max]. Total and idempotent.
ActuatorCommand clamp_command(const ActuatorCommand& cmd, const PlatformSpec& spec);

// Vector sum of polar readings with the magnitude rescaled by 1/count
// so it stays in [0,1]; angle normalized to [-pi,pi]. Empty or
// all-zero input yields (0, 0).
Polar aggregate_vector(const std::vector<Polar>& readings);

// Multiplies every length and v_max by factor; control period is
// unchanged. Throws std::invalid_argument for factor <= 0.
PlatformSpec scale_platform(const PlatformSpec& base, double factor);

// Human-readable profile file: one "key = value" line per field with
// a unit comment. write/read round-trip exactly.
std::string serialize_platform(const PlatformSpec& spec);
PlatformSpec parse_platform(const std::string& text);
PlatformSpec load_platform_file(const std::string& path);
void save_platform_file(const PlatformSpec& spec, const std::string& path);

}  // namespace swarmlab
