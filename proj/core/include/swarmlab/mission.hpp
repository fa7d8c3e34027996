#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "swarmlab/ann.hpp"
#include "swarmlab/arena.hpp"
#include "swarmlab/fsm.hpp"
#include "swarmlab/simulator.hpp"

namespace swarmlab {

enum class Mission { Aggregation, Foraging, GridExploration };

const char* to_string(Mission m);
Mission mission_from_string(const std::string& s);

inline constexpr int kMissionRobots = 3;
inline constexpr double kMissionDuration = 120.0;  // seconds

// Number of control cycles in one episode.
int mission_cycles(const PlatformSpec& platform);

// Mission arena sized for the given platform: the layout is defined at
// e-puck scale and grows with the body radius ratio, so a robot three times
// as large gets an arena three times as wide.
ArenaSpec build_arena(Mission mission, const PlatformSpec& platform);

struct Pose {
    Vec2 position{0.0, 0.0};
    double heading = 0.0;
};

// Poses for every cycle of one episode. Scores are pure functions of this.
struct EpisodeTrace {
    Mission mission = Mission::Aggregation;
    ArenaSpec arena;
    double cycle_period = 0.1;
    std::vector<Pose> initial;
    std::vector<std::vector<Pose>> steps;  // poses after each control cycle
};

// Fraction of (robot, cycle) samples spent on the black spot. In [0,1].
double aggregation_score(const EpisodeTrace& trace);
// Items delivered by the swarm: a robot picks up on black floor and delivers
// on white, alternating.
double foraging_score(const EpisodeTrace& trace);
// Negative mean cell age: after each cycle, every grid cell contributes the
// time since it was last under a robot. Zero is unattainable; less negative
// means better coverage.
double exploration_score(const EpisodeTrace& trace);
// Dispatches on trace.mission. Higher is better for every mission.
double mission_score(const EpisodeTrace& trace);

std::string trace_to_csv(const EpisodeTrace& trace);
void save_trace_csv(const EpisodeTrace& trace, const std::string& path);

using Controller = std::variant<FsmDescriptor, Genome>;

struct EpisodeOptions {
    SimConfig sim;
    bool record_trace = false;
};

struct EpisodeResult {
    double score = 0.0;
    std::optional<EpisodeTrace> trace;
};

// Runs one episode: place robots, then sense / act / step for the mission
// duration. Everything is derived from opts.sim.seed.
EpisodeResult run_episode(Mission mission, const Controller& controller,
                          const PlatformSpec& platform, const EpisodeOptions& opts);

// Same, but starting from caller-provided robot states instead of random
// placement.
EpisodeResult run_episode_from(Mission mission, const Controller& controller,
                               const PlatformSpec& platform, const EpisodeOptions& opts,
                               const std::vector<RobotState>& initial);

}  // namespace swarmlab
