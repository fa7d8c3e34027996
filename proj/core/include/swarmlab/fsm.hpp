#pragma once

#include <string>
#include <vector>

#include "swarmlab/reference_model.hpp"
#include "swarmlab/rng.hpp"

namespace swarmlab {

enum class Behavior {
    Exploration,
    Stop,
    Phototaxis,
    AntiPhototaxis,
    Attraction,
    Repulsion,
};

enum class Condition {
    BlackFloor,
    GrayFloor,
    WhiteFloor,
    NeighborCount,
    InvertedNeighborCount,
    FixedProbability,
};

const char* to_string(Behavior b);
const char* to_string(Condition c);
Behavior behavior_from_string(const std::string& s);
Condition condition_from_string(const std::string& s);

struct TransitionSpec {
    int target = 0;
    Condition condition = Condition::FixedProbability;
    double beta = 0.0;  // floor and fixed-probability conditions, [0,1]
    double eta = 0.0;   // neighbor-count steepness, [0,20]
    int xi = 0;         // neighbor-count threshold, [0,10]

    bool operator==(const TransitionSpec&) const = default;
};

struct StateSpec {
    Behavior behavior = Behavior::Stop;
    int rwm = 1;       // exploration turn budget in cycles, [1,100]
    double att = 1.0;  // attraction gain, [1,5]
    double rep = 1.0;  // repulsion gain, [1,5]
    std::vector<TransitionSpec> transitions;  // at most 4, first match wins

    bool operator==(const StateSpec&) const = default;
};

// A probabilistic state machine over the shared behavior and condition sets.
// State 0 is initial. Transitions may not point at their own state.
struct FsmDescriptor {
    std::vector<StateSpec> states;  // 1 to 4

    bool operator==(const FsmDescriptor&) const = default;
};

void validate(const FsmDescriptor& fsm);

// Firing probability of one transition given the current readings.
double transition_probability(const TransitionSpec& t, const SensorSnapshot& snap);

// Per-robot execution state. Each tick evaluates the current state's
// transitions in declaration order (one uniform draw per transition, first
// fire wins), then runs the resulting state's behavior.
class FsmRuntime {
public:
    FsmRuntime(const FsmDescriptor& fsm, const PlatformSpec& platform);

    ActuatorCommand tick(const SensorSnapshot& snap, Rng& rng);
    void reset();
    int current_state() const { return state_; }

private:
    ActuatorCommand run_behavior(const StateSpec& state, const SensorSnapshot& snap, Rng& rng);

    const FsmDescriptor* fsm_;
    PlatformSpec platform_;
    int state_ = 0;
    int turn_cycles_left_ = 0;
    int turn_direction_ = 0;  // +1 left, -1 right
};

}  // namespace swarmlab
