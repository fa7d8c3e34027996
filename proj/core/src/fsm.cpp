#include "swarmlab/fsm.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmlab {

const char* to_string(Behavior b) {
    switch (b) {
        case Behavior::Exploration: return "exploration";
        case Behavior::Stop: return "stop";
        case Behavior::Phototaxis: return "phototaxis";
        case Behavior::AntiPhototaxis: return "antiphototaxis";
        case Behavior::Attraction: return "attraction";
        case Behavior::Repulsion: return "repulsion";
    }
    return "stop";
}

const char* to_string(Condition c) {
    switch (c) {
        case Condition::BlackFloor: return "blackfloor";
        case Condition::GrayFloor: return "grayfloor";
        case Condition::WhiteFloor: return "whitefloor";
        case Condition::NeighborCount: return "neighborcount";
        case Condition::InvertedNeighborCount: return "invertedneighborcount";
        case Condition::FixedProbability: return "fixedprobability";
    }
    return "fixedprobability";
}

Behavior behavior_from_string(const std::string& s) {
    if (s == "exploration") return Behavior::Exploration;
    if (s == "stop") return Behavior::Stop;
    if (s == "phototaxis") return Behavior::Phototaxis;
    if (s == "antiphototaxis") return Behavior::AntiPhototaxis;
    if (s == "attraction") return Behavior::Attraction;
    if (s == "repulsion") return Behavior::Repulsion;
    throw std::invalid_argument("unknown behavior: " + s);
}

Condition condition_from_string(const std::string& s) {
    if (s == "blackfloor") return Condition::BlackFloor;
    if (s == "grayfloor") return Condition::GrayFloor;
    if (s == "whitefloor") return Condition::WhiteFloor;
    if (s == "neighborcount") return Condition::NeighborCount;
    if (s == "invertedneighborcount") return Condition::InvertedNeighborCount;
    if (s == "fixedprobability") return Condition::FixedProbability;
    throw std::invalid_argument("unknown condition: " + s);
}

void validate(const FsmDescriptor& fsm) {
    const int n = static_cast<int>(fsm.states.size());
    if (n < 1 || n > 4) throw std::invalid_argument("state count must be in [1,4]");
    for (int i = 0; i < n; ++i) {
        const StateSpec& s = fsm.states[i];
        if (s.behavior == Behavior::Exploration && (s.rwm < 1 || s.rwm > 100))
            throw std::invalid_argument("rwm outside [1,100]");
        if (s.behavior == Behavior::Attraction && !(s.att >= 1.0 && s.att <= 5.0))
            throw std::invalid_argument("att outside [1,5]");
        if (s.behavior == Behavior::Repulsion && !(s.rep >= 1.0 && s.rep <= 5.0))
            throw std::invalid_argument("rep outside [1,5]");
        if (s.transitions.size() > 4)
            throw std::invalid_argument("state has more than 4 transitions");
        if (n == 1 && !s.transitions.empty())
            throw std::invalid_argument("single-state machine cannot have transitions");
        for (const TransitionSpec& t : s.transitions) {
            if (t.target < 0 || t.target >= n)
                throw std::invalid_argument("transition target out of range");
            if (t.target == i) throw std::invalid_argument("transition targets its own state");
            switch (t.condition) {
                case Condition::BlackFloor:
                case Condition::GrayFloor:
                case Condition::WhiteFloor:
                case Condition::FixedProbability:
                    if (!(t.beta >= 0.0 && t.beta <= 1.0))
                        throw std::invalid_argument("beta outside [0,1]");
                    break;
                case Condition::NeighborCount:
                case Condition::InvertedNeighborCount:
                    if (!(t.eta >= 0.0 && t.eta <= 20.0))
                        throw std::invalid_argument("eta outside [0,20]");
                    if (t.xi < 0 || t.xi > 10)
                        throw std::invalid_argument("xi outside [0,10]");
                    break;
            }
        }
    }
}

double transition_probability(const TransitionSpec& t, const SensorSnapshot& snap) {
    switch (t.condition) {
        case Condition::BlackFloor:
            return snap.gnd == GroundColor::Black ? t.beta : 0.0;
        case Condition::GrayFloor:
            return snap.gnd == GroundColor::Gray ? t.beta : 0.0;
        case Condition::WhiteFloor:
            return snap.gnd == GroundColor::White ? t.beta : 0.0;
        case Condition::NeighborCount:
            return 1.0 / (1.0 + std::exp(t.eta * (t.xi - snap.neighbor_count)));
        case Condition::InvertedNeighborCount:
            return 1.0 - 1.0 / (1.0 + std::exp(t.eta * (t.xi - snap.neighbor_count)));
        case Condition::FixedProbability:
            return t.beta;
    }
    return 0.0;
}

FsmRuntime::FsmRuntime(const FsmDescriptor& fsm, const PlatformSpec& platform)
    : fsm_(&fsm), platform_(platform) {
    validate(fsm);
}

void FsmRuntime::reset() {
    state_ = 0;
    turn_cycles_left_ = 0;
    turn_direction_ = 0;
}

namespace {

// Steers toward a target direction given in the robot's frame. A target dead
// ahead gives both wheels full speed; lateral targets pivot.
ActuatorCommand steer(double delta, double v_max) {
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    auto clip = [](double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); };
    return {v_max * clip(c - s), v_max * clip(c + s)};
}

ActuatorCommand steer_to(const Vec2& target, double v_max) {
    if (target.norm_sq() == 0.0) return {v_max, v_max};
    return steer(std::atan2(target.y, target.x), v_max);
}

}  // namespace

ActuatorCommand FsmRuntime::run_behavior(const StateSpec& state, const SensorSnapshot& snap,
                                         Rng& rng) {
    const double v = platform_.v_max;
    switch (state.behavior) {
        case Behavior::Stop:
            return {0.0, 0.0};
        case Behavior::Exploration: {
            if (turn_cycles_left_ > 0) {
                --turn_cycles_left_;
                return turn_direction_ > 0 ? ActuatorCommand{-v, v} : ActuatorCommand{v, -v};
            }
            const bool obstacle_ahead =
                snap.prox.magnitude > 0.1 && std::abs(snap.prox.angle) < kPi / 2.0;
            if (obstacle_ahead) {
                const int duration = rng.uniform_int(0, state.rwm);
                if (duration > 0) {
                    // Turn away from the obstacle side.
                    turn_direction_ = snap.prox.angle >= 0.0 ? -1 : 1;
                    turn_cycles_left_ = duration - 1;
                    return turn_direction_ > 0 ? ActuatorCommand{-v, v} : ActuatorCommand{v, -v};
                }
            }
            return {v, v};
        }
        case Behavior::Phototaxis: {
            if (snap.light.magnitude == 0.0) return {v, v};
            return steer_to(snap.light.to_vec() - snap.prox.to_vec(), v);
        }
        case Behavior::AntiPhototaxis: {
            if (snap.light.magnitude == 0.0) return {v, v};
            return steer_to(snap.light.to_vec() * -1.0 - snap.prox.to_vec(), v);
        }
        case Behavior::Attraction: {
            if (snap.neighbors.magnitude == 0.0) return {v, v};
            return steer_to(snap.neighbors.to_vec() * state.att - snap.prox.to_vec(), v);
        }
        case Behavior::Repulsion: {
            if (snap.neighbors.magnitude == 0.0) return {v, v};
            return steer_to(snap.neighbors.to_vec() * -state.rep - snap.prox.to_vec(), v);
        }
    }
    return {0.0, 0.0};
}

ActuatorCommand FsmRuntime::tick(const SensorSnapshot& snap, Rng& rng) {
    const StateSpec* active = &fsm_->states[state_];
    for (const TransitionSpec& t : active->transitions) {
        const double p = transition_probability(t, snap);
        const double u = rng.uniform();
        if (u < p) {
            state_ = t.target;
            turn_cycles_left_ = 0;
            turn_direction_ = 0;
            active = &fsm_->states[state_];
            break;
        }
    }
    return clamp_command(run_behavior(*active, snap, rng), platform_);
}

}  // namespace swarmlab
