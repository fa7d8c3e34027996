#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarmlab/mission.hpp"

namespace swarmlab {

enum class Method { Fsm, Ann };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct DesignOptions {
    std::uint64_t seed = 0;
    long long budget = 0;  // total simulated episodes allowed, must be >= 100
    SimConfig sim;         // noise model; the seed field is ignored here
    int parallelism = 1;

    // Racing (state machines).
    int pool_size = 30;
    double alpha = 0.05;
    int seed_cap = 10;           // seeds per racing iteration
    int min_seeds_for_test = 5;  // no elimination before this many seeds

    // Evolution strategy (networks).
    int population = 20;
    int elites = 5;
    int seeds_per_generation = 5;
    double mutation_sigma = 0.5;
};

void validate(const DesignOptions& opts);

struct DesignLogEntry {
    int iteration = 0;     // racing iteration or ES generation
    int candidate_id = 0;  // -1 for the out-of-band final re-score
    std::uint64_t seed = 0;
    double score = 0.0;
    long long episodes_used = 0;  // cumulative, including this episode
};

struct DesignResult {
    Controller controller;
    double mean_score = 0.0;  // over the final shared seed set
    long long episodes_used = 0;
    std::vector<DesignLogEntry> log;
};

// Uniform draw from the state machine search space.
FsmDescriptor sample_fsm(Rng& rng);

// Resamples each element (a state's behavior and parameters, or a whole
// transition) independently with probability p; if nothing changed, one
// element is forced. Topology is preserved.
FsmDescriptor perturb_fsm(const FsmDescriptor& fsm, double p, Rng& rng);

// Iterated racing over sampled state machines: a pool shares a growing seed
// list, a Friedman test prunes candidates that fall behind, and survivors
// seed the next pool through perturbation.
DesignResult design_fsm(Mission mission, const PlatformSpec& platform,
                        const DesignOptions& opts);

// Mu-plus-lambda evolution of network weights with shared per-generation
// seeds.
DesignResult design_ann(Mission mission, const PlatformSpec& platform,
                        const DesignOptions& opts);

DesignResult design_controller(Method method, Mission mission, const PlatformSpec& platform,
                               const DesignOptions& opts);

}  // namespace swarmlab
