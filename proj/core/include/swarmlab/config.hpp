#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarmlab/design.hpp"
#include "swarmlab/mission.hpp"

namespace swarmlab {

// Everything a full study run needs, as a flat key = value file. Parsing
// accepts keys in any order plus '#' comments; serialization always emits
// the canonical key order, so serialize(parse(s)) is a fixed point.
struct RunConfig {
    std::vector<Method> methods = {Method::Fsm, Method::Ann};
    std::vector<std::string> platforms = {"epuck", "mercator"};
    std::vector<Mission> missions = {Mission::Aggregation, Mission::Foraging,
                                     Mission::GridExploration};
    int instances_per_cell = 10;
    long long design_budget = 20000;
    int eval_seeds_per_context = 10;
    std::uint64_t master_seed = 1;
    double sensor_noise_sd = 0.05;
    double actuator_noise_sd = 0.05;
    int substeps_per_cycle = 10;
    bool include_pseudo_reality = false;
    int racing_pool_size = 30;
    double racing_alpha = 0.05;
    int racing_seed_cap = 10;
    int racing_min_seeds = 5;
    int es_population = 20;
    int es_elites = 5;
    int es_seeds_per_generation = 5;
    double ann_mutation_sigma = 0.5;
    std::string output_dir = "out";
    int parallelism = 1;

    bool operator==(const RunConfig&) const = default;
};

void validate(const RunConfig& config);

std::string serialize_config(const RunConfig& config);
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
void save_config_file(const RunConfig& config, const std::string& path);

}  // namespace swarmlab
