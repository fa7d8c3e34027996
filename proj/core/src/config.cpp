#include "swarmlab/config.hpp"

#include <fstream>
#include <sstream>
#include <cstdint>
#include <stdexcept>

#include "swarmlab/errors.hpp"
#include "swarmlab/text.hpp"

namespace swarmlab {

void validate(const RunConfig& config) {
    if (config.methods.empty()) throw std::invalid_argument("methods list is empty");
    if (config.platforms.empty()) throw std::invalid_argument("platforms list is empty");
    if (config.missions.empty()) throw std::invalid_argument("missions list is empty");
    if (config.instances_per_cell < 1)
        throw std::invalid_argument("instances_per_cell must be >= 1");
    if (config.design_budget < 100) throw std::invalid_argument("design_budget must be >= 100");
    if (config.eval_seeds_per_context < 1)
        throw std::invalid_argument("eval_seeds_per_context must be >= 1");
    if (!(config.sensor_noise_sd >= 0.0))
        throw std::invalid_argument("sensor_noise_sd must be >= 0");
    if (!(config.actuator_noise_sd >= 0.0))
        throw std::invalid_argument("actuator_noise_sd must be >= 0");
    if (config.substeps_per_cycle < 1)
        throw std::invalid_argument("substeps_per_cycle must be >= 1");
    if (config.racing_pool_size < 2) throw std::invalid_argument("racing_pool_size must be >= 2");
    if (!(config.racing_alpha > 0.0 && config.racing_alpha < 1.0))
        throw std::invalid_argument("racing_alpha outside (0,1)");
    if (config.racing_seed_cap < 1) throw std::invalid_argument("racing_seed_cap must be >= 1");
    if (config.racing_min_seeds < 2) throw std::invalid_argument("racing_min_seeds must be >= 2");
    if (config.es_population < 2) throw std::invalid_argument("es_population must be >= 2");
    if (config.es_elites < 1 || config.es_elites >= config.es_population)
        throw std::invalid_argument("es_elites must be in [1, es_population)");
    if (config.es_seeds_per_generation < 1)
        throw std::invalid_argument("es_seeds_per_generation must be >= 1");
    if (!(config.ann_mutation_sigma > 0.0))
        throw std::invalid_argument("ann_mutation_sigma must be > 0");
    if (config.output_dir.empty()) throw std::invalid_argument("output_dir is empty");
    if (config.parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
}

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
    std::vector<std::string> methods, platforms, missions;
    for (Method m : c.methods) methods.push_back(to_string(m));
    for (const std::string& p : c.platforms) platforms.push_back(p);
    for (Mission m : c.missions) missions.push_back(to_string(m));
    std::string out;
    out += "methods = " + join(methods) + "\n";
    out += "platforms = " + join(platforms) + "\n";
    out += "missions = " + join(missions) + "\n";
    out += "instances_per_cell = " + format_int(c.instances_per_cell) + "\n";
    out += "design_budget = " + format_int(c.design_budget) + "\n";
    out += "eval_seeds_per_context = " + format_int(c.eval_seeds_per_context) + "\n";
    out += "master_seed = " + std::to_string(c.master_seed) + "\n";
    out += "sensor_noise_sd = " + format_double(c.sensor_noise_sd) + "\n";
    out += "actuator_noise_sd = " + format_double(c.actuator_noise_sd) + "\n";
    out += "substeps_per_cycle = " + format_int(c.substeps_per_cycle) + "\n";
    out += "include_pseudo_reality = " + std::string(c.include_pseudo_reality ? "true" : "false") +
           "\n";
    out += "racing_pool_size = " + format_int(c.racing_pool_size) + "\n";
    out += "racing_alpha = " + format_double(c.racing_alpha) + "\n";
    out += "racing_seed_cap = " + format_int(c.racing_seed_cap) + "\n";
    out += "racing_min_seeds = " + format_int(c.racing_min_seeds) + "\n";
    out += "es_population = " + format_int(c.es_population) + "\n";
    out += "es_elites = " + format_int(c.es_elites) + "\n";
    out += "es_seeds_per_generation = " + format_int(c.es_seeds_per_generation) + "\n";
    out += "ann_mutation_sigma = " + format_double(c.ann_mutation_sigma) + "\n";
    out += "output_dir = " + c.output_dir + "\n";
    out += "parallelism = " + format_int(c.parallelism) + "\n";
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto bad = [&](const std::string& msg) { return ParseError(lineno, msg); };
    auto want_int = [&](const std::string& v, long long lo, long long hi) {
        std::int64_t out = 0;
        if (!try_parse_int(v, out) || out < lo || out > hi) throw bad("bad integer: " + v);
        return out;
    };
    auto want_double = [&](const std::string& v) {
        double out = 0.0;
        if (!try_parse_double(v, out)) throw bad("bad number: " + v);
        return out;
    };
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = trim(sv.substr(0, hash));
        if (sv.empty()) { ++lineno; continue; }
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos) throw bad("expected key = value");
        const std::string key{trim(sv.substr(0, eq))};
        const std::string value{trim(sv.substr(eq + 1))};
        if (key == "methods") {
            c.methods.clear();
            for (const std::string& w : split(value, ',')) {
                try {
                    c.methods.push_back(method_from_string(std::string(trim(w))));
                } catch (const std::invalid_argument& e) {
                    throw bad(e.what());
                }
            }
        } else if (key == "platforms") {
            c.platforms.clear();
            for (const std::string& w : split(value, ','))
                c.platforms.emplace_back(trim(w));
        } else if (key == "missions") {
            c.missions.clear();
            for (const std::string& w : split(value, ',')) {
                try {
                    c.missions.push_back(mission_from_string(std::string(trim(w))));
                } catch (const std::invalid_argument& e) {
                    throw bad(e.what());
                }
            }
        } else if (key == "instances_per_cell") {
            c.instances_per_cell = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "design_budget") {
            c.design_budget = want_int(value, 0, 1LL << 50);
        } else if (key == "eval_seeds_per_context") {
            c.eval_seeds_per_context = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "master_seed") {
            std::uint64_t seed = 0;
            if (!try_parse_uint(value, seed)) throw bad("bad seed: " + value);
            c.master_seed = seed;
        } else if (key == "sensor_noise_sd") {
            c.sensor_noise_sd = want_double(value);
        } else if (key == "actuator_noise_sd") {
            c.actuator_noise_sd = want_double(value);
        } else if (key == "substeps_per_cycle") {
            c.substeps_per_cycle = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "include_pseudo_reality") {
            if (value == "true") c.include_pseudo_reality = true;
            else if (value == "false") c.include_pseudo_reality = false;
            else throw bad("expected true or false: " + value);
        } else if (key == "racing_pool_size") {
            c.racing_pool_size = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "racing_alpha") {
            c.racing_alpha = want_double(value);
        } else if (key == "racing_seed_cap") {
            c.racing_seed_cap = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "racing_min_seeds") {
            c.racing_min_seeds = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "es_population") {
            c.es_population = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "es_elites") {
            c.es_elites = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "es_seeds_per_generation") {
            c.es_seeds_per_generation = static_cast<int>(want_int(value, 1, 1000000));
        } else if (key == "ann_mutation_sigma") {
            c.ann_mutation_sigma = want_double(value);
        } else if (key == "output_dir") {
            c.output_dir = value;
        } else if (key == "parallelism") {
            c.parallelism = static_cast<int>(want_int(value, 1, 1000000));
        } else {
            throw bad("unknown key: " + key);
        }
        ++lineno;
    }
    validate(c);
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void save_config_file(const RunConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << serialize_config(config);
}

}  // namespace swarmlab
