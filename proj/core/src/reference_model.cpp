#include "swarmlab/reference_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swarmlab/errors.hpp"
#include "swarmlab/text.hpp"

namespace swarmlab {

const char* to_string(GroundColor c) {
    switch (c) {
        case GroundColor::Black: return "black";
        case GroundColor::Gray: return "gray";
        case GroundColor::White: return "white";
    }
    return "gray";
}

GroundColor ground_color_from_string(const std::string& s) {
    if (s == "black") return GroundColor::Black;
    if (s == "gray") return GroundColor::Gray;
    if (s == "white") return GroundColor::White;
    throw std::invalid_argument("unknown ground color: " + s);
}

namespace {

void check_polar(const Polar& p, const char* what) {
    if (!(p.magnitude >= 0.0 && p.magnitude <= 1.0))
        throw std::invalid_argument(std::string(what) + " magnitude outside [0,1]");
    if (!(p.angle >= -kPi && p.angle <= kPi))
        throw std::invalid_argument(std::string(what) + " angle outside [-pi,pi]");
}

}  // namespace

void validate(const SensorSnapshot& snap) {
    check_polar(snap.prox, "prox");
    check_polar(snap.light, "light");
    check_polar(snap.neighbors, "neighbors");
    if (snap.swarm_size < 1) throw std::invalid_argument("swarm_size must be >= 1");
    if (snap.neighbor_count < 0 || snap.neighbor_count > snap.swarm_size - 1)
        throw std::invalid_argument("neighbor count outside [0, swarm_size-1]");
    if (snap.neighbor_count == 0 && snap.neighbors.magnitude != 0.0)
        throw std::invalid_argument("neighbor vector nonzero with no neighbors");
    for (double r : snap.prox_rays)
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("prox ray outside [0,1]");
    for (double r : snap.light_rays)
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("light ray outside [0,1]");
}

bool is_valid(const SensorSnapshot& snap) noexcept {
    try {
        validate(snap);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

void validate(const PlatformSpec& spec) {
    if (spec.name.empty()) throw std::invalid_argument("platform name empty");
    const double lengths[] = {spec.body_radius, spec.axle_length, spec.v_max,
                              spec.prox_range, spec.light_range, spec.rab_range,
                              spec.control_period};
    for (double v : lengths)
        if (!(v > 0.0)) throw std::invalid_argument("platform field must be > 0");
}

PlatformSpec epuck_spec() {
    PlatformSpec s;
    s.name = "epuck";
    s.body_radius = 3.5;
    s.axle_length = 5.3;
    s.v_max = 10.0;
    s.prox_range = 3.0;
    s.light_range = 100.0;
    s.rab_range = 50.0;
    s.control_period = 0.1;
    return s;
}

PlatformSpec mercator_spec() {
    PlatformSpec s = scale_platform(epuck_spec(), 3.0);
    s.name = "mercator";
    return s;
}

PlatformSpec platform_by_name(const std::string& name) {
    if (name == "epuck") return epuck_spec();
    if (name == "mercator") return mercator_spec();
    throw std::invalid_argument("unknown platform: " + name);
}

PlatformSpec resolve_platform(const std::string& name_or_path) {
    if (name_or_path == "epuck" || name_or_path == "mercator")
        return platform_by_name(name_or_path);
    return load_platform_file(name_or_path);
}

ActuatorCommand clamp_command(const ActuatorCommand& cmd, const PlatformSpec& spec) {
    auto clip = [&](double v) {
        if (v > spec.v_max) return spec.v_max;
        if (v < -spec.v_max) return -spec.v_max;
        return v;
    };
    return {clip(cmd.left), clip(cmd.right)};
}

Polar aggregate_vector(const std::vector<Polar>& readings) {
    if (readings.empty()) return {0.0, 0.0};
    Vec2 sum{0.0, 0.0};
    for (const Polar& r : readings) sum += r.to_vec();
    const double mag = sum.norm() / static_cast<double>(readings.size());
    if (mag == 0.0) return {0.0, 0.0};
    return {mag, std::atan2(sum.y, sum.x)};
}

PlatformSpec scale_platform(const PlatformSpec& base, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be > 0");
    PlatformSpec s = base;
    s.body_radius *= factor;
    s.axle_length *= factor;
    s.v_max *= factor;
    s.prox_range *= factor;
    s.light_range *= factor;
    s.rab_range *= factor;
    return s;
}

std::string serialize_platform(const PlatformSpec& spec) {
    std::string out;
    out += "name = " + spec.name + "\n";
    out += "body_radius = " + format_double(spec.body_radius) + " # cm\n";
    out += "axle_length = " + format_double(spec.axle_length) + " # cm\n";
    out += "v_max = " + format_double(spec.v_max) + " # cm/s\n";
    out += "prox_range = " + format_double(spec.prox_range) + " # cm\n";
    out += "light_range = " + format_double(spec.light_range) + " # cm\n";
    out += "rab_range = " + format_double(spec.rab_range) + " # cm\n";
    out += "control_period = " + format_double(spec.control_period) + " # s\n";
    return out;
}

PlatformSpec parse_platform(const std::string& text) {
    PlatformSpec spec;
    bool seen[8] = {};
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = trim(sv.substr(0, hash));
        if (sv.empty()) { ++lineno; continue; }
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos) throw ParseError(lineno, "expected key = value");
        const std::string key{trim(sv.substr(0, eq))};
        const std::string value{trim(sv.substr(eq + 1))};
        if (key == "name") {
            spec.name = value;
            seen[0] = true;
        } else {
            double v = 0.0;
            if (!try_parse_double(value, v)) throw ParseError(lineno, "bad number for " + key);
            if (key == "body_radius") { spec.body_radius = v; seen[1] = true; }
            else if (key == "axle_length") { spec.axle_length = v; seen[2] = true; }
            else if (key == "v_max") { spec.v_max = v; seen[3] = true; }
            else if (key == "prox_range") { spec.prox_range = v; seen[4] = true; }
            else if (key == "light_range") { spec.light_range = v; seen[5] = true; }
            else if (key == "rab_range") { spec.rab_range = v; seen[6] = true; }
            else if (key == "control_period") { spec.control_period = v; seen[7] = true; }
            else throw ParseError(lineno, "unknown key: " + key);
        }
        ++lineno;
    }
    for (bool s : seen)
        if (!s) throw ParseError(lineno, "profile is missing a field");
    validate(spec);
    return spec;
}

PlatformSpec load_platform_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open platform file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_platform(buf.str());
}

void save_platform_file(const PlatformSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write platform file: " + path);
    out << serialize_platform(spec);
}

}  // namespace swarmlab
