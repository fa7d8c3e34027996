#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmlab/controller_io.hpp"
#include "swarmlab/design.hpp"
#include "swarmlab/errors.hpp"
#include "swarmlab/experiment.hpp"
#include "swarmlab/mission.hpp"
#include "swarmlab/parallel.hpp"
#include "swarmlab/text.hpp"
#include "swarmlab/version.hpp"

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitFailure = 3;

// "7" means the single seed 7, "3:12" the inclusive range.
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        std::uint64_t seed = 0;
        if (!swarmlab::try_parse_uint(text, seed))
            throw std::invalid_argument("bad seed: " + text);
        return {seed};
    }
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    if (!swarmlab::try_parse_uint(text.substr(0, colon), lo) ||
        !swarmlab::try_parse_uint(text.substr(colon + 1), hi) || hi < lo)
        throw std::invalid_argument("bad seed range: " + text);
    if (hi - lo >= 1000000) throw std::invalid_argument("seed range too large: " + text);
    std::vector<std::uint64_t> seeds;
    seeds.reserve(hi - lo + 1);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
}

struct DesignArgs {
    std::string method;
    std::string mission;
    std::string platform = "epuck";
    long long budget = 0;
    std::uint64_t seed = 0;
    std::string out;
    int parallelism = 1;
};

int cmd_design(const DesignArgs& args) {
    swarmlab::Method method;
    swarmlab::Mission mission;
    swarmlab::PlatformSpec platform;
    try {
        method = swarmlab::method_from_string(args.method);
        mission = swarmlab::mission_from_string(args.mission);
        platform = swarmlab::resolve_platform(args.platform);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    swarmlab::DesignOptions opts;
    opts.seed = args.seed;
    opts.budget = args.budget;
    opts.parallelism = args.parallelism;
    swarmlab::DesignResult result;
    try {
        swarmlab::validate(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    try {
        result = swarmlab::design_controller(method, mission, platform, opts);
        swarmlab::save_controller_file(result.controller, args.out);
        std::ofstream log(args.out + ".log.csv", std::ios::trunc);
        if (!log) throw std::runtime_error("cannot write " + args.out + ".log.csv");
        log << "iteration,candidate_id,seed,score,episodes_used\n";
        for (const swarmlab::DesignLogEntry& e : result.log)
            log << e.iteration << "," << e.candidate_id << "," << e.seed << ","
                << swarmlab::format_double(e.score) << "," << e.episodes_used << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    std::cout << "wrote " << args.out << " mean_score=" << swarmlab::format_double(result.mean_score)
              << " episodes=" << result.episodes_used << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string controller;
    std::string mission;
    std::string platform = "epuck";
    std::string seeds = "0";
    bool pseudo_reality = false;
    std::string out;
    std::string trace;
    int parallelism = 1;
};

int cmd_evaluate(const EvaluateArgs& args) {
    swarmlab::Controller controller;
    try {
        controller = swarmlab::load_controller_file(args.controller);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    swarmlab::Mission mission;
    swarmlab::PlatformSpec platform;
    std::vector<std::uint64_t> seeds;
    try {
        mission = swarmlab::mission_from_string(args.mission);
        platform = swarmlab::resolve_platform(args.platform);
        seeds = parse_seed_range(args.seeds);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    std::vector<double> scores(seeds.size());
    try {
        swarmlab::parallel_for(seeds.size(), args.parallelism, [&](std::size_t i) {
            swarmlab::EpisodeOptions eo;
            eo.sim.seed = seeds[i];
            eo.sim.pseudo_reality = args.pseudo_reality;
            eo.record_trace = !args.trace.empty() && i == 0;
            const swarmlab::EpisodeResult r =
                swarmlab::run_episode(mission, controller, platform, eo);
            if (eo.record_trace) {
                // The score must be recomputable from the trace it came from.
                if (swarmlab::mission_score(*r.trace) != r.score)
                    throw std::runtime_error("trace does not reproduce the episode score");
                swarmlab::save_trace_csv(*r.trace, args.trace);
            }
            scores[i] = r.score;
        });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    std::string csv = "seed,score\n";
    double sum = 0.0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        csv += std::to_string(seeds[i]) + "," + swarmlab::format_double(scores[i]) + "\n";
        sum += scores[i];
    }
    csv += "mean," + swarmlab::format_double(sum / static_cast<double>(seeds.size())) + "\n";
    std::cout << csv;
    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << args.out << "\n";
            return kExitFailure;
        }
        out << csv;
    }
    return 0;
}

int cmd_transfer(const std::string& config_path) {
    swarmlab::RunConfig config;
    try {
        config = swarmlab::load_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    try {
        const swarmlab::ExperimentStats stats = swarmlab::run_experiment(
            config, [](const std::string& msg) { std::cerr << msg << "\n"; });
        std::ifstream in(config.output_dir + "/records.csv");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        swarmlab::StudyReport report = swarmlab::build_report(swarmlab::records_from_csv(text));
        report.failures = stats.failures;
        swarmlab::write_report_files(report, config.output_dir);
        std::cout << "designs: " << stats.designs_run << " run, " << stats.designs_reused
                  << " reused; evaluation groups: " << stats.eval_groups_run << " run, "
                  << stats.eval_groups_reused << " reused; failures: " << stats.failures.size()
                  << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}

struct ReportArgs {
    std::string records;
    std::string out;
    double alpha = 0.05;
};

int cmd_report(const ReportArgs& args) {
    std::vector<swarmlab::EvalRecord> records;
    try {
        std::ifstream in(args.records);
        if (!in) throw std::runtime_error("cannot open " + args.records);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        records = swarmlab::records_from_csv(text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    try {
        swarmlab::StudyReport report = swarmlab::build_report(records, args.alpha);
        const auto slash = args.records.find_last_of('/');
        const std::string records_dir =
            slash == std::string::npos ? std::string(".") : args.records.substr(0, slash);
        std::ifstream failures(records_dir + "/failures.txt");
        std::string line;
        while (std::getline(failures, line))
            if (!line.empty()) report.failures.push_back(line);
        swarmlab::write_report_files(report, args.out);
        std::cout << "wrote report under " << args.out << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"designs, evaluates, and compares swarm robot controllers"};
    app.set_version_flag("--version", std::string("swarmlab ") + swarmlab::kVersion);
    app.require_subcommand(0, 1);

    DesignArgs design;
    CLI::App* design_cmd = app.add_subcommand("design", "design one controller");
    design_cmd->add_option("--method", design.method, "fsm or ann")->required();
    design_cmd->add_option("--mission", design.mission,
                           "aggregation, foraging, or grid_exploration")->required();
    design_cmd->add_option("--platform", design.platform, "profile name or file");
    design_cmd->add_option("--budget", design.budget, "episode budget")->required();
    design_cmd->add_option("--seed", design.seed, "design seed")->required();
    design_cmd->add_option("--out", design.out, "controller file to write")->required();
    design_cmd->add_option("--parallelism", design.parallelism, "worker threads");

    EvaluateArgs evaluate;
    CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score a controller over seeds");
    evaluate_cmd->add_option("--controller", evaluate.controller, "controller file")->required();
    evaluate_cmd->add_option("--mission", evaluate.mission,
                             "aggregation, foraging, or grid_exploration")->required();
    evaluate_cmd->add_option("--platform", evaluate.platform, "profile name or file");
    evaluate_cmd->add_option("--seeds", evaluate.seeds, "seed or inclusive range a:b")->required();
    evaluate_cmd->add_flag("--pseudo-reality", evaluate.pseudo_reality,
                           "evaluate under the perturbed noise model");
    evaluate_cmd->add_option("--out", evaluate.out, "also write the CSV here");
    evaluate_cmd->add_option("--trace", evaluate.trace, "write the first seed's trace CSV here");
    evaluate_cmd->add_option("--parallelism", evaluate.parallelism, "worker threads");

    std::string transfer_config;
    CLI::App* transfer_cmd =
        app.add_subcommand("transfer", "run the full design + transfer study from a config");
    transfer_cmd->add_option("--config", transfer_config, "run config file")->required();

    ReportArgs report;
    CLI::App* report_cmd = app.add_subcommand("report", "rank analysis over a records file");
    report_cmd->add_option("--records", report.records, "records CSV")->required();
    report_cmd->add_option("--out", report.out, "directory for report files")->required();
    report_cmd->add_option("--alpha", report.alpha, "significance level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    if (design_cmd->parsed()) return cmd_design(design);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate);
    if (transfer_cmd->parsed()) return cmd_transfer(transfer_config);
    if (report_cmd->parsed()) return cmd_report(report);
    std::cout << app.help();
    return 0;
}
