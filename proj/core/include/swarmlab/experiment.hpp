#pragma once

#include <functional>
#include <string>
#include <vector>

#include "swarmlab/config.hpp"
#include "swarmlab/controller_io.hpp"

namespace swarmlab {

// One evaluation episode of a designed controller. `context` says where the
// controller ran relative to where it was designed: NT on its own platform,
// TT transferred to the other platform, PR on its own platform under the
// pseudo-reality noise model.
struct EvalRecord {
    Method method = Method::Fsm;
    std::string design_platform;
    std::string eval_platform;
    Mission mission = Mission::Aggregation;
    int instance = 0;
    std::string context;
    double score = 0.0;

    bool operator==(const EvalRecord&) const = default;
};

std::string records_to_csv(const std::vector<EvalRecord>& records);
std::vector<EvalRecord> records_from_csv(const std::string& text);

struct ExperimentStats {
    int designs_run = 0;
    int designs_reused = 0;
    int eval_groups_run = 0;  // one group = one (cell, context) batch of seeds
    int eval_groups_reused = 0;
    std::vector<std::string> failures;
};

using ProgressFn = std::function<void(const std::string&)>;

// Designs one controller per (method, platform, mission, instance) cell and
// evaluates each in every context, writing controllers/, records.csv, and
// failures.txt under config.output_dir. Rerunning resumes: existing
// controllers and complete record groups are reused, and whatever does run
// reproduces the exact same bytes.
ExperimentStats run_experiment(const RunConfig& config, const ProgressFn& progress = {});

struct RankedTreatment {
    std::string name;
    double avg_rank = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct RankTable {
    std::vector<RankedTreatment> treatments;
    int blocks = 0;
    double p_value = 1.0;
    bool significant = false;
};

struct TransferDrop {
    Method method = Method::Fsm;
    Mission mission = Mission::Aggregation;
    double home_mean = 0.0;
    double away_mean = 0.0;
    double drop = 0.0;  // home minus away
};

// Rank analysis in the shape used throughout: blocks are (mission, instance)
// pairs, scores are averaged over evaluation seeds, and lower average rank
// is better.
struct StudyReport {
    RankTable platform_table;  // method@platform treatments on home scores
    RankTable nt_table;        // method@NT, pooled over design platforms
    RankTable tt_table;        // method@TT
    bool rank_inversion = false;  // method order flips between NT and TT
    std::vector<TransferDrop> drops;
    std::vector<std::string> failures;
};

StudyReport build_report(const std::vector<EvalRecord>& records, double alpha = 0.05);

std::string report_to_json(const StudyReport& report);
std::string rank_table_to_csv(const RankTable& table);

// report.json, plot_platforms.csv, plot_transfer.csv under `dir`.
void write_report_files(const StudyReport& report, const std::string& dir);

}  // namespace swarmlab
