#include "swarmlab/experiment.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "swarmlab/errors.hpp"
#include "swarmlab/friedman.hpp"
#include "swarmlab/parallel.hpp"
#include "swarmlab/text.hpp"

namespace swarmlab {

namespace {

constexpr const char* kRecordsHeader =
    "method,design_platform,eval_platform,mission,instance,context,score";

std::string record_row(const EvalRecord& r) {
    return std::string(to_string(r.method)) + "," + r.design_platform + "," + r.eval_platform +
           "," + to_string(r.mission) + "," + format_int(r.instance) + "," + r.context + "," +
           format_double(r.score) + "\n";
}

}  // namespace

std::string records_to_csv(const std::vector<EvalRecord>& records) {
    std::string out = std::string(kRecordsHeader) + "\n";
    for (const EvalRecord& r : records) out += record_row(r);
    return out;
}

std::vector<EvalRecord> records_from_csv(const std::string& text) {
    const std::vector<std::string> lines = split(text, '\n');
    if (lines.empty() || trim(lines[0]) != kRecordsHeader)
        throw ParseError(0, "bad records header");
    std::vector<EvalRecord> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string_view sv = trim(lines[i]);
        if (sv.empty()) continue;
        const std::vector<std::string> fields = split(sv, ',');
        if (fields.size() != 7) throw ParseError(i, "expected 7 comma-separated fields");
        EvalRecord r;
        try {
            r.method = method_from_string(fields[0]);
            r.mission = mission_from_string(fields[3]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(i, e.what());
        }
        r.design_platform = fields[1];
        r.eval_platform = fields[2];
        std::int64_t instance = 0;
        if (!try_parse_int(fields[4], instance) || instance < 0)
            throw ParseError(i, "bad instance: " + fields[4]);
        r.instance = static_cast<int>(instance);
        r.context = fields[5];
        if (r.context.empty()) throw ParseError(i, "empty context");
        if (!try_parse_double(fields[6], r.score)) throw ParseError(i, "bad score: " + fields[6]);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

constexpr std::uint64_t kTagDesign = 21;
constexpr std::uint64_t kTagEval = 22;

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t cell_seed(std::uint64_t master, std::uint64_t tag, Method method,
                        std::string_view platform, Mission mission, int instance) {
    std::uint64_t s = mix_seed(master, tag);
    s = mix_seed(s, static_cast<std::uint64_t>(method));
    s = mix_seed(s, fnv1a(platform));
    s = mix_seed(s, static_cast<std::uint64_t>(mission));
    return mix_seed(s, static_cast<std::uint64_t>(instance));
}

std::uint64_t eval_episode_seed(std::uint64_t master, Method method, std::string_view platform,
                                Mission mission, int instance, int context_idx, int k) {
    std::uint64_t s = cell_seed(master, kTagEval, method, platform, mission, instance);
    s = mix_seed(s, static_cast<std::uint64_t>(context_idx));
    return mix_seed(s, static_cast<std::uint64_t>(k));
}

using GroupKey = std::tuple<int, std::string, std::string, int, int, std::string>;

GroupKey key_of(const EvalRecord& r) {
    return {static_cast<int>(r.method), r.design_platform, r.eval_platform,
            static_cast<int>(r.mission), r.instance, r.context};
}

struct EvalContext {
    std::string name;
    int idx;
    std::size_t platform_index;
    bool pseudo;
};

}  // namespace

ExperimentStats run_experiment(const RunConfig& config, const ProgressFn& progress) {
    validate(config);
    namespace fs = std::filesystem;
    const fs::path out_dir(config.output_dir);
    const fs::path controllers_dir = out_dir / "controllers";
    fs::create_directories(controllers_dir);

    std::vector<PlatformSpec> specs;
    specs.reserve(config.platforms.size());
    for (const std::string& entry : config.platforms) specs.push_back(resolve_platform(entry));
    {
        std::set<std::string> names;
        for (const PlatformSpec& spec : specs)
            if (!names.insert(spec.name).second)
                throw std::invalid_argument("duplicate platform name: " + spec.name);
    }
    const bool has_transfer = specs.size() == 2;

    SimConfig base_sim;
    base_sim.sensor_noise_sd = config.sensor_noise_sd;
    base_sim.actuator_noise_sd = config.actuator_noise_sd;
    base_sim.substeps_per_cycle = config.substeps_per_cycle;

    // Resume bookkeeping: keep only record groups that have the full seed
    // count, rewrite the file without partial leftovers, then append.
    const fs::path records_path = out_dir / "records.csv";
    std::set<GroupKey> complete;
    {
        std::vector<EvalRecord> kept;
        if (fs::exists(records_path)) {
            std::ifstream in(records_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            const std::vector<EvalRecord> old = records_from_csv(buf.str());
            std::map<GroupKey, int> counts;
            for (const EvalRecord& r : old) ++counts[key_of(r)];
            for (const EvalRecord& r : old)
                if (counts[key_of(r)] == config.eval_seeds_per_context) kept.push_back(r);
            for (const auto& [key, count] : counts)
                if (count == config.eval_seeds_per_context) complete.insert(key);
        }
        std::ofstream rewrite(records_path, std::ios::trunc);
        if (!rewrite) throw std::runtime_error("cannot write " + records_path.string());
        rewrite << records_to_csv(kept);
    }
    std::ofstream append(records_path, std::ios::app);

    ExperimentStats stats;
    for (const Mission mission : config.missions) {
        for (const Method method : config.methods) {
            for (std::size_t dpi = 0; dpi < specs.size(); ++dpi) {
                const PlatformSpec& dp = specs[dpi];
                for (int instance = 0; instance < config.instances_per_cell; ++instance) {
                    const std::string cell = std::string(to_string(method)) + "@" + dp.name +
                                             "/" + to_string(mission) + "/" +
                                             format_int(instance);
                    std::vector<EvalContext> contexts{{"NT", 0, dpi, false}};
                    if (has_transfer) contexts.push_back({"TT", 1, 1 - dpi, false});
                    if (config.include_pseudo_reality) contexts.push_back({"PR", 2, dpi, true});

                    const fs::path ctrl_path =
                        controllers_dir / (std::string(to_string(method)) + "_" + dp.name + "_" +
                                           to_string(mission) + "_" + format_int(instance) +
                                           (method == Method::Fsm ? ".fsm" : ".ann"));

                    bool all_done = fs::exists(ctrl_path);
                    for (const EvalContext& ctx : contexts)
                        all_done = all_done &&
                                   complete.count({static_cast<int>(method), dp.name,
                                                   specs[ctx.platform_index].name,
                                                   static_cast<int>(mission), instance, ctx.name});
                    if (all_done) {
                        ++stats.designs_reused;
                        stats.eval_groups_reused += static_cast<int>(contexts.size());
                        continue;
                    }

                    Controller controller;
                    if (fs::exists(ctrl_path)) {
                        try {
                            controller = load_controller_file(ctrl_path.string());
                        } catch (const std::exception& e) {
                            stats.failures.push_back(cell + ": " + e.what());
                            continue;
                        }
                        if (method_of(controller) != method) {
                            stats.failures.push_back(cell + ": controller file holds the wrong method");
                            continue;
                        }
                        ++stats.designs_reused;
                    } else {
                        DesignOptions dopts;
                        dopts.seed =
                            cell_seed(config.master_seed, kTagDesign, method, dp.name, mission,
                                      instance);
                        dopts.budget = config.design_budget;
                        dopts.sim = base_sim;
                        dopts.parallelism = config.parallelism;
                        dopts.pool_size = config.racing_pool_size;
                        dopts.alpha = config.racing_alpha;
                        dopts.seed_cap = config.racing_seed_cap;
                        dopts.min_seeds_for_test = config.racing_min_seeds;
                        dopts.population = config.es_population;
                        dopts.elites = config.es_elites;
                        dopts.seeds_per_generation = config.es_seeds_per_generation;
                        dopts.mutation_sigma = config.ann_mutation_sigma;
                        if (progress) progress("design " + cell);
                        try {
                            controller = design_controller(method, mission, dp, dopts).controller;
                        } catch (const std::exception& e) {
                            stats.failures.push_back(cell + ": " + e.what());
                            continue;
                        }
                        save_controller_file(controller, ctrl_path.string());
                        ++stats.designs_run;
                    }

                    for (const EvalContext& ctx : contexts) {
                        const PlatformSpec& ep = specs[ctx.platform_index];
                        const GroupKey key{static_cast<int>(method), dp.name, ep.name,
                                           static_cast<int>(mission), instance, ctx.name};
                        if (complete.count(key)) {
                            ++stats.eval_groups_reused;
                            continue;
                        }
                        if (progress) progress("evaluate " + cell + " " + ctx.name);
                        std::vector<double> scores(config.eval_seeds_per_context);
                        bool failed = false;
                        try {
                            parallel_for(scores.size(), config.parallelism, [&](std::size_t k) {
                                SimConfig sim = base_sim;
                                sim.pseudo_reality = ctx.pseudo;
                                sim.seed = eval_episode_seed(config.master_seed, method, dp.name,
                                                             mission, instance, ctx.idx,
                                                             static_cast<int>(k));
                                EpisodeOptions eo;
                                eo.sim = sim;
                                scores[k] = run_episode(mission, controller, ep, eo).score;
                            });
                        } catch (const std::exception& e) {
                            stats.failures.push_back(cell + " " + ctx.name + ": " + e.what());
                            failed = true;
                        }
                        if (failed) continue;
                        std::string block;
                        for (const double score : scores) {
                            EvalRecord r;
                            r.method = method;
                            r.design_platform = dp.name;
                            r.eval_platform = ep.name;
                            r.mission = mission;
                            r.instance = instance;
                            r.context = ctx.name;
                            r.score = score;
                            block += record_row(r);
                        }
                        append << block;
                        append.flush();
                        ++stats.eval_groups_run;
                    }
                }
            }
        }
    }

    std::ofstream failures(out_dir / "failures.txt", std::ios::trunc);
    for (const std::string& f : stats.failures) failures << f << "\n";
    return stats;
}

namespace {

using CellMeanKey = std::tuple<int, std::string, std::string, int, int>;  // m, dp, ctx, mission, inst

struct MeanAccumulator {
    double sum = 0.0;
    int count = 0;
    double mean() const { return sum / count; }
};

using BlockKey = std::pair<int, int>;  // mission, instance

RankTable make_rank_table(const std::vector<std::string>& names,
                          const std::vector<std::vector<double>>& table, double alpha) {
    RankTable out;
    if (names.size() < 2 || table.size() < 2) return out;
    const FriedmanResult fr = friedman_test(table, alpha);
    out.blocks = fr.blocks;
    out.p_value = fr.p_value;
    out.significant = fr.significant;
    for (std::size_t j = 0; j < names.size(); ++j) {
        RankedTreatment t;
        t.name = names[j];
        t.avg_rank = fr.avg_ranks[j];
        t.ci_low = fr.avg_ranks[j] - fr.ci_halfwidth;
        t.ci_high = fr.avg_ranks[j] + fr.ci_halfwidth;
        out.treatments.push_back(std::move(t));
    }
    return out;
}

}  // namespace

StudyReport build_report(const std::vector<EvalRecord>& records, double alpha) {
    if (records.empty()) throw std::invalid_argument("no records to analyze");
    StudyReport report;

    std::vector<Method> methods;
    for (const Method m : {Method::Fsm, Method::Ann})
        for (const EvalRecord& r : records)
            if (r.method == m) {
                methods.push_back(m);
                break;
            }
    std::set<std::string> platform_set;
    std::set<BlockKey> block_set;
    std::set<int> mission_set;
    for (const EvalRecord& r : records) {
        platform_set.insert(r.design_platform);
        block_set.insert({static_cast<int>(r.mission), r.instance});
        mission_set.insert(static_cast<int>(r.mission));
    }
    const std::vector<std::string> platforms(platform_set.begin(), platform_set.end());
    const std::vector<BlockKey> blocks(block_set.begin(), block_set.end());

    std::map<CellMeanKey, MeanAccumulator> cells;
    for (const EvalRecord& r : records) {
        MeanAccumulator& acc = cells[{static_cast<int>(r.method), r.design_platform, r.context,
                                      static_cast<int>(r.mission), r.instance}];
        acc.sum += r.score;
        ++acc.count;
    }
    auto cell_mean = [&](Method m, const std::string& dp, const std::string& ctx,
                         const BlockKey& block) -> std::optional<double> {
        const auto it = cells.find(
            {static_cast<int>(m), dp, ctx, block.first, block.second});
        if (it == cells.end()) return std::nullopt;
        return it->second.mean();
    };

    // Per-platform table: one treatment per (method, design platform), scored
    // on the platform the controller was designed for.
    {
        std::vector<std::string> names;
        std::vector<std::pair<Method, std::string>> treatments;
        for (const Method m : methods)
            for (const std::string& p : platforms) {
                bool any = false;
                for (const BlockKey& b : blocks)
                    if (cell_mean(m, p, "NT", b)) {
                        any = true;
                        break;
                    }
                if (any) {
                    treatments.push_back({m, p});
                    names.push_back(std::string(to_string(m)) + "@" + p);
                }
            }
        std::vector<std::vector<double>> table;
        for (const BlockKey& b : blocks) {
            std::vector<double> row;
            bool full = true;
            for (const auto& [m, p] : treatments) {
                const auto v = cell_mean(m, p, "NT", b);
                if (!v) {
                    full = false;
                    break;
                }
                row.push_back(*v);
            }
            if (full) table.push_back(std::move(row));
        }
        report.platform_table = make_rank_table(names, table, alpha);
    }

    // Transfer tables: one treatment per method, pooled over design
    // platforms with equal weight.
    auto pooled_table = [&](const std::string& ctx) {
        std::vector<std::string> names;
        for (const Method m : methods) names.push_back(std::string(to_string(m)) + "@" + ctx);
        std::vector<std::vector<double>> table;
        for (const BlockKey& b : blocks) {
            std::vector<double> row;
            bool full = true;
            for (const Method m : methods) {
                double sum = 0.0;
                int n = 0;
                for (const std::string& p : platforms) {
                    const auto v = cell_mean(m, p, ctx, b);
                    if (!v) {
                        full = false;
                        break;
                    }
                    sum += *v;
                    ++n;
                }
                if (!full) break;
                row.push_back(sum / n);
            }
            if (full) table.push_back(std::move(row));
        }
        return make_rank_table(names, table, alpha);
    };
    report.nt_table = pooled_table("NT");
    report.tt_table = pooled_table("TT");

    // Does the method ordering flip once controllers cross platforms?
    if (!report.nt_table.treatments.empty() &&
        report.nt_table.treatments.size() == report.tt_table.treatments.size()) {
        auto order = [](const RankTable& t) {
            std::vector<std::size_t> idx(t.treatments.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) {
                return t.treatments[a].avg_rank < t.treatments[c].avg_rank;
            });
            return idx;
        };
        report.rank_inversion = order(report.nt_table) != order(report.tt_table);
    }

    // Raw score change per method and mission when moving platform.
    for (const Method m : methods) {
        for (const int mi : mission_set) {
            MeanAccumulator home, away;
            for (const EvalRecord& r : records) {
                if (r.method != m || static_cast<int>(r.mission) != mi) continue;
                if (r.context == "NT") {
                    home.sum += r.score;
                    ++home.count;
                } else if (r.context == "TT") {
                    away.sum += r.score;
                    ++away.count;
                }
            }
            if (home.count > 0 && away.count > 0) {
                TransferDrop d;
                d.method = m;
                d.mission = static_cast<Mission>(mi);
                d.home_mean = home.mean();
                d.away_mean = away.mean();
                d.drop = d.home_mean - d.away_mean;
                report.drops.push_back(d);
            }
        }
    }
    return report;
}

namespace {

nlohmann::ordered_json table_json(const RankTable& table) {
    nlohmann::ordered_json t;
    t["blocks"] = table.blocks;
    t["p_value"] = table.p_value;
    t["significant"] = table.significant;
    t["treatments"] = nlohmann::ordered_json::array();
    for (const RankedTreatment& r : table.treatments) {
        nlohmann::ordered_json row;
        row["name"] = r.name;
        row["avg_rank"] = r.avg_rank;
        row["ci_low"] = r.ci_low;
        row["ci_high"] = r.ci_high;
        t["treatments"].push_back(row);
    }
    return t;
}

}  // namespace

std::string report_to_json(const StudyReport& report) {
    nlohmann::ordered_json j;
    j["platform_table"] = table_json(report.platform_table);
    j["nt_table"] = table_json(report.nt_table);
    j["tt_table"] = table_json(report.tt_table);
    j["rank_inversion"] = report.rank_inversion;
    j["drops"] = nlohmann::ordered_json::array();
    for (const TransferDrop& d : report.drops) {
        nlohmann::ordered_json row;
        row["method"] = to_string(d.method);
        row["mission"] = to_string(d.mission);
        row["home_mean"] = d.home_mean;
        row["away_mean"] = d.away_mean;
        row["drop"] = d.drop;
        j["drops"].push_back(row);
    }
    j["failures"] = report.failures;
    return j.dump(2) + "\n";
}

std::string rank_table_to_csv(const RankTable& table) {
    std::string out = "treatment,avg_rank,ci_low,ci_high\n";
    for (const RankedTreatment& t : table.treatments)
        out += t.name + "," + format_double(t.avg_rank) + "," + format_double(t.ci_low) + "," +
               format_double(t.ci_high) + "\n";
    return out;
}

void write_report_files(const StudyReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "report.json", std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write report.json under " + dir);
        out << report_to_json(report);
    }
    {
        std::ofstream out(fs::path(dir) / "plot_platforms.csv", std::ios::trunc);
        out << rank_table_to_csv(report.platform_table);
    }
    {
        RankTable merged = report.nt_table;
        merged.treatments.insert(merged.treatments.end(), report.tt_table.treatments.begin(),
                                 report.tt_table.treatments.end());
        std::ofstream out(fs::path(dir) / "plot_transfer.csv", std::ios::trunc);
        out << rank_table_to_csv(merged);
    }
}

}  // namespace swarmlab
