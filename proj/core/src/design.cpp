#include "swarmlab/design.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "swarmlab/friedman.hpp"
#include "swarmlab/parallel.hpp"

namespace swarmlab {

const char* to_string(Method m) { return m == Method::Fsm ? "fsm" : "ann"; }

Method method_from_string(const std::string& s) {
    if (s == "fsm") return Method::Fsm;
    if (s == "ann") return Method::Ann;
    throw std::invalid_argument("unknown method: " + s);
}

void validate(const DesignOptions& opts) {
    if (opts.budget < 100) throw std::invalid_argument("design budget must be >= 100");
    if (opts.parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
    if (opts.pool_size < 2) throw std::invalid_argument("racing pool must hold >= 2 candidates");
    if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
        throw std::invalid_argument("alpha outside (0,1)");
    if (opts.seed_cap < 1) throw std::invalid_argument("seed cap must be >= 1");
    if (opts.min_seeds_for_test < 2)
        throw std::invalid_argument("racing needs at least 2 seeds before testing");
    if (opts.population < 2) throw std::invalid_argument("population must be >= 2");
    if (opts.elites < 1 || opts.elites >= opts.population)
        throw std::invalid_argument("elite count must be in [1, population)");
    if (opts.seeds_per_generation < 1)
        throw std::invalid_argument("seeds per generation must be >= 1");
    if (!(opts.mutation_sigma > 0.0)) throw std::invalid_argument("mutation sigma must be > 0");
    validate(opts.sim);
}

namespace {

constexpr std::uint64_t kTagFsmPool = 11;
constexpr std::uint64_t kTagFsmPerturb = 12;
constexpr std::uint64_t kTagRaceSeed = 13;
constexpr std::uint64_t kTagAnnInit = 14;
constexpr std::uint64_t kTagAnnEvolve = 15;
constexpr std::uint64_t kTagEsSeed = 16;

std::uint64_t race_episode_seed(std::uint64_t seed, int iteration, int k) {
    return mix_seed(mix_seed(mix_seed(seed, kTagRaceSeed), static_cast<std::uint64_t>(iteration)),
                    static_cast<std::uint64_t>(k));
}

std::uint64_t es_episode_seed(std::uint64_t seed, int generation, int k) {
    return mix_seed(mix_seed(mix_seed(seed, kTagEsSeed), static_cast<std::uint64_t>(generation)),
                    static_cast<std::uint64_t>(k));
}

double run_one(Mission mission, const Controller& controller, const PlatformSpec& platform,
               SimConfig sim, std::uint64_t episode_seed) {
    sim.seed = episode_seed;
    EpisodeOptions eo;
    eo.sim = sim;
    eo.record_trace = false;
    return run_episode(mission, controller, platform, eo).score;
}

void sample_state_labels(StateSpec& s, Rng& rng) {
    s.behavior = static_cast<Behavior>(rng.uniform_index(6));
    if (s.behavior == Behavior::Exploration) s.rwm = static_cast<int>(rng.uniform_int(1, 100));
    if (s.behavior == Behavior::Attraction) s.att = rng.uniform(1.0, 5.0);
    if (s.behavior == Behavior::Repulsion) s.rep = rng.uniform(1.0, 5.0);
}

void resample_state_labels(StateSpec& s, Rng& rng) {
    StateSpec fresh;
    fresh.transitions = std::move(s.transitions);
    sample_state_labels(fresh, rng);
    s = std::move(fresh);
}

void sample_transition(TransitionSpec& t, int self, int nstates, Rng& rng) {
    // Uniform over the other states.
    int target = static_cast<int>(rng.uniform_int(0, nstates - 2));
    if (target >= self) ++target;
    t.target = target;
    t.condition = static_cast<Condition>(rng.uniform_index(6));
    switch (t.condition) {
        case Condition::BlackFloor:
        case Condition::GrayFloor:
        case Condition::WhiteFloor:
        case Condition::FixedProbability:
            t.beta = rng.uniform(0.0, 1.0);
            break;
        case Condition::NeighborCount:
        case Condition::InvertedNeighborCount:
            t.eta = rng.uniform(0.0, 20.0);
            t.xi = static_cast<int>(rng.uniform_int(0, 10));
            break;
    }
}

}  // namespace

FsmDescriptor sample_fsm(Rng& rng) {
    FsmDescriptor fsm;
    const int nstates = static_cast<int>(rng.uniform_int(1, 4));
    fsm.states.resize(nstates);
    for (int i = 0; i < nstates; ++i) {
        StateSpec& s = fsm.states[i];
        sample_state_labels(s, rng);
        const int ntrans = nstates == 1 ? 0 : static_cast<int>(rng.uniform_int(0, 4));
        s.transitions.resize(ntrans);
        for (TransitionSpec& t : s.transitions) sample_transition(t, i, nstates, rng);
    }
    return fsm;
}

FsmDescriptor perturb_fsm(const FsmDescriptor& fsm, double p, Rng& rng) {
    FsmDescriptor out = fsm;
    const int nstates = static_cast<int>(out.states.size());
    bool changed = false;
    for (int i = 0; i < nstates; ++i) {
        if (rng.uniform() < p) {
            resample_state_labels(out.states[i], rng);
            changed = true;
        }
        for (TransitionSpec& t : out.states[i].transitions) {
            if (rng.uniform() < p) {
                t = TransitionSpec{};
                sample_transition(t, i, nstates, rng);
                changed = true;
            }
        }
    }
    if (!changed) {
        std::size_t elements = out.states.size();
        for (const StateSpec& s : out.states) elements += s.transitions.size();
        std::size_t pick = rng.uniform_index(elements);
        if (pick < out.states.size()) {
            resample_state_labels(out.states[static_cast<int>(pick)], rng);
        } else {
            pick -= out.states.size();
            for (int i = 0; i < nstates; ++i) {
                if (pick < out.states[i].transitions.size()) {
                    TransitionSpec& t = out.states[i].transitions[pick];
                    t = TransitionSpec{};
                    sample_transition(t, i, nstates, rng);
                    break;
                }
                pick -= out.states[i].transitions.size();
            }
        }
    }
    return out;
}

DesignResult design_fsm(Mission mission, const PlatformSpec& platform,
                        const DesignOptions& opts) {
    validate(opts);
    validate(platform);
    Rng pool_rng = Rng::stream(opts.seed, kTagFsmPool);
    Rng perturb_rng = Rng::stream(opts.seed, kTagFsmPerturb);

    std::vector<FsmDescriptor> pool;
    pool.reserve(opts.pool_size);
    for (int i = 0; i < opts.pool_size; ++i) pool.push_back(sample_fsm(pool_rng));

    DesignResult result;
    long long used = 0;
    bool have_result = false;

    for (int iteration = 0;; ++iteration) {
        if (used + static_cast<long long>(pool.size()) > opts.budget) break;

        std::vector<int> alive(pool.size());
        std::iota(alive.begin(), alive.end(), 0);
        std::vector<std::vector<double>> scores(pool.size());
        int rounds = 0;

        for (int k = 0; k < opts.seed_cap; ++k) {
            if (used + static_cast<long long>(alive.size()) > opts.budget) break;
            const std::uint64_t ep_seed = race_episode_seed(opts.seed, iteration, k);
            std::vector<double> round_scores(alive.size());
            parallel_for(alive.size(), opts.parallelism, [&](std::size_t idx) {
                round_scores[idx] =
                    run_one(mission, Controller(pool[alive[idx]]), platform, opts.sim, ep_seed);
            });
            for (std::size_t idx = 0; idx < alive.size(); ++idx) {
                scores[alive[idx]].push_back(round_scores[idx]);
                ++used;
                result.log.push_back({iteration, alive[idx], ep_seed, round_scores[idx], used});
            }
            ++rounds;

            if (rounds >= opts.min_seeds_for_test && alive.size() >= 3) {
                std::vector<std::vector<double>> table(
                    rounds, std::vector<double>(alive.size()));
                for (int r = 0; r < rounds; ++r)
                    for (std::size_t c = 0; c < alive.size(); ++c)
                        table[r][c] = scores[alive[c]][r];
                const FriedmanResult fr = friedman_test(table, opts.alpha);
                if (fr.significant) {
                    std::size_t best = 0;
                    for (std::size_t c = 1; c < alive.size(); ++c)
                        if (fr.rank_sums[c] < fr.rank_sums[best]) best = c;
                    std::vector<int> keep;
                    for (std::size_t c = 0; c < alive.size(); ++c)
                        if (fr.rank_sums[c] - fr.rank_sums[best] <= fr.lsd)
                            keep.push_back(alive[c]);
                    alive = std::move(keep);
                }
            }
            if (alive.size() <= 2) break;
        }
        if (rounds == 0) break;

        // Winner of this iteration: best mean over its full seed list.
        int best_candidate = -1;
        double best_mean = -std::numeric_limits<double>::infinity();
        for (int c : alive) {
            const double mean =
                std::accumulate(scores[c].begin(), scores[c].end(), 0.0) / rounds;
            if (mean > best_mean) {
                best_mean = mean;
                best_candidate = c;
            }
        }
        result.controller = pool[best_candidate];
        result.mean_score = best_mean;
        have_result = true;

        // Survivors continue; perturbed copies refill the pool. Perturbation
        // shrinks as iterations accumulate.
        std::vector<FsmDescriptor> next;
        next.reserve(pool.size());
        for (int c : alive) next.push_back(pool[c]);
        const double p = 1.0 / (2.0 + iteration);
        std::size_t parent = 0;
        while (next.size() < pool.size()) {
            next.push_back(perturb_fsm(pool[alive[parent % alive.size()]], p, perturb_rng));
            ++parent;
        }
        pool = std::move(next);
    }

    if (!have_result)
        throw std::runtime_error("design budget cannot cover a single racing round");
    result.episodes_used = used;
    return result;
}

DesignResult design_ann(Mission mission, const PlatformSpec& platform,
                        const DesignOptions& opts) {
    validate(opts);
    validate(platform);
    const long long gen_cost =
        static_cast<long long>(opts.population) * opts.seeds_per_generation;
    Rng init_rng = Rng::stream(opts.seed, kTagAnnInit);
    Rng evolve_rng = Rng::stream(opts.seed, kTagAnnEvolve);

    std::vector<Genome> population(opts.population);
    for (Genome& g : population) g = random_genome(init_rng);

    DesignResult result;
    long long used = 0;
    Genome best_ever{};
    double best_ever_mean = -std::numeric_limits<double>::infinity();
    int best_ever_gen = -1;
    Genome last_best{};
    double last_best_mean = 0.0;
    int last_gen = -1;
    std::vector<std::uint64_t> last_seeds;

    for (int gen = 0; used + gen_cost <= opts.budget; ++gen) {
        std::vector<std::uint64_t> seeds(opts.seeds_per_generation);
        for (int k = 0; k < opts.seeds_per_generation; ++k)
            seeds[k] = es_episode_seed(opts.seed, gen, k);

        const std::size_t jobs = population.size() * seeds.size();
        std::vector<double> episode_scores(jobs);
        parallel_for(jobs, opts.parallelism, [&](std::size_t j) {
            const std::size_t c = j / seeds.size();
            const std::size_t k = j % seeds.size();
            episode_scores[j] =
                run_one(mission, Controller(population[c]), platform, opts.sim, seeds[k]);
        });
        std::vector<double> means(population.size(), 0.0);
        for (std::size_t c = 0; c < population.size(); ++c) {
            for (std::size_t k = 0; k < seeds.size(); ++k) {
                const double score = episode_scores[c * seeds.size() + k];
                means[c] += score;
                ++used;
                result.log.push_back(
                    {gen, static_cast<int>(c), seeds[k], score, used});
            }
            means[c] /= static_cast<double>(seeds.size());
        }

        std::vector<int> order(population.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return means[a] > means[b]; });

        last_gen = gen;
        last_seeds = seeds;
        last_best = population[order[0]];
        last_best_mean = means[order[0]];
        if (means[order[0]] > best_ever_mean) {
            best_ever = population[order[0]];
            best_ever_mean = means[order[0]];
            best_ever_gen = gen;
        }

        std::vector<Genome> next;
        next.reserve(population.size());
        for (int e = 0; e < opts.elites; ++e) next.push_back(population[order[e]]);
        while (next.size() < population.size()) {
            const Genome& a = next[evolve_rng.uniform_index(opts.elites)];
            const Genome& b = next[evolve_rng.uniform_index(opts.elites)];
            next.push_back(mutate(crossover(a, b, evolve_rng), opts.mutation_sigma, evolve_rng));
        }
        population = std::move(next);
    }

    if (last_gen < 0)
        throw std::runtime_error("design budget cannot cover a single generation");

    if (best_ever_gen == last_gen) {
        result.controller = last_best;
        result.mean_score = last_best_mean;
    } else if (opts.budget - used >= opts.seeds_per_generation) {
        // The historical best came from an earlier generation and has never
        // seen the final seed set; give it a fair rematch there.
        std::vector<double> rescored(last_seeds.size());
        parallel_for(last_seeds.size(), opts.parallelism, [&](std::size_t k) {
            rescored[k] = run_one(mission, Controller(best_ever), platform, opts.sim,
                                  last_seeds[k]);
        });
        double mean = 0.0;
        for (std::size_t k = 0; k < last_seeds.size(); ++k) {
            mean += rescored[k];
            ++used;
            result.log.push_back({last_gen, -1, last_seeds[k], rescored[k], used});
        }
        mean /= static_cast<double>(last_seeds.size());
        if (mean >= last_best_mean) {
            result.controller = best_ever;
            result.mean_score = mean;
        } else {
            result.controller = last_best;
            result.mean_score = last_best_mean;
        }
    } else {
        result.controller = last_best;
        result.mean_score = last_best_mean;
    }
    result.episodes_used = used;
    return result;
}

DesignResult design_controller(Method method, Mission mission, const PlatformSpec& platform,
                               const DesignOptions& opts) {
    return method == Method::Fsm ? design_fsm(mission, platform, opts)
                                 : design_ann(mission, platform, opts);
}

}  // namespace swarmlab
