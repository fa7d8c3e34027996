#include <benchmark/benchmark.h>

#include "swarmlab/design.hpp"
#include "swarmlab/friedman.hpp"
#include "swarmlab/fsm_text.hpp"
#include "swarmlab/mission.hpp"
#include "swarmlab/simulator.hpp"

namespace {

using namespace swarmlab;

World sample_world() {
    SimConfig sim;
    sim.seed = 3;
    return make_world(build_arena(Mission::Aggregation, epuck_spec()), epuck_spec(), sim,
                      kMissionRobots);
}

void BM_Step(benchmark::State& state) {
    World world = sample_world();
    const std::vector<ActuatorCommand> commands(world.robots.size(), {8.0, 7.0});
    for (auto _ : state) {
        step_in_place(world, commands);
        benchmark::DoNotOptimize(world.robots[0].position.x);
    }
}
BENCHMARK(BM_Step);

void BM_Sense(benchmark::State& state) {
    const World world = sample_world();
    std::vector<SensorSnapshot> snaps;
    for (auto _ : state) {
        sense_into(world, snaps);
        benchmark::DoNotOptimize(snaps[0].prox.magnitude);
    }
}
BENCHMARK(BM_Sense);

void BM_Episode(benchmark::State& state) {
    const Controller controller =
        fsm_from_flags("--nstates 1 --s0 exploration --rwm0 20 --n0 0");
    EpisodeOptions eo;
    eo.sim.seed = 5;
    for (auto _ : state) {
        const EpisodeResult r = run_episode(Mission::Foraging, controller, epuck_spec(), eo);
        benchmark::DoNotOptimize(r.score);
        ++eo.sim.seed;
    }
}
BENCHMARK(BM_Episode)->Unit(benchmark::kMillisecond);

void BM_FsmParse(benchmark::State& state) {
    Rng rng(11);
    const std::string flags = fsm_to_flags(sample_fsm(rng));
    for (auto _ : state) {
        const FsmDescriptor fsm = fsm_from_flags(flags);
        benchmark::DoNotOptimize(fsm.states.size());
    }
}
BENCHMARK(BM_FsmParse);

void BM_Friedman(benchmark::State& state) {
    Rng rng(7);
    std::vector<std::vector<double>> table(30, std::vector<double>(8));
    for (auto& block : table)
        for (double& v : block) v = rng.uniform();
    for (auto _ : state) {
        const FriedmanResult res = friedman_test(table);
        benchmark::DoNotOptimize(res.p_value);
    }
}
BENCHMARK(BM_Friedman);

}  // namespace

BENCHMARK_MAIN();
