#include "swarmlab/ann.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmlab {

void validate(const Genome& genome) {
    for (double g : genome.genes) {
        if (!(g >= kGeneMin && g <= kGeneMax))
            throw std::invalid_argument("gene outside [-5,5]");
    }
}

std::array<double, kAnnInputs> ann_inputs(const SensorSnapshot& snap) {
    std::array<double, kAnnInputs> x{};
    for (int k = 0; k < kNumProxRays; ++k) x[k] = snap.prox_rays[k];
    for (int k = 0; k < kNumLightRays; ++k) x[8 + k] = snap.light_rays[k];
    x[16] = snap.gnd == GroundColor::Black ? 1.0 : 0.0;
    x[17] = snap.gnd == GroundColor::Gray ? 1.0 : 0.0;
    x[18] = snap.gnd == GroundColor::White ? 1.0 : 0.0;
    x[19] = snap.swarm_size > 1
                ? static_cast<double>(snap.neighbor_count) / (snap.swarm_size - 1)
                : 0.0;
    for (int k = 0; k < 4; ++k) {
        const double lobe = std::cos(snap.neighbors.angle - k * (kPi / 2.0));
        x[20 + k] = lobe > 0.0 ? snap.neighbors.magnitude * lobe : 0.0;
    }
    return x;
}

ActuatorCommand ann_forward(const Genome& genome, const SensorSnapshot& snap,
                            const PlatformSpec& platform) {
    const std::array<double, kAnnInputs> x = ann_inputs(snap);
    double left = genome.genes[kAnnInputs];           // bias weight
    double right = genome.genes[2 * kAnnInputs + 1];  // bias weight
    for (int k = 0; k < kAnnInputs; ++k) {
        left += genome.genes[k] * x[k];
        right += genome.genes[kAnnInputs + 1 + k] * x[k];
    }
    return {platform.v_max * std::tanh(left), platform.v_max * std::tanh(right)};
}

Genome random_genome(Rng& rng) {
    Genome g;
    for (double& gene : g.genes) gene = rng.uniform(kGeneMin, kGeneMax);
    return g;
}

Genome mutate(const Genome& genome, double sigma, Rng& rng) {
    Genome out = genome;
    for (double& gene : out.genes) {
        gene += rng.gaussian(0.0, sigma);
        if (gene < kGeneMin) gene = kGeneMin;
        if (gene > kGeneMax) gene = kGeneMax;
    }
    return out;
}

Genome crossover(const Genome& a, const Genome& b, Rng& rng) {
    Genome out;
    for (int k = 0; k < kGenomeLength; ++k)
        out.genes[k] = rng.uniform() < 0.5 ? a.genes[k] : b.genes[k];
    return out;
}

}  // namespace swarmlab
