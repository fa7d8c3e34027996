#pragma once

#include <array>

#include "swarmlab/reference_model.hpp"
#include "swarmlab/rng.hpp"

namespace swarmlab {

inline constexpr int kAnnInputs = 24;
inline constexpr int kGenomeLength = 2 * (kAnnInputs + 1);
inline constexpr double kGeneMin = -5.0;
inline constexpr double kGeneMax = 5.0;

// Weights of a single-layer network: 24 inputs plus a bias unit feeding two
// tanh outputs. Genes 0..24 drive the left wheel, 25..49 the right (bias
// weight last in each half).
struct Genome {
    std::array<double, kGenomeLength> genes{};

    bool operator==(const Genome&) const = default;
};

void validate(const Genome& genome);

// Flattens a sensor snapshot into the network's input vector: 8 proximity
// rays, 8 light rays, one-hot ground color, normalized neighbor count, and
// the neighbor vector projected onto four half-axes.
std::array<double, kAnnInputs> ann_inputs(const SensorSnapshot& snap);

// Wheel speeds in [-v_max, v_max].
ActuatorCommand ann_forward(const Genome& genome, const SensorSnapshot& snap,
                            const PlatformSpec& platform);

Genome random_genome(Rng& rng);
Genome mutate(const Genome& genome, double sigma, Rng& rng);
Genome crossover(const Genome& a, const Genome& b, Rng& rng);

}  // namespace swarmlab
