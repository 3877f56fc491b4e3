#pragma once

// Synthetic instances: planted clusters with controlled noise, the
// adversarial construction at the noise threshold, the two-clique
// counterexample, and Gaussian-kernel affinities.

#include "mncc/core.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace mncc {

enum class NoiseModel { binary_flip, fractional };

std::string_view to_string(NoiseModel model);
NoiseModel parse_noise_model(std::string_view text);

struct NoiseSpec {
    NoiseModel model = NoiseModel::binary_flip;
    double rate = 0;  ///< in [0, 1]
    std::uint64_t seed = 0;
};

struct PlantedInstance {
    AffinityMatrix affinity;
    Partition truth;
    double realized_d_max = 0;
};

/// Ideal block matrix for `sizes`, corrupted off the diagonal:
///   binary_flip: each upper-triangle entry flips with probability `rate`
///   fractional:  each entry moves toward 0.5 by rate * U, U ~ uniform(0, 1),
///                clamped to [0, 1]
/// The lower triangle mirrors the upper one.
PlantedInstance planted_clusters(std::span<const int> sizes, const NoiseSpec& noise);

struct Lemma1Objectives {
    double original = 0;     ///< disagreement of the planted clustering
    double alternative = 0;  ///< disagreement of the competing clustering
};

/// Closed-form disagreements (counted over unordered pairs) of the planted
/// and alternative clusterings in the adversarial construction at noise
/// level gamma in [0, 1/2].
Lemma1Objectives lemma1_objectives(std::span<const int> sizes, double gamma);

struct Lemma1Instance {
    AffinityMatrix affinity;
    Partition original;
    Partition alternative;
};

/// Concrete adversarial instance: every cluster C_i holds two disjoint
/// sub-cliques a_i and b_i of gamma * |C_i| nodes; a_i is disconnected from
/// b_i and fully linked to every other a_j. The alternative clustering groups
/// all a_i together. d_max of the original clustering is exactly gamma.
/// Requires gamma * |C_i| to be an integer for every i.
Lemma1Instance lemma1_instance(std::span<const int> sizes, double gamma);

struct Fig3Fixture {
    AffinityMatrix affinity;
    Partition truth;
    int node_a = 0;
    int node_b = 0;
};

/// Two 18-cliques (nodes 0..17 and 18..35). Node A = 0 loses its edges to
/// nodes 1..4 and gains edges to 23..33; node B = 18 loses its edges to
/// 19..22 and gains edges to 5..11. A and B are not linked.
Fig3Fixture fig3_fixture();

/// A_uv = exp(-||x_u - x_v||^2 / (2 sigma^2)) over the rows of `points`.
AffinityMatrix gaussian_kernel_affinity(const MatrixRef& points, double sigma);

} // namespace mncc
