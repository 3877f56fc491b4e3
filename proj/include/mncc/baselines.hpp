#pragma once

// Reference competitors: the exhaustive combinatorial optimum, spectral
// clustering and k-means.

#include "mncc/core.hpp"

#include <cstdint>
#include <vector>

namespace mncc {

struct OracleResult {
    Partition partition;
    double objective = 0;
    std::uint64_t partitions_examined = 0;
};

/// Bell number B(n) (exact for n <= 25).
std::uint64_t bell_number(int n);

/// Minimum absolute disagreement over every set partition, enumerated as
/// restricted-growth strings. Ties go to fewer clusters, then to the
/// lexicographically smaller label string. Throws std::invalid_argument when
/// n > n_max.
OracleResult brute_force_optimal(const AffinityMatrix& a, int n_max = 12);

struct KMeansResult {
    Partition partition;
    Matrix centers;
    /// Inertia after each assignment/update round.
    std::vector<double> inertia;
    int iterations = 0;
};

/// k-means++ seeding followed by Lloyd iterations until the assignment is
/// stable or 100 rounds have run. Empty clusters are reseeded with the point
/// farthest from its center.
KMeansResult kmeans_detailed(const MatrixRef& points, int k, std::uint64_t seed, int max_iters = 100);
Partition kmeans(const MatrixRef& points, int k, std::uint64_t seed);

enum class SpectralMode { slink, kmeans };

/// Rows of A * V_k, where V_k holds the eigenvectors of the k largest
/// eigenvalues of A (the principal-component scores of the rows of A).
Matrix spectral_embedding(const AffinityMatrix& a, int k);

/// Clusters the spectral embedding either by single linkage with the
/// disagreement-based level selection against `a`, or by k-means.
Partition spectral_clustering(const AffinityMatrix& a, int k, SpectralMode mode, std::uint64_t seed = 0);

} // namespace mncc
