#pragma once

#include "mncc/core.hpp"
#include "mncc/random.hpp"

#include <vector>

namespace mncc::testing {

inline AffinityMatrix random_binary_affinity(int n, double p, Rng& rng) {
    std::bernoulli_distribution edge(p);
    Matrix m = Matrix::Identity(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) m(u, v) = m(v, u) = edge(rng) ? 1.0 : 0.0;
    return AffinityMatrix(m);
}

inline AffinityMatrix random_fractional_affinity(int n, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix m = Matrix::Identity(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) m(u, v) = m(v, u) = unit(rng);
    return AffinityMatrix(m);
}

inline Partition random_partition(int n, int max_k, Rng& rng) {
    std::uniform_int_distribution<int> label(0, max_k - 1);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int& l : labels) l = label(rng);
    return Partition::from_any_labels(labels);
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

} // namespace mncc::testing
