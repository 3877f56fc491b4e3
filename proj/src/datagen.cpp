#include "mncc/datagen.hpp"

#include "mncc/metrics.hpp"
#include "mncc/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mncc {

std::string_view to_string(NoiseModel model) {
    return model == NoiseModel::binary_flip ? "binary" : "fractional";
}

NoiseModel parse_noise_model(std::string_view text) {
    if (text == "binary" || text == "binary_flip") return NoiseModel::binary_flip;
    if (text == "fractional") return NoiseModel::fractional;
    throw std::invalid_argument("unknown noise model: " + std::string(text));
}

PlantedInstance planted_clusters(std::span<const int> sizes, const NoiseSpec& noise) {
    if (sizes.empty()) throw std::invalid_argument("planted_clusters: sizes must be non-empty");
    if (!(noise.rate >= 0 && noise.rate <= 1)) throw std::invalid_argument("noise rate must lie in [0, 1]");
    Partition truth = Partition::from_sizes(sizes);
    Matrix m = incidence_matrix(truth).matrix();
    const int n = truth.size();

    Rng rng(derive_seed(noise.seed, {static_cast<std::uint64_t>(noise.model)}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double x = m(u, v);
            // One draw per entry in both models keeps the stream layout fixed.
            const double draw = unit(rng);
            if (noise.model == NoiseModel::binary_flip) {
                if (draw < noise.rate) x = 1.0 - x;
            } else {
                const double toward = x < 0.5 ? 1.0 : (x > 0.5 ? -1.0 : 0.0);
                x = std::clamp(x + toward * noise.rate * draw, 0.0, 1.0);
            }
            m(u, v) = x;
            m(v, u) = x;
        }
    AffinityMatrix a(std::move(m));
    const double dm = d_max(a, truth);
    return {std::move(a), std::move(truth), dm};
}

Lemma1Objectives lemma1_objectives(std::span<const int> sizes, double gamma) {
    if (!(gamma >= 0 && gamma <= 0.5)) throw std::invalid_argument("gamma must lie in [0, 1/2]");
    if (sizes.empty()) throw std::invalid_argument("sizes must be non-empty");
    double n = 0, sum_sq = 0, cross = 0;
    for (int c : sizes) n += c;
    for (int c : sizes) {
        sum_sq += static_cast<double>(c) * c;
        cross += static_cast<double>(c) * (n - c);
    }
    return {gamma * gamma * sum_sq + 0.5 * gamma * gamma * cross, gamma * (1.0 - 2.0 * gamma) * sum_sq};
}

Lemma1Instance lemma1_instance(std::span<const int> sizes, double gamma) {
    if (!(gamma >= 0 && gamma <= 0.5)) throw std::invalid_argument("gamma must lie in [0, 1/2]");
    Partition original = Partition::from_sizes(sizes);
    const int n = original.size();
    Matrix m = incidence_matrix(original).matrix();

    std::vector<int> alt(static_cast<std::size_t>(n));
    std::vector<int> linked;  // union of all a_i
    const int k = static_cast<int>(sizes.size());
    int offset = 0;
    for (int i = 0; i < k; ++i) {
        const double s = gamma * sizes[static_cast<std::size_t>(i)];
        const int sub = static_cast<int>(std::lround(s));
        if (std::abs(s - sub) > 1e-9)
            throw std::invalid_argument("lemma1_instance: gamma * |C_i| must be an integer");
        // a_i = [offset, offset + sub), b_i = [offset + sub, offset + 2 sub)
        for (int u = offset; u < offset + sub; ++u)
            for (int v = offset + sub; v < offset + 2 * sub; ++v) {
                m(u, v) = 0.0;
                m(v, u) = 0.0;
            }
        for (int u = 0; u < sizes[static_cast<std::size_t>(i)]; ++u)
            alt[static_cast<std::size_t>(offset + u)] = u < sub ? 0 : i + 1;
        for (int u = offset; u < offset + sub; ++u) linked.push_back(u);
        offset += sizes[static_cast<std::size_t>(i)];
    }
    for (int u : linked)
        for (int v : linked) m(u, v) = 1.0;
    return {AffinityMatrix(std::move(m)), std::move(original), Partition::from_any_labels(alt)};
}

Fig3Fixture fig3_fixture() {
    constexpr int clique = 18;
    constexpr int node_a = 0;
    constexpr int node_b = clique;
    std::vector<int> sizes{clique, clique};
    Partition truth = Partition::from_sizes(sizes);
    Matrix m = incidence_matrix(truth).matrix();
    auto set = [&](int u, int v, double x) {
        m(u, v) = x;
        m(v, u) = x;
    };
    for (int v = 1; v <= 4; ++v) set(node_a, v, 0.0);
    for (int v = 23; v <= 33; ++v) set(node_a, v, 1.0);
    for (int v = 19; v <= 22; ++v) set(node_b, v, 0.0);
    for (int v = 5; v <= 11; ++v) set(node_b, v, 1.0);
    return {AffinityMatrix(std::move(m)), std::move(truth), node_a, node_b};
}

AffinityMatrix gaussian_kernel_affinity(const MatrixRef& points, double sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
    const Eigen::Index n = points.rows();
    if (n == 0) throw std::invalid_argument("no points");
    Matrix m(n, n);
    for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = u; v < n; ++v) {
            const double d2 = (points.row(u) - points.row(v)).squaredNorm();
            const double x = std::exp(-d2 / (2.0 * sigma * sigma));
            m(u, v) = x;
            m(v, u) = x;
        }
    return AffinityMatrix(std::move(m));
}

} // namespace mncc
