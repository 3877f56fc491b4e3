#include "mncc/baselines.hpp"

#include "mncc/linalg.hpp"
#include "mncc/random.hpp"
#include "mncc/rounding.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mncc {

std::uint64_t bell_number(int n) {
    if (n < 0) throw std::invalid_argument("bell_number: negative n");
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (std::uint64_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

namespace {

class PartitionSearch {
  public:
    explicit PartitionSearch(const AffinityMatrix& a) : a_(a), n_(a.size()) {
        labels_.assign(static_cast<std::size_t>(n_), 0);
        // Ordered pairs in both directions contribute, hence the factor 2.
        same_.resize(n_, n_);
        diff_.resize(n_, n_);
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v) {
                same_(u, v) = 2.0 * (1.0 - a(u, v));
                diff_(u, v) = 2.0 * a(u, v);
            }
    }

    OracleResult run() {
        best_labels_.clear();
        best_ = std::numeric_limits<double>::infinity();
        best_k_ = 0;
        count_ = 0;
        // Diagonal terms: |A_uu - 1| = 0 for valid affinities.
        labels_[0] = 0;
        recurse(1, 1, 0.0);
        return {Partition(best_labels_), best_, count_};
    }

  private:
    void recurse(int i, int k, double cost) {
        if (i == n_) {
            ++count_;
            const double tol = 1e-9 * std::max(1.0, std::abs(cost));
            if (best_labels_.empty() || cost < best_ - tol || (std::abs(cost - best_) <= tol && k < best_k_)) {
                best_ = cost;
                best_k_ = k;
                best_labels_ = labels_;
            }
            return;
        }
        for (int c = 0; c <= k && c < n_; ++c) {
            double delta = 0;
            for (int v = 0; v < i; ++v)
                delta += labels_[static_cast<std::size_t>(v)] == c ? same_(i, v) : diff_(i, v);
            labels_[static_cast<std::size_t>(i)] = c;
            recurse(i + 1, c == k ? k + 1 : k, cost + delta);
        }
    }

    const AffinityMatrix& a_;
    int n_;
    Matrix same_;
    Matrix diff_;
    std::vector<int> labels_;
    std::vector<int> best_labels_;
    double best_ = 0;
    int best_k_ = 0;
    std::uint64_t count_ = 0;
};

} // namespace

OracleResult brute_force_optimal(const AffinityMatrix& a, int n_max) {
    if (a.size() > n_max)
        throw std::invalid_argument("brute_force_optimal: n = " + std::to_string(a.size()) +
                                    " exceeds the limit of " + std::to_string(n_max));
    return PartitionSearch(a).run();
}

// ---------------------------------------------------------------------------

namespace {

double sq_dist(const MatrixRef& points, Eigen::Index i, const Matrix& centers, Eigen::Index c) {
    return (points.row(i) - centers.row(c)).squaredNorm();
}

Matrix kmeanspp_seed(const MatrixRef& points, int k, Rng& rng) {
    const Eigen::Index n = points.rows();
    Matrix centers(k, points.cols());
    std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
    centers.row(0) = points.row(first(rng));
    std::vector<double> d2(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = sq_dist(points, i, centers, 0);
    for (int c = 1; c < k; ++c) {
        double total = 0;
        for (double v : d2) total += v;
        Eigen::Index pick = c % n;
        if (total > 0) {
            std::uniform_real_distribution<double> u(0.0, total);
            const double target = u(rng);
            double cumulative = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (d2[static_cast<std::size_t>(i)] <= 0) continue;
                pick = i;
                cumulative += d2[static_cast<std::size_t>(i)];
                if (cumulative > target) break;
            }
        }
        centers.row(c) = points.row(pick);
        for (Eigen::Index i = 0; i < n; ++i)
            d2[static_cast<std::size_t>(i)] = std::min(d2[static_cast<std::size_t>(i)], sq_dist(points, i, centers, c));
    }
    return centers;
}

} // namespace

KMeansResult kmeans_detailed(const MatrixRef& points, int k, std::uint64_t seed, int max_iters) {
    const Eigen::Index n = points.rows();
    if (k < 1 || k > n) throw std::invalid_argument("kmeans: k must lie in [1, n]");
    Rng rng(derive_seed(seed, {7}));
    Matrix centers = kmeanspp_seed(points, k, rng);
    std::vector<int> assign(static_cast<std::size_t>(n), -1);

    std::vector<double> history;
    int iterations = 0;
    for (int it = 0; it < max_iters; ++it) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best_c = 0;
            double best_d = sq_dist(points, i, centers, 0);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(points, i, centers, c);
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            if (assign[static_cast<std::size_t>(i)] != best_c) {
                assign[static_cast<std::size_t>(i)] = best_c;
                changed = true;
            }
        }
        // Reseed empty clusters from the point farthest from its center.
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int c : assign) ++counts[static_cast<std::size_t>(c)];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index far = -1;
            double far_d = -1;
            for (Eigen::Index i = 0; i < n; ++i) {
                const int ci = assign[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(ci)] < 2) continue;
                const double d = sq_dist(points, i, centers, ci);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far < 0) break;
            --counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(far)])];
            assign[static_cast<std::size_t>(far)] = c;
            ++counts[static_cast<std::size_t>(c)];
            changed = true;
        }
        centers.setZero();
        for (Eigen::Index i = 0; i < n; ++i) centers.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
        for (int c = 0; c < k; ++c)
            if (counts[static_cast<std::size_t>(c)] > 0) centers.row(c) /= counts[static_cast<std::size_t>(c)];
        double inertia = 0;
        for (Eigen::Index i = 0; i < n; ++i) inertia += sq_dist(points, i, centers, assign[static_cast<std::size_t>(i)]);
        history.push_back(inertia);
        iterations = it + 1;
        if (!changed) break;
    }
    return {Partition::from_any_labels(assign), std::move(centers), std::move(history), iterations};
}

Partition kmeans(const MatrixRef& points, int k, std::uint64_t seed) {
    return kmeans_detailed(points, k, seed).partition;
}

Matrix spectral_embedding(const AffinityMatrix& a, int k) {
    if (k < 1 || k > a.size()) throw std::invalid_argument("spectral: k must lie in [1, n]");
    const EigenDecomposition eig = symmetric_eigendecomposition(a.matrix());
    return eig.vectors.leftCols(k) * eig.values.head(k).asDiagonal();
}

Partition spectral_clustering(const AffinityMatrix& a, int k, SpectralMode mode, std::uint64_t seed) {
    const Matrix embedding = spectral_embedding(a, k);
    if (mode == SpectralMode::kmeans) return kmeans(embedding, k, seed);
    return select_best(a, single_linkage(column_distances(embedding.transpose()))).partition;
}

} // namespace mncc
