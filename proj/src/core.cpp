#include "mncc/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mncc {

std::string_view to_string(Objective objective) {
    return objective == Objective::absolute ? "absolute" : "linear";
}

Objective parse_objective(std::string_view text) {
    if (text == "abs" || text == "absolute") return Objective::absolute;
    if (text == "linear" || text == "lin") return Objective::linear;
    throw std::invalid_argument("unknown objective: " + std::string(text));
}

// ---------------------------------------------------------------------------
// AffinityMatrix

AffinityMatrix::AffinityMatrix(Matrix entries, double tol) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("affinity matrix must be square");
    if (entries_.rows() == 0)
        throw std::invalid_argument("affinity matrix must be non-empty");
    if (!entries_.allFinite())
        throw std::invalid_argument("affinity matrix has non-finite entries");
    const Eigen::Index n = entries_.rows();
    for (Eigen::Index u = 0; u < n; ++u) {
        for (Eigen::Index v = u; v < n; ++v) {
            double a = entries_(u, v);
            double b = entries_(v, u);
            if (std::abs(a - b) > tol)
                throw std::invalid_argument("affinity matrix is not symmetric at (" +
                                            std::to_string(u) + "," + std::to_string(v) + ")");
            double m = 0.5 * (a + b);
            if (m < -tol || m > 1.0 + tol)
                throw std::invalid_argument("affinity entry outside [0,1] at (" +
                                            std::to_string(u) + "," + std::to_string(v) + ")");
            m = std::clamp(m, 0.0, 1.0);
            if (u == v) {
                if (std::abs(m - 1.0) > tol)
                    throw std::invalid_argument("affinity diagonal must be 1 at " +
                                                std::to_string(u));
                m = 1.0;
            }
            entries_(u, v) = m;
            entries_(v, u) = m;
        }
    }
}

AffinityMatrix AffinityMatrix::ideal(std::span<const int> labels) {
    return AffinityMatrix(incidence_matrix(Partition::from_any_labels(labels)).matrix());
}

bool AffinityMatrix::is_binary() const {
    return (entries_.array() == 0.0 || entries_.array() == 1.0).all();
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty())
        throw std::invalid_argument("partition must cover at least one node");
    int k = 0;
    for (int l : labels_) {
        if (l < 0) throw std::invalid_argument("cluster ids must be non-negative");
        k = std::max(k, l + 1);
    }
    if (k > static_cast<int>(labels_.size()))
        throw std::invalid_argument("cluster ids must be contiguous 0..k-1");
    sizes_.assign(static_cast<std::size_t>(k), 0);
    for (int l : labels_) ++sizes_[static_cast<std::size_t>(l)];
    if (std::find(sizes_.begin(), sizes_.end(), 0) != sizes_.end())
        throw std::invalid_argument("cluster ids must be contiguous 0..k-1");
}

Partition Partition::from_any_labels(std::span<const int> labels) {
    std::unordered_map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int l : labels) {
        auto [it, inserted] = remap.try_emplace(l, static_cast<int>(remap.size()));
        out.push_back(it->second);
    }
    return Partition(std::move(out));
}

Partition Partition::singletons(int n) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
    return Partition(std::move(labels));
}

Partition Partition::single_cluster(int n) {
    return Partition(std::vector<int>(static_cast<std::size_t>(n), 0));
}

Partition Partition::from_sizes(std::span<const int> sizes) {
    std::vector<int> labels;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw std::invalid_argument("cluster sizes must be >= 1");
        labels.insert(labels.end(), static_cast<std::size_t>(sizes[i]), static_cast<int>(i));
    }
    return Partition(std::move(labels));
}

int Partition::min_cluster_size() const {
    return *std::min_element(sizes_.begin(), sizes_.end());
}

std::vector<std::vector<int>> Partition::members() const {
    std::vector<std::vector<int>> out(sizes_.size());
    for (int u = 0; u < size(); ++u) out[static_cast<std::size_t>(label(u))].push_back(u);
    return out;
}

Partition Partition::canonical() const { return from_any_labels(labels_); }

bool Partition::same_clustering(const Partition& other) const {
    return size() == other.size() && canonical().labels_ == other.canonical().labels_;
}

// ---------------------------------------------------------------------------
// ClusteringMatrix

namespace {

// Labels each node by the first column it is connected to; the matrix is a
// clustering matrix iff it agrees with "same label" everywhere.
std::optional<std::vector<int>> block_labels(const Matrix& b) {
    const Eigen::Index n = b.rows();
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Eigen::Index u = 0; u < n; ++u) {
        if (b(u, u) != 1.0) return std::nullopt;
        Eigen::Index first = 0;
        while (b(u, first) != 1.0) ++first;
        labels[static_cast<std::size_t>(u)] = static_cast<int>(first);
    }
    for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = 0; v < n; ++v) {
            bool same = labels[static_cast<std::size_t>(u)] == labels[static_cast<std::size_t>(v)];
            if ((b(u, v) == 1.0) != same) return std::nullopt;
        }
    return labels;
}

} // namespace

std::optional<ClusteringMatrix> ClusteringMatrix::from_matrix(const MatrixRef& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
    Matrix rounded = (m.array() >= 0.5).cast<double>();
    if (((m - rounded).array().abs() > tol).any()) return std::nullopt;
    if (!block_labels(rounded)) return std::nullopt;
    return ClusteringMatrix(std::move(rounded));
}

Partition ClusteringMatrix::to_partition() const {
    return Partition::from_any_labels(*block_labels(entries_));
}

ClusteringMatrix incidence_matrix(const Partition& p) {
    const int n = p.size();
    Matrix k(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) k(u, v) = p.label(u) == p.label(v) ? 1.0 : 0.0;
    return ClusteringMatrix(std::move(k));
}

bool is_valid_clustering(const MatrixRef& m, double tol) {
    return ClusteringMatrix::from_matrix(m, tol).has_value();
}

// ---------------------------------------------------------------------------
// CandidateMatrix

CandidateMatrix CandidateMatrix::from_entries(Matrix entries) {
    CandidateMatrix c;
    c.entries = std::move(entries);
    return c;
}

CandidateMatrix CandidateMatrix::from_factors(Matrix left, Matrix right) {
    if (left.rows() != right.rows() || left.cols() != right.cols())
        throw std::invalid_argument("factor shapes differ");
    CandidateMatrix c;
    c.entries = left * right.transpose();
    c.left = std::move(left);
    c.right = std::move(right);
    return c;
}

// ---------------------------------------------------------------------------
// Objectives

namespace {
void check_dims(const AffinityMatrix& a, const MatrixRef& k) {
    if (k.rows() != a.size() || k.cols() != a.size())
        throw std::invalid_argument("candidate dimensions do not match the affinity matrix");
}
} // namespace

double absolute_disagreement(const AffinityMatrix& a, const MatrixRef& k) {
    check_dims(a, k);
    return (a.matrix() - k).array().abs().sum();
}

double linear_disagreement(const AffinityMatrix& a, const MatrixRef& k) {
    check_dims(a, k);
    return (k.array() * (1.0 - 2.0 * a.matrix().array())).sum() + a.matrix().sum();
}

double disagreement(const AffinityMatrix& a, const MatrixRef& k, Objective objective) {
    return objective == Objective::absolute ? absolute_disagreement(a, k)
                                            : linear_disagreement(a, k);
}

} // namespace mncc
