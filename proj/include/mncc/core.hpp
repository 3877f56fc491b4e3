#pragma once

// Domain types for correlation clustering: affinity matrices, partitions,
// clustering (incidence) matrices, relaxed candidates, and the two
// disagreement objectives.

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mncc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixRef = Eigen::Ref<const Matrix>;

/// Which disagreement objective a solver optimizes.
enum class Objective { absolute, linear };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view text);

/// Symmetric n×n matrix with entries in [0,1] and unit diagonal.
class AffinityMatrix {
  public:
    /// Validates and stores `entries`. Entries within `tol` of violating an
    /// invariant are repaired (averaged with the transpose, clamped to [0,1],
    /// diagonal set to 1); anything further off throws std::invalid_argument.
    explicit AffinityMatrix(Matrix entries, double tol = 1e-9);

    static AffinityMatrix ideal(std::span<const int> labels);

    [[nodiscard]] int size() const { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] const Matrix& matrix() const { return entries_; }
    [[nodiscard]] double operator()(int u, int v) const { return entries_(u, v); }
    [[nodiscard]] bool is_binary() const;

  private:
    Matrix entries_;
};

/// Assignment of n nodes to k clusters labelled 0..k-1.
class Partition {
  public:
    /// Labels must use every id in 0..k-1 at least once.
    explicit Partition(std::vector<int> labels);

    /// Compacts arbitrary (non-negative or negative) ids into 0..k-1 in order
    /// of first appearance.
    static Partition from_any_labels(std::span<const int> labels);
    static Partition singletons(int n);
    static Partition single_cluster(int n);
    static Partition from_sizes(std::span<const int> sizes);

    [[nodiscard]] int size() const { return static_cast<int>(labels_.size()); }
    [[nodiscard]] int num_clusters() const { return static_cast<int>(sizes_.size()); }
    [[nodiscard]] int label(int u) const { return labels_[static_cast<std::size_t>(u)]; }
    [[nodiscard]] const std::vector<int>& labels() const { return labels_; }
    [[nodiscard]] const std::vector<int>& sizes() const { return sizes_; }
    [[nodiscard]] int min_cluster_size() const;
    [[nodiscard]] std::vector<std::vector<int>> members() const;

    /// Relabelled so that ids appear in first-occurrence order (a
    /// restricted-growth string).
    [[nodiscard]] Partition canonical() const;

    /// True iff both partitions group the nodes identically, ignoring ids.
    [[nodiscard]] bool same_clustering(const Partition& other) const;

    bool operator==(const Partition&) const = default;

  private:
    std::vector<int> labels_;
    std::vector<int> sizes_;
};

/// Binary, symmetric, transitive matrix K(C) with unit diagonal.
class ClusteringMatrix {
  public:
    /// Rounds `m` at 0.5 and accepts it only if every entry was within `tol`
    /// of its rounded value and the rounded matrix has block structure.
    static std::optional<ClusteringMatrix> from_matrix(const MatrixRef& m, double tol = 1e-6);

    [[nodiscard]] int size() const { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] const Matrix& matrix() const { return entries_; }
    [[nodiscard]] Partition to_partition() const;

  private:
    friend ClusteringMatrix incidence_matrix(const Partition& p);
    explicit ClusteringMatrix(Matrix entries) : entries_(std::move(entries)) {}
    Matrix entries_;
};

/// Unconstrained iterate produced by a relaxed solver.
///
/// When factors are present `entries == left * right^T`; `from_factors`
/// computes the product so the two never go out of sync.
struct CandidateMatrix {
    Matrix entries;
    std::optional<Matrix> left;
    std::optional<Matrix> right;
    /// Sparse disagreement part; for the split solvers the estimate is
    /// `entries = A - sparse`.
    std::optional<Matrix> sparse;
    /// Lagrange multiplier of the dual decomposition solver.
    std::optional<Matrix> multiplier;

    static CandidateMatrix from_entries(Matrix entries);
    static CandidateMatrix from_factors(Matrix left, Matrix right);

    [[nodiscard]] int size() const { return static_cast<int>(entries.rows()); }
    [[nodiscard]] bool has_factors() const { return left.has_value() && right.has_value(); }
};

ClusteringMatrix incidence_matrix(const Partition& p);

/// Default entrywise tolerance is 1e-6; validity is judged after rounding at 0.5.
bool is_valid_clustering(const MatrixRef& m, double tol = 1e-6);

/// Sum over all (u, v), diagonal included, of |A_uv - K_uv|.
double absolute_disagreement(const AffinityMatrix& a, const MatrixRef& k);

/// Sum of K_uv (1 - 2 A_uv) plus the constant sum of A_uv, so the value matches
/// the absolute objective on binary inputs.
double linear_disagreement(const AffinityMatrix& a, const MatrixRef& k);

double disagreement(const AffinityMatrix& a, const MatrixRef& k, Objective objective);

} // namespace mncc
