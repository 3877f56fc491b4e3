#pragma once

// Single-linkage hierarchies and the disagreement-based level selection used
// to round relaxed solutions to valid clusterings.

#include "mncc/core.hpp"

#include <string>
#include <vector>

namespace mncc {

enum class ColumnMetric { l2, l1 };

struct Merge {
    int cluster_a = 0;  ///< smallest node id in the surviving cluster
    int cluster_b = 0;  ///< smallest node id in the absorbed cluster
    double distance = 0;
};

/// levels[t] has n - t clusters; levels[0] is all singletons.
struct Hierarchy {
    std::vector<Partition> levels;
    std::vector<Merge> merges;

    [[nodiscard]] int size() const { return levels.empty() ? 0 : levels.front().size(); }
    /// `step,cluster_a,cluster_b,distance` rows with a header line.
    [[nodiscard]] std::string merge_log_csv() const;
};

/// Pairwise distances between the columns of `m`.
Matrix column_distances(const MatrixRef& m, ColumnMetric metric = ColumnMetric::l2);

/// Agglomerates the closest pair of clusters (minimum node-pair distance)
/// until one cluster remains. Ties go to the lexicographically smallest
/// (cluster_a, cluster_b) pair, clusters being named by their smallest node.
/// Requires a symmetric matrix.
Hierarchy slink(const MatrixRef& m, ColumnMetric metric = ColumnMetric::l2);

/// The same agglomeration over a precomputed symmetric distance matrix.
Hierarchy single_linkage(const MatrixRef& distances);

struct Selection {
    Partition partition;
    double objective = 0;
    int level = 0;
};

/// Level with the smallest absolute disagreement against `a`; the lowest
/// level index wins ties.
Selection select_best(const AffinityMatrix& a, const Hierarchy& h);

/// Single linkage on the symmetric part of `candidate`, then select_best
/// against the original affinities.
Partition round_to_valid(const CandidateMatrix& candidate, const AffinityMatrix& a,
                         ColumnMetric metric = ColumnMetric::l2);
Selection round_to_valid_selection(const MatrixRef& candidate, const AffinityMatrix& a,
                                   ColumnMetric metric = ColumnMetric::l2);

} // namespace mncc
