#pragma once

// Noise and recovery diagnostics relative to a planted partition.

#include "mncc/core.hpp"

#include <string>

namespace mncc {

/// Deterministic exact-recovery diagnostics for a planted partition.
struct GuaranteeReport {
    double d_max = 0;
    double unbalanceness = 1;
    int k_star = 1;
    int n = 1;
    double r = 1;                 ///< n^2 / sum |C_i|^2
    double lemma1_threshold = 0;  ///< 2 / (5 + r)
    bool theorem_holds = false;
    double mu_low = 0;
    double mu_high = 0;           ///< interval bounds are meaningful only when theorem_holds
    bool binary_input = true;     ///< the guarantee is only proven for 0/1 affinities
};

/// Flat `key=value` lines, one per field.
std::string to_key_value(const GuaranteeReport& report);

/// Fraction of disagreeing affinity mass between node u and cluster i.
double disagreement_ratio(const AffinityMatrix& a, const Partition& p, int u, int i);

double d_max(const AffinityMatrix& a, const Partition& p);

/// (1/k) * sum_i (|C_i| / |C_min|)^2; equals 1 for balanced partitions.
double unbalanceness(const Partition& p);

/// n^2 / sum_i |C_i|^2, between 1 and k.
double cluster_size_ratio(const Partition& p);

/// 2 / (5 + r); above this noise level the combinatorial optimum may differ
/// from the planted partition.
double lemma1_threshold(const Partition& p);

/// Evaluates the max-norm recovery conditions and, when they hold, the open
/// interval (mu_low, mu_high) of admissible Lagrangian weights.
///
/// With d_max == 0 the upper noise bound is vacuous: the theorem is taken to
/// hold, mu_low = 0 and mu_high comes from the remaining inequality alone.
GuaranteeReport check_recovery_guarantee(const AffinityMatrix& a, const Partition& p);

/// The same conditions from precomputed quantities.
GuaranteeReport recovery_guarantee(double d_max, const Partition& p, bool binary_input = true);

/// H(p1) + H(p2) - 2 I(p1, p2) in nats.
double variation_of_information(const Partition& p1, const Partition& p2);

/// Rounds `khat` at `threshold` and compares with the incidence matrix of
/// the planted partition.
bool exact_recovery(const MatrixRef& khat, const Partition& p_true, double threshold = 0.5);

} // namespace mncc
