#pragma once

// First-order solvers for the max-norm relaxation of correlation clustering
// and the trace-norm baseline.
//
// All factor-based solvers take projected subgradient steps of length
// tau / (n * sqrt(k)) at iteration k (k = 1, 2, ...). The 1/n factor
// normalizes the row sums S * R, which grow linearly with n.

#include "mncc/core.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mncc {

struct SolverConfig {
    double tau = 1.0;             ///< initial step size
    int outer_iters = 20;         ///< multiplier updates (dual decomposition)
    int iters = 2000;             ///< main iterations, or inner iterations per dual round
    double lambda0 = 1.0;         ///< initial loss weight (loss-function method)
    int lambda_double_every = 100;
    int rank_cap = 0;             ///< factor width; 0 selects min(n, 20)
    double mu = 0.05;             ///< Lagrangian weight, 0 < mu < 1
    Objective objective = Objective::absolute;
    std::uint64_t seed = 0;
    double init_scale = 0.1;      ///< factors start i.i.d. uniform in [0, init_scale]
    int restarts = 3;             ///< random restarts of solve_tight_nonneg
    /// solve_factorization keeps the iterate with the smallest Lagrangian
    /// value at `mu` instead of the smallest data objective.
    bool select_by_lagrangian = false;
    double support_tol = 1e-3;    ///< |A - K| above this counts toward the support

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
    [[nodiscard]] int effective_rank(int n) const;
};

struct SolveTrace {
    /// Entry t is the recorded objective of iterate t (t = 0 is the start).
    std::vector<double> objective;
    std::vector<long> support;
    double best_objective = 0;
    int best_iteration = 0;
    long support_size = 0;        ///< |Supp(A - Khat)| of the returned candidate
    int iterations = 0;           ///< iterations executed, summed over restarts
    int best_restart = 0;
    double wall_seconds = 0;

    /// `iteration,objective,support_size` rows with a header line.
    [[nodiscard]] std::string to_csv() const;
};

struct SolveResult {
    CandidateMatrix candidate;
    SolveTrace trace;
};

/// Entrywise sign-preserving truncation: entries that were nonzero and whose
/// sign changed (or became zero) are set to zero; entries that started at
/// zero keep their updated value.
Matrix project_l1_sign(const MatrixRef& before, const MatrixRef& after);

/// Elementwise minimizer of |A - Z| + Lambda * Z over |Z| <= 1:
/// -sign(Lambda) where |Lambda| > 1, otherwise A.
Matrix z_subproblem_elementwise(const MatrixRef& lambda, const AffinityMatrix& a);

/// Number of entries with |A - K| > tol.
long support_size(const AffinityMatrix& a, const MatrixRef& k, double tol = 1e-3);

struct LagrangianValue {
    double value = 0;
    double max_norm_bound = 0;
    /// True when no factors were available and the max-norm term is the
    /// diagonal lower bound max_i K_ii rather than a factorization witness.
    bool estimated = false;
};

/// (1 - mu) / n^2 * ||A - K||_1 + mu * (max-norm bound of K).
LagrangianValue lagrangian_objective(const AffinityMatrix& a, const MatrixRef& k, double mu);
LagrangianValue lagrangian_objective(const AffinityMatrix& a, const CandidateMatrix& k, double mu);

/// Projected subgradient on K = L R^T with row-norm projections. Returns the
/// best recorded iterate with its factors.
SolveResult solve_factorization(const AffinityMatrix& a, const SolverConfig& cfg);

/// Sparse-plus-low-rank surrogate ||Z||_1 + lambda ||A - Z - L R^T||_F^2 with
/// lambda doubling on a schedule. Returns Khat = A - Z and the sparse part Z.
SolveResult solve_loss_function(const AffinityMatrix& a, const SolverConfig& cfg);

/// Loss weight in force after `completed_iterations` iterations:
/// lambda0 * 2^floor(completed / lambda_double_every).
double loss_function_weight(const SolverConfig& cfg, long completed_iterations);

/// Dual decomposition of the split problem K = Z with K in the max-norm
/// ball. Each round takes cfg.iters factor steps on obj(A, K) - <Lambda, K>,
/// sets Z by z_subproblem_elementwise, then Lambda -= tau/sqrt(t) (K - Z);
/// rounds stop early once K and Z agree after rounding at 0.5.
///
/// Returns the elementwise estimate Zhat of the final round (equal to A off
/// the active multiplier set), A - Zhat as the sparse part, and the
/// multiplier. The trace records one entry per round: the data objective of
/// the ball iterate and |Supp(A - Zhat)|.
SolveResult solve_dual_decomposition(const AffinityMatrix& a, const SolverConfig& cfg);

/// Single nonnegative factor: K = R R^T with R >= 0 and unit row-norm bound.
/// Multi-start over cfg.restarts seeds.
SolveResult solve_tight_nonneg(const AffinityMatrix& a, const SolverConfig& cfg);

/// Trace-norm regularized baseline:
/// min (1 - mu) / n^2 * obj(A, K) + mu * ||K||_*
/// by subgradient steps on the data term followed by eigenvalue shrinkage.
SolveResult solve_trace_norm(const AffinityMatrix& a, const SolverConfig& cfg);

/// Trace-norm weight whose regularizer trades off against the data term the
/// way `mu_max_norm` does for the max-norm: ||K||_* = n * ||K||_max on every
/// clustering matrix, so mu' / (1 - mu') = mu / ((1 - mu) n).
double trace_norm_weight(double mu_max_norm, int n);

/// Writes the semidefinite program for the max-norm relaxation in the text
/// format described in docs/sdp_export.md.
void write_sdp_export(std::ostream& out, const AffinityMatrix& a);

} // namespace mncc
