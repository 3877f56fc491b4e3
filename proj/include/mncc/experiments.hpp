#pragma once

// Experiment drivers shared by the command-line tool and the acceptance
// tests: one entry point per clustering method, recovery sweeps over a noise
// grid, and the optimizer comparison.

#include "mncc/core.hpp"
#include "mncc/datagen.hpp"
#include "mncc/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mncc {

enum class Method { factor, loss, dual, tight, trace, slink, spectral };

std::string_view to_string(Method method);
/// Throws std::invalid_argument on an unknown name.
Method parse_method(std::string_view text);
std::vector<Method> parse_methods(std::string_view comma_list);
/// True for the methods that produce a relaxed matrix before rounding.
bool is_relaxed(Method method);

struct MethodOutput {
    Partition partition;
    /// Relaxed solution before rounding (relaxed methods only).
    std::optional<CandidateMatrix> candidate;
    std::optional<SolveTrace> trace;
};

/// Runs `method` on `a` and rounds relaxed output with round_to_valid.
/// `num_clusters` is used by the spectral method only. For the trace-norm
/// baseline, cfg.mu is read as a max-norm weight and converted with
/// trace_norm_weight.
MethodOutput run_method(Method method, const AffinityMatrix& a, const SolverConfig& cfg,
                        int num_clusters = 2);

/// "auto" picks the absolute objective for binary noise and the linear one
/// for fractional noise.
Objective auto_objective(NoiseModel noise);

struct SweepConfig {
    std::vector<int> sizes{10, 10, 10, 10};
    NoiseModel noise = NoiseModel::binary_flip;
    std::vector<double> grid{0.0};
    int trials = 20;
    std::vector<Method> methods{Method::tight, Method::trace};
    std::optional<Objective> objective;  ///< empty selects auto_objective(noise)
    SolverConfig solver;
    std::uint64_t base_seed = 0;
    int workers = 0;             ///< 0 uses the hardware concurrency
    bool record_runtime = false; ///< wall-clock seconds make the CSV non-reproducible

    /// Throws std::invalid_argument unless the grid is sorted ascending with
    /// values in [0, 1], trials >= 1 and at least one method is selected.
    void validate() const;
};

/// Instance seed for (level, trial); all methods share it.
std::uint64_t trial_seed(std::uint64_t base_seed, int level, int trial);

struct SweepRow {
    int level = 0;
    double rho = 0;
    int trial = 0;
    Method method = Method::tight;
    double realized_d_max = 0;
    bool recovered = false;      ///< rounded partition equals the planted one
    bool raw_recovered = false;  ///< relaxed matrix rounds entrywise to the planted one
    double vi = 0;
    double objective = 0;        ///< objective of the rounded partition
    double runtime = 0;
};

/// Rows ordered by (level, trial, method) independent of scheduling.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
std::string sweep_csv(const std::vector<SweepRow>& rows, bool with_runtime);

struct MethodSummary {
    int level = 0;
    double rho = 0;
    Method method = Method::tight;
    int trials = 0;
    double recovery_rate = 0;
    double mean_vi = 0;
    double mean_d_max = 0;
};

std::vector<MethodSummary> summarize(const std::vector<SweepRow>& rows);

struct CompareConfig {
    std::vector<int> sizes{10, 10, 10};
    NoiseModel noise = NoiseModel::binary_flip;
    std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.2};
    int trials = 5;
    int iters = 2000;      ///< iteration budget per method
    int outer_iters = 20;  ///< dual rounds; each takes iters / outer_iters inner steps
    SolverConfig solver;   ///< tau, lambda schedule, rank, tolerance
    std::uint64_t base_seed = 0;
    int workers = 0;

    void validate() const;
};

struct CompareRow {
    int level = 0;
    double rho = 0;
    int trial = 0;
    Method method = Method::factor;
    long support = 0;
    double l1_error = 0;  ///< ||Khat - K*||_1 against the planted clustering matrix
    int iterations = 0;
};

/// Factorization, loss-function and dual decomposition on the same planted
/// instances with equal iteration budgets.
std::vector<CompareRow> run_compare(const CompareConfig& cfg);
std::string compare_csv(const std::vector<CompareRow>& rows);

} // namespace mncc
