#include "mncc/solvers.hpp"

#include "mncc/io.hpp"
#include "mncc/linalg.hpp"
#include "mncc/random.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mncc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

Matrix sign_of(const Matrix& m) {
    return m.unaryExpr([](double x) { return sign(x); });
}

// Direction in K-space that decreases the data objective: Sign(A - K) for
// the absolute objective, 2A - 1 for the linear one.
Matrix descent_direction(const AffinityMatrix& a, const Matrix& k, Objective objective) {
    if (objective == Objective::absolute) return sign_of(a.matrix() - k);
    return (2.0 * a.matrix().array() - 1.0).matrix();
}

Matrix random_factor(int n, int r, double scale, Rng& rng) {
    std::uniform_real_distribution<double> dist(0.0, scale);
    Matrix f(n, r);
    // Column-major fill order is part of the determinism contract.
    for (Eigen::Index j = 0; j < f.cols(); ++j)
        for (Eigen::Index i = 0; i < f.rows(); ++i) f(i, j) = dist(rng);
    project_max_norm_rows_inplace(f);
    return f;
}

void finish_trace(SolveTrace& trace) {
    trace.best_iteration = 0;
    trace.best_objective = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trace.objective.size(); ++t)
        if (trace.objective[t] < trace.best_objective) {
            trace.best_objective = trace.objective[t];
            trace.best_iteration = static_cast<int>(t);
        }
}

// Ball-constrained factor iterate plus the bookkeeping shared by the
// factorization-style solvers.
struct FactorState {
    Matrix left;
    Matrix right;
    Matrix product;

    void refresh() { product = left * right.transpose(); }

    void step(const Matrix& direction, double eta) {
        Matrix new_left = left + eta * direction * right;
        right += eta * direction.transpose() * left;
        left = std::move(new_left);
        project_max_norm_rows_inplace(left);
        project_max_norm_rows_inplace(right);
        refresh();
    }
};

FactorState random_factors(int n, const SolverConfig& cfg, std::uint64_t stream) {
    Rng rng(derive_seed(cfg.seed, {stream}));
    const int r = cfg.effective_rank(n);
    FactorState s{random_factor(n, r, cfg.init_scale, rng), random_factor(n, r, cfg.init_scale, rng), {}};
    s.refresh();
    return s;
}

double step_length(const SolverConfig& cfg, int n, long k) {
    return cfg.tau / (static_cast<double>(n) * std::sqrt(static_cast<double>(k)));
}

} // namespace

// ---------------------------------------------------------------------------

void SolverConfig::validate() const {
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("SolverConfig: ") + what); };
    if (!(tau > 0)) fail("tau must be positive");
    if (outer_iters < 1) fail("outer_iters must be >= 1");
    if (iters < 1) fail("iters must be >= 1");
    if (!(lambda0 > 0)) fail("lambda0 must be positive");
    if (lambda_double_every < 1) fail("lambda_double_every must be >= 1");
    if (rank_cap < 0) fail("rank_cap must be >= 1 (or 0 for the default)");
    if (!(mu > 0 && mu < 1)) fail("mu must lie in (0, 1)");
    if (!(init_scale > 0)) fail("init_scale must be positive");
    if (restarts < 1) fail("restarts must be >= 1");
    if (!(support_tol >= 0)) fail("support_tol must be non-negative");
}

int SolverConfig::effective_rank(int n) const {
    return rank_cap > 0 ? rank_cap : std::min(n, 20);
}

std::string SolveTrace::to_csv() const {
    std::ostringstream out;
    out << "iteration,objective,support_size\n";
    for (std::size_t t = 0; t < objective.size(); ++t)
        out << t << ',' << io::format_real(objective[t]) << ',' << support[t] << '\n';
    return out.str();
}

Matrix project_l1_sign(const MatrixRef& before, const MatrixRef& after) {
    if (before.rows() != after.rows() || before.cols() != after.cols())
        throw std::invalid_argument("project_l1_sign: shape mismatch");
    Matrix out = after;
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            const double s = sign(before(i, j));
            if (s != 0.0 && sign(after(i, j)) != s) out(i, j) = 0.0;
        }
    return out;
}

Matrix z_subproblem_elementwise(const MatrixRef& lambda, const AffinityMatrix& a) {
    if (lambda.rows() != a.size() || lambda.cols() != a.size())
        throw std::invalid_argument("z_subproblem_elementwise: shape mismatch");
    Matrix z = a.matrix();
    for (Eigen::Index j = 0; j < z.cols(); ++j)
        for (Eigen::Index i = 0; i < z.rows(); ++i)
            if (std::abs(lambda(i, j)) > 1.0) z(i, j) = -sign(lambda(i, j));
    return z;
}

long support_size(const AffinityMatrix& a, const MatrixRef& k, double tol) {
    return static_cast<long>(((a.matrix() - k).array().abs() > tol).count());
}

LagrangianValue lagrangian_objective(const AffinityMatrix& a, const MatrixRef& k, double mu) {
    if (!(mu > 0 && mu < 1)) throw std::invalid_argument("mu must lie in (0, 1)");
    const double n = a.size();
    LagrangianValue v;
    v.max_norm_bound = k.diagonal().maxCoeff();
    v.estimated = true;
    v.value = (1.0 - mu) / (n * n) * absolute_disagreement(a, k) + mu * v.max_norm_bound;
    return v;
}

LagrangianValue lagrangian_objective(const AffinityMatrix& a, const CandidateMatrix& k, double mu) {
    if (!k.has_factors()) return lagrangian_objective(a, k.entries, mu);
    if (!(mu > 0 && mu < 1)) throw std::invalid_argument("mu must lie in (0, 1)");
    const double n = a.size();
    LagrangianValue v;
    v.max_norm_bound = max_row_norm(*k.left) * max_row_norm(*k.right);
    v.value = (1.0 - mu) / (n * n) * absolute_disagreement(a, k.entries) + mu * v.max_norm_bound;
    return v;
}

// ---------------------------------------------------------------------------
// Factorization method

SolveResult solve_factorization(const AffinityMatrix& a, const SolverConfig& cfg) {
    cfg.validate();
    const auto start = Clock::now();
    const int n = a.size();
    const double n2 = static_cast<double>(n) * n;

    FactorState s = random_factors(n, cfg, 0);
    SolveTrace trace;
    trace.objective.reserve(static_cast<std::size_t>(cfg.iters) + 1);
    trace.support.reserve(static_cast<std::size_t>(cfg.iters) + 1);

    double best = std::numeric_limits<double>::infinity();
    Matrix best_left, best_right;
    auto record = [&] {
        double value = 0;
        if (cfg.select_by_lagrangian) {
            const double witness = max_row_norm(s.left) * max_row_norm(s.right);
            value = (1.0 - cfg.mu) / n2 * absolute_disagreement(a, s.product) + cfg.mu * witness;
        } else {
            value = disagreement(a, s.product, cfg.objective);
        }
        trace.objective.push_back(value);
        trace.support.push_back(support_size(a, s.product, cfg.support_tol));
        if (value < best) {
            best = value;
            best_left = s.left;
            best_right = s.right;
        }
    };

    record();
    for (long k = 1; k <= cfg.iters; ++k) {
        s.step(descent_direction(a, s.product, cfg.objective), step_length(cfg, n, k));
        record();
    }

    SolveResult result{CandidateMatrix::from_factors(std::move(best_left), std::move(best_right)), std::move(trace)};
    finish_trace(result.trace);
    result.trace.iterations = cfg.iters;
    result.trace.support_size = support_size(a, result.candidate.entries, cfg.support_tol);
    result.trace.wall_seconds = seconds_since(start);
    return result;
}

// ---------------------------------------------------------------------------
// Loss-function method

namespace {
double loss_weight_after(const SolverConfig& cfg, long completed) {
    const long doublings = std::min<long>(completed / cfg.lambda_double_every, 1000);
    return std::ldexp(cfg.lambda0, static_cast<int>(doublings));
}
} // namespace

SolveResult solve_loss_function(const AffinityMatrix& a, const SolverConfig& cfg) {
    cfg.validate();
    const auto start = Clock::now();
    const int n = a.size();

    FactorState s = random_factors(n, cfg, 0);
    Matrix z = Matrix::Zero(n, n);
    // Iterates are compared under the final weight; earlier weights are not
    // comparable with each other.
    const double final_weight = loss_weight_after(cfg, cfg.iters);

    SolveTrace trace;
    double best = std::numeric_limits<double>::infinity();
    Matrix best_z = z;
    Matrix residual = a.matrix() - z - s.product;
    auto record = [&] {
        const double value = z.cwiseAbs().sum() + final_weight * residual.squaredNorm();
        trace.objective.push_back(value);
        trace.support.push_back(static_cast<long>((z.array().abs() > cfg.support_tol).count()));
        if (value < best) {
            best = value;
            best_z = z;
        }
    };

    record();
    for (long k = 1; k <= cfg.iters; ++k) {
        const double weight = loss_weight_after(cfg, k - 1);
        // Steps past the minimizer of the quadratic along the residual would
        // overshoot; the coefficient is capped at 1.
        const double c = std::min(cfg.tau * weight / std::sqrt(static_cast<double>(k)), 1.0);
        Matrix z_after = z + c * residual - (c / (2.0 * weight)) * sign_of(z);
        z = project_l1_sign(z, z_after);
        s.step(residual, c / n);
        residual = a.matrix() - z - s.product;
        record();
    }

    SolveResult result;
    result.candidate = CandidateMatrix::from_entries(a.matrix() - best_z);
    result.candidate.sparse = std::move(best_z);
    result.trace = std::move(trace);
    finish_trace(result.trace);
    result.trace.iterations = cfg.iters;
    result.trace.support_size = support_size(a, result.candidate.entries, cfg.support_tol);
    result.trace.wall_seconds = seconds_since(start);
    return result;
}

double loss_function_weight(const SolverConfig& cfg, long completed_iterations) {
    return loss_weight_after(cfg, completed_iterations);
}

// ---------------------------------------------------------------------------
// Dual decomposition

SolveResult solve_dual_decomposition(const AffinityMatrix& a, const SolverConfig& cfg) {
    cfg.validate();
    const auto start = Clock::now();
    const int n = a.size();

    // K starts from random factors and Z from zero so the rounding-based
    // stopping test cannot fire on the initial state.
    FactorState s = random_factors(n, cfg, 0);
    Matrix lambda = Matrix::Zero(n, n);
    Matrix z = Matrix::Zero(n, n);

    SolveTrace trace;
    long k = 0;
    int rounds = 0;
    for (int t = 1; t <= cfg.outer_iters; ++t) {
        ++rounds;
        // K step: min obj(A, K) - <Lambda, K> over the max-norm ball.
        for (int j = 0; j < cfg.iters; ++j) {
            ++k;
            s.step(descent_direction(a, s.product, cfg.objective) + lambda, step_length(cfg, n, k));
        }
        z = z_subproblem_elementwise(lambda, a);

        trace.objective.push_back(disagreement(a, s.product, cfg.objective));
        trace.support.push_back(support_size(a, z, cfg.support_tol));

        const bool agree = ((s.product.array() >= 0.5) == (z.array() >= 0.5)).all();
        lambda -= cfg.tau / std::sqrt(static_cast<double>(t)) * (s.product - z);
        if (agree) break;
    }

    SolveResult result;
    result.candidate = CandidateMatrix::from_entries(z);
    result.candidate.sparse = a.matrix() - z;
    result.candidate.multiplier = std::move(lambda);
    result.trace = std::move(trace);
    finish_trace(result.trace);
    result.trace.iterations = rounds * cfg.iters;
    result.trace.support_size = support_size(a, result.candidate.entries, cfg.support_tol);
    result.trace.wall_seconds = seconds_since(start);
    return result;
}

// ---------------------------------------------------------------------------
// Nonnegative symmetric factorization

namespace {

// Clamp to the nonnegative orthant, then rescale rows; rescaling keeps the
// point nonnegative, so the result satisfies both constraints.
void project_nonneg_rows(Matrix& r) {
    r = r.cwiseMax(0.0);
    project_max_norm_rows_inplace(r);
}

SolveResult tight_single(const AffinityMatrix& a, const SolverConfig& cfg, int restart) {
    const int n = a.size();
    Rng rng(derive_seed(cfg.seed, {1, static_cast<std::uint64_t>(restart)}));
    Matrix r = random_factor(n, cfg.effective_rank(n), cfg.init_scale, rng);
    Matrix product = r * r.transpose();

    SolveTrace trace;
    trace.objective.reserve(static_cast<std::size_t>(cfg.iters) + 1);
    trace.support.reserve(static_cast<std::size_t>(cfg.iters) + 1);
    double best = std::numeric_limits<double>::infinity();
    Matrix best_r = r;
    auto record = [&] {
        const double value = disagreement(a, product, cfg.objective);
        trace.objective.push_back(value);
        trace.support.push_back(support_size(a, product, cfg.support_tol));
        if (value < best) {
            best = value;
            best_r = r;
        }
    };

    record();
    for (long k = 1; k <= cfg.iters; ++k) {
        const Matrix direction = descent_direction(a, product, cfg.objective);
        r += (2.0 * step_length(cfg, n, k)) * (direction * r);
        project_nonneg_rows(r);
        product = r * r.transpose();
        record();
    }

    SolveResult result{CandidateMatrix::from_factors(best_r, best_r), std::move(trace)};
    finish_trace(result.trace);
    result.trace.iterations = cfg.iters;
    result.trace.best_restart = restart;
    return result;
}

} // namespace

SolveResult solve_tight_nonneg(const AffinityMatrix& a, const SolverConfig& cfg) {
    cfg.validate();
    const auto start = Clock::now();
    SolveResult best;
    bool have = false;
    int total_iterations = 0;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        SolveResult run = tight_single(a, cfg, restart);
        total_iterations += run.trace.iterations;
        if (!have || run.trace.best_objective < best.trace.best_objective) {
            best = std::move(run);
            have = true;
        }
    }
    best.trace.iterations = total_iterations;
    best.trace.support_size = support_size(a, best.candidate.entries, cfg.support_tol);
    best.trace.wall_seconds = seconds_since(start);
    return best;
}

// ---------------------------------------------------------------------------
// Trace-norm baseline

SolveResult solve_trace_norm(const AffinityMatrix& a, const SolverConfig& cfg) {
    cfg.validate();
    const auto start = Clock::now();
    const int n = a.size();
    const double n2 = static_cast<double>(n) * n;
    const double data_weight = (1.0 - cfg.mu) / n2;
    // Steps are taken on the objective divided by data_weight, which has the
    // same minimizer and unit-magnitude data subgradients.
    const double shrink_weight = cfg.mu / data_weight;

    Matrix k = Matrix::Zero(n, n);
    double nuclear = 0;

    SolveTrace trace;
    trace.objective.reserve(static_cast<std::size_t>(cfg.iters) + 1);
    trace.support.reserve(static_cast<std::size_t>(cfg.iters) + 1);
    double best = std::numeric_limits<double>::infinity();
    Matrix best_k = k;
    auto record = [&] {
        const double value = data_weight * disagreement(a, k, cfg.objective) + cfg.mu * nuclear;
        trace.objective.push_back(value);
        trace.support.push_back(support_size(a, k, cfg.support_tol));
        if (value < best) {
            best = value;
            best_k = k;
        }
    };

    record();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(n);
    for (long it = 1; it <= cfg.iters; ++it) {
        const double eta = cfg.tau / std::sqrt(static_cast<double>(it));
        Matrix moved = k + eta * descent_direction(a, k, cfg.objective);
        moved = 0.5 * (moved + moved.transpose()).eval();
        eig.compute(moved);
        Vector w = eig.eigenvalues();
        const double theta = eta * shrink_weight;
        for (Eigen::Index i = 0; i < w.size(); ++i)
            w(i) = std::copysign(std::max(std::abs(w(i)) - theta, 0.0), w(i));
        nuclear = w.cwiseAbs().sum();
        k = eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().transpose();
        record();
    }

    SolveResult result{CandidateMatrix::from_entries(std::move(best_k)), std::move(trace)};
    finish_trace(result.trace);
    result.trace.iterations = cfg.iters;
    result.trace.support_size = support_size(a, result.candidate.entries, cfg.support_tol);
    result.trace.wall_seconds = seconds_since(start);
    return result;
}

double trace_norm_weight(double mu_max_norm, int n) {
    if (!(mu_max_norm > 0 && mu_max_norm < 1)) throw std::invalid_argument("mu must lie in (0, 1)");
    const double ratio = mu_max_norm / ((1.0 - mu_max_norm) * n);
    return ratio / (1.0 + ratio);
}

// ---------------------------------------------------------------------------

void write_sdp_export(std::ostream& out, const AffinityMatrix& a) {
    const int n = a.size();
    out << "mncc-sdp 1\n";
    out << "n " << n << '\n';
    out << "psd_block " << 2 * n << '\n';
    out << "objective l1 offset_row 0 offset_col " << n << '\n';
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (a(u, v) != 0.0) out << "A " << u << ' ' << v << ' ' << io::format_real(a(u, v)) << '\n';
    for (int i = 0; i < 2 * n; ++i) out << "diag_le " << i << " 1\n";
}

} // namespace mncc
