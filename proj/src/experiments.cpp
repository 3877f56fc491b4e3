#include "mncc/experiments.hpp"

#include "mncc/baselines.hpp"
#include "mncc/io.hpp"
#include "mncc/metrics.hpp"
#include "mncc/random.hpp"
#include "mncc/rounding.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

namespace mncc {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::factor, "factor"}, {Method::loss, "loss"},   {Method::dual, "dual"},
    {Method::tight, "tight"},   {Method::trace, "trace"}, {Method::slink, "slink"},
    {Method::spectral, "spectral"},
};

// Runs job(i) for i in [0, count) on a small pool; each job writes only to
// its own output slot.
template <class Job>
void parallel_for(std::size_t count, int workers, Job job) {
    unsigned threads = workers > 0 ? static_cast<unsigned>(workers) : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                job(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("noise grid must be non-empty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("noise grid must be sorted ascending");
    for (double g : grid)
        if (!(g >= 0 && g <= 1)) throw std::invalid_argument("noise levels must lie in [0, 1]");
}

} // namespace

std::string_view to_string(Method method) {
    for (const auto& [m, name] : kMethodNames)
        if (m == method) return name;
    return "unknown";
}

Method parse_method(std::string_view text) {
    for (const auto& [m, name] : kMethodNames)
        if (name == text) return m;
    throw std::invalid_argument("unknown method: " + std::string(text));
}

std::vector<Method> parse_methods(std::string_view comma_list) {
    std::vector<Method> out;
    std::size_t pos = 0;
    while (pos <= comma_list.size()) {
        const std::size_t end = std::min(comma_list.find(',', pos), comma_list.size());
        const std::string_view item = comma_list.substr(pos, end - pos);
        if (!item.empty()) out.push_back(parse_method(item));
        pos = end + 1;
    }
    if (out.empty()) throw std::invalid_argument("no methods given");
    return out;
}

bool is_relaxed(Method method) {
    return method != Method::slink && method != Method::spectral;
}

MethodOutput run_method(Method method, const AffinityMatrix& a, const SolverConfig& cfg, int num_clusters) {
    auto relaxed = [&](SolveResult r) {
        Partition p = round_to_valid(r.candidate, a);
        return MethodOutput{std::move(p), std::move(r.candidate), std::move(r.trace)};
    };
    switch (method) {
    case Method::factor: return relaxed(solve_factorization(a, cfg));
    case Method::loss: return relaxed(solve_loss_function(a, cfg));
    case Method::dual: return relaxed(solve_dual_decomposition(a, cfg));
    case Method::tight: return relaxed(solve_tight_nonneg(a, cfg));
    case Method::trace: {
        SolverConfig c = cfg;
        c.mu = trace_norm_weight(cfg.mu, a.size());
        return relaxed(solve_trace_norm(a, c));
    }
    case Method::slink: return {round_to_valid_selection(a.matrix(), a).partition, std::nullopt, std::nullopt};
    case Method::spectral:
        return {spectral_clustering(a, std::clamp(num_clusters, 1, a.size()), SpectralMode::kmeans, cfg.seed),
                std::nullopt, std::nullopt};
    }
    throw std::invalid_argument("unknown method");
}

Objective auto_objective(NoiseModel noise) {
    return noise == NoiseModel::binary_flip ? Objective::absolute : Objective::linear;
}

// ---------------------------------------------------------------------------

void SweepConfig::validate() const {
    if (sizes.empty()) throw std::invalid_argument("sizes must be non-empty");
    for (int s : sizes)
        if (s < 1) throw std::invalid_argument("cluster sizes must be >= 1");
    check_grid(grid);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
    solver.validate();
}

std::uint64_t trial_seed(std::uint64_t base_seed, int level, int trial) {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(trial)});
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t per_task = cfg.methods.size();
    const std::size_t tasks = cfg.grid.size() * static_cast<std::size_t>(cfg.trials);
    std::vector<SweepRow> rows(tasks * per_task);
    const Objective objective = cfg.objective.value_or(auto_objective(cfg.noise));

    parallel_for(tasks, cfg.workers, [&](std::size_t task) {
        const int level = static_cast<int>(task / static_cast<std::size_t>(cfg.trials));
        const int trial = static_cast<int>(task % static_cast<std::size_t>(cfg.trials));
        const double rho = cfg.grid[static_cast<std::size_t>(level)];
        const std::uint64_t seed = trial_seed(cfg.base_seed, level, trial);
        PlantedInstance inst = planted_clusters(cfg.sizes, {cfg.noise, rho, seed});

        SolverConfig solver = cfg.solver;
        solver.objective = objective;
        solver.seed = seed;
        const GuaranteeReport g = check_recovery_guarantee(inst.affinity, inst.truth);
        if (g.theorem_holds && g.mu_low > 0 && g.mu_high < 1) solver.mu = 0.5 * (g.mu_low + g.mu_high);

        for (std::size_t m = 0; m < per_task; ++m) {
            const auto start = std::chrono::steady_clock::now();
            MethodOutput out = run_method(cfg.methods[m], inst.affinity, solver, inst.truth.num_clusters());
            const double runtime =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            SweepRow& row = rows[task * per_task + m];
            row.level = level;
            row.rho = rho;
            row.trial = trial;
            row.method = cfg.methods[m];
            row.realized_d_max = inst.realized_d_max;
            row.recovered = out.partition.same_clustering(inst.truth);
            row.raw_recovered = out.candidate ? exact_recovery(out.candidate->entries, inst.truth)
                                              : row.recovered;
            row.vi = variation_of_information(out.partition, inst.truth);
            row.objective = disagreement(inst.affinity, incidence_matrix(out.partition).matrix(), objective);
            row.runtime = runtime;
        }
    });
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, bool with_runtime) {
    std::ostringstream out;
    out << "level,rho,trial,method,realized_d_max,recovered,raw_recovered,vi,objective,runtime\n";
    for (const SweepRow& r : rows) {
        out << r.level << ',' << io::format_real(r.rho) << ',' << r.trial << ',' << to_string(r.method) << ','
            << io::format_real(r.realized_d_max) << ',' << (r.recovered ? 1 : 0) << ','
            << (r.raw_recovered ? 1 : 0) << ',' << io::format_real(r.vi) << ',' << io::format_real(r.objective)
            << ',';
        if (with_runtime)
            out << io::format_real(r.runtime);
        else
            out << "NA";
        out << '\n';
    }
    return out.str();
}

std::vector<MethodSummary> summarize(const std::vector<SweepRow>& rows) {
    std::map<std::pair<int, int>, MethodSummary> acc;
    for (const SweepRow& r : rows) {
        MethodSummary& s = acc[{r.level, static_cast<int>(r.method)}];
        s.level = r.level;
        s.rho = r.rho;
        s.method = r.method;
        ++s.trials;
        s.recovery_rate += r.recovered ? 1.0 : 0.0;
        s.mean_vi += r.vi;
        s.mean_d_max += r.realized_d_max;
    }
    std::vector<MethodSummary> out;
    for (auto& [key, s] : acc) {
        s.recovery_rate /= s.trials;
        s.mean_vi /= s.trials;
        s.mean_d_max /= s.trials;
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------

void CompareConfig::validate() const {
    if (sizes.empty()) throw std::invalid_argument("sizes must be non-empty");
    check_grid(grid);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (iters < 1 || outer_iters < 1) throw std::invalid_argument("iteration counts must be >= 1");
    if (iters < outer_iters) throw std::invalid_argument("iters must be at least outer_iters");
    solver.validate();
}

std::vector<CompareRow> run_compare(const CompareConfig& cfg) {
    cfg.validate();
    constexpr Method methods[] = {Method::factor, Method::loss, Method::dual};
    constexpr std::size_t per_task = std::size(methods);
    const std::size_t tasks = cfg.grid.size() * static_cast<std::size_t>(cfg.trials);
    std::vector<CompareRow> rows(tasks * per_task);

    parallel_for(tasks, cfg.workers, [&](std::size_t task) {
        const int level = static_cast<int>(task / static_cast<std::size_t>(cfg.trials));
        const int trial = static_cast<int>(task % static_cast<std::size_t>(cfg.trials));
        const double rho = cfg.grid[static_cast<std::size_t>(level)];
        const std::uint64_t seed = trial_seed(cfg.base_seed, level, trial);
        PlantedInstance inst = planted_clusters(cfg.sizes, {cfg.noise, rho, seed});
        const Matrix truth = incidence_matrix(inst.truth).matrix();

        SolverConfig solver = cfg.solver;
        solver.objective = auto_objective(cfg.noise);
        solver.seed = seed;
        solver.iters = cfg.iters;

        for (std::size_t m = 0; m < per_task; ++m) {
            SolveResult r;
            switch (methods[m]) {
            case Method::factor: r = solve_factorization(inst.affinity, solver); break;
            case Method::loss: r = solve_loss_function(inst.affinity, solver); break;
            default: {
                SolverConfig d = solver;
                d.outer_iters = cfg.outer_iters;
                d.iters = cfg.iters / cfg.outer_iters;
                r = solve_dual_decomposition(inst.affinity, d);
            }
            }
            CompareRow& row = rows[task * per_task + m];
            row.level = level;
            row.rho = rho;
            row.trial = trial;
            row.method = methods[m];
            row.support = r.trace.support_size;
            row.l1_error = (r.candidate.entries - truth).cwiseAbs().sum();
            row.iterations = r.trace.iterations;
        }
    });
    return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "level,trial,method,support,l1_error,iterations,rho\n";
    for (const CompareRow& r : rows)
        out << r.level << ',' << r.trial << ',' << to_string(r.method) << ',' << r.support << ','
            << io::format_real(r.l1_error) << ',' << r.iterations << ',' << io::format_real(r.rho) << '\n';
    return out.str();
}

} // namespace mncc
