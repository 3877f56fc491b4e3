// mncc: command-line front end for the max-norm correlation clustering
// library. Run `mncc --help` or `mncc <command> --help` for usage.

#include "mncc/baselines.hpp"
#include "mncc/datagen.hpp"
#include "mncc/experiments.hpp"
#include "mncc/io.hpp"
#include "mncc/metrics.hpp"
#include "mncc/solvers.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mncc;

struct Flags {
    std::string method = "tight";
    std::string methods;
    std::string objective = "auto";
    double mu = 0.05;
    double tau = 1.0;
    int iters = 2000;
    int outer_iters = 20;
    int rank = 0;
    int restarts = 3;
    std::uint64_t seed = 0;
    std::vector<int> sizes{10, 10, 10, 10};
    std::string noise = "binary";
    std::vector<double> grid;
    double rho = 0.0;
    int trials = 20;
    int workers = 0;
    int clusters = 0;
    bool timing = false;
    std::string out;
    std::string input;
    std::string truth;
    std::string trace_out;
    std::string sdp_out;
    std::string truth_out;
    double sigma = 1.0;
};

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> values;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed config line " + std::to_string(lineno) + ": " + line);
        std::string key = trim(line.substr(0, eq));
        for (char& c : key)
            if (c == '_') c = '-';
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

// Fills options that were not given on the command line from the config file.
void apply_config(CLI::App& sub, const std::string& path) {
    for (const auto& [key, value] : read_config(path)) {
        CLI::Option* opt = sub.get_option_no_throw("--" + key);
        if (opt == nullptr) {
            std::cerr << "warning: config key '" << key << "' is not used by '" << sub.get_name() << "'\n";
            continue;
        }
        if (opt->count() > 0) continue;
        if (opt->get_type_size() == 0) {
            if (value == "true" || value == "1") opt->add_result("true");
        } else {
            opt->add_result(value);
        }
        opt->run_callback();
    }
}

SolverConfig solver_config(const Flags& f, Objective objective) {
    SolverConfig cfg;
    cfg.mu = f.mu;
    cfg.tau = f.tau;
    cfg.iters = f.iters;
    cfg.outer_iters = f.outer_iters;
    cfg.rank_cap = f.rank;
    cfg.restarts = f.restarts;
    cfg.seed = f.seed;
    cfg.objective = objective;
    cfg.validate();
    return cfg;
}

// Writes to --out when given, otherwise to stdout.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int cmd_solve(const Flags& f) {
    const AffinityMatrix a = io::load_affinity(f.input);
    const Method method = parse_method(f.method);
    const Objective objective = f.objective == "auto" ? (a.is_binary() ? Objective::absolute : Objective::linear)
                                                      : parse_objective(f.objective);
    const SolverConfig cfg = solver_config(f, objective);

    std::optional<Partition> truth;
    if (!f.truth.empty()) truth = io::load_partition(f.truth);
    if (truth && truth->size() != a.size()) throw std::runtime_error("truth partition size does not match");
    const int k = f.clusters > 0 ? f.clusters : (truth ? truth->num_clusters() : 2);

    if (!f.sdp_out.empty()) {
        std::ofstream sdp(f.sdp_out);
        if (!sdp) throw std::runtime_error("cannot write " + f.sdp_out);
        write_sdp_export(sdp, a);
    }

    const MethodOutput result = run_method(method, a, cfg, k);
    if (f.out.empty())
        io::write_partition(std::cout, result.partition);
    else
        io::save_partition(result.partition, f.out);
    if (!f.trace_out.empty() && result.trace) emit(f.trace_out, result.trace->to_csv());

    std::ostream& log = f.out.empty() ? std::cerr : std::cout;
    log << "method=" << to_string(method) << '\n';
    log << "objective_name=" << to_string(objective) << '\n';
    log << "objective=" << io::format_real(disagreement(a, incidence_matrix(result.partition).matrix(), objective))
        << '\n';
    log << "clusters=" << result.partition.num_clusters() << '\n';
    if (result.candidate) {
        const LagrangianValue lv = lagrangian_objective(a, *result.candidate, cfg.mu);
        log << "relaxed_objective=" << io::format_real(disagreement(a, result.candidate->entries, objective)) << '\n';
        log << "max_norm_witness=" << io::format_real(lv.max_norm_bound) << '\n';
        log << "max_norm_witness_estimated=" << (lv.estimated ? "true" : "false") << '\n';
    } else {
        log << "max_norm_witness=1\n";
    }
    if (truth) {
        log << "recovered=" << (result.partition.same_clustering(*truth) ? "true" : "false") << '\n';
        log << "vi=" << io::format_real(variation_of_information(result.partition, *truth)) << '\n';
        log << to_key_value(check_recovery_guarantee(a, *truth));
    }
    return 0;
}

SweepConfig sweep_config(const Flags& f, std::vector<Method> default_methods) {
    SweepConfig cfg;
    cfg.sizes = f.sizes;
    cfg.noise = parse_noise_model(f.noise);
    if (!f.grid.empty())
        cfg.grid = f.grid;
    else if (cfg.noise == NoiseModel::binary_flip)
        cfg.grid = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25};
    else
        cfg.grid = {0.0, 0.2, 0.4, 0.6, 0.7, 0.8};
    cfg.trials = f.trials;
    cfg.methods = f.methods.empty() ? std::move(default_methods) : parse_methods(f.methods);
    if (f.objective != "auto") cfg.objective = parse_objective(f.objective);
    cfg.solver = solver_config(f, Objective::absolute);
    cfg.base_seed = f.seed;
    cfg.workers = f.workers;
    cfg.record_runtime = f.timing;
    cfg.validate();
    return cfg;
}

void print_summary(const std::vector<SweepRow>& rows, bool vi_first) {
    std::fprintf(stderr, "%6s %8s %-9s %9s %9s %9s\n", "level", "rho", "method", vi_first ? "mean_vi" : "recovery",
                 vi_first ? "recovery" : "mean_vi", "d_max");
    for (const MethodSummary& s : summarize(rows)) {
        const double first = vi_first ? s.mean_vi : s.recovery_rate;
        const double second = vi_first ? s.recovery_rate : s.mean_vi;
        std::fprintf(stderr, "%6d %8.3f %-9s %9.4f %9.4f %9.4f\n", s.level, s.rho,
                     std::string(to_string(s.method)).c_str(), first, second, s.mean_d_max);
    }
}

int cmd_sweep(const Flags& f, bool vi_focus) {
    const std::vector<Method> defaults =
        vi_focus ? std::vector<Method>{Method::tight, Method::trace, Method::slink, Method::spectral}
                 : std::vector<Method>{Method::tight, Method::trace};
    const SweepConfig cfg = sweep_config(f, defaults);
    const std::vector<SweepRow> rows = run_sweep(cfg);
    emit(f.out, sweep_csv(rows, cfg.record_runtime));
    print_summary(rows, vi_focus);
    return 0;
}

int cmd_compare(const Flags& f, bool sizes_given) {
    CompareConfig cfg;
    if (sizes_given) cfg.sizes = f.sizes;
    cfg.noise = parse_noise_model(f.noise);
    if (!f.grid.empty()) cfg.grid = f.grid;
    cfg.trials = f.trials;
    cfg.iters = f.iters;
    cfg.outer_iters = f.outer_iters;
    cfg.solver = solver_config(f, Objective::absolute);
    cfg.base_seed = f.seed;
    cfg.workers = f.workers;
    cfg.validate();
    const std::vector<CompareRow> rows = run_compare(cfg);
    emit(f.out, compare_csv(rows));

    std::map<std::pair<int, int>, std::pair<double, double>> mean;
    std::map<std::pair<int, int>, int> count;
    for (const CompareRow& r : rows) {
        auto key = std::make_pair(r.level, static_cast<int>(r.method));
        mean[key].first += static_cast<double>(r.support);
        mean[key].second += r.l1_error;
        ++count[key];
    }
    std::fprintf(stderr, "%6s %-7s %12s %12s\n", "level", "method", "support", "l1_error");
    for (const auto& [key, v] : mean)
        std::fprintf(stderr, "%6d %-7s %12.2f %12.4f\n", key.first,
                     std::string(to_string(static_cast<Method>(key.second))).c_str(), v.first / count[key],
                     v.second / count[key]);
    return 0;
}

int cmd_oracle(const Flags& f) {
    const AffinityMatrix a = io::load_affinity(f.input);
    constexpr int limit = 12;
    if (a.size() > limit) {
        std::cerr << "error: oracle refuses n = " << a.size() << " (exhaustive search supports n <= " << limit
                  << ")\n";
        return 2;
    }
    const OracleResult r = brute_force_optimal(a, limit);
    if (f.out.empty())
        io::write_partition(std::cout, r.partition);
    else
        io::save_partition(r.partition, f.out);
    std::ostream& log = f.out.empty() ? std::cerr : std::cout;
    log << "objective=" << io::format_real(r.objective) << '\n';
    log << "partitions_examined=" << r.partitions_examined << '\n';
    return 0;
}

int cmd_gen(const Flags& f) {
    if (f.out.empty()) throw std::runtime_error("gen requires --out");
    PlantedInstance inst = planted_clusters(f.sizes, {parse_noise_model(f.noise), f.rho, f.seed});
    io::save_affinity(inst.affinity, f.out);
    if (!f.truth_out.empty()) io::save_partition(inst.truth, f.truth_out);
    std::cout << "n=" << inst.affinity.size() << '\n';
    std::cout << "realized_d_max=" << io::format_real(inst.realized_d_max) << '\n';
    return 0;
}

int cmd_fig3(const Flags& f) {
    if (f.out.empty()) throw std::runtime_error("fixture-fig3 requires --out");
    const Fig3Fixture fx = fig3_fixture();
    io::save_affinity(fx.affinity, f.out);
    if (!f.truth_out.empty()) io::save_partition(fx.truth, f.truth_out);
    std::cout << "node_a=" << fx.node_a << '\n' << "node_b=" << fx.node_b << '\n';
    std::cout << "d_max=" << io::format_real(d_max(fx.affinity, fx.truth)) << '\n';
    return 0;
}

int cmd_kernel(const Flags& f) {
    if (f.out.empty()) throw std::runtime_error("kernel requires --out");
    io::save_affinity(gaussian_kernel_affinity(io::load_features(f.input), f.sigma), f.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation clustering with max-norm constrained relaxations"};
    app.require_subcommand(1);
    Flags f;
    std::string config;

    auto solver_flags = [&](CLI::App* s) {
        s->add_option("--objective", f.objective, "abs, linear or auto")->capture_default_str();
        s->add_option("--mu", f.mu, "Lagrangian weight in (0, 1)")->capture_default_str();
        s->add_option("--tau", f.tau, "initial step size")->capture_default_str();
        s->add_option("--iters", f.iters, "iterations (inner iterations for dual)")->capture_default_str();
        s->add_option("--outer-iters", f.outer_iters, "dual decomposition rounds")->capture_default_str();
        s->add_option("--rank", f.rank, "factor width, 0 = min(n, 20)")->capture_default_str();
        s->add_option("--restarts", f.restarts, "restarts of the tight solver")->capture_default_str();
        s->add_option("--seed", f.seed, "base seed")->capture_default_str();
        s->add_option("--config", config, "key=value file; command-line flags take precedence");
    };
    auto sweep_flags = [&](CLI::App* s) {
        s->add_option("--sizes", f.sizes, "cluster sizes")->delimiter(',')->capture_default_str();
        s->add_option("--noise", f.noise, "binary or fractional")->capture_default_str();
        s->add_option("--grid", f.grid, "noise levels, ascending")->delimiter(',');
        s->add_option("--trials", f.trials, "trials per level")->capture_default_str();
        s->add_option("--workers", f.workers, "worker threads, 0 = all cores")->capture_default_str();
        s->add_option("--out", f.out, "CSV output path (default stdout)");
    };

    CLI::App* solve = app.add_subcommand("solve", "cluster one affinity file");
    solve->add_option("input", f.input, "affinity CSV")->required()->check(CLI::ExistingFile);
    solve->add_option("--method", f.method, "factor, loss, dual, tight, trace, slink or spectral")
        ->capture_default_str();
    solve->add_option("--truth", f.truth, "planted partition CSV for diagnostics")->check(CLI::ExistingFile);
    solve->add_option("--clusters", f.clusters, "cluster count for the spectral method");
    solve->add_option("--out", f.out, "partition output path (default stdout)");
    solve->add_option("--trace", f.trace_out, "per-iteration trace CSV");
    solve->add_option("--sdp", f.sdp_out, "also export the semidefinite program");
    solver_flags(solve);

    CLI::App* sweep = app.add_subcommand("sweep-recovery", "exact recovery rate over a noise grid");
    CLI::App* sweep_vi = app.add_subcommand("sweep-vi", "variation of information over a noise grid");
    for (CLI::App* s : {sweep, sweep_vi}) {
        solver_flags(s);
        sweep_flags(s);
        s->add_option("--method,--methods", f.methods, "comma-separated methods");
        s->add_flag("--timing", f.timing, "fill the runtime column (output is then not reproducible)");
    }

    CLI::App* compare = app.add_subcommand("compare-optimizers", "factorization vs loss vs dual decomposition");
    solver_flags(compare);
    sweep_flags(compare);

    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum for n <= 12");
    oracle->add_option("input", f.input, "affinity CSV")->required()->check(CLI::ExistingFile);
    oracle->add_option("--out", f.out, "partition output path (default stdout)");

    CLI::App* gen = app.add_subcommand("gen", "write a planted instance");
    gen->add_option("--sizes", f.sizes, "cluster sizes")->delimiter(',')->capture_default_str();
    gen->add_option("--noise", f.noise, "binary or fractional")->capture_default_str();
    gen->add_option("--rho", f.rho, "noise level in [0, 1]")->capture_default_str();
    gen->add_option("--seed", f.seed, "seed")->capture_default_str();
    gen->add_option("--out", f.out, "affinity output path")->required();
    gen->add_option("--truth", f.truth_out, "planted partition output path");
    gen->add_option("--config", config, "key=value file; command-line flags take precedence");

    CLI::App* fig3 = app.add_subcommand("fixture-fig3", "write the two-clique counterexample");
    fig3->add_option("--out", f.out, "affinity output path")->required();
    fig3->add_option("--truth", f.truth_out, "planted partition output path");

    CLI::App* kernel = app.add_subcommand("kernel", "Gaussian-kernel affinities from a feature CSV");
    kernel->add_option("input", f.input, "feature CSV")->required()->check(CLI::ExistingFile);
    kernel->add_option("--sigma", f.sigma, "kernel width")->capture_default_str();
    kernel->add_option("--out", f.out, "affinity output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        if (!config.empty()) apply_config(*active, config);
        if (active == solve) return cmd_solve(f);
        if (active == sweep) return cmd_sweep(f, false);
        if (active == sweep_vi) return cmd_sweep(f, true);
        if (active == compare) return cmd_compare(f, compare->get_option("--sizes")->count() > 0);
        if (active == oracle) return cmd_oracle(f);
        if (active == gen) return cmd_gen(f);
        if (active == fig3) return cmd_fig3(f);
        if (active == kernel) return cmd_kernel(f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
