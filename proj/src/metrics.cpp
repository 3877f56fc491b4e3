#include "mncc/metrics.hpp"

#include "mncc/io.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mncc {

std::string to_key_value(const GuaranteeReport& r) {
    std::ostringstream out;
    out << "d_max=" << io::format_real(r.d_max) << '\n'
        << "unbalanceness=" << io::format_real(r.unbalanceness) << '\n'
        << "k_star=" << r.k_star << '\n'
        << "n=" << r.n << '\n'
        << "r=" << io::format_real(r.r) << '\n'
        << "lemma1_threshold=" << io::format_real(r.lemma1_threshold) << '\n'
        << "theorem_holds=" << (r.theorem_holds ? "true" : "false") << '\n'
        << "mu_low=" << io::format_real(r.mu_low) << '\n'
        << "mu_high=" << io::format_real(r.mu_high) << '\n'
        << "binary_input=" << (r.binary_input ? "true" : "false") << '\n';
    return out.str();
}

double disagreement_ratio(const AffinityMatrix& a, const Partition& p, int u, int i) {
    if (a.size() != p.size()) throw std::invalid_argument("partition size does not match");
    if (u < 0 || u >= p.size()) throw std::out_of_range("node out of range");
    if (i < 0 || i >= p.num_clusters()) throw std::out_of_range("cluster out of range");
    double mass = 0;
    for (int v = 0; v < p.size(); ++v)
        if (p.label(v) == i) mass += a(u, v);
    const double frac = mass / p.sizes()[static_cast<std::size_t>(i)];
    return p.label(u) == i ? 1.0 - frac : frac;
}

double d_max(const AffinityMatrix& a, const Partition& p) {
    if (a.size() != p.size()) throw std::invalid_argument("partition size does not match");
    const int n = p.size();
    const int k = p.num_clusters();
    double worst = 0;
    std::vector<double> mass(static_cast<std::size_t>(k));
    for (int u = 0; u < n; ++u) {
        std::fill(mass.begin(), mass.end(), 0.0);
        for (int v = 0; v < n; ++v) mass[static_cast<std::size_t>(p.label(v))] += a(u, v);
        for (int i = 0; i < k; ++i) {
            const double frac = mass[static_cast<std::size_t>(i)] / p.sizes()[static_cast<std::size_t>(i)];
            worst = std::max(worst, p.label(u) == i ? 1.0 - frac : frac);
        }
    }
    return worst;
}

double unbalanceness(const Partition& p) {
    const double cmin = p.min_cluster_size();
    double s = 0;
    for (int c : p.sizes()) s += (c / cmin) * (c / cmin);
    return s / p.num_clusters();
}

double cluster_size_ratio(const Partition& p) {
    double s = 0;
    for (int c : p.sizes()) s += static_cast<double>(c) * c;
    const double n = p.size();
    return n * n / s;
}

double lemma1_threshold(const Partition& p) { return 2.0 / (5.0 + cluster_size_ratio(p)); }

GuaranteeReport recovery_guarantee(double dmax, const Partition& p, bool binary_input) {
    GuaranteeReport rep;
    rep.d_max = dmax;
    rep.unbalanceness = unbalanceness(p);
    rep.k_star = p.num_clusters();
    rep.n = p.size();
    rep.r = cluster_size_ratio(p);
    rep.lemma1_threshold = 2.0 / (5.0 + rep.r);
    rep.binary_input = binary_input;

    const double n2 = static_cast<double>(rep.n) * rep.n;
    const double k = rep.k_star;
    const double cmin = p.min_cluster_size();
    double sum_sq = 0;
    for (int c : p.sizes()) sum_sq += static_cast<double>(c) * c;

    // Both bounds constrain x = (1 - mu) k / (mu n^2); mu = 1 / (1 + x n^2 / k).
    const double d = dmax;
    if (d >= 1.0 / (k + 1.0) || 1.0 - 3.0 * d <= 0.0) return rep;
    const double x_low = (1.0 + d) / ((1.0 - 3.0 * d) * cmin * cmin);
    const auto mu_of = [&](double x) { return 1.0 / (1.0 + x * n2 / k); };
    if (d == 0.0) {
        rep.theorem_holds = true;
        rep.mu_low = 0.0;
        rep.mu_high = mu_of(x_low);
        return rep;
    }
    const double bound = (1.0 - 3.0 * d) * (1.0 - 3.0 * d) / ((1.0 + d) * d);
    if (rep.unbalanceness > bound) return rep;
    const double x_high = (1.0 - 3.0 * d) * k / (d * sum_sq);
    if (!(x_low < x_high)) return rep;
    rep.theorem_holds = true;
    rep.mu_low = mu_of(x_high);
    rep.mu_high = mu_of(x_low);
    return rep;
}

GuaranteeReport check_recovery_guarantee(const AffinityMatrix& a, const Partition& p) {
    return recovery_guarantee(d_max(a, p), p, a.is_binary());
}

double variation_of_information(const Partition& p1, const Partition& p2) {
    if (p1.size() != p2.size()) throw std::invalid_argument("partitions cover different node counts");
    const double n = p1.size();
    std::map<std::pair<int, int>, int> joint;
    for (int u = 0; u < p1.size(); ++u) ++joint[{p1.label(u), p2.label(u)}];
    // VI = sum_ij p_ij (log(p_i / p_ij) + log(p_j / p_ij))
    double vi = 0;
    for (const auto& [key, count] : joint) {
        const double pij = count / n;
        const double pi = p1.sizes()[static_cast<std::size_t>(key.first)] / n;
        const double pj = p2.sizes()[static_cast<std::size_t>(key.second)] / n;
        vi += pij * (std::log(pi / pij) + std::log(pj / pij));
    }
    return std::max(vi, 0.0);
}

bool exact_recovery(const MatrixRef& khat, const Partition& p_true, double threshold) {
    if (khat.rows() != p_true.size() || khat.cols() != p_true.size())
        throw std::invalid_argument("candidate dimensions do not match the partition");
    for (int u = 0; u < p_true.size(); ++u)
        for (int v = 0; v < p_true.size(); ++v) {
            const bool on = khat(u, v) >= threshold;
            if (on != (p_true.label(u) == p_true.label(v))) return false;
        }
    return true;
}

} // namespace mncc
