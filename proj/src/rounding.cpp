#include "mncc/rounding.hpp"

#include "mncc/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mncc {

std::string Hierarchy::merge_log_csv() const {
    std::ostringstream out;
    out << "step,cluster_a,cluster_b,distance\n";
    for (std::size_t t = 0; t < merges.size(); ++t)
        out << t + 1 << ',' << merges[t].cluster_a << ',' << merges[t].cluster_b << ','
            << io::format_real(merges[t].distance) << '\n';
    return out.str();
}

Matrix column_distances(const MatrixRef& m, ColumnMetric metric) {
    const Eigen::Index n = m.cols();
    Matrix d = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = metric == ColumnMetric::l2 ? (m.col(i) - m.col(j)).norm()
                                                        : (m.col(i) - m.col(j)).cwiseAbs().sum();
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

Hierarchy single_linkage(const MatrixRef& distances) {
    const int n = static_cast<int>(distances.rows());
    if (n == 0 || distances.cols() != n) throw std::invalid_argument("distance matrix must be square");

    // Clusters are named by their smallest node, so the surviving name of a
    // merge is always the smaller one.
    Matrix link = distances;
    std::vector<int> name(static_cast<std::size_t>(n));
    std::vector<bool> active(static_cast<std::size_t>(n), true);
    for (int i = 0; i < n; ++i) name[static_cast<std::size_t>(i)] = i;

    Hierarchy h;
    h.levels.reserve(static_cast<std::size_t>(n));
    h.levels.push_back(Partition::singletons(n));
    for (int step = 1; step < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        int ba = -1, bb = -1;
        for (int a = 0; a < n; ++a) {
            if (!active[static_cast<std::size_t>(a)]) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!active[static_cast<std::size_t>(b)]) continue;
                if (link(a, b) < best) {
                    best = link(a, b);
                    ba = a;
                    bb = b;
                }
            }
        }
        if (ba < 0) {  // only non-finite distances remain
            for (int a = 0; a < n && ba < 0; ++a)
                if (active[static_cast<std::size_t>(a)])
                    for (int b = a + 1; b < n; ++b)
                        if (active[static_cast<std::size_t>(b)]) {
                            ba = a;
                            bb = b;
                            best = link(a, b);
                            break;
                        }
        }
        for (int x = 0; x < n; ++x) {
            const double v = std::min(link(ba, x), link(bb, x));
            link(ba, x) = v;
            link(x, ba) = v;
        }
        active[static_cast<std::size_t>(bb)] = false;
        for (auto& nm : name)
            if (nm == bb) nm = ba;
        h.merges.push_back({ba, bb, best});
        h.levels.push_back(Partition::from_any_labels(name));
    }
    return h;
}

Hierarchy slink(const MatrixRef& m, ColumnMetric metric) {
    if (m.rows() != m.cols()) throw std::invalid_argument("slink needs a square matrix");
    const double scale = m.size() ? std::max(1.0, m.cwiseAbs().maxCoeff()) : 1.0;
    if (m.size() && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::invalid_argument("slink needs a symmetric matrix");
    return single_linkage(column_distances(m, metric));
}

namespace {
double level_objective(const AffinityMatrix& a, const Partition& p) {
    const int n = a.size();
    double total = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            total += p.label(u) == p.label(v) ? 1.0 - a(u, v) : a(u, v);
    return total;
}
} // namespace

Selection select_best(const AffinityMatrix& a, const Hierarchy& h) {
    if (h.levels.empty() || h.size() != a.size())
        throw std::invalid_argument("hierarchy does not match the affinity matrix");
    Selection best{h.levels.front(), level_objective(a, h.levels.front()), 0};
    for (std::size_t t = 1; t < h.levels.size(); ++t) {
        const double obj = level_objective(a, h.levels[t]);
        if (obj < best.objective) best = {h.levels[t], obj, static_cast<int>(t)};
    }
    return best;
}

Selection round_to_valid_selection(const MatrixRef& candidate, const AffinityMatrix& a, ColumnMetric metric) {
    if (candidate.rows() != a.size() || candidate.cols() != a.size())
        throw std::invalid_argument("candidate dimensions do not match the affinity matrix");
    const Matrix sym = 0.5 * (candidate + candidate.transpose());
    return select_best(a, slink(sym, metric));
}

Partition round_to_valid(const CandidateMatrix& candidate, const AffinityMatrix& a, ColumnMetric metric) {
    return round_to_valid_selection(candidate.entries, a, metric).partition;
}

} // namespace mncc
