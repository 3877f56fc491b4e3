#include "mncc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mncc::io {

namespace {

std::runtime_error parse_error(const std::string& what) {
    return std::runtime_error("malformed file: " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& token) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw parse_error("expected a real, got '" + token + "'");
    }
    if (used != token.size()) throw parse_error("expected a real, got '" + token + "'");
    return v;
}

long parse_int(const std::string& token) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw parse_error("expected an integer, got '" + token + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

} // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

AffinityMatrix read_affinity(std::istream& in) {
    std::string token;
    if (!(in >> token)) throw parse_error("missing node count");
    const long n = parse_int(token);
    if (n < 1) throw parse_error("node count must be positive");
    Matrix m(n, n);
    for (long u = 0; u < n; ++u)
        for (long v = 0; v < n; ++v) {
            if (!(in >> token)) throw parse_error("expected " + std::to_string(n * n) + " entries");
            m(u, v) = parse_real(token);
        }
    if (in >> token) throw parse_error("trailing data after matrix");
    return AffinityMatrix(std::move(m), 1e-9);
}

void write_affinity(std::ostream& out, const AffinityMatrix& a) {
    const int n = a.size();
    out << n << '\n';
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (v) out << ' ';
            out << format_real(a(u, v));
        }
        out << '\n';
    }
}

AffinityMatrix load_affinity(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_affinity(in);
}

void save_affinity(const AffinityMatrix& a, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_affinity(out, a);
}

Partition read_partition(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "node,cluster")
        throw parse_error("partition header must be 'node,cluster'");
    std::map<long, int> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 2) throw parse_error("partition row needs 2 fields: " + line);
        const long node = parse_int(cells[0]);
        const long cluster = parse_int(cells[1]);
        if (!rows.emplace(node, static_cast<int>(cluster)).second)
            throw parse_error("duplicate node " + cells[0]);
    }
    if (rows.empty()) throw parse_error("partition has no rows");
    std::vector<int> labels;
    long expect = 0;
    for (auto [node, cluster] : rows) {
        if (node != expect) throw parse_error("nodes must be numbered 0..n-1");
        labels.push_back(cluster);
        ++expect;
    }
    return Partition(std::move(labels));
}

void write_partition(std::ostream& out, const Partition& p) {
    out << "node,cluster\n";
    for (int u = 0; u < p.size(); ++u) out << u << ',' << p.label(u) << '\n';
}

Partition load_partition(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_partition(in);
}

void save_partition(const Partition& p, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_partition(out, p);
}

Matrix read_features(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    long label_col = -1;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_csv(line);
        if (first) {
            first = false;
            // A header row is any row whose first cell is not numeric.
            bool header = false;
            try {
                parse_real(cells[0]);
            } catch (const std::runtime_error&) {
                header = true;
            }
            if (header) {
                for (std::size_t i = 0; i < cells.size(); ++i)
                    if (cells[i] == "label") label_col = static_cast<long>(i);
                width = cells.size();
                continue;
            }
        }
        if (width == 0) width = cells.size();
        if (cells.size() != width) throw parse_error("ragged feature row: " + line);
        std::vector<double> row;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (static_cast<long>(i) != label_col) row.push_back(parse_real(cells[i]));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("feature file has no rows");
    Matrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return x;
}

Matrix load_features(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_features(in);
}

} // namespace mncc::io
