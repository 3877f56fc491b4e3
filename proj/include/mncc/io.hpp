#pragma once

// Text file formats.
//
//   affinity:  first line `n`, then n lines of n space-separated reals
//   partition: CSV with header `node,cluster`, one row per node
//   features:  CSV, one row per point; a column named `label` is skipped
//
// Reals are written with 17 significant digits so files round-trip exactly.

#include "mncc/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace mncc::io {

/// Shortest form that parses back to the same double (17 significant digits).
std::string format_real(double x);

AffinityMatrix read_affinity(std::istream& in);
void write_affinity(std::ostream& out, const AffinityMatrix& a);
AffinityMatrix load_affinity(const std::filesystem::path& path);
void save_affinity(const AffinityMatrix& a, const std::filesystem::path& path);

Partition read_partition(std::istream& in);
void write_partition(std::ostream& out, const Partition& p);
Partition load_partition(const std::filesystem::path& path);
void save_partition(const Partition& p, const std::filesystem::path& path);

Matrix read_features(std::istream& in);
Matrix load_features(const std::filesystem::path& path);

} // namespace mncc::io
