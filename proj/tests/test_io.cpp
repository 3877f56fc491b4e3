#include "helpers.hpp"

#include "mncc/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace mncc;

namespace {
std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / (std::string("mncc_io_") + name);
}
} // namespace

TEST_SUITE("io") {

TEST_CASE("affinity round trip is exact") {
    Rng rng(3);
    AffinityMatrix a = testing::random_fractional_affinity(7, rng);
    const auto path = temp_file("aff.txt");
    io::save_affinity(a, path);
    AffinityMatrix b = io::load_affinity(path);
    CHECK(a.matrix() == b.matrix());
    std::filesystem::remove(path);
}

TEST_CASE("n = 1 file") {
    std::istringstream in("1\n1\n");
    AffinityMatrix a = io::read_affinity(in);
    CHECK(a.size() == 1);
    CHECK(a(0, 0) == 1.0);
}

TEST_CASE("malformed affinity files") {
    std::istringstream asym("2\n1 0.3\n0.2 1\n");
    CHECK_THROWS_AS(io::read_affinity(asym), std::invalid_argument);
    std::istringstream short_file("2\n1 0\n0\n");
    CHECK_THROWS_AS(io::read_affinity(short_file), std::runtime_error);
    std::istringstream junk("2\n1 x\n0 1\n");
    CHECK_THROWS_AS(io::read_affinity(junk), std::runtime_error);
    std::istringstream trailing("1\n1 5\n");
    CHECK_THROWS_AS(io::read_affinity(trailing), std::runtime_error);
    CHECK_THROWS(io::load_affinity("/nonexistent/affinity.txt"));
}

TEST_CASE("partition round trip") {
    Partition p({0, 1, 1, 2, 0});
    const auto path = temp_file("part.csv");
    io::save_partition(p, path);
    CHECK(io::load_partition(path) == p);
    std::filesystem::remove(path);

    std::istringstream bad_header("id,c\n0,0\n");
    CHECK_THROWS(io::read_partition(bad_header));
    std::istringstream gap("node,cluster\n0,0\n2,0\n");
    CHECK_THROWS(io::read_partition(gap));
    std::istringstream shuffled("node,cluster\n1,0\n0,1\n");
    CHECK(io::read_partition(shuffled).labels() == std::vector<int>{1, 0});
}

TEST_CASE("feature files") {
    std::istringstream with_label("x,y,label\n0,1,3\n2,3,4\n");
    Matrix x = io::read_features(with_label);
    CHECK(x.rows() == 2);
    CHECK(x.cols() == 2);
    CHECK(x(1, 1) == 3.0);
    std::istringstream plain("0.5,1\n2,3\n");
    CHECK(io::read_features(plain).cols() == 2);
    std::istringstream ragged("1,2\n3\n");
    CHECK_THROWS(io::read_features(ragged));
}

TEST_CASE("format_real keeps 17 significant digits") {
    CHECK(io::format_real(0.1) == "0.10000000000000001");
    CHECK(io::format_real(1.0) == "1");
}

}
