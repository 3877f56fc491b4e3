#include "helpers.hpp"

#include "mncc/baselines.hpp"
#include "mncc/datagen.hpp"
#include "mncc/metrics.hpp"

#include <doctest.h>

#include <cmath>

using namespace mncc;

TEST_SUITE("datagen") {

TEST_CASE("noise-free instances are ideal") {
    for (NoiseModel model : {NoiseModel::binary_flip, NoiseModel::fractional}) {
        PlantedInstance inst = planted_clusters(std::vector<int>{3, 4}, {model, 0.0, 5});
        CHECK(inst.affinity.matrix() == incidence_matrix(inst.truth).matrix());
        CHECK(inst.realized_d_max == 0.0);
    }
}

TEST_CASE("planted instances are reproducible and self-consistent") {
    for (NoiseModel model : {NoiseModel::binary_flip, NoiseModel::fractional})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const std::vector<int> sizes{5, 6, 3};
            PlantedInstance x = planted_clusters(sizes, {model, 0.3, seed});
            PlantedInstance y = planted_clusters(sizes, {model, 0.3, seed});
            CHECK(x.affinity.matrix() == y.affinity.matrix());
            CHECK(x.realized_d_max == d_max(x.affinity, x.truth));
            CHECK(x.truth.sizes() == sizes);
            CHECK(x.affinity.is_binary() == (model == NoiseModel::binary_flip));
        }
    CHECK_THROWS(planted_clusters(std::vector<int>{3}, {NoiseModel::binary_flip, 1.5, 0}));
    CHECK_THROWS(planted_clusters(std::vector<int>{}, {NoiseModel::binary_flip, 0.1, 0}));
}

TEST_CASE("fractional noise moves entries toward one half") {
    PlantedInstance inst = planted_clusters(std::vector<int>{6, 6}, {NoiseModel::fractional, 0.4, 1});
    const Matrix ideal = incidence_matrix(inst.truth).matrix();
    CHECK(((inst.affinity.matrix() - ideal).cwiseAbs().array() <= 0.4 + 1e-12).all());
}

TEST_CASE("binary flips at rate one half") {
    // Individual disagreement ratios average one half; d_max is their maximum.
    double mean_ratio = 0, mean_dmax = 0;
    int ratios = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        PlantedInstance inst =
            planted_clusters(std::vector<int>{10, 10, 10, 10}, {NoiseModel::binary_flip, 0.5, seed});
        for (int u = 0; u < inst.truth.size(); ++u)
            for (int i = 0; i < inst.truth.num_clusters(); ++i) {
                mean_ratio += disagreement_ratio(inst.affinity, inst.truth, u, i);
                ++ratios;
            }
        mean_dmax += inst.realized_d_max;
    }
    CHECK(std::abs(mean_ratio / ratios - 0.5) <= 0.1);
    CHECK(mean_dmax / 100 >= 0.5);
}

TEST_CASE("lemma objectives examples") {
    for (int m = 2; m <= 10; ++m) {
        const std::vector<int> sizes{m, m};
        Lemma1Objectives at = lemma1_objectives(sizes, 2.0 / 7.0);
        CHECK(at.original == doctest::Approx(12.0 * m * m / 49.0));
        CHECK(at.alternative == doctest::Approx(12.0 * m * m / 49.0));
        Lemma1Objectives above = lemma1_objectives(sizes, 0.3);
        CHECK(above.alternative < above.original);
    }
    Lemma1Objectives zero = lemma1_objectives(std::vector<int>{4, 2}, 0.0);
    CHECK(zero.original == 0.0);
    CHECK(zero.alternative == 0.0);
    CHECK_THROWS(lemma1_objectives(std::vector<int>{4, 2}, 0.6));
    CHECK_THROWS(lemma1_objectives(std::vector<int>{4, 2}, -0.1));
}

TEST_CASE("lemma objectives cross exactly once, at the threshold") {
    Rng rng(61);
    std::uniform_int_distribution<int> size(1, 20);
    std::uniform_int_distribution<int> count(1, 6);
    for (int t = 0; t < 30; ++t) {
        std::vector<int> sizes(static_cast<std::size_t>(count(rng)));
        for (int& s : sizes) s = size(rng);
        const double threshold = lemma1_threshold(Partition::from_sizes(sizes));
        int changes = 0;
        double crossing = -1;
        int previous = 0;
        for (int i = 1; i <= 5000; ++i) {
            const double gamma = 0.5 * i / 5000.0;
            Lemma1Objectives b = lemma1_objectives(sizes, gamma);
            const double diff = b.original - b.alternative;
            const int s = std::abs(diff) < 1e-12 * (1 + std::abs(b.original)) ? 0 : (diff > 0 ? 1 : -1);
            if (s != 0 && previous != 0 && s != previous) {
                ++changes;
                crossing = gamma;
            }
            if (s != 0) previous = s;
        }
        CHECK(changes == 1);
        CHECK(std::abs(crossing - threshold) <= 0.5 / 5000.0 + 1e-12);
    }
}

TEST_CASE("concrete lemma instance matches the closed form") {
    for (const auto& [sizes, gamma] : std::vector<std::pair<std::vector<int>, double>>{
             {{5, 5}, 0.2}, {{5, 5}, 0.4}, {{10, 5}, 0.2}, {{4, 4, 4}, 0.25}}) {
        Lemma1Instance inst = lemma1_instance(sizes, gamma);
        Lemma1Objectives b = lemma1_objectives(sizes, gamma);
        const Matrix k1 = incidence_matrix(inst.original).matrix();
        const Matrix k2 = incidence_matrix(inst.alternative).matrix();
        // The closed forms count unordered pairs; the objective counts both orders.
        CHECK(absolute_disagreement(inst.affinity, k1) == doctest::Approx(2.0 * b.original));
        CHECK(absolute_disagreement(inst.affinity, k2) == doctest::Approx(2.0 * b.alternative));
        CHECK(d_max(inst.affinity, inst.original) == doctest::Approx(gamma));
    }
    CHECK_THROWS(lemma1_instance(std::vector<int>{5, 5}, 0.3));
}

TEST_CASE("above the threshold the planted clustering is not optimal") {
    Lemma1Instance inst = lemma1_instance(std::vector<int>{5, 5}, 0.4);
    OracleResult best = brute_force_optimal(inst.affinity);
    CHECK(best.objective < absolute_disagreement(inst.affinity, incidence_matrix(inst.original).matrix()));
    Lemma1Instance below = lemma1_instance(std::vector<int>{5, 5}, 0.2);
    CHECK(brute_force_optimal(below.affinity).partition.same_clustering(below.original));
}

TEST_CASE("two-clique fixture") {
    Fig3Fixture fx = fig3_fixture();
    CHECK(fx.affinity.size() == 36);
    CHECK(fx.node_a == 0);
    CHECK(fx.node_b == 18);
    CHECK(fx.affinity(fx.node_a, fx.node_b) == 0.0);
    CHECK(d_max(fx.affinity, fx.truth) > 0.0);
    CHECK(disagreement_ratio(fx.affinity, fx.truth, fx.node_a, 0) == doctest::Approx(4.0 / 18.0));
    CHECK(disagreement_ratio(fx.affinity, fx.truth, fx.node_a, 1) == doctest::Approx(11.0 / 18.0));
    CHECK(disagreement_ratio(fx.affinity, fx.truth, fx.node_b, 1) == doctest::Approx(4.0 / 18.0));
    CHECK(disagreement_ratio(fx.affinity, fx.truth, fx.node_b, 0) == doctest::Approx(7.0 / 18.0));
}

TEST_CASE("gaussian kernel examples") {
    const double sigma = 0.7;
    Matrix pts(3, 2);
    pts << 0, 0, 0, 0, std::sqrt(2 * sigma * sigma * std::log(2.0)), 0;
    AffinityMatrix a = gaussian_kernel_affinity(pts, sigma);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(0, 2) == doctest::Approx(0.5));
    CHECK(a(2, 2) == 1.0);
    Matrix far(2, 1);
    far << 0, 100;
    AffinityMatrix b = gaussian_kernel_affinity(far, 1.0);
    CHECK(b(0, 1) >= 0.0);
    CHECK(b(0, 1) < 1e-100);
    CHECK_THROWS(gaussian_kernel_affinity(pts, 0.0));
}

}
