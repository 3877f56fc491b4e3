#include "helpers.hpp"

#include "mncc/metrics.hpp"

#include <doctest.h>

#include <cmath>

using namespace mncc;
using mncc::testing::mat;

namespace {

AffinityMatrix four_node_example() {
    return AffinityMatrix(mat({{1, 1, 1, 0}, {1, 1, 0, 0}, {1, 0, 1, 1}, {0, 0, 1, 1}}));
}

// Every partition of n nodes into exactly k clusters, as restricted-growth strings.
void partitions_with_k(int n, int k, std::vector<int>& labels, int i, int used, std::vector<Partition>& out) {
    if (i == n) {
        if (used == k) out.emplace_back(labels);
        return;
    }
    for (int c = 0; c <= used && c < k; ++c) {
        labels[static_cast<std::size_t>(i)] = c;
        partitions_with_k(n, k, labels, i + 1, c == used ? used + 1 : used, out);
    }
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("disagreement_ratio examples") {
    Partition p({0, 0, 1, 1});
    AffinityMatrix ideal = AffinityMatrix::ideal(p.labels());
    for (int u = 0; u < 4; ++u)
        for (int i = 0; i < 2; ++i) CHECK(disagreement_ratio(ideal, p, u, i) == 0.0);
    CHECK(disagreement_ratio(four_node_example(), p, 0, 1) == doctest::Approx(0.5));
    CHECK_THROWS_AS(disagreement_ratio(ideal, p, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(disagreement_ratio(ideal, p, 4, 0), std::out_of_range);
}

TEST_CASE("d_max examples") {
    Partition p({0, 0, 1, 1});
    CHECK(d_max(AffinityMatrix::ideal(p.labels()), p) == 0.0);
    CHECK(d_max(four_node_example(), p) == doctest::Approx(0.5));
}

TEST_CASE("d_max is zero on ideal matrices and monotone under corruption") {
    Rng rng(21);
    for (int t = 0; t < 40; ++t) {
        Partition p = testing::random_partition(2 + t % 9, 3, rng);
        Matrix m = incidence_matrix(p).matrix();
        CHECK(d_max(AffinityMatrix(m), p) == 0.0);
        double previous = 0;
        std::uniform_int_distribution<int> node(0, p.size() - 1);
        for (int flips = 0; flips < 4; ++flips) {
            const int u = node(rng), v = node(rng);
            if (u == v) continue;
            m(u, v) = m(v, u) = 1.0 - incidence_matrix(p).matrix()(u, v);
            const double now = d_max(AffinityMatrix(m), p);
            CHECK(now >= previous);
            CHECK(now <= 1.0);
            previous = now;
        }
    }
}

TEST_CASE("unbalanceness examples") {
    CHECK(unbalanceness(Partition::from_sizes(std::vector<int>{5, 5, 5})) == doctest::Approx(1.0));
    CHECK(unbalanceness(Partition::from_sizes(std::vector<int>{30, 30, 30, 10})) == doctest::Approx(7.0));
    CHECK(unbalanceness(Partition::from_sizes(std::vector<int>{2, 1})) == doctest::Approx(2.5));
}

TEST_CASE("lemma1_threshold examples") {
    CHECK(lemma1_threshold(Partition::from_sizes(std::vector<int>{4, 4})) == doctest::Approx(2.0 / 7.0));
    CHECK(lemma1_threshold(Partition::from_sizes(std::vector<int>{3, 3, 3, 3, 3})) == doctest::Approx(0.2));
    CHECK(lemma1_threshold(Partition::single_cluster(6)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("r lies between 1 and k") {
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        Partition p = testing::random_partition(12, 4, rng);
        const double r = cluster_size_ratio(p);
        CHECK(r >= 1.0 - 1e-12);
        CHECK(r <= p.num_clusters() + 1e-12);
        CHECK(unbalanceness(p) >= 1.0);
    }
    CHECK(cluster_size_ratio(Partition::from_sizes(std::vector<int>{3, 3, 3})) == doctest::Approx(3.0));
}

TEST_CASE("balanced partitions minimize the lemma threshold") {
    for (int n = 2; n <= 10; ++n)
        for (int k = 1; k <= n; ++k) {
            std::vector<Partition> all;
            std::vector<int> labels(static_cast<std::size_t>(n));
            partitions_with_k(n, k, labels, 0, 0, all);
            double best = 1e9;
            for (const Partition& p : all) best = std::min(best, lemma1_threshold(p));
            // The most balanced split: sizes differ by at most one.
            std::vector<int> sizes(static_cast<std::size_t>(k), n / k);
            for (int i = 0; i < n % k; ++i) ++sizes[static_cast<std::size_t>(i)];
            CHECK(lemma1_threshold(Partition::from_sizes(sizes)) == doctest::Approx(best).epsilon(1e-12));
        }
}

TEST_CASE("recovery guarantee examples") {
    Partition balanced = Partition::from_sizes(std::vector<int>{25, 25, 25, 25});
    GuaranteeReport ideal = check_recovery_guarantee(AffinityMatrix::ideal(balanced.labels()), balanced);
    CHECK(ideal.theorem_holds);
    CHECK(ideal.d_max == 0.0);
    CHECK(ideal.mu_low == 0.0);

    GuaranteeReport g = recovery_guarantee(0.1, balanced);
    CHECK(g.theorem_holds);
    CHECK(g.mu_low == doctest::Approx(1.0 / 29.0).epsilon(1e-6));
    CHECK(g.mu_high == doctest::Approx(1.0 / 7.28571).epsilon(1e-5));
    CHECK(g.mu_low > 0.0);
    CHECK(g.mu_low < g.mu_high);

    CHECK_FALSE(recovery_guarantee(0.3, balanced).theorem_holds);
    CHECK_FALSE(recovery_guarantee(0.1, balanced, false).binary_input);
}

TEST_CASE("theorem verdict is monotone in d_max at fixed unbalanceness") {
    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        Partition p = testing::random_partition(40, 4, rng);
        bool was_true = false;
        for (double d = 0.3; d >= 0.0; d -= 0.005) {
            GuaranteeReport g = recovery_guarantee(d, p);
            if (was_true) CHECK(g.theorem_holds);
            was_true = was_true || g.theorem_holds;
            if (g.theorem_holds) {
                CHECK(g.mu_low < g.mu_high);
                if (d > 0) CHECK(g.mu_low > 0.0);
            }
        }
    }
}

TEST_CASE("report serialization") {
    const std::string text = to_key_value(recovery_guarantee(0.1, Partition::from_sizes(std::vector<int>{25, 25})));
    CHECK(text.find("d_max=0.1") != std::string::npos);
    CHECK(text.find("theorem_holds=") != std::string::npos);
    CHECK(text.find("binary_input=true") != std::string::npos);
}

TEST_CASE("variation of information examples") {
    Partition p({0, 0, 1, 1});
    CHECK(variation_of_information(p, p) == 0.0);
    CHECK(variation_of_information(p, Partition::single_cluster(4)) == doctest::Approx(std::log(2.0)));
    CHECK(variation_of_information(Partition::single_cluster(4), p) == doctest::Approx(std::log(2.0)));
    CHECK(variation_of_information(p, Partition({1, 1, 0, 0})) == 0.0);
}

TEST_CASE("variation of information is a metric") {
    Rng rng(99);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + t % 12;
        Partition a = testing::random_partition(n, 4, rng);
        Partition b = testing::random_partition(n, 4, rng);
        Partition c = testing::random_partition(n, 4, rng);
        const double ab = variation_of_information(a, b);
        const double bc = variation_of_information(b, c);
        const double ac = variation_of_information(a, c);
        CHECK(ab >= 0.0);
        CHECK(ab == doctest::Approx(variation_of_information(b, a)));
        CHECK(ac <= ab + bc + 1e-12);
        CHECK((ab < 1e-12) == a.same_clustering(b));
    }
}

TEST_CASE("exact_recovery examples") {
    Partition p({0, 0, 1});
    Matrix k = incidence_matrix(p).matrix();
    CHECK(exact_recovery(k, p));
    k(0, 1) = 0.4;
    CHECK_FALSE(exact_recovery(k, p));
    CHECK(exact_recovery(Matrix::Constant(3, 3, 0.6), Partition::single_cluster(3)));
}

}
