#include "helpers.hpp"

#include "mncc/datagen.hpp"
#include "mncc/rounding.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace mncc;
using mncc::testing::mat;

TEST_SUITE("rounding") {

TEST_CASE("single node hierarchy") {
    Hierarchy h = slink(Matrix::Ones(1, 1));
    CHECK(h.levels.size() == 1);
    CHECK(h.levels[0].num_clusters() == 1);
    CHECK(h.merges.empty());
}

TEST_CASE("ideal blocks merge at distance zero") {
    AffinityMatrix a = AffinityMatrix::ideal(std::vector<int>{0, 0, 1, 1});
    Hierarchy h = slink(a.matrix());
    REQUIRE(h.levels.size() == 4);
    CHECK(h.merges[0].distance == 0.0);
    CHECK(h.merges[1].distance == 0.0);
    CHECK(h.merges[2].distance == doctest::Approx(2.0));
    CHECK(h.levels[2].same_clustering(Partition({0, 0, 1, 1})));
    CHECK(h.merges[0].cluster_a == 0);
    CHECK(h.merges[0].cluster_b == 1);
}

TEST_CASE("hierarchy structure") {
    Rng rng(13);
    for (int t = 0; t < 20; ++t) {
        AffinityMatrix a = testing::random_fractional_affinity(2 + t % 9, rng);
        Hierarchy h = slink(a.matrix());
        REQUIRE(static_cast<int>(h.levels.size()) == a.size());
        for (std::size_t l = 0; l < h.levels.size(); ++l)
            CHECK(h.levels[l].num_clusters() == a.size() - static_cast<int>(l));
        for (std::size_t l = 1; l < h.levels.size(); ++l) {
            // Exactly two clusters of the previous level were merged.
            const Partition& prev = h.levels[l - 1];
            const Partition& next = h.levels[l];
            for (int u = 0; u < a.size(); ++u)
                for (int v = 0; v < a.size(); ++v)
                    if (prev.label(u) == prev.label(v)) CHECK(next.label(u) == next.label(v));
        }
        for (std::size_t m = 1; m < h.merges.size(); ++m)
            CHECK(h.merges[m].distance >= h.merges[m - 1].distance - 1e-12);
        CHECK(slink(a.matrix()).merge_log_csv() == h.merge_log_csv());
    }
    CHECK_THROWS(slink(mat({{1, 0.2}, {0.3, 1}})));
}

TEST_CASE("merge log format") {
    Hierarchy h = slink(AffinityMatrix::ideal(std::vector<int>{0, 0, 1}).matrix());
    CHECK(h.merge_log_csv().rfind("step,cluster_a,cluster_b,distance\n1,0,1,0\n", 0) == 0);
}

TEST_CASE("select_best examples") {
    AffinityMatrix ideal = AffinityMatrix::ideal(std::vector<int>{0, 1, 0, 1});
    Selection s = select_best(ideal, slink(ideal.matrix()));
    CHECK(s.partition.same_clustering(Partition({0, 1, 0, 1})));
    CHECK(s.objective == 0.0);

    AffinityMatrix half(mat({{1, 0.5, 0.5}, {0.5, 1, 0.5}, {0.5, 0.5, 1}}));
    Selection t = select_best(half, slink(half.matrix()));
    CHECK(t.objective == doctest::Approx(3.0));
    CHECK(t.level == 0);
    CHECK(t.partition.num_clusters() == 3);
}

TEST_CASE("single linkage on the two-clique counterexample misses the planted clusters") {
    Fig3Fixture fx = fig3_fixture();
    Selection s = round_to_valid_selection(fx.affinity.matrix(), fx.affinity);
    CHECK_FALSE(s.partition.same_clustering(fx.truth));
}

TEST_CASE("select_best never loses to the extreme levels") {
    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        AffinityMatrix a = testing::random_fractional_affinity(3 + t % 8, rng);
        Selection s = select_best(a, slink(a.matrix()));
        const int n = a.size();
        CHECK(s.objective <= absolute_disagreement(a, Matrix::Identity(n, n)) + 1e-12);
        CHECK(s.objective <= absolute_disagreement(a, Matrix::Ones(n, n)) + 1e-12);
    }
}

TEST_CASE("round_to_valid examples") {
    Partition p({0, 1, 1, 0, 2});
    AffinityMatrix a = AffinityMatrix::ideal(p.labels());
    Matrix k = incidence_matrix(p).matrix();
    CHECK(round_to_valid(CandidateMatrix::from_entries(k), a).same_clustering(p));
    CHECK(round_to_valid(CandidateMatrix::from_entries((k.array() + 0.01).matrix()), a).same_clustering(p));

    AffinityMatrix pair = AffinityMatrix::ideal(std::vector<int>{0, 0});
    CHECK(round_to_valid(CandidateMatrix::from_entries(Matrix::Identity(2, 2)), pair).num_clusters() == 1);
}

TEST_CASE("rounded output is always a valid clustering") {
    Rng rng(23);
    std::normal_distribution<double> g;
    for (int t = 0; t < 30; ++t) {
        AffinityMatrix a = testing::random_fractional_affinity(6, rng);
        Matrix k = Matrix::NullaryExpr(6, 6, [&] { return g(rng); });
        Partition p = round_to_valid(CandidateMatrix::from_entries(k), a);
        CHECK(is_valid_clustering(incidence_matrix(p).matrix(), 0.0));
    }
}

TEST_CASE("node permutation does not change the selected clustering") {
    Rng rng(29);
    for (int t = 0; t < 20; ++t) {
        const int n = 7;
        AffinityMatrix a = testing::random_fractional_affinity(n, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix permuted(n, n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) permuted(u, v) = a(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        AffinityMatrix b(permuted);
        Partition pa = round_to_valid_selection(a.matrix(), a).partition;
        Partition pb = round_to_valid_selection(b.matrix(), b).partition;
        std::vector<int> back(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) back[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])] = pb.label(u);
        CHECK(Partition::from_any_labels(back).same_clustering(pa));
    }
}

TEST_CASE("l1 column metric") {
    Matrix d = column_distances(mat({{1, 0}, {0, 1}}), ColumnMetric::l1);
    CHECK(d(0, 1) == doctest::Approx(2.0));
    Matrix e = column_distances(mat({{1, 0}, {0, 1}}), ColumnMetric::l2);
    CHECK(e(0, 1) == doctest::Approx(std::sqrt(2.0)));
}

}
