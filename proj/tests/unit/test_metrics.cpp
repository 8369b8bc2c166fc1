#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cclust/distance.hpp"
#include "cclust/error.hpp"
#include "cclust/metrics.hpp"
#include "cclust/synthetic.hpp"
#include "support.hpp"

using namespace cclust;

namespace {

/// Textbook double loop over samples and clusters.
std::vector<double> silhouette_oracle(const SymmetricMatrix& d, const std::vector<int>& labels, int k) {
    const std::size_t n = labels.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            sum[static_cast<std::size_t>(labels[j])] += d(i, j);
            count[static_cast<std::size_t>(labels[j])] += 1;
        }
        const auto own = static_cast<std::size_t>(labels[i]);
        if (count[own] == 0) {
            continue;
        }
        const double a = sum[own] / count[own];
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sum.size(); ++c) {
            if (c != own && count[c] > 0) {
                b = std::min(b, sum[c] / count[c]);
            }
        }
        s[i] = (b - a) / std::max(a, b);
    }
    return s;
}

}

TEST_CASE("silhouette of four points on a line") {
    const auto d = pairwise_distances(testing::points_1d({0, 1, 10, 11}));
    const auto r = silhouette_widths(d, ClusterAssignment::from_labels(std::vector<int>{0, 0, 1, 1}));
    // a(0) = 1, b(0) = 10.5
    CHECK(r.widths[0] == doctest::Approx(9.5 / 10.5).epsilon(1e-12));
    CHECK(r.widths[0] == doctest::Approx(0.904762).epsilon(1e-6));
    CHECK(r.widths[1] == doctest::Approx(0.894737).epsilon(1e-6));
    CHECK(r.widths[2] == doctest::Approx(0.894737).epsilon(1e-6));
    CHECK(r.widths[3] == doctest::Approx(0.904762).epsilon(1e-6));
    CHECK(std::abs(r.asw - 0.899749) <= 1e-6);
    CHECK(r.k == 2);
    CHECK(r.cluster_widths[0].front() >= r.cluster_widths[0].back());
}

TEST_CASE("singleton members get zero") {
    const auto d = pairwise_distances(testing::points_1d({0, 1, 10}));
    const auto r = silhouette_widths(d, ClusterAssignment::from_labels(std::vector<int>{0, 0, 1}));
    CHECK(r.widths[2] == 0.0);
}

TEST_CASE("coincident pair far from a third cluster") {
    const auto d = pairwise_distances(testing::points_1d({5, 5, 100, 101}));
    const auto r = silhouette_widths(d, ClusterAssignment::from_labels(std::vector<int>{0, 0, 1, 1}));
    CHECK(r.widths[0] == 1.0);
    CHECK(r.widths[1] == 1.0);
}

TEST_CASE("silhouette matches the double-loop oracle") {
    Rng rng(1001);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 59);
        const int k = 2 + static_cast<int>(uniform_index(rng, std::min<std::size_t>(n - 1, 6)));
        const auto d = pairwise_distances(testing::random_matrix(rng, n, 3));
        const auto a = testing::random_labels(rng, n, k);
        const auto r = silhouette_widths(d, a);
        const auto oracle = silhouette_oracle(d, {a.labels().begin(), a.labels().end()}, a.k());
        double mean = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(r.widths[i] - oracle[i]) <= 1e-12);
            CHECK(r.widths[i] >= -1.0);
            CHECK(r.widths[i] <= 1.0);
            mean += oracle[i];
        }
        CHECK(std::abs(r.asw - mean / static_cast<double>(n)) <= 1e-12);
    }
}

TEST_CASE("silhouette is invariant to scaling distances") {
    Rng rng(5);
    const auto d = pairwise_distances(testing::random_matrix(rng, 20, 2));
    SymmetricMatrix scaled(20);
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = i + 1; j < 20; ++j) {
            scaled.set(i, j, 7.25 * d(i, j));
        }
    }
    const auto a = testing::random_labels(rng, 20, 3);
    const auto r1 = silhouette_widths(d, a);
    const auto r2 = silhouette_widths(scaled, a);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(r1.widths[i] == doctest::Approx(r2.widths[i]).epsilon(1e-12));
    }
}

TEST_CASE("silhouette preconditions") {
    const auto d = pairwise_distances(testing::points_1d({0, 1, 2}));
    CHECK_THROWS_AS(silhouette_widths(d, ClusterAssignment::from_labels(std::vector<int>{0, 0, 0})), ConfigError);
    CHECK_THROWS_AS(silhouette_widths(d, ClusterAssignment::from_labels(std::vector<int>{0, 1})), DataError);
}

TEST_CASE("well separated blobs have ASW near 1") {
    SyntheticSpec spec;
    spec.k = 2;
    spec.n_per_cluster = 40;
    spec.dims = 1;
    spec.separation = 10;
    spec.seed = 8;
    const auto data = generate_synthetic(spec);
    CHECK(asw(pairwise_distances(data.data.concatenated()), data.planted) > 0.85);
}

TEST_CASE("random labels on structureless data average near zero") {
    double total = 0;
    for (Seed seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        Matrix x(60, 2);
        for (auto& v : x.values()) {
            v = uniform01(rng);
        }
        total += asw(pairwise_distances(x), testing::random_labels(rng, 60, 3));
    }
    CHECK(std::abs(total / 100) < 0.1);
}

TEST_CASE("adjusted rand index") {
    const auto a = ClusterAssignment::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1});
    const auto b = ClusterAssignment::from_labels(std::vector<int>{0, 0, 1, 1, 2, 2});
    // Contingency rows (2,1,0), (0,1,2): index 2, expected 6*3/15, max 4.5.
    CHECK(adjusted_rand_index(a, b) == doctest::Approx((2 - 1.2) / (4.5 - 1.2)).epsilon(1e-14));
    CHECK(adjusted_rand_index(a, a) == 1.0);
    const auto renamed = ClusterAssignment::from_labels(std::vector<int>{5, 5, 5, 2, 2, 2});
    CHECK(adjusted_rand_index(a, renamed) == 1.0);
    CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(b, a));
    CHECK_THROWS_AS(adjusted_rand_index(a, ClusterAssignment::from_labels(std::vector<int>{0, 1})), DataError);

    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = testing::random_labels(rng, 30, 4);
        const auto y = testing::random_labels(rng, 30, 3);
        std::vector<int> perm{2, 0, 1};
        std::vector<int> relabelled;
        for (int l : y.labels()) {
            relabelled.push_back(perm[static_cast<std::size_t>(l)]);
        }
        const double v = adjusted_rand_index(x, y);
        CHECK(v == doctest::Approx(adjusted_rand_index(y, x)).epsilon(1e-14));
        CHECK(v == doctest::Approx(adjusted_rand_index(x, ClusterAssignment::from_labels(relabelled))).epsilon(1e-14));
    }
}

namespace {

ConsensusMatrix block_matrix(const std::vector<int>& blocks) {
    EnsembleInstance e;
    e.sample_mask.assign(blocks.size(), 1);
    e.labels = ClusterAssignment::from_labels(blocks);
    return consensus_matrix(std::vector<EnsembleInstance>{e});
}

}

TEST_CASE("heatmap order groups clusters contiguously") {
    const std::vector<int> shuffled{2, 0, 1, 0, 2, 1, 1, 0, 2, 2};
    const auto m = block_matrix(shuffled);
    const auto a = ClusterAssignment::from_labels(shuffled);
    const auto order = reorder_for_heatmap(m, a);
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        CHECK(sorted[i] == i);
    }
    int switches = 0;
    for (std::size_t p = 1; p < order.size(); ++p) {
        switches += a[order[p]] != a[order[p - 1]] ? 1 : 0;
    }
    CHECK(switches == a.k() - 1);

    std::vector<double> before(m.values.values().begin(), m.values.values().end());
    std::vector<double> after;
    for (auto i : order) {
        for (auto j : order) {
            after.push_back(m.values(i, j));
        }
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(before == after);
}

TEST_CASE("heatmap order of an ordered block matrix stays within blocks") {
    const std::vector<int> ordered{0, 0, 0, 1, 1, 2, 2, 2};
    const auto order = reorder_for_heatmap(block_matrix(ordered), ClusterAssignment::from_labels(ordered));
    for (std::size_t p = 0; p < order.size(); ++p) {
        CHECK(ordered[order[p]] == ordered[p]);
    }
}

TEST_CASE("single cluster heatmap order sorts by mean consensus") {
    std::vector<EnsembleInstance> e(2);
    e[0].sample_mask = {1, 1, 1};
    e[0].labels = ClusterAssignment::from_labels(std::vector<int>{0, 1, 1});
    e[1].sample_mask = {1, 1, 1};
    e[1].labels = ClusterAssignment::from_labels(std::vector<int>{0, 0, 1});
    const auto m = consensus_matrix(e);
    const auto order = reorder_for_heatmap(m, ClusterAssignment::from_labels(std::vector<int>{0, 0, 0}));
    // row means: 1.5/3, 2/3, 1.5/3
    CHECK(order == std::vector<std::size_t>{1, 0, 2});
}
