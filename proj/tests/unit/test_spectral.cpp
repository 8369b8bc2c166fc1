#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cclust/affinity.hpp"
#include "cclust/distance.hpp"
#include "cclust/error.hpp"
#include "cclust/metrics.hpp"
#include "cclust/spectral.hpp"
#include "cclust/synthetic.hpp"
#include "support.hpp"

using namespace cclust;

namespace {

SymmetricMatrix blocks(const std::vector<int>& block_of) {
    const std::size_t n = block_of.size();
    SymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (block_of[i] == block_of[j]) {
                a.set(i, j, 1.0);
            }
        }
    }
    return a;
}

}

TEST_CASE("block-diagonal affinity splits into its blocks") {
    const std::vector<int> truth{0, 1, 0, 1, 1, 0, 2, 2, 1, 2};
    const auto a = blocks(truth);
    const auto r = spectral(a, 3, 5);
    CHECK(r.assignment == ClusterAssignment::from_labels(truth));
    CHECK(r.zero_norm_rows == 0);
    CHECK(r.embedding.rows() == truth.size());
    CHECK(r.embedding.cols() == 3);
}

TEST_CASE("fully connected affinity with k = 1") {
    SymmetricMatrix a(5);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i + 1; j < 5; ++j) {
            a.set(i, j, 1.0);
        }
    }
    const auto r = spectral(a, 1, 3);
    CHECK(r.assignment.k() == 1);
}

TEST_CASE("gaussian affinity properties") {
    SymmetricMatrix d(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            d.set(i, j, 2.0);
        }
    }
    const auto a = gaussian_affinity(d);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a(i, i) == 0.0);
        for (std::size_t j = 0; j < 4; ++j) {
            if (i != j) {
                CHECK(a(i, j) == a(0, 1));
            }
        }
    }
    CHECK(a(0, 1) == doctest::Approx(std::exp(-1.0)));

    Rng rng(6);
    const auto base = pairwise_distances(testing::random_matrix(rng, 9, 2));
    SymmetricMatrix scaled(9);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = i + 1; j < 9; ++j) {
            scaled.set(i, j, 4.0 * base(i, j));
        }
    }
    const auto a1 = gaussian_affinity(base);
    const auto a2 = gaussian_affinity(scaled);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 9; ++j) {
            CHECK(a1(i, j) == doctest::Approx(a2(i, j)).epsilon(1e-12));
        }
    }

    CHECK_THROWS_AS(gaussian_affinity(SymmetricMatrix(3)), DataError);
}

TEST_CASE("two blobs: within affinities exceed between affinities") {
    const Matrix x = Matrix::from_rows({{0, 0}, {0.5, 0}, {0, 0.4}, {6, 6}, {6.3, 6}, {6, 6.6}});
    for (auto scale : {AffinityScale::global_median(), AffinityScale::local_knn(2)}) {
        const auto a = gaussian_affinity(pairwise_distances(x), scale);
        double min_within = 1, max_between = 0;
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = i + 1; j < 6; ++j) {
                if ((i < 3) == (j < 3)) {
                    min_within = std::min(min_within, a(i, j));
                } else {
                    max_between = std::max(max_between, a(i, j));
                }
            }
        }
        CHECK(min_within > max_between);
    }
}

TEST_CASE("planted three blobs are recovered") {
    SyntheticSpec spec;
    spec.k = 3;
    spec.n_per_cluster = 30;
    spec.dims = 10;
    spec.separation = 10;
    spec.seed = 3;
    const auto data = generate_synthetic(spec);
    const auto a = gaussian_affinity(pairwise_distances(data.data.concatenated()));
    const auto r = spectral(a, 3, 11);
    CHECK(adjusted_rand_index(r.assignment, data.planted) == 1.0);
}

TEST_CASE("permuting the affinity permutes the assignment") {
    SyntheticSpec spec;
    spec.k = 3;
    spec.n_per_cluster = 10;
    spec.dims = 4;
    spec.separation = 6;
    const auto data = generate_synthetic(spec);
    const auto a = gaussian_affinity(pairwise_distances(data.data.concatenated()));
    std::vector<std::size_t> perm(a.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        perm[i] = (7 * i + 3) % perm.size();
    }
    const auto base = spectral(a, 3, 2).assignment;
    const auto moved = spectral(a.permuted(perm), 3, 2).assignment;
    std::vector<int> expected(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        expected[i] = base[perm[i]];
    }
    CHECK(moved == ClusterAssignment::from_labels(expected));
}
