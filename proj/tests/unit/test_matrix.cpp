#include <doctest.h>

#include <cmath>

#include "cclust/distance.hpp"
#include "cclust/error.hpp"
#include "cclust/laplacian.hpp"
#include "cclust/matrix.hpp"
#include "support.hpp"

using namespace cclust;

TEST_CASE("matrix row selection, transpose and hstack") {
    const Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.transpose() == Matrix::from_rows({{1, 4}, {2, 5}, {3, 6}}));
    const std::size_t rows[] = {1};
    CHECK(m.select_rows(rows) == Matrix::from_rows({{4, 5, 6}}));
    const std::size_t cols[] = {2, 0};
    CHECK(m.select_cols(cols) == Matrix::from_rows({{3, 1}, {6, 4}}));
    const Matrix blocks[] = {m, Matrix::from_rows({{7}, {8}})};
    CHECK(Matrix::hstack(blocks) == Matrix::from_rows({{1, 2, 3, 7}, {4, 5, 6, 8}}));
    CHECK(multiply(m, m.transpose()) == Matrix::from_rows({{14, 32}, {32, 77}}));
}

TEST_CASE("symmetric matrix keeps both halves equal") {
    SymmetricMatrix s(3);
    s.set(0, 2, 4.5);
    CHECK(s(2, 0) == 4.5);
    CHECK_THROWS_AS(SymmetricMatrix::from_matrix(Matrix::from_rows({{0, 1}, {2, 0}})), DataError);
    const std::size_t perm[] = {2, 0, 1};
    const auto p = s.permuted(perm);
    CHECK(p(0, 1) == 4.5);
    CHECK(p(1, 0) == 4.5);
    CHECK(p(2, 2) == 0.0);
}

TEST_CASE("pairwise distances of 1-D points") {
    const Matrix x = testing::points_1d({0, 3, 4});
    const auto e = pairwise_distances(x, Metric::euclidean);
    CHECK(e.full() == Matrix::from_rows({{0, 3, 4}, {3, 0, 1}, {4, 1, 0}}));
    const auto s = pairwise_distances(x, Metric::squared_euclidean);
    CHECK(s.full() == Matrix::from_rows({{0, 9, 16}, {9, 0, 1}, {16, 1, 0}}));
}

TEST_CASE("correlation distance") {
    const Matrix x = Matrix::from_rows({{1, 2, 3, 5}, {1, 2, 3, 5}, {5, 3, 2, 1}, {2, 4, 6, 10}});
    const auto d = pairwise_distances(x, Metric::correlation);
    CHECK(d(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d(0, 3) == doctest::Approx(0.0).epsilon(1e-15));
    // 1 − Pearson r, r computed directly
    const double mx = 11.0 / 4, my = 11.0 / 4;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t j = 0; j < 4; ++j) {
        sxy += (x(0, j) - mx) * (x(2, j) - my);
        sxx += (x(0, j) - mx) * (x(0, j) - mx);
        syy += (x(2, j) - my) * (x(2, j) - my);
    }
    CHECK(d(0, 2) == doctest::Approx(1 - sxy / std::sqrt(sxx * syy)).epsilon(1e-12));

    const Matrix constant = Matrix::from_rows({{1, 2, 3}, {7, 7, 7}});
    try {
        pairwise_distances(constant, Metric::correlation);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    }
}

TEST_CASE("distances are symmetric, zero-diagonal and satisfy the triangle inequality") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix x = testing::random_matrix(rng, 15, 2 + trial % 7);
        for (auto metric : {Metric::euclidean, Metric::squared_euclidean, Metric::correlation}) {
            const auto d = pairwise_distances(x, metric);
            for (std::size_t i = 0; i < d.size(); ++i) {
                CHECK(d(i, i) == 0.0);
                for (std::size_t j = 0; j < d.size(); ++j) {
                    CHECK(d(i, j) == d(j, i));
                    CHECK(d(i, j) >= 0.0);
                }
            }
        }
        const auto e = pairwise_distances(x);
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = 0; j < e.size(); ++j) {
                for (std::size_t k = 0; k < e.size(); ++k) {
                    CHECK(e(i, j) <= e(i, k) + e(k, j) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("normalized laplacian of a single edge") {
    SymmetricMatrix a(2);
    a.set(0, 1, 1.0);
    const auto l = normalized_laplacian(a);
    CHECK(l.full() == Matrix::from_rows({{1, -1}, {-1, 1}}));
}

TEST_CASE("laplacian annihilates the square-root degree vector") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = testing::random_affinity(rng, 2 + trial % 20, trial % 2 == 0);
        const auto l = normalized_laplacian(a);
        const auto deg = degrees(a);
        for (std::size_t i = 0; i < l.size(); ++i) {
            double s = 0;
            for (std::size_t j = 0; j < l.size(); ++j) {
                s += l(i, j) * std::sqrt(deg[j]);
            }
            CHECK(std::abs(s) <= 1e-10);
        }
    }
}

TEST_CASE("laplacian rejects isolated samples and negative weights") {
    SymmetricMatrix a(3);
    a.set(0, 1, 1.0);
    try {
        normalized_laplacian(a);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find('2') != std::string::npos);
    }
    a.set(1, 2, -0.5);
    a.set(0, 2, 1.0);
    CHECK_THROWS_AS(normalized_laplacian(a), DataError);
}
