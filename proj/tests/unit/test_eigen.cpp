#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "cclust/eigen.hpp"
#include "cclust/error.hpp"
#include "cclust/laplacian.hpp"
#include "support.hpp"

using namespace cclust;

namespace {

Eigen::MatrixXd to_eigen(const SymmetricMatrix& s) {
    Eigen::MatrixXd m(s.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s(i, j);
        }
    }
    return m;
}

SymmetricMatrix random_symmetric(Rng& rng, std::size_t n) {
    SymmetricMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            s.set(i, j, standard_normal(rng));
        }
    }
    return s;
}

void check_orthonormal(const Matrix& v, double tol) {
    for (std::size_t a = 0; a < v.cols(); ++a) {
        for (std::size_t b = a; b < v.cols(); ++b) {
            double d = 0;
            for (std::size_t i = 0; i < v.rows(); ++i) {
                d += v(i, a) * v(i, b);
            }
            CHECK(std::abs(d - (a == b ? 1.0 : 0.0)) <= tol);
        }
    }
}

void check_against_oracle(const SymmetricMatrix& s, std::size_t k, SpectrumEnd which, EigenMethod method) {
    EigenOptions opts;
    opts.method = method;
    const auto pairs = symmetric_eigen(s, k, which, opts);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(to_eigen(s));
    const auto& lambda = oracle.eigenvalues();
    const std::size_t n = s.size();
    const std::size_t first = which == SpectrumEnd::smallest ? 0 : n - k;
    const double scale = std::max(1.0, s.frobenius_norm());
    REQUIRE(pairs.eigenvalues.size() == k);
    for (std::size_t j = 0; j < k; ++j) {
        CHECK(std::abs(pairs.eigenvalues[j] - lambda(static_cast<Eigen::Index>(first + j))) <= 1e-8 * scale);
    }
    CHECK(std::is_sorted(pairs.eigenvalues.begin(), pairs.eigenvalues.end()));
    CHECK(max_residual(s, pairs) <= 1e-8 * scale);
    check_orthonormal(pairs.eigenvectors, 1e-8);
}

}

TEST_CASE("identity and diagonal spectra") {
    SymmetricMatrix id(3);
    for (std::size_t i = 0; i < 3; ++i) {
        id.set(i, i, 1.0);
    }
    const auto all = symmetric_eigen(id, 3, SpectrumEnd::smallest);
    CHECK(all.eigenvalues == std::vector<double>{1, 1, 1});

    SymmetricMatrix d(3);
    d.set(0, 0, 1);
    d.set(1, 1, 2);
    d.set(2, 2, 5);
    const auto top = symmetric_eigen(d, 1, SpectrumEnd::largest);
    CHECK(top.eigenvalues[0] == doctest::Approx(5.0));
    CHECK(std::abs(top.eigenvectors(2, 0)) == doctest::Approx(1.0));
    CHECK(top.eigenvectors(2, 0) > 0);
}

TEST_CASE("k outside [1, n] is rejected") {
    SymmetricMatrix s(4);
    CHECK_THROWS_AS(symmetric_eigen(s, 0, SpectrumEnd::smallest), ConfigError);
    CHECK_THROWS_AS(symmetric_eigen(s, 5, SpectrumEnd::smallest), ConfigError);
}

TEST_CASE("Jacobi matches a dense solver on random matrices") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 40);
        const auto s = random_symmetric(rng, n);
        const std::size_t k = 1 + uniform_index(rng, n);
        check_against_oracle(s, k, trial % 2 ? SpectrumEnd::smallest : SpectrumEnd::largest, EigenMethod::jacobi);
    }
}

TEST_CASE("Lanczos matches a dense solver") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + uniform_index(rng, 80);
        const auto s = random_symmetric(rng, n);
        const std::size_t k = 1 + uniform_index(rng, std::min<std::size_t>(n, 6));
        check_against_oracle(s, k, trial % 2 ? SpectrumEnd::smallest : SpectrumEnd::largest, EigenMethod::lanczos);
    }
}

TEST_CASE("Lanczos recovers repeated eigenvalues of disconnected graphs") {
    // Three disjoint cliques: eigenvalue 0 of the Laplacian has multiplicity 3.
    const std::size_t n = 30;
    SymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (i / 10 == j / 10) {
                a.set(i, j, 1.0);
            }
        }
    }
    const auto l = normalized_laplacian(a);
    for (auto method : {EigenMethod::jacobi, EigenMethod::lanczos}) {
        EigenOptions opts;
        opts.method = method;
        const auto pairs = symmetric_eigen(l, 4, SpectrumEnd::smallest, opts);
        CHECK(std::abs(pairs.eigenvalues[0]) <= 1e-10);
        CHECK(std::abs(pairs.eigenvalues[1]) <= 1e-10);
        CHECK(std::abs(pairs.eigenvalues[2]) <= 1e-10);
        CHECK(pairs.eigenvalues[3] > 0.5);
        check_orthonormal(pairs.eigenvectors, 1e-8);
    }
}

TEST_CASE("Laplacian spectrum lies in [0, 2]") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_affinity(rng, 2 + uniform_index(rng, 30), trial % 3 == 0);
        const auto l = normalized_laplacian(a);
        const auto pairs = jacobi_eigen(l);
        CHECK(pairs.eigenvalues.front() >= -1e-8);
        CHECK(pairs.eigenvalues.back() <= 2 + 1e-8);
        CHECK(std::abs(pairs.eigenvalues.front()) <= 1e-8);
    }
    SymmetricMatrix edge(2);
    edge.set(0, 1, 1.0);
    const auto e = jacobi_eigen(normalized_laplacian(edge));
    CHECK(e.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("eigenvectors follow the sign convention and are deterministic") {
    Rng rng(3);
    const auto s = random_symmetric(rng, 12);
    const auto p1 = symmetric_eigen(s, 5, SpectrumEnd::smallest);
    const auto p2 = symmetric_eigen(s, 5, SpectrumEnd::smallest);
    CHECK(p1.eigenvalues == p2.eigenvalues);
    CHECK(p1.eigenvectors == p2.eigenvectors);
    for (std::size_t c = 0; c < p1.eigenvectors.cols(); ++c) {
        for (std::size_t r = 0; r < p1.eigenvectors.rows(); ++r) {
            if (std::abs(p1.eigenvectors(r, c)) > 1e-12) {
                CHECK(p1.eigenvectors(r, c) > 0);
                break;
            }
        }
    }
}

TEST_CASE("eigenvalues are invariant under simultaneous permutation") {
    Rng rng(4);
    const auto s = random_symmetric(rng, 10);
    std::vector<std::size_t> perm{3, 7, 0, 9, 1, 2, 8, 4, 6, 5};
    const auto a = symmetric_eigen(s, 10, SpectrumEnd::smallest);
    const auto b = symmetric_eigen(s.permuted(perm), 10, SpectrumEnd::smallest);
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(a.eigenvalues[j] == doctest::Approx(b.eigenvalues[j]).epsilon(1e-10));
        // Same eigenvector up to sign, rows permuted.
        double dot = 0;
        for (std::size_t i = 0; i < 10; ++i) {
            dot += a.eigenvectors(perm[i], j) * b.eigenvectors(i, j);
        }
        CHECK(std::abs(std::abs(dot) - 1.0) <= 1e-8);
    }
}
