#include "cclust/snf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cclust/error.hpp"
#include "cclust/kernels.hpp"

namespace cclust {

std::size_t snf_neighbors(const SnfOptions& options, std::size_t n) {
    std::size_t k = options.k_neighbors;
    if (k == 0) {
        k = std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(static_cast<double>(n) / 10.0)));
        k = std::min(k, n > 1 ? n - 1 : 1);
    }
    return k;
}

SymmetricMatrix snf_affinity(const SymmetricMatrix& distances, std::size_t k_neighbors, double mu) {
    check_distance_matrix(distances);
    const std::size_t n = distances.size();
    if (k_neighbors < 1 || k_neighbors >= n) {
        throw ConfigError("snf_affinity: k_neighbors=" + std::to_string(k_neighbors) + " must be in [1, N)");
    }
    if (!(mu > 0)) {
        throw ConfigError("snf_affinity: mu must be positive");
    }

    std::vector<double> knn_mean(n);
    std::vector<double> row(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                row[w++] = distances(i, j);
            }
        }
        std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k_neighbors), row.end());
        knn_mean[i] = std::accumulate(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k_neighbors), 0.0) /
                      static_cast<double>(k_neighbors);
    }

    SymmetricMatrix w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distances(i, j);
            const double eps = (knn_mean[i] + knn_mean[j] + d) / 3.0;
            if (!(eps > 0)) {
                throw NumericalError("snf_affinity: zero local scale for samples " + std::to_string(i) + " and " +
                                     std::to_string(j));
            }
            w.set(i, j, std::exp(-(d * d) / (mu * eps * eps)));
        }
    }
    return w;
}

SymmetricMatrix snf_normalize(const SymmetricMatrix& w) {
    const std::size_t n = w.size();
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto src = w.row(i);
        double off = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                off += src[j];
            }
        }
        if (off == 0) {
            off = 1;
        }
        const double scale = 1.0 / (2.0 * off);
        auto dst = p.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            dst[j] = src[j] * scale;
        }
        dst[i] = 0.5;
    }
    return SymmetricMatrix::symmetrized(p);
}

SparseRows snf_knn_kernel(const SymmetricMatrix& p, std::size_t k_neighbors) {
    const std::size_t n = p.size();
    if (k_neighbors < 1 || k_neighbors > n) {
        throw ConfigError("snf_knn_kernel: k_neighbors out of range");
    }
    SparseRows s;
    s.n = n;
    s.width = k_neighbors;
    s.cols.resize(n * k_neighbors);
    s.weights.resize(n * k_neighbors);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        auto row = p.row(i);
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k_neighbors), idx.end(),
                          [&](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] > row[b] : a < b; });
        double total = 0;
        for (std::size_t t = 0; t < k_neighbors; ++t) {
            total += row[idx[t]];
        }
        for (std::size_t t = 0; t < k_neighbors; ++t) {
            s.cols[i * k_neighbors + t] = idx[t];
            s.weights[i * k_neighbors + t] = total > 0 ? row[idx[t]] / total : 1.0 / static_cast<double>(k_neighbors);
        }
    }
    return s;
}

Matrix snf_diffuse(const SparseRows& s, const SymmetricMatrix& m) {
    const std::size_t n = s.n;
    const std::size_t w = s.width;
    // T = S·M, row by row.
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto dst = t.row(i);
        for (std::size_t a = 0; a < w; ++a) {
            kernels::axpy(s.weights[i * w + a], m.row(s.cols[i * w + a]), dst);
        }
    }
    // (T·Sᵀ)(i, j) = Σ_b T(i, b) S(j, b)
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ti = t.row(i);
        auto oi = out.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0;
            for (std::size_t b = 0; b < w; ++b) {
                acc += ti[s.cols[j * w + b]] * s.weights[j * w + b];
            }
            oi[j] = acc;
        }
    }
    return out;
}

FusedNetwork snf_fuse(const std::vector<SymmetricMatrix>& affinities, std::size_t k_neighbors, int iterations,
                      double mu) {
    if (affinities.empty()) {
        throw DataError("snf_fuse: no affinity matrices");
    }
    const std::size_t n = affinities.front().size();
    for (const auto& a : affinities) {
        if (a.size() != n) {
            throw DataError("snf_fuse: affinity matrices have different dimensions");
        }
    }
    if (k_neighbors < 1 || k_neighbors >= n) {
        throw ConfigError("snf_fuse: k_neighbors=" + std::to_string(k_neighbors) + " must be in [1, N)");
    }
    if (iterations < 0) {
        throw ConfigError("snf_fuse: iterations must be nonnegative");
    }

    const std::size_t views = affinities.size();
    std::vector<SymmetricMatrix> status;
    std::vector<SparseRows> local;
    status.reserve(views);
    local.reserve(views);
    for (const auto& a : affinities) {
        status.push_back(snf_normalize(a));
        local.push_back(snf_knn_kernel(status.back(), k_neighbors));
    }

    if (views > 1) {
        for (int it = 0; it < iterations; ++it) {
            std::vector<SymmetricMatrix> next;
            next.reserve(views);
            for (std::size_t v = 0; v < views; ++v) {
                Matrix others(n, n);
                for (std::size_t u = 0; u < views; ++u) {
                    if (u != v) {
                        kernels::axpy(1.0, status[u].full().values(), others.values());
                    }
                }
                const double inv = 1.0 / static_cast<double>(views - 1);
                for (double& x : others.values()) {
                    x *= inv;
                }
                const Matrix diffused = snf_diffuse(local[v], SymmetricMatrix::from_matrix(std::move(others)));
                next.push_back(snf_normalize(SymmetricMatrix::symmetrized(diffused)));
            }
            status = std::move(next);
        }
    }

    Matrix total(n, n);
    for (const auto& p : status) {
        kernels::axpy(1.0, p.full().values(), total.values());
    }
    const double inv = 1.0 / static_cast<double>(views);
    for (double& x : total.values()) {
        x *= inv;
    }

    FusedNetwork out;
    out.fused = SymmetricMatrix::from_matrix(std::move(total));
    out.per_view = std::move(status);
    out.k_neighbors = k_neighbors;
    out.mu = mu;
    out.iterations = views > 1 ? iterations : 0;
    return out;
}

SymmetricMatrix zero_diagonal(const SymmetricMatrix& m) {
    SymmetricMatrix out = m;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.set(i, i, 0.0);
    }
    return out;
}

SnfClusterResult snf_cluster_distances(const std::vector<SymmetricMatrix>& distances, int k, Seed seed,
                                       const SnfOptions& options, const SpectralOptions& spectral_options) {
    if (distances.empty()) {
        throw DataError("snf_cluster: no views");
    }
    const std::size_t n = distances.front().size();
    const std::size_t neighbours = snf_neighbors(options, n);
    std::vector<SymmetricMatrix> affinities;
    affinities.reserve(distances.size());
    for (const auto& d : distances) {
        affinities.push_back(snf_affinity(d, neighbours, options.mu));
    }
    SnfClusterResult out;
    out.network = snf_fuse(affinities, neighbours, options.iterations, options.mu);
    out.assignment = spectral(zero_diagonal(out.network.fused), k, seed, spectral_options).assignment;
    return out;
}

SnfClusterResult snf_cluster(const ViewSet& views, int k, Seed seed, const SnfOptions& options,
                             const SpectralOptions& spectral_options) {
    std::vector<SymmetricMatrix> distances;
    distances.reserve(views.views.size());
    for (const auto& v : views.views) {
        distances.push_back(pairwise_distances(v.data.values, options.metric));
    }
    return snf_cluster_distances(distances, k, seed, options, spectral_options);
}

SymmetricMatrix snf_dissimilarity(const SymmetricMatrix& fused) {
    const std::size_t n = fused.size();
    double top = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            top = std::max(top, fused(i, j));
        }
    }
    if (!(top > 0)) {
        throw NumericalError("snf_dissimilarity: fused network has no positive off-diagonal entry");
    }
    SymmetricMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d.set(i, j, std::max(0.0, 1.0 - fused(i, j) / top));
        }
    }
    return d;
}

}
