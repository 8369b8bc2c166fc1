#ifndef CCLUST_SNF_HPP
#define CCLUST_SNF_HPP

#include <cstddef>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/distance.hpp"
#include "cclust/expression.hpp"
#include "cclust/matrix.hpp"
#include "cclust/random.hpp"
#include "cclust/spectral.hpp"

namespace cclust {

struct SnfOptions {
    /// 0 selects max(3, round(N / 10)), capped at N − 1.
    std::size_t k_neighbors = 0;
    double mu = 0.5;
    int iterations = 20;
    Metric metric = Metric::euclidean;
};

/// Resolved neighbourhood size for `n` samples.
std::size_t snf_neighbors(const SnfOptions& options, std::size_t n);

struct FusedNetwork {
    SymmetricMatrix fused;
    /// Each view's status matrix after the last iteration.
    std::vector<SymmetricMatrix> per_view;
    std::size_t k_neighbors = 0;
    double mu = 0.5;
    int iterations = 0;
};

/**
 * Scaled exponential similarity W_ij = exp(−d_ij² / (μ ε_ij²)), where
 * ε_ij = (m_i + m_j + d_ij) / 3 and m_i is the mean distance from i to its
 * `k_neighbors` nearest neighbours. Diagonal is 1. Throws NumericalError
 * naming the pair when ε_ij = 0.
 */
SymmetricMatrix snf_affinity(const SymmetricMatrix& distances, std::size_t k_neighbors, double mu);

/// Status-matrix normalization: off-diagonal row entries sum to 1/2, diagonal 1/2, then (P + Pᵀ)/2.
SymmetricMatrix snf_normalize(const SymmetricMatrix& w);

/// Sparse kNN kernel rows: `k_neighbors` largest entries of each row of `p`
/// (ties to the lower column) rescaled to sum to 1.
struct SparseRows {
    std::size_t n = 0;
    std::size_t width = 0;
    std::vector<std::size_t> cols;
    std::vector<double> weights;
};

SparseRows snf_knn_kernel(const SymmetricMatrix& p, std::size_t k_neighbors);

/// S · M · Sᵀ for a sparse S and dense symmetric M, as a dense matrix.
Matrix snf_diffuse(const SparseRows& s, const SymmetricMatrix& m);

/**
 * Cross-diffusion of per-view similarities. Each view's status matrix P is
 * updated from the mean of the other views' matrices,
 * P⁽ᵛ⁾ ← S⁽ᵛ⁾ · mean_{u≠v} P⁽ᵘ⁾ · S⁽ᵛ⁾ᵀ, then renormalized and symmetrized.
 * The fused network is the mean over views. A single view is returned as its
 * normalized P.
 */
FusedNetwork snf_fuse(const std::vector<SymmetricMatrix>& affinities, std::size_t k_neighbors, int iterations,
                      double mu = 0.5);

struct SnfClusterResult {
    ClusterAssignment assignment;
    FusedNetwork network;
};

/// Per-view distances → affinities → fusion → spectral clustering of the fused network.
SnfClusterResult snf_cluster(const ViewSet& views, int k, Seed seed, const SnfOptions& options = {},
                             const SpectralOptions& spectral_options = {});

/// Same pipeline from precomputed per-view distance matrices.
SnfClusterResult snf_cluster_distances(const std::vector<SymmetricMatrix>& distances, int k, Seed seed,
                                       const SnfOptions& options = {}, const SpectralOptions& spectral_options = {});

/// Dissimilarity 1 − fused / max(fused), the maximum taken off the diagonal; zero diagonal.
SymmetricMatrix snf_dissimilarity(const SymmetricMatrix& fused);

/// `m` with its diagonal set to zero.
SymmetricMatrix zero_diagonal(const SymmetricMatrix& m);

}

#endif
