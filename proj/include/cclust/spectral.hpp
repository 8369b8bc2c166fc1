#ifndef CCLUST_SPECTRAL_HPP
#define CCLUST_SPECTRAL_HPP

#include <cstddef>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/eigen.hpp"
#include "cclust/kmeans.hpp"
#include "cclust/matrix.hpp"
#include "cclust/random.hpp"

namespace cclust {

struct SpectralOptions {
    KMeansOptions kmeans;
    EigenOptions eigen;
};

struct SpectralResult {
    ClusterAssignment assignment;
    /// N × k row-normalized eigenvector embedding that k-means partitioned.
    Matrix embedding;
    /// The k smallest eigenvalues of the normalized Laplacian.
    std::vector<double> eigenvalues;
    /// Embedding rows left unnormalized because their norm was numerically zero.
    std::size_t zero_norm_rows = 0;
};

/**
 * Normalized spectral clustering: embed samples with the eigenvectors of the
 * k smallest eigenvalues of L = D^{-1/2}(D − A)D^{-1/2}, scale each embedding
 * row to unit length, and run k-means++ (same seed) on the rows.
 */
SpectralResult spectral(const SymmetricMatrix& affinity, int k, Seed seed, const SpectralOptions& options = {});

}

#endif
