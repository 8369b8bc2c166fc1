#ifndef CCLUST_AFFINITY_HPP
#define CCLUST_AFFINITY_HPP

#include <cstddef>

#include "cclust/matrix.hpp"

namespace cclust {

/// Bandwidth rule for the gaussian kernel.
struct AffinityScale {
    enum class Kind { global_median, local_knn };

    Kind kind = Kind::global_median;
    /// Neighbour rank used by `local_knn`.
    std::size_t neighbours = 7;

    static AffinityScale global_median() { return {}; }
    static AffinityScale local_knn(std::size_t k) { return {Kind::local_knn, k}; }
};

/**
 * Gaussian affinity a_ij = exp(−d_ij² / (σ_i σ_j)) with a zero diagonal.
 *
 * `global_median` uses one σ, the median of the positive off-diagonal
 * distances. `local_knn` uses σ_i = distance from i to its k-th nearest
 * neighbour, falling back to i's smallest positive distance when that is 0.
 * Throws DataError when every distance is zero.
 */
SymmetricMatrix gaussian_affinity(const SymmetricMatrix& distances, AffinityScale scale = {});

}

#endif
