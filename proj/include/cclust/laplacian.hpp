#ifndef CCLUST_LAPLACIAN_HPP
#define CCLUST_LAPLACIAN_HPP

#include <vector>

#include "cclust/matrix.hpp"

namespace cclust {

/**
 * Symmetric normalized Laplacian L = D^{-1/2}(D − A)D^{-1/2}, where D is the
 * diagonal matrix of row sums of the affinity matrix `a`.
 *
 * `a` must be nonnegative and finite with strictly positive row sums. An
 * isolated sample (zero row sum) raises NumericalError naming its index.
 */
SymmetricMatrix normalized_laplacian(const SymmetricMatrix& a);

/// Row sums of `a` (the diagonal of D).
std::vector<double> degrees(const SymmetricMatrix& a);

}

#endif
