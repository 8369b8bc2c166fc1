#ifndef CCLUST_EIGEN_HPP
#define CCLUST_EIGEN_HPP

#include <cstddef>

#include "cclust/matrix.hpp"

namespace cclust {

enum class SpectrumEnd { smallest, largest };

enum class EigenMethod {
    automatic, ///< Jacobi up to `jacobi_max_n`, Lanczos above.
    jacobi,
    lanczos,
};

struct EigenOptions {
    EigenMethod method = EigenMethod::automatic;
    std::size_t jacobi_max_n = 512;
    int max_sweeps = 100;
};

/**
 * `k` eigenpairs of `s` at the requested end of the spectrum.
 *
 * Eigenvalues are returned in ascending order with eigenvector `j` in column
 * `j`. Each eigenvector is unit length with its first nonzero component
 * positive. Results are deterministic for a fixed input.
 *
 * Throws ConfigError unless 1 <= k <= n, and ConvergenceError if the residual
 * bound ‖Sv − λv‖ <= 1e-8·max(1, ‖S‖_F) cannot be met.
 */
EigenPairs symmetric_eigen(const SymmetricMatrix& s, std::size_t k, SpectrumEnd which,
                           const EigenOptions& options = {});

/// Full decomposition by cyclic Jacobi sweeps.
EigenPairs jacobi_eigen(const SymmetricMatrix& s, int max_sweeps = 100);

/// Largest ‖Sv − λv‖₂ over the pairs in `pairs`.
double max_residual(const SymmetricMatrix& s, const EigenPairs& pairs);

/// Flip each column so its first component with magnitude above 1e-12 is positive.
void canonicalize_signs(Matrix& vectors);

}

#endif
