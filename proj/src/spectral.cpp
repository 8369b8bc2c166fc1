#include "cclust/spectral.hpp"

#include <cmath>
#include <string>

#include "cclust/error.hpp"
#include "cclust/laplacian.hpp"

namespace cclust {

SpectralResult spectral(const SymmetricMatrix& affinity, int k, Seed seed, const SpectralOptions& options) {
    const std::size_t n = affinity.size();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw ConfigError("spectral: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    const auto lap = normalized_laplacian(affinity);
    auto pairs = symmetric_eigen(lap, static_cast<std::size_t>(k), SpectrumEnd::smallest, options.eigen);

    SpectralResult result;
    result.eigenvalues = std::move(pairs.eigenvalues);
    result.embedding = std::move(pairs.eigenvectors);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = result.embedding.row(i);
        double ss = 0;
        for (double v : row) {
            ss += v * v;
        }
        const double norm = std::sqrt(ss);
        if (norm < 1e-12) {
            ++result.zero_norm_rows;
            continue;
        }
        for (double& v : row) {
            v /= norm;
        }
    }

    if (count_distinct_rows(result.embedding) < static_cast<std::size_t>(k)) {
        throw NumericalError("spectral: embedding has fewer than k=" + std::to_string(k) + " distinct rows");
    }
    KMeansOptions km = options.kmeans;
    km.init = KMeansInit::kmeanspp;
    result.assignment = kmeans(result.embedding, k, seed, km).assignment;
    return result;
}

}
