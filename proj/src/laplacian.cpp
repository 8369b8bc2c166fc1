#include "cclust/laplacian.hpp"

#include <cmath>
#include <string>

#include "cclust/error.hpp"

namespace cclust {

std::vector<double> degrees(const SymmetricMatrix& a) {
    const std::size_t n = a.size();
    std::vector<double> deg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (double v : a.row(i)) {
            s += v;
        }
        deg[i] = s;
    }
    return deg;
}

SymmetricMatrix normalized_laplacian(const SymmetricMatrix& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (double v : a.row(i)) {
            if (!std::isfinite(v) || v < 0) {
                throw DataError("affinity matrix row " + std::to_string(i) + " has a negative or non-finite entry");
            }
        }
    }

    const auto deg = degrees(a);
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(deg[i] > 0)) {
            throw NumericalError("sample " + std::to_string(i) + " is isolated in the affinity graph (zero row sum)");
        }
        inv_sqrt[i] = 1.0 / std::sqrt(deg[i]);
    }

    SymmetricMatrix lap(n);
    for (std::size_t i = 0; i < n; ++i) {
        lap.set(i, i, (deg[i] - a(i, i)) / deg[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            lap.set(i, j, -a(i, j) * inv_sqrt[i] * inv_sqrt[j]);
        }
    }
    return lap;
}

}
