#include "cclust/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cclust/distance.hpp"
#include "cclust/error.hpp"

namespace cclust {

namespace {

double median_of(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}

SymmetricMatrix gaussian_affinity(const SymmetricMatrix& distances, AffinityScale scale) {
    check_distance_matrix(distances);
    const std::size_t n = distances.size();

    std::vector<double> positive;
    positive.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distances(i, j) > 0) {
                positive.push_back(distances(i, j));
            }
        }
    }
    if (positive.empty()) {
        throw DataError("gaussian_affinity: all pairwise distances are zero");
    }

    std::vector<double> sigma(n);
    if (scale.kind == AffinityScale::Kind::global_median) {
        std::fill(sigma.begin(), sigma.end(), median_of(std::move(positive)));
    } else {
        if (scale.neighbours < 1 || scale.neighbours >= n) {
            throw ConfigError("gaussian_affinity: local_knn neighbours must be in [1, N)");
        }
        std::vector<double> row(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t w = 0;
            double smallest_positive = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                const double d = distances(i, j);
                row[w++] = d;
                if (d > 0 && (smallest_positive == 0 || d < smallest_positive)) {
                    smallest_positive = d;
                }
            }
            const auto kth = row.begin() + static_cast<std::ptrdiff_t>(scale.neighbours - 1);
            std::nth_element(row.begin(), kth, row.end());
            sigma[i] = *kth > 0 ? *kth : smallest_positive;
            if (!(sigma[i] > 0)) {
                throw DataError("gaussian_affinity: sample " + std::to_string(i) + " coincides with every other sample");
            }
        }
    }

    SymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distances(i, j);
            a.set(i, j, std::exp(-(d * d) / (sigma[i] * sigma[j])));
        }
    }
    return a;
}

}
