#ifndef CCLUST_DISTANCE_HPP
#define CCLUST_DISTANCE_HPP

#include <string_view>

#include "cclust/matrix.hpp"

namespace cclust {

enum class Metric { euclidean, squared_euclidean, correlation };

std::string_view to_string(Metric m) noexcept;

/// Throws ConfigError on unknown names.
Metric parse_metric(std::string_view text);

/**
 * Pairwise distances between the rows of `x`.
 *
 * Differences are accumulated directly, never through the
 * ‖a‖² + ‖b‖² − 2a·b expansion, so outputs are never negative. The correlation
 * metric is 1 − Pearson r, evaluated as ‖zᵢ − zⱼ‖²/2 on centred unit rows.
 *
 * The result is exactly symmetric with a zero diagonal.
 * Throws DataError if `x` is empty or, for correlation, a row is constant.
 */
SymmetricMatrix pairwise_distances(const Matrix& x, Metric metric = Metric::euclidean);

/// Validate a distance matrix: finite, nonnegative, zero diagonal.
void check_distance_matrix(const SymmetricMatrix& d);

}

#endif
