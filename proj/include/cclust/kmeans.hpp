#ifndef CCLUST_KMEANS_HPP
#define CCLUST_KMEANS_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/matrix.hpp"
#include "cclust/random.hpp"

namespace cclust {

enum class KMeansInit { kmeanspp, random };

std::string_view to_string(KMeansInit init) noexcept;
KMeansInit parse_kmeans_init(std::string_view text);

struct KMeansOptions {
    KMeansInit init = KMeansInit::kmeanspp;
    int max_iter = 300;
    /// Independent Lloyd runs from derived seeds; the lowest objective wins.
    int restarts = 10;
    /// Convergence when no center moves more than this in max-norm.
    double tolerance = 1e-10;
};

struct KMeansResult {
    ClusterAssignment assignment;
    /// k × features; center j is the mean of the samples labelled j.
    Matrix centers;
    /// Within-cluster sum of squares after each recentering step.
    std::vector<double> objective_trace;
    int iterations = 0;
    bool converged = false;

    double objective() const noexcept { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

/// Number of distinct rows of `x` (exact comparison).
std::size_t count_distinct_rows(const Matrix& x);

/**
 * Lloyd's algorithm on the rows of `x`.
 *
 * Samples go to the nearest center (ties to the lowest center index) and
 * centers move to their members' mean until no center moves by more than
 * `tolerance`. A center left without members is reseeded at the sample
 * farthest from its own center. k-means++ seeding is the greedy variant with
 * 2 + ⌊ln k⌋ candidates per step.
 *
 * Throws ConfigError if k < 1 or k exceeds the number of distinct rows.
 */
KMeansResult kmeans(const Matrix& x, int k, Seed seed, const KMeansOptions& options = {});

/// Within-cluster sum of squared euclidean distances to the given centers.
double within_cluster_ss(const Matrix& x, std::span<const int> labels, const Matrix& centers);

}

#endif
