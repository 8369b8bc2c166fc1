#ifndef CCLUST_METRICS_HPP
#define CCLUST_METRICS_HPP

#include <cstddef>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/consensus.hpp"
#include "cclust/matrix.hpp"

namespace cclust {

struct SilhouetteReport {
    std::vector<double> widths;
    /// Widths of each cluster's members, descending (silhouette plot order).
    std::vector<std::vector<double>> cluster_widths;
    /// Sample indices matching cluster_widths.
    std::vector<std::vector<std::size_t>> cluster_order;
    double asw = 0;
    int k = 0;
};

/**
 * s(i) = (b(i) − a(i)) / max(a(i), b(i)); members of singleton clusters get 0.
 * Throws ConfigError for fewer than two clusters, DataError on a size mismatch.
 */
SilhouetteReport silhouette_widths(const SymmetricMatrix& d, const ClusterAssignment& assignment);

double asw(const SymmetricMatrix& d, const ClusterAssignment& assignment);

/// Throws DataError when the assignments cover different sample counts.
double adjusted_rand_index(const ClusterAssignment& a, const ClusterAssignment& b);

/**
 * Heatmap row order: clusters in label order, members by descending mean
 * consensus with their own cluster (ties by sample index).
 */
std::vector<std::size_t> reorder_for_heatmap(const ConsensusMatrix& m, const ClusterAssignment& assignment);

}

#endif
