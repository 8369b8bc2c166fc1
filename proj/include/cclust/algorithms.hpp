#ifndef CCLUST_ALGORITHMS_HPP
#define CCLUST_ALGORITHMS_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "cclust/affinity.hpp"
#include "cclust/assignment.hpp"
#include "cclust/distance.hpp"
#include "cclust/expression.hpp"
#include "cclust/hierarchical.hpp"
#include "cclust/kmeans.hpp"
#include "cclust/snf.hpp"
#include "cclust/spectral.hpp"

namespace cclust {

enum class Algorithm { kmeans, hierarchical, spectral, snf };

std::string_view to_string(Algorithm a) noexcept;

/// Accepts "kmeans", "hier", "hierarchical", "spectral", "snf".
Algorithm parse_algorithm(std::string_view text);

/// A base clustering algorithm together with all of its parameters.
struct AlgorithmConfig {
    Algorithm algorithm = Algorithm::kmeans;
    Metric metric = Metric::euclidean;
    KMeansOptions kmeans;
    Linkage linkage = Linkage::average;
    AffinityScale affinity;
    SnfOptions snf;
    EigenOptions eigen;

    SpectralOptions spectral_options() const { return {kmeans, eigen}; }
};

/**
 * Runs one base algorithm on sample/feature subsets of a fixed ViewSet.
 *
 * kmeans, hierarchical and spectral see the views' features side by side;
 * snf keeps the views apart. Full-feature distance matrices are computed once
 * and reused for every sample subset.
 */
class BaseClusterer {
public:
    BaseClusterer(const ViewSet& data, AlgorithmConfig config);

    const AlgorithmConfig& config() const noexcept { return config_; }

    /// Cluster the samples in `samples` (ascending indices into the cohort).
    /// `features`, when non-empty, holds one ascending column list per view.
    ClusterAssignment run(std::span<const std::size_t> samples, int k, Seed seed,
                          const std::vector<std::vector<std::size_t>>& features = {}) const;

    /// Cluster every sample with every feature.
    ClusterAssignment run_all(int k, Seed seed) const;

private:
    const ViewSet& data_;
    AlgorithmConfig config_;
    Matrix concatenated_;
    std::optional<SymmetricMatrix> joint_distances_;
    std::vector<SymmetricMatrix> view_distances_;
};

/**
 * Distances used to score a partition with silhouettes: the distances the
 * algorithm consumed for kmeans/hierarchical/spectral, and 1 − fused/max for
 * snf (which requires `fused`).
 */
SymmetricMatrix silhouette_distances(const ViewSet& data, const AlgorithmConfig& config,
                                     const SymmetricMatrix* fused = nullptr);

}

#endif
