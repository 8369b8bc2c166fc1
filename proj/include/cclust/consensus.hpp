#ifndef CCLUST_CONSENSUS_HPP
#define CCLUST_CONSENSUS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cclust/algorithms.hpp"
#include "cclust/assignment.hpp"
#include "cclust/expression.hpp"
#include "cclust/matrix.hpp"
#include "cclust/random.hpp"

namespace cclust {

struct EnsembleOptions {
    std::size_t size = 500;
    /// Fraction of samples drawn without replacement per instance.
    double resample_fraction = 0.8;
    /// Fraction of each view's features drawn per instance; 1 keeps all.
    double feature_fraction = 1.0;
    Seed master_seed = 0;
    unsigned threads = 1;
    /// Fresh seeds tried for an instance whose base run fails.
    int max_retries = 8;
};

/// One clustering of a subsample.
struct EnsembleInstance {
    /// Inclusion flag per cohort sample.
    std::vector<std::uint8_t> sample_mask;
    /// Labels for the included samples, in ascending sample order.
    ClusterAssignment labels;
    Seed seed = 0;
    double resample_fraction = 1.0;
    /// Per-view feature columns used; empty when every feature was used.
    std::vector<std::vector<std::size_t>> features;
};

/**
 * Build `options.size` clusterings, instance b drawing its subsample and
 * algorithm seed from derive_seed(master_seed, b). Instances run on
 * `options.threads` workers; the output is independent of the thread count.
 */
std::vector<EnsembleInstance> generate_ensemble(const AlgorithmConfig& base, const ViewSet& data, int k,
                                                const EnsembleOptions& options);

/// Same, reusing a prepared BaseClusterer.
std::vector<EnsembleInstance> generate_ensemble(const BaseClusterer& clusterer, std::size_t samples, int k,
                                                const EnsembleOptions& options);

/// Co-clustering frequencies over an ensemble.
struct ConsensusMatrix {
    std::size_t n = 0;
    /// Row-major N×N count of instances placing i and j together.
    std::vector<std::uint32_t> together;
    /// Row-major N×N count of instances including both i and j.
    std::vector<std::uint32_t> cosampled;
    /// together / cosampled, or 0 where the pair was never co-sampled.
    Matrix values;

    std::uint32_t together_count(std::size_t i, std::size_t j) const noexcept { return together[i * n + j]; }
    std::uint32_t cosample_count(std::size_t i, std::size_t j) const noexcept { return cosampled[i * n + j]; }
    bool never_cosampled(std::size_t i, std::size_t j) const noexcept { return cosampled[i * n + j] == 0; }
};

/// Throws DataError on an empty ensemble or inconsistent masks.
ConsensusMatrix consensus_matrix(std::span<const EnsembleInstance> ensemble);

struct CdfCurve {
    std::vector<double> grid;
    std::vector<double> cdf;
    /// (cdf(0.9) − cdf(0.1)) / 0.8
    double flatness = 0;
    /// Σ (x_g − x_{g−1}) · cdf(x_g)
    double area = 0;
};

/**
 * Empirical CDF of the off-diagonal consensus indices of co-sampled pairs on
 * `grid_points` uniform points over [0, 1]. Comparisons against grid points
 * are exact integer comparisons on the underlying counts.
 */
CdfCurve consensus_cdf(const ConsensusMatrix& m, std::size_t grid_points = 101);

struct KCandidate {
    int k = 0;
    ConsensusMatrix matrix;
    CdfCurve cdf;
    /// Relative CDF-area gain over the previous candidate; the first candidate's area itself.
    double delta_area = 0;
};

struct KSelectionReport {
    std::vector<KCandidate> candidates;
    int chosen_k = 0;
    double threshold = 0.02;
    std::vector<std::string> warnings;
};

/**
 * Consensus model selection over `k_range`: chosen_k is the largest k whose
 * delta-area exceeds `threshold` (the smallest k if none does).
 * Throws ConfigError on an empty range or k outside [2, N − 1].
 */
KSelectionReport select_k(const AlgorithmConfig& base, const ViewSet& data, std::vector<int> k_range,
                          const EnsembleOptions& options, double threshold = 0.02);

/// Spectral clustering of the consensus values with the diagonal zeroed.
ClusterAssignment consensus_partition(const ConsensusMatrix& m, int k, Seed seed,
                                      const SpectralOptions& options = {});

}

#endif
