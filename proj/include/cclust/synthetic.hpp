#ifndef CCLUST_SYNTHETIC_HPP
#define CCLUST_SYNTHETIC_HPP

#include <cstddef>
#include <filesystem>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/expression.hpp"
#include "cclust/random.hpp"

namespace cclust {

struct SyntheticSpec {
    int k = 4;
    std::size_t n_per_cluster = 50;
    std::size_t dims = 50;
    /// Minimum distance between cluster centres, in within-cluster standard deviations.
    double separation = 10.0;
    std::size_t views = 1;
    /// The last `noise_views` views carry no cluster signal.
    std::size_t noise_views = 0;
    Seed seed = 1;

    /// Throws ConfigError.
    void validate() const;
};

struct SyntheticData {
    ViewSet data;
    ClusterAssignment planted;
    /// Centres per view (k × dims); empty matrices for noise views.
    std::vector<Matrix> centers;
};

/**
 * Planted partition with isotropic unit-variance clusters. Centres sit on a
 * regular simplex with edge `separation` when k ≤ dims + 1, otherwise they are
 * drawn at random and rejected until every pair is at least `separation`
 * apart. Sample order is shuffled. Throws NumericalError if rejection fails.
 */
SyntheticData generate_synthetic(const SyntheticSpec& spec);

/**
 * Write view<i>.tsv (features as rows) and labels.csv into `dir`, returning
 * the view paths.
 */
std::vector<std::filesystem::path> write_synthetic(const std::filesystem::path& dir, const SyntheticData& data);

}

#endif
