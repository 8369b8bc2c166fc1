#include "cclust/algorithms.hpp"

#include <numeric>
#include <string>

#include "cclust/error.hpp"

namespace cclust {

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::kmeans:
        return "kmeans";
    case Algorithm::hierarchical:
        return "hier";
    case Algorithm::spectral:
        return "spectral";
    case Algorithm::snf:
        return "snf";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
    if (text == "kmeans") {
        return Algorithm::kmeans;
    }
    if (text == "hier" || text == "hierarchical") {
        return Algorithm::hierarchical;
    }
    if (text == "spectral") {
        return Algorithm::spectral;
    }
    if (text == "snf") {
        return Algorithm::snf;
    }
    throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

BaseClusterer::BaseClusterer(const ViewSet& data, AlgorithmConfig config) : data_(data), config_(std::move(config)) {
    data_.validate();
    switch (config_.algorithm) {
    case Algorithm::kmeans:
        concatenated_ = data_.concatenated();
        break;
    case Algorithm::hierarchical:
    case Algorithm::spectral:
        concatenated_ = data_.concatenated();
        joint_distances_ = pairwise_distances(concatenated_, config_.metric);
        break;
    case Algorithm::snf:
        for (const auto& v : data_.views) {
            view_distances_.push_back(pairwise_distances(v.data.values, config_.snf.metric));
        }
        break;
    }
}

ClusterAssignment BaseClusterer::run(std::span<const std::size_t> samples, int k, Seed seed,
                                     const std::vector<std::vector<std::size_t>>& features) const {
    const bool subset_features = !features.empty();
    if (subset_features && features.size() != data_.views.size()) {
        throw ConfigError("feature subsets must be given for every view");
    }

    auto joint_matrix = [&]() {
        if (!subset_features) {
            return concatenated_.select_rows(samples);
        }
        std::vector<Matrix> blocks;
        for (std::size_t v = 0; v < data_.views.size(); ++v) {
            blocks.push_back(data_.views[v].data.values.select_rows(samples).select_cols(features[v]));
        }
        return Matrix::hstack(blocks);
    };
    auto joint_distances = [&]() {
        if (!subset_features) {
            return joint_distances_->subset(samples);
        }
        return pairwise_distances(joint_matrix(), config_.metric);
    };

    switch (config_.algorithm) {
    case Algorithm::kmeans:
        return kmeans(joint_matrix(), k, seed, config_.kmeans).assignment;
    case Algorithm::hierarchical:
        return cut_dendrogram(hierarchical(joint_distances(), config_.linkage), static_cast<std::size_t>(k));
    case Algorithm::spectral:
        return spectral(gaussian_affinity(joint_distances(), config_.affinity), k, seed, config_.spectral_options())
            .assignment;
    case Algorithm::snf: {
        std::vector<SymmetricMatrix> dists;
        for (std::size_t v = 0; v < data_.views.size(); ++v) {
            if (subset_features) {
                dists.push_back(pairwise_distances(
                    data_.views[v].data.values.select_rows(samples).select_cols(features[v]), config_.snf.metric));
            } else {
                dists.push_back(view_distances_[v].subset(samples));
            }
        }
        return snf_cluster_distances(dists, k, seed, config_.snf, config_.spectral_options()).assignment;
    }
    }
    throw ConfigError("unsupported algorithm");
}

ClusterAssignment BaseClusterer::run_all(int k, Seed seed) const {
    std::vector<std::size_t> all(data_.sample_count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return run(all, k, seed);
}

SymmetricMatrix silhouette_distances(const ViewSet& data, const AlgorithmConfig& config, const SymmetricMatrix* fused) {
    if (config.algorithm == Algorithm::snf) {
        if (fused) {
            return snf_dissimilarity(*fused);
        }
        std::vector<SymmetricMatrix> dists;
        for (const auto& v : data.views) {
            dists.push_back(pairwise_distances(v.data.values, config.snf.metric));
        }
        const std::size_t neighbours = snf_neighbors(config.snf, data.sample_count());
        std::vector<SymmetricMatrix> affinities;
        for (const auto& d : dists) {
            affinities.push_back(snf_affinity(d, neighbours, config.snf.mu));
        }
        return snf_dissimilarity(snf_fuse(affinities, neighbours, config.snf.iterations, config.snf.mu).fused);
    }
    return pairwise_distances(data.concatenated(), config.metric);
}

}
