#ifndef CCLUST_PIPELINE_HPP
#define CCLUST_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "cclust/algorithms.hpp"
#include "cclust/consensus.hpp"
#include "cclust/expression.hpp"
#include "cclust/synthetic.hpp"

namespace cclust {

struct ViewInput {
    std::filesystem::path path;
    Orientation orientation = Orientation::features_as_rows;
    /// Most variable features kept; 0 keeps all.
    std::size_t n_top = 0;
};

enum class SilhouetteSource { base, consensus };

struct PipelineConfig {
    std::vector<ViewInput> inputs;
    bool log_transform = false;
    bool standardize = false;

    AlgorithmConfig algorithm;
    int k = 0;
    std::vector<int> k_range;

    EnsembleOptions ensemble;
    double threshold = 0.02;
    /// Distances scoring the final consensus partition: the base algorithm's, or 1 − consensus.
    SilhouetteSource consensus_silhouette = SilhouetteSource::base;

    SyntheticSpec synth;
    std::filesystem::path output_dir = "cclust_out";

    /// Read an INI file; unknown sections or keys raise ConfigError.
    static PipelineConfig from_ini(const std::filesystem::path& path);

    /// Resolved configuration as INI text. The thread count is left out so
    /// that artifacts do not depend on it.
    std::string to_ini() const;
};

/// "2-6", "2..6" or "2,3,5".
std::vector<int> parse_k_range(const std::string& text);

/// Load, merge, log-transform, select and standardize the configured views.
ViewSet load_views(const PipelineConfig& config, std::vector<SelectionReport>* reports = nullptr);

/// Each command writes its artifacts plus config.ini and summary.txt into
/// config.output_dir and returns the summary text.
std::string cmd_preprocess(const PipelineConfig& config);
std::string cmd_cluster(const PipelineConfig& config);
std::string cmd_consensus(const PipelineConfig& config);
std::string cmd_select_k(const PipelineConfig& config);
std::string cmd_synth(const PipelineConfig& config);

/// Render SVG figures and report.txt from the CSV artifacts in `run_dir`.
/// Throws DataError listing any missing artifact.
std::string cmd_report(const std::filesystem::path& run_dir);

}

#endif
