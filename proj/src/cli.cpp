#include "cclust/cli.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cclust/error.hpp"
#include "cclust/pipeline.hpp"

namespace cclust {

namespace {

struct Flags {
    std::string config;
    std::optional<Seed> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> algorithm;
    std::optional<int> k;
    std::optional<std::string> k_range;
    std::optional<std::size_t> ensemble_size;
    std::optional<double> resample_fraction;
    std::optional<double> feature_fraction;
    std::optional<std::string> output_dir;
    std::vector<std::string> inputs;
    std::vector<std::string> orientations;
    std::vector<std::size_t> n_top;
    std::optional<std::string> metric;
    std::optional<std::string> linkage;
    std::optional<double> threshold;
    std::optional<std::string> silhouette;
    bool log_transform = false;
    bool standardize = false;

    std::optional<std::size_t> n_per_cluster;
    std::optional<std::size_t> dims;
    std::optional<double> separation;
    std::optional<std::size_t> views;
    std::optional<std::size_t> noise_views;
};

void add_common(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config, "INI configuration file");
    cmd.add_option("--seed", f.seed, "master seed");
    cmd.add_option("--output-dir", f.output_dir, "directory for artifacts");
    cmd.add_option("--threads", f.threads, "worker threads");
}

void add_data(CLI::App& cmd, Flags& f) {
    cmd.add_option("--input", f.inputs, "expression matrix (repeat per view)");
    cmd.add_option("--orientation", f.orientations, "features_as_rows or samples_as_rows (one, or one per input)");
    cmd.add_option("--n-top", f.n_top, "most variable features kept (one, or one per input; 0 keeps all)");
    cmd.add_flag("--log-transform", f.log_transform, "apply log2(x + 1) before selection");
    cmd.add_flag("--standardize", f.standardize, "scale features to unit variance after selection");
}

void add_algorithm(CLI::App& cmd, Flags& f) {
    cmd.add_option("--algorithm", f.algorithm, "kmeans, hier, spectral or snf");
    cmd.add_option("--metric", f.metric, "euclidean, squared_euclidean or correlation");
    cmd.add_option("--linkage", f.linkage, "single, complete or average");
}

void add_ensemble(CLI::App& cmd, Flags& f) {
    cmd.add_option("--ensemble-size", f.ensemble_size, "ensemble instances");
    cmd.add_option("--resample-fraction", f.resample_fraction, "fraction of samples per instance");
    cmd.add_option("--feature-fraction", f.feature_fraction, "fraction of features per instance");
}

template <typename T>
std::vector<T> per_input(const std::vector<T>& values, std::size_t inputs, const char* flag) {
    if (values.empty()) {
        return {};
    }
    if (values.size() != 1 && values.size() != inputs) {
        throw ConfigError(std::string(flag) + " needs one value or one per input");
    }
    std::vector<T> out(inputs);
    for (std::size_t i = 0; i < inputs; ++i) {
        out[i] = values[values.size() == 1 ? 0 : i];
    }
    return out;
}

PipelineConfig resolve(const Flags& f) {
    PipelineConfig c = f.config.empty() ? PipelineConfig{} : PipelineConfig::from_ini(f.config);
    if (!f.inputs.empty()) {
        c.inputs.clear();
        for (const auto& p : f.inputs) {
            c.inputs.push_back({p, Orientation::features_as_rows, 0});
        }
    }
    const auto orientations = per_input(f.orientations, c.inputs.size(), "--orientation");
    for (std::size_t i = 0; i < orientations.size(); ++i) {
        c.inputs[i].orientation = parse_orientation(orientations[i]);
    }
    const auto n_top = per_input(f.n_top, c.inputs.size(), "--n-top");
    for (std::size_t i = 0; i < n_top.size(); ++i) {
        c.inputs[i].n_top = n_top[i];
    }
    c.log_transform = c.log_transform || f.log_transform;
    c.standardize = c.standardize || f.standardize;

    if (f.seed) {
        c.ensemble.master_seed = *f.seed;
        c.synth.seed = *f.seed;
    }
    if (f.threads) {
        c.ensemble.threads = *f.threads;
    }
    if (f.algorithm) {
        c.algorithm.algorithm = parse_algorithm(*f.algorithm);
    }
    if (f.metric) {
        c.algorithm.metric = parse_metric(*f.metric);
        c.algorithm.snf.metric = c.algorithm.metric;
    }
    if (f.linkage) {
        c.algorithm.linkage = parse_linkage(*f.linkage);
    }
    if (f.k) {
        c.k = *f.k;
        c.synth.k = *f.k;
    }
    if (f.k_range) {
        c.k_range = parse_k_range(*f.k_range);
    }
    if (f.ensemble_size) {
        c.ensemble.size = *f.ensemble_size;
    }
    if (f.resample_fraction) {
        c.ensemble.resample_fraction = *f.resample_fraction;
    }
    if (f.feature_fraction) {
        c.ensemble.feature_fraction = *f.feature_fraction;
    }
    if (f.threshold) {
        c.threshold = *f.threshold;
    }
    if (f.silhouette) {
        if (*f.silhouette == "base") {
            c.consensus_silhouette = SilhouetteSource::base;
        } else if (*f.silhouette == "consensus") {
            c.consensus_silhouette = SilhouetteSource::consensus;
        } else {
            throw ConfigError("--silhouette expects base or consensus");
        }
    }
    if (f.output_dir) {
        c.output_dir = *f.output_dir;
    }
    if (f.n_per_cluster) {
        c.synth.n_per_cluster = *f.n_per_cluster;
    }
    if (f.dims) {
        c.synth.dims = *f.dims;
    }
    if (f.separation) {
        c.synth.separation = *f.separation;
    }
    if (f.views) {
        c.synth.views = *f.views;
    }
    if (f.noise_views) {
        c.synth.noise_views = *f.noise_views;
    }
    if (c.ensemble.threads == 0) {
        throw ConfigError("--threads must be at least 1");
    }
    return c;
}

}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Consensus clustering of multi-view expression data", "cclust"};
    app.require_subcommand(1);
    Flags f;
    std::string run_dir;

    auto* preprocess = app.add_subcommand("preprocess", "merge views and keep the most variable features");
    add_common(*preprocess, f);
    add_data(*preprocess, f);

    auto* cluster = app.add_subcommand("cluster", "run one base algorithm at a fixed k");
    add_common(*cluster, f);
    add_data(*cluster, f);
    add_algorithm(*cluster, f);
    cluster->add_option("--k", f.k, "number of clusters");

    auto* consensus = app.add_subcommand("consensus", "resampling consensus clustering at a fixed k");
    add_common(*consensus, f);
    add_data(*consensus, f);
    add_algorithm(*consensus, f);
    add_ensemble(*consensus, f);
    consensus->add_option("--k", f.k, "number of clusters");
    consensus->add_option("--silhouette", f.silhouette, "distances for the silhouette: base or consensus");

    auto* selectk = app.add_subcommand("select-k", "choose k from consensus CDFs");
    add_common(*selectk, f);
    add_data(*selectk, f);
    add_algorithm(*selectk, f);
    add_ensemble(*selectk, f);
    selectk->add_option("--k-range", f.k_range, "candidate k values, e.g. 2-6 or 2,3,4");
    selectk->add_option("--threshold", f.threshold, "delta-area threshold");

    auto* report = app.add_subcommand("report", "render figures and a summary from a run directory");
    report->add_option("run_dir", run_dir, "output directory of an earlier run")->required();

    auto* synth = app.add_subcommand("synth", "write a planted-partition dataset");
    add_common(*synth, f);
    synth->add_option("--k", f.k, "planted clusters");
    synth->add_option("--n-per-cluster", f.n_per_cluster, "samples per cluster");
    synth->add_option("--dims", f.dims, "features per view");
    synth->add_option("--separation", f.separation, "minimum centre distance in standard deviations");
    synth->add_option("--views", f.views, "number of views");
    synth->add_option("--noise-views", f.noise_views, "views without cluster signal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        std::string summary;
        if (report->parsed()) {
            summary = cmd_report(run_dir);
        } else {
            const PipelineConfig config = resolve(f);
            if (preprocess->parsed()) {
                summary = cmd_preprocess(config);
            } else if (cluster->parsed()) {
                summary = cmd_cluster(config);
            } else if (consensus->parsed()) {
                summary = cmd_consensus(config);
            } else if (selectk->parsed()) {
                summary = cmd_select_k(config);
            } else {
                summary = cmd_synth(config);
            }
        }
        out << summary;
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}
