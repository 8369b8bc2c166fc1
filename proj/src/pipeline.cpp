#include "cclust/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cclust/csv.hpp"
#include "cclust/error.hpp"
#include "cclust/metrics.hpp"
#include "cclust/svg.hpp"

namespace cclust {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
    T v{};
    const auto t = trim(text);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    return v;
}

double parse_real(const std::string& key, const std::string& text) {
    double v;
    if (!csv::parse_number(trim(text), v)) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const auto t = trim(text);
    if (t == "true" || t == "1" || t == "yes") {
        return true;
    }
    if (t == "false" || t == "0" || t == "no") {
        return false;
    }
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

EigenMethod parse_eigen_method(const std::string& text) {
    if (text == "auto") {
        return EigenMethod::automatic;
    }
    if (text == "jacobi") {
        return EigenMethod::jacobi;
    }
    if (text == "lanczos") {
        return EigenMethod::lanczos;
    }
    throw ConfigError("unknown eigen method '" + text + "'");
}

const char* to_string(EigenMethod m) {
    switch (m) {
    case EigenMethod::jacobi:
        return "jacobi";
    case EigenMethod::lanczos:
        return "lanczos";
    default:
        return "auto";
    }
}

const char* to_string(AffinityScale::Kind k) {
    return k == AffinityScale::Kind::local_knn ? "local_knn" : "global_median";
}

const char* to_string(SilhouetteSource s) {
    return s == SilhouetteSource::consensus ? "consensus" : "base";
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + std::to_string(v[i]);
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw DataError("failed writing " + path.string());
    }
}

void prepare_output(const PipelineConfig& config) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir)) {
        throw DataError("cannot create output directory " + config.output_dir.string());
    }
    write_text(config.output_dir / "config.ini", config.to_ini());
}

void require_inputs(const PipelineConfig& config) {
    if (config.inputs.empty()) {
        throw ConfigError("no input views given (use --input or [data] inputs)");
    }
}

void require_k(int k, std::size_t n, int low) {
    if (k < low || static_cast<std::size_t>(k) > n) {
        throw ConfigError("k=" + std::to_string(k) + " outside [" + std::to_string(low) + ", " + std::to_string(n) +
                          "]");
    }
}

void write_silhouette(const fs::path& dir, const std::vector<std::string>& ids, const ClusterAssignment& a,
                      const SilhouetteReport& s) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        rows.push_back({ids[i], std::to_string(a[i]), csv::format_number(s.widths[i])});
    }
    csv::write_table(dir / "silhouette.csv", {"sample_id", "cluster", "width"}, rows);

    rows.clear();
    for (std::size_t c = 0; c < s.cluster_order.size(); ++c) {
        for (std::size_t r = 0; r < s.cluster_order[c].size(); ++r) {
            const auto i = s.cluster_order[c][r];
            rows.push_back({std::to_string(c), std::to_string(r + 1), ids[i], csv::format_number(s.widths[i])});
        }
    }
    csv::write_table(dir / "silhouette_plot.csv", {"cluster", "rank", "sample_id", "width"}, rows);
}

void write_cdf(const fs::path& path, const CdfCurve& c) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t g = 0; g < c.grid.size(); ++g) {
        rows.push_back({csv::format_number(c.grid[g]), csv::format_number(c.cdf[g])});
    }
    csv::write_table(path, {"index", "cdf"}, rows);
}

std::vector<std::string> permuted_ids(const std::vector<std::string>& ids, const std::vector<std::size_t>& order) {
    std::vector<std::string> out;
    for (auto i : order) {
        out.push_back(ids[i]);
    }
    return out;
}

Matrix permuted_matrix(const Matrix& m, const std::vector<std::size_t>& order) {
    Matrix out(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = 0; j < order.size(); ++j) {
            out(i, j) = m(order[i], order[j]);
        }
    }
    return out;
}

std::size_t never_cosampled_pairs(const ConsensusMatrix& m) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = i + 1; j < m.n; ++j) {
            count += m.never_cosampled(i, j) ? 1 : 0;
        }
    }
    return count;
}

std::string sizes_line(const ClusterAssignment& a) {
    std::string out;
    const auto sizes = a.cluster_sizes();
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        out += (c ? "," : "") + std::to_string(sizes[c]);
    }
    return out;
}

std::string summary_header(const char* command, const PipelineConfig& config, std::size_t n) {
    std::ostringstream os;
    os << "command = " << command << '\n';
    os << "algorithm = " << to_string(config.algorithm.algorithm) << '\n';
    os << "samples = " << n << '\n';
    os << "seed = " << config.ensemble.master_seed << '\n';
    return os.str();
}

std::string silhouette_lines(const SilhouetteReport& s) {
    std::ostringstream os;
    os << "asw = " << csv::format_number(s.asw) << '\n';
    return os.str();
}

}

std::vector<int> parse_k_range(const std::string& text) {
    const auto t = trim(text);
    std::vector<int> out;
    auto range = [&](std::size_t pos, std::size_t len) {
        const int lo = parse_integer<int>("k_range", t.substr(0, pos));
        const int hi = parse_integer<int>("k_range", t.substr(pos + len));
        if (hi < lo) {
            throw ConfigError("k_range: empty range '" + text + "'");
        }
        for (int k = lo; k <= hi; ++k) {
            out.push_back(k);
        }
    };
    if (const auto dots = t.find(".."); dots != std::string::npos) {
        range(dots, 2);
    } else if (const auto dash = t.find('-'); dash != std::string::npos && dash > 0) {
        range(dash, 1);
    } else {
        for (const auto& item : split_list(t)) {
            out.push_back(parse_integer<int>("k_range", item));
        }
    }
    if (out.empty()) {
        throw ConfigError("k_range is empty");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PipelineConfig PipelineConfig::from_ini(const fs::path& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("cannot read config " + path.string() +
                          (e.line() > 0 ? " line " + std::to_string(e.line()) : std::string()) + ": " + e.message());
    }

    PipelineConfig c;
    std::vector<std::string> orientations;
    std::vector<std::string> n_tops;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ConfigError("config key '" + section + "' must be inside a section");
        }
        for (const auto& [key, node] : body) {
            const std::string name = section + "." + key;
            const std::string v = trim(node.data());
            if (section == "data") {
                if (key == "inputs") {
                    for (const auto& p : split_list(v)) {
                        c.inputs.push_back({p, Orientation::features_as_rows, 0});
                    }
                } else if (key == "orientation") {
                    orientations = split_list(v);
                } else if (key == "n_top") {
                    n_tops = split_list(v);
                } else if (key == "log_transform") {
                    c.log_transform = parse_bool(name, v);
                } else if (key == "standardize") {
                    c.standardize = parse_bool(name, v);
                } else {
                    throw ConfigError("unknown config key '" + name + "'");
                }
            } else if (section == "algorithm") {
                auto& a = c.algorithm;
                if (key == "name") {
                    a.algorithm = parse_algorithm(v);
                } else if (key == "metric") {
                    a.metric = parse_metric(v);
                } else if (key == "linkage") {
                    a.linkage = parse_linkage(v);
                } else if (key == "kmeans_init") {
                    a.kmeans.init = parse_kmeans_init(v);
                } else if (key == "kmeans_restarts") {
                    a.kmeans.restarts = parse_integer<int>(name, v);
                } else if (key == "kmeans_max_iter") {
                    a.kmeans.max_iter = parse_integer<int>(name, v);
                } else if (key == "affinity") {
                    if (v == "global_median") {
                        a.affinity.kind = AffinityScale::Kind::global_median;
                    } else if (v == "local_knn") {
                        a.affinity.kind = AffinityScale::Kind::local_knn;
                    } else {
                        throw ConfigError(name + ": unknown affinity scale '" + v + "'");
                    }
                } else if (key == "affinity_neighbours") {
                    a.affinity.neighbours = parse_integer<std::size_t>(name, v);
                } else if (key == "snf_k") {
                    a.snf.k_neighbors = parse_integer<std::size_t>(name, v);
                } else if (key == "snf_mu") {
                    a.snf.mu = parse_real(name, v);
                } else if (key == "snf_iterations") {
                    a.snf.iterations = parse_integer<int>(name, v);
                } else if (key == "snf_metric") {
                    a.snf.metric = parse_metric(v);
                } else if (key == "eigen_method") {
                    a.eigen.method = parse_eigen_method(v);
                } else {
                    throw ConfigError("unknown config key '" + name + "'");
                }
            } else if (section == "consensus") {
                if (key == "ensemble_size") {
                    c.ensemble.size = parse_integer<std::size_t>(name, v);
                } else if (key == "resample_fraction") {
                    c.ensemble.resample_fraction = parse_real(name, v);
                } else if (key == "feature_fraction") {
                    c.ensemble.feature_fraction = parse_real(name, v);
                } else if (key == "max_retries") {
                    c.ensemble.max_retries = parse_integer<int>(name, v);
                } else if (key == "threshold") {
                    c.threshold = parse_real(name, v);
                } else if (key == "silhouette") {
                    if (v == "base") {
                        c.consensus_silhouette = SilhouetteSource::base;
                    } else if (v == "consensus") {
                        c.consensus_silhouette = SilhouetteSource::consensus;
                    } else {
                        throw ConfigError(name + ": expected base or consensus, got '" + v + "'");
                    }
                } else {
                    throw ConfigError("unknown config key '" + name + "'");
                }
            } else if (section == "synth") {
                auto& s = c.synth;
                if (key == "k") {
                    s.k = parse_integer<int>(name, v);
                } else if (key == "n_per_cluster") {
                    s.n_per_cluster = parse_integer<std::size_t>(name, v);
                } else if (key == "dims") {
                    s.dims = parse_integer<std::size_t>(name, v);
                } else if (key == "separation") {
                    s.separation = parse_real(name, v);
                } else if (key == "views") {
                    s.views = parse_integer<std::size_t>(name, v);
                } else if (key == "noise_views") {
                    s.noise_views = parse_integer<std::size_t>(name, v);
                } else {
                    throw ConfigError("unknown config key '" + name + "'");
                }
            } else if (section == "run") {
                if (key == "k") {
                    c.k = parse_integer<int>(name, v);
                } else if (key == "k_range") {
                    if (!v.empty()) {
                        c.k_range = parse_k_range(v);
                    }
                } else if (key == "seed") {
                    c.ensemble.master_seed = parse_integer<Seed>(name, v);
                    c.synth.seed = c.ensemble.master_seed;
                } else if (key == "threads") {
                    c.ensemble.threads = parse_integer<unsigned>(name, v);
                } else if (key == "output_dir") {
                    c.output_dir = v;
                } else {
                    throw ConfigError("unknown config key '" + name + "'");
                }
            } else {
                throw ConfigError("unknown config section [" + section + "]");
            }
        }
    }

    auto per_view = [&](const std::vector<std::string>& values, const char* key, auto apply) {
        if (values.empty()) {
            return;
        }
        if (values.size() != 1 && values.size() != c.inputs.size()) {
            throw ConfigError(std::string("data.") + key + " needs one value or one per input");
        }
        for (std::size_t i = 0; i < c.inputs.size(); ++i) {
            apply(c.inputs[i], values[values.size() == 1 ? 0 : i]);
        }
    };
    per_view(orientations, "orientation",
             [](ViewInput& in, const std::string& v) { in.orientation = parse_orientation(v); });
    per_view(n_tops, "n_top",
             [](ViewInput& in, const std::string& v) { in.n_top = parse_integer<std::size_t>("data.n_top", v); });
    return c;
}

std::string PipelineConfig::to_ini() const {
    std::ostringstream os;
    auto list = [&](auto field) {
        std::string out;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            out += (i ? ", " : "") + field(inputs[i]);
        }
        return out;
    };
    os << "[data]\n";
    os << "inputs = " << list([](const ViewInput& v) { return v.path.string(); }) << '\n';
    os << "orientation = " << list([](const ViewInput& v) { return std::string(to_string(v.orientation)); }) << '\n';
    os << "n_top = " << list([](const ViewInput& v) { return std::to_string(v.n_top); }) << '\n';
    os << "log_transform = " << (log_transform ? "true" : "false") << '\n';
    os << "standardize = " << (standardize ? "true" : "false") << '\n';

    const auto& a = algorithm;
    os << "\n[algorithm]\n";
    os << "name = " << to_string(a.algorithm) << '\n';
    os << "metric = " << to_string(a.metric) << '\n';
    os << "linkage = " << to_string(a.linkage) << '\n';
    os << "kmeans_init = " << to_string(a.kmeans.init) << '\n';
    os << "kmeans_restarts = " << a.kmeans.restarts << '\n';
    os << "kmeans_max_iter = " << a.kmeans.max_iter << '\n';
    os << "affinity = " << to_string(a.affinity.kind) << '\n';
    os << "affinity_neighbours = " << a.affinity.neighbours << '\n';
    os << "snf_k = " << a.snf.k_neighbors << '\n';
    os << "snf_mu = " << csv::format_number(a.snf.mu) << '\n';
    os << "snf_iterations = " << a.snf.iterations << '\n';
    os << "snf_metric = " << to_string(a.snf.metric) << '\n';
    os << "eigen_method = " << to_string(a.eigen.method) << '\n';

    os << "\n[consensus]\n";
    os << "ensemble_size = " << ensemble.size << '\n';
    os << "resample_fraction = " << csv::format_number(ensemble.resample_fraction) << '\n';
    os << "feature_fraction = " << csv::format_number(ensemble.feature_fraction) << '\n';
    os << "max_retries = " << ensemble.max_retries << '\n';
    os << "threshold = " << csv::format_number(threshold) << '\n';
    os << "silhouette = " << to_string(consensus_silhouette) << '\n';

    os << "\n[synth]\n";
    os << "k = " << synth.k << '\n';
    os << "n_per_cluster = " << synth.n_per_cluster << '\n';
    os << "dims = " << synth.dims << '\n';
    os << "separation = " << csv::format_number(synth.separation) << '\n';
    os << "views = " << synth.views << '\n';
    os << "noise_views = " << synth.noise_views << '\n';

    os << "\n[run]\n";
    os << "k = " << k << '\n';
    os << "k_range = " << join_ints(k_range) << '\n';
    os << "seed = " << ensemble.master_seed << '\n';
    os << "output_dir = " << output_dir.string() << '\n';
    return os.str();
}

ViewSet load_views(const PipelineConfig& config, std::vector<SelectionReport>* reports) {
    require_inputs(config);
    std::vector<View> views;
    std::set<std::string> names;
    for (std::size_t i = 0; i < config.inputs.size(); ++i) {
        const auto& in = config.inputs[i];
        std::string name = in.path.stem().string();
        if (name.empty() || !names.insert(name).second) {
            name = "view" + std::to_string(i + 1);
            names.insert(name);
        }
        views.push_back({name, load_expression_matrix(in.path, in.orientation)});
    }
    ViewSet merged = merge_views(std::move(views));
    for (std::size_t i = 0; i < merged.views.size(); ++i) {
        auto& x = merged.views[i].data;
        if (config.log_transform) {
            log_transform(x);
        }
        const std::size_t n_top = config.inputs[i].n_top;
        if (n_top > 0) {
            auto selected = select_by_variance(x, n_top);
            x = std::move(selected.matrix);
            if (reports) {
                reports->push_back(std::move(selected.report));
            }
        } else if (reports) {
            auto selected = select_by_variance(x, x.features());
            reports->push_back(std::move(selected.report));
        }
        if (config.standardize) {
            standardize_features(x);
        }
    }
    merged.validate();
    return merged;
}

std::string cmd_preprocess(const PipelineConfig& config) {
    std::vector<SelectionReport> reports;
    const ViewSet data = load_views(config, &reports);
    prepare_output(config);

    std::ostringstream os;
    os << "command = preprocess\n";
    os << "samples = " << data.sample_count() << '\n';
    for (std::size_t v = 0; v < data.views.size(); ++v) {
        const auto& view = data.views[v];
        write_expression_matrix(config.output_dir / (view.name + ".tsv"), view.data, Orientation::features_as_rows);
        write_selection_report(config.output_dir / ("selection_" + view.name + ".csv"), reports[v]);
        os << "view " << view.name << ": features = " << view.data.features()
           << ", variance_explained = " << csv::format_number(reports[v].variance_explained) << '\n';
    }
    write_text(config.output_dir / "summary.txt", os.str());
    return os.str();
}

std::string cmd_cluster(const PipelineConfig& config) {
    const ViewSet data = load_views(config);
    const std::size_t n = data.sample_count();
    require_k(config.k, n, 2);
    prepare_output(config);

    const auto& a = config.algorithm;
    const auto& ids = data.sample_ids();
    const fs::path& dir = config.output_dir;
    const Seed seed = config.ensemble.master_seed;
    ClusterAssignment assignment;
    SymmetricMatrix distances;
    std::ostringstream extra;

    switch (a.algorithm) {
    case Algorithm::kmeans: {
        const Matrix x = data.concatenated();
        const auto r = kmeans(x, config.k, seed, a.kmeans);
        assignment = r.assignment;
        distances = pairwise_distances(x, a.metric);

        std::vector<std::string> header{"cluster"};
        for (const auto& v : data.views) {
            header.insert(header.end(), v.data.feature_ids.begin(), v.data.feature_ids.end());
        }
        std::vector<std::vector<std::string>> rows;
        for (std::size_t c = 0; c < r.centers.rows(); ++c) {
            std::vector<std::string> row{std::to_string(c)};
            for (double v : r.centers.row(c)) {
                row.push_back(csv::format_number(v));
            }
            rows.push_back(std::move(row));
        }
        csv::write_table(dir / "centers.csv", header, rows);
        rows.clear();
        for (std::size_t i = 0; i < r.objective_trace.size(); ++i) {
            rows.push_back({std::to_string(i + 1), csv::format_number(r.objective_trace[i])});
        }
        csv::write_table(dir / "objective_trace.csv", {"iteration", "objective"}, rows);
        extra << "objective = " << csv::format_number(r.objective()) << '\n';
        extra << "converged = " << (r.converged ? "true" : "false") << '\n';
        break;
    }
    case Algorithm::hierarchical: {
        distances = pairwise_distances(data.concatenated(), a.metric);
        const auto tree = hierarchical(distances, a.linkage);
        assignment = cut_dendrogram(tree, static_cast<std::size_t>(config.k));
        std::vector<std::vector<std::string>> rows;
        for (std::size_t m = 0; m < tree.merges.size(); ++m) {
            const auto& mg = tree.merges[m];
            rows.push_back({std::to_string(m + 1), std::to_string(mg.left), std::to_string(mg.right),
                            csv::format_number(mg.height), std::to_string(mg.size)});
        }
        csv::write_table(dir / "dendrogram.csv", {"step", "left", "right", "height", "size"}, rows);
        extra << "linkage = " << to_string(a.linkage) << '\n';
        break;
    }
    case Algorithm::spectral: {
        distances = pairwise_distances(data.concatenated(), a.metric);
        const auto r = spectral(gaussian_affinity(distances, a.affinity), config.k, seed, a.spectral_options());
        assignment = r.assignment;
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
            rows.push_back({std::to_string(i + 1), csv::format_number(r.eigenvalues[i])});
        }
        csv::write_table(dir / "eigenvalues.csv", {"index", "eigenvalue"}, rows);
        break;
    }
    case Algorithm::snf: {
        const auto r = snf_cluster(data, config.k, seed, a.snf, a.spectral_options());
        assignment = r.assignment;
        distances = snf_dissimilarity(r.network.fused);
        csv::write_square(dir / "fused.csv", ids, r.network.fused.full());
        extra << "snf_k = " << r.network.k_neighbors << '\n';
        break;
    }
    }

    csv::write_labels(dir / "assignment.csv", ids, assignment);
    const auto sil = silhouette_widths(distances, assignment);
    write_silhouette(dir, ids, assignment, sil);

    std::ostringstream os;
    os << summary_header("cluster", config, n);
    os << "k = " << config.k << '\n';
    os << "cluster_sizes = " << sizes_line(assignment) << '\n';
    os << extra.str();
    os << silhouette_lines(sil);
    write_text(dir / "summary.txt", os.str());
    return os.str();
}

std::string cmd_consensus(const PipelineConfig& config) {
    const ViewSet data = load_views(config);
    const std::size_t n = data.sample_count();
    require_k(config.k, n - 1, 2);
    prepare_output(config);

    const auto& ids = data.sample_ids();
    const fs::path& dir = config.output_dir;
    const auto ensemble = generate_ensemble(config.algorithm, data, config.k, config.ensemble);
    const auto m = consensus_matrix(ensemble);
    const auto cdf = consensus_cdf(m);
    const auto assignment =
        consensus_partition(m, config.k, config.ensemble.master_seed, config.algorithm.spectral_options());
    const auto order = reorder_for_heatmap(m, assignment);

    csv::write_square(dir / "consensus.csv", ids, m.values);
    csv::write_square(dir / "consensus_ordered.csv", permuted_ids(ids, order), permuted_matrix(m.values, order));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t p = 0; p < order.size(); ++p) {
        rows.push_back({std::to_string(p + 1), ids[order[p]], std::to_string(assignment[order[p]])});
    }
    csv::write_table(dir / "heatmap_order.csv", {"position", "sample_id", "cluster"}, rows);
    write_cdf(dir / "cdf.csv", cdf);
    csv::write_labels(dir / "assignment.csv", ids, assignment);

    SymmetricMatrix distances;
    if (config.consensus_silhouette == SilhouetteSource::consensus) {
        distances = SymmetricMatrix(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                distances.set(i, j, 1.0 - m.values(i, j));
            }
        }
    } else {
        distances = silhouette_distances(data, config.algorithm);
    }
    const auto sil = silhouette_widths(distances, assignment);
    write_silhouette(dir, ids, assignment, sil);

    std::ostringstream os;
    os << summary_header("consensus", config, n);
    os << "k = " << config.k << '\n';
    os << "ensemble_size = " << config.ensemble.size << '\n';
    os << "resample_fraction = " << csv::format_number(config.ensemble.resample_fraction) << '\n';
    os << "never_cosampled_pairs = " << never_cosampled_pairs(m) << '\n';
    os << "cluster_sizes = " << sizes_line(assignment) << '\n';
    os << "cdf_area = " << csv::format_number(cdf.area) << '\n';
    os << "cdf_flatness = " << csv::format_number(cdf.flatness) << '\n';
    os << "silhouette_distances = " << to_string(config.consensus_silhouette) << '\n';
    os << silhouette_lines(sil);
    write_text(dir / "summary.txt", os.str());
    return os.str();
}

std::string cmd_select_k(const PipelineConfig& config) {
    const ViewSet data = load_views(config);
    if (config.k_range.empty()) {
        throw ConfigError("select-k needs a k range (--k-range or [run] k_range)");
    }
    const auto& ids = data.sample_ids();
    const fs::path& dir = config.output_dir;
    const auto report = select_k(config.algorithm, data, config.k_range, config.ensemble, config.threshold);
    prepare_output(config);

    std::vector<std::vector<std::string>> table;
    std::ostringstream text;
    text << "k    area        delta_area  flatness\n";
    for (const auto& c : report.candidates) {
        const std::string suffix = "_k" + std::to_string(c.k) + ".csv";
        csv::write_square(dir / ("consensus" + suffix), ids, c.matrix.values);
        write_cdf(dir / ("cdf" + suffix), c.cdf);
        const auto partition =
            consensus_partition(c.matrix, c.k, config.ensemble.master_seed, config.algorithm.spectral_options());
        const auto order = reorder_for_heatmap(c.matrix, partition);
        csv::write_square(dir / ("consensus_ordered" + suffix), permuted_ids(ids, order),
                          permuted_matrix(c.matrix.values, order));

        table.push_back({std::to_string(c.k), csv::format_number(c.cdf.area), csv::format_number(c.delta_area),
                         csv::format_number(c.cdf.flatness), c.k == report.chosen_k ? "true" : "false"});
        char line[128];
        std::snprintf(line, sizeof line, "%-4d %-11.6f %-11.6f %-9.6f%s\n", c.k, c.cdf.area, c.delta_area,
                      c.cdf.flatness, c.k == report.chosen_k ? "  <- chosen" : "");
        text << line;
    }
    csv::write_table(dir / "select_k.csv", {"k", "area", "delta_area", "flatness", "chosen"}, table);
    text << "threshold = " << csv::format_number(report.threshold) << '\n';
    text << "chosen_k = " << report.chosen_k << '\n';
    for (const auto& w : report.warnings) {
        text << "warning: " << w << '\n';
    }
    write_text(dir / "select_k.txt", text.str());

    std::ostringstream os;
    os << summary_header("select-k", config, data.sample_count());
    os << "k_range = " << join_ints(config.k_range) << '\n';
    os << "ensemble_size = " << config.ensemble.size << '\n';
    os << "chosen_k = " << report.chosen_k << '\n';
    for (const auto& w : report.warnings) {
        os << "warning: " << w << '\n';
    }
    write_text(dir / "summary.txt", os.str());
    return os.str();
}

std::string cmd_synth(const PipelineConfig& config) {
    config.synth.validate();
    const auto data = generate_synthetic(config.synth);
    prepare_output(config);
    const auto paths = write_synthetic(config.output_dir, data);

    std::ostringstream os;
    os << "command = synth\n";
    os << "k = " << config.synth.k << '\n';
    os << "samples = " << data.data.sample_count() << '\n';
    os << "seed = " << config.synth.seed << '\n';
    for (const auto& p : paths) {
        os << "view = " << p.filename().string() << '\n';
    }
    os << "labels = labels.csv\n";
    write_text(config.output_dir / "summary.txt", os.str());
    return os.str();
}

namespace {

void require_files(const fs::path& dir, const std::vector<std::string>& names) {
    std::vector<std::string> missing;
    for (const auto& name : names) {
        if (!fs::is_regular_file(dir / name)) {
            missing.push_back(name);
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        throw DataError("run directory " + dir.string() + " is missing: " + list);
    }
}

svg::Series read_cdf(const fs::path& path, const std::string& label) {
    const auto t = csv::read_table(path);
    svg::Series s;
    s.label = label;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        double x, y;
        if (t.rows[r].size() != 2 || !csv::parse_number(t.rows[r][0], x) || !csv::parse_number(t.rows[r][1], y)) {
            throw ParseError(path.string(), t.lines[r], "malformed CDF row");
        }
        s.x.push_back(x);
        s.y.push_back(y);
    }
    return s;
}

struct SilhouetteCsv {
    std::vector<std::vector<double>> clusters;
    double asw = 0;
};

SilhouetteCsv read_silhouette_plot(const fs::path& path) {
    const auto t = csv::read_table(path);
    std::map<long, std::vector<double>> by_cluster;
    double total = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        double c, w;
        if (row.size() != 4 || !csv::parse_number(row[0], c) || !csv::parse_number(row[3], w)) {
            throw ParseError(path.string(), t.lines[r], "malformed silhouette row");
        }
        by_cluster[static_cast<long>(c)].push_back(w);
        total += w;
    }
    if (t.rows.empty()) {
        throw DataError(path.string() + " has no rows");
    }
    SilhouetteCsv out;
    for (auto& [c, widths] : by_cluster) {
        out.clusters.push_back(std::move(widths));
    }
    out.asw = total / static_cast<double>(t.rows.size());
    return out;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}

std::string cmd_report(const fs::path& run_dir) {
    if (!fs::is_directory(run_dir)) {
        throw DataError("run directory " + run_dir.string() + " does not exist");
    }
    std::ostringstream os;
    os << "run = " << run_dir.string() << '\n';

    if (fs::is_regular_file(run_dir / "select_k.csv")) {
        require_files(run_dir, {"select_k.txt"});
        const auto table = csv::read_table(run_dir / "select_k.csv");
        std::vector<svg::Series> curves;
        std::vector<std::string> needed;
        for (const auto& row : table.rows) {
            needed.push_back("cdf_k" + row.at(0) + ".csv");
            needed.push_back("consensus_ordered_k" + row.at(0) + ".csv");
        }
        require_files(run_dir, needed);
        for (const auto& row : table.rows) {
            curves.push_back(read_cdf(run_dir / ("cdf_k" + row[0] + ".csv"), "K = " + row[0]));
            const auto square = csv::read_square(run_dir / ("consensus_ordered_k" + row[0] + ".csv"));
            write_text(run_dir / ("heatmap_k" + row[0] + ".svg"),
                       svg::heatmap(square.values, "Consensus matrix, K = " + row[0]));
            os << "figure = heatmap_k" << row[0] << ".svg\n";
        }
        write_text(run_dir / "cdf.svg", svg::cdf_plot(curves, "Consensus CDF"));
        os << "figure = cdf.svg\n";
        os << read_text(run_dir / "select_k.txt");
    } else if (fs::is_regular_file(run_dir / "consensus.csv") ||
               fs::is_regular_file(run_dir / "consensus_ordered.csv") || fs::is_regular_file(run_dir / "cdf.csv")) {
        require_files(run_dir, {"consensus_ordered.csv", "cdf.csv", "silhouette_plot.csv", "assignment.csv"});
        const auto square = csv::read_square(run_dir / "consensus_ordered.csv");
        write_text(run_dir / "heatmap.svg", svg::heatmap(square.values, "Consensus matrix"));
        write_text(run_dir / "cdf.svg", svg::cdf_plot({read_cdf(run_dir / "cdf.csv", "consensus")}, "Consensus CDF"));
        const auto sil = read_silhouette_plot(run_dir / "silhouette_plot.csv");
        write_text(run_dir / "silhouette.svg", svg::silhouette_plot(sil.clusters, sil.asw, "Silhouette plot"));
        os << "figure = heatmap.svg\nfigure = cdf.svg\nfigure = silhouette.svg\n";
        os << "clusters = " << sil.clusters.size() << '\n';
        os << "asw = " << csv::format_number(sil.asw) << '\n';
    } else if (fs::is_regular_file(run_dir / "assignment.csv")) {
        require_files(run_dir, {"silhouette_plot.csv"});
        const auto sil = read_silhouette_plot(run_dir / "silhouette_plot.csv");
        write_text(run_dir / "silhouette.svg", svg::silhouette_plot(sil.clusters, sil.asw, "Silhouette plot"));
        os << "figure = silhouette.svg\n";
        os << "clusters = " << sil.clusters.size() << '\n';
        os << "asw = " << csv::format_number(sil.asw) << '\n';
    } else {
        throw DataError("run directory " + run_dir.string() +
                        " holds no cluster, consensus or select-k artifacts (expected assignment.csv, consensus.csv "
                        "or select_k.csv)");
    }
    write_text(run_dir / "report.txt", os.str());
    return os.str();
}

}
