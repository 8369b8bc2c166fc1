#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cclust/algorithms.hpp"
#include "cclust/consensus.hpp"
#include "cclust/distance.hpp"
#include "cclust/eigen.hpp"
#include "cclust/kmeans.hpp"
#include "cclust/laplacian.hpp"
#include "cclust/metrics.hpp"
#include "cclust/pipeline.hpp"
#include "cclust/snf.hpp"
#include "cclust/synthetic.hpp"
#include "support.hpp"

using namespace cclust;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

std::vector<double> silhouette_oracle(const SymmetricMatrix& d, std::span<const int> labels, int k) {
    const std::size_t n = labels.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sum[static_cast<std::size_t>(labels[j])] += d(i, j);
                ++count[static_cast<std::size_t>(labels[j])];
            }
        }
        const auto own = static_cast<std::size_t>(labels[i]);
        if (count[own] == 0) {
            continue;
        }
        const double a = sum[own] / count[own];
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sum.size(); ++c) {
            if (c != own && count[c] > 0) {
                b = std::min(b, sum[c] / count[c]);
            }
        }
        s[i] = (b - a) / std::max(a, b);
    }
    return s;
}

Outcome silhouette_criterion() {
    Rng rng(20240101);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + uniform_index(rng, 58);
        const int k = 2 + static_cast<int>(uniform_index(rng, std::min<std::size_t>(n - 2, 7)));
        const auto d = pairwise_distances(testing::random_matrix(rng, n, 1 + uniform_index(rng, 5)));
        const auto a = testing::random_labels(rng, n, k);
        const auto r = silhouette_widths(d, a);
        const auto oracle = silhouette_oracle(d, a.labels(), a.k());
        double mean = 0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(r.widths[i] - oracle[i]));
            mean += oracle[i];
        }
        worst = std::max(worst, std::abs(r.asw - mean / static_cast<double>(n)));
    }
    const auto hand = asw(pairwise_distances(testing::points_1d({0, 1, 10, 11})),
                          ClusterAssignment::from_labels(std::vector<int>{0, 0, 1, 1}));
    std::ostringstream os;
    os << "max |s - oracle| = " << worst << ", hand ASW = " << hand;
    return {worst <= 1e-12 && std::abs(hand - 0.899749) <= 1e-6, os.str()};
}

Outcome counting_criterion() {
    Rng rng(77);
    std::size_t mismatches = 0;
    std::size_t pairs = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + uniform_index(rng, 26);
        const std::size_t b = 1 + uniform_index(rng, 100);
        const int k = 2 + static_cast<int>(uniform_index(rng, 3));
        SyntheticSpec spec;
        spec.k = k;
        spec.n_per_cluster = std::max<std::size_t>(n / static_cast<std::size_t>(k), 3);
        spec.dims = 3;
        spec.separation = 1.5;
        spec.seed = static_cast<Seed>(trial);
        const auto data = generate_synthetic(spec);
        const std::size_t samples = data.data.sample_count();
        AlgorithmConfig cfg;
        cfg.algorithm = trial % 2 == 0 ? Algorithm::kmeans : Algorithm::hierarchical;
        EnsembleOptions opts;
        opts.size = b;
        opts.resample_fraction = 0.8;
        opts.master_seed = static_cast<Seed>(1000 + trial);
        const auto ensemble = generate_ensemble(cfg, data.data, k, opts);
        const auto m = consensus_matrix(ensemble);

        std::vector<std::vector<int>> full(ensemble.size(), std::vector<int>(samples, -1));
        for (std::size_t e = 0; e < ensemble.size(); ++e) {
            std::size_t p = 0;
            for (std::size_t i = 0; i < samples; ++i) {
                if (ensemble[e].sample_mask[i]) {
                    full[e][i] = ensemble[e].labels[p++];
                }
            }
        }
        for (std::size_t i = 0; i < samples; ++i) {
            for (std::size_t j = 0; j < samples; ++j) {
                std::uint32_t together = 0;
                std::uint32_t both = 0;
                for (const auto& labels : full) {
                    if (labels[i] >= 0 && labels[j] >= 0) {
                        ++both;
                        together += labels[i] == labels[j] ? 1 : 0;
                    }
                }
                ++pairs;
                const double value = both == 0 ? 0.0 : static_cast<double>(together) / both;
                if (m.together_count(i, j) != together || m.cosample_count(i, j) != both ||
                    m.values(i, j) != value) {
                    ++mismatches;
                }
            }
        }
    }
    std::ostringstream os;
    os << mismatches << " mismatches over " << pairs << " pairs";
    return {mismatches == 0, os.str()};
}

Outcome laplacian_criterion() {
    Rng rng(31337);
    double lo = 0;
    double hi = 0;
    double residual = 0;
    double null_error = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 50);
        const double density = uniform01(rng);
        SymmetricMatrix a(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                if (uniform01(rng) < density) {
                    a.set(i, j, uniform01(rng) * std::pow(10.0, 4 * uniform01(rng) - 2));
                }
            }
        }
        auto deg = degrees(a);
        for (std::size_t i = 0; i < n; ++i) {
            if (deg[i] == 0) {
                a.set(i, uniform_index(rng, n), 0.01 + uniform01(rng));
            }
        }
        deg = degrees(a);
        const auto l = normalized_laplacian(a);
        const auto pairs = jacobi_eigen(l);
        lo = std::min(lo, *std::min_element(pairs.eigenvalues.begin(), pairs.eigenvalues.end()));
        hi = std::max(hi, *std::max_element(pairs.eigenvalues.begin(), pairs.eigenvalues.end()));
        residual = std::max(residual, max_residual(l, pairs));
        if (n > 4 && trial % 5 == 0) {
            EigenOptions lanczos;
            lanczos.method = EigenMethod::lanczos;
            const auto some = symmetric_eigen(l, 3, SpectrumEnd::smallest, lanczos);
            residual = std::max(residual, max_residual(l, some));
        }

        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += l(i, j) * std::sqrt(deg[j]);
            }
            null_error = std::max(null_error, std::abs(acc));
        }
    }
    std::ostringstream os;
    os << "spectrum [" << lo << ", " << hi << "], max residual " << residual << ", max |L D^1/2 1| " << null_error;
    return {lo >= -1e-8 && hi <= 2 + 1e-8 && residual <= 1e-8 && null_error <= 1e-10, os.str()};
}

Outcome lloyd_criterion() {
    Rng rng(4242);
    std::size_t violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 4 + uniform_index(rng, 80);
        const int k = 1 + static_cast<int>(uniform_index(rng, 6));
        const auto x = testing::random_matrix(rng, n, 1 + uniform_index(rng, 6));
        KMeansOptions opts;
        opts.init = trial % 2 == 0 ? KMeansInit::kmeanspp : KMeansInit::random;
        opts.restarts = 1;
        const auto r = kmeans(x, std::min<int>(k, static_cast<int>(count_distinct_rows(x))), rng(), opts);
        for (std::size_t t = 1; t < r.objective_trace.size(); ++t) {
            violations += r.objective_trace[t] > r.objective_trace[t - 1] ? 1 : 0;
        }
    }

    const auto x = testing::points_1d({0, 1, 10, 11});
    double optimum = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < 7; ++mask) {
        std::vector<int> labels(4);
        for (unsigned i = 0; i < 4; ++i) {
            labels[i] = (mask >> i) & 1U ? 1 : 0;
        }
        if (labels[3] == 1) {
            continue;
        }
        double ss = 0;
        for (int c = 0; c < 2; ++c) {
            double sum = 0;
            int count = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                if (labels[i] == c) {
                    sum += x(i, 0);
                    ++count;
                }
            }
            for (std::size_t i = 0; i < 4; ++i) {
                if (labels[i] == c) {
                    ss += (x(i, 0) - sum / count) * (x(i, 0) - sum / count);
                }
            }
        }
        optimum = std::min(optimum, ss);
    }
    const double found = kmeans(x, 2, 1).objective();
    std::ostringstream os;
    os << violations << " increases; exhaustive optimum " << optimum << ", kmeans " << found;
    return {violations == 0 && std::abs(found - optimum) <= 1e-12, os.str()};
}

SyntheticData planted_four() {
    SyntheticSpec spec;
    spec.k = 4;
    spec.n_per_cluster = 50;
    spec.dims = 50;
    spec.separation = 10;
    spec.views = 2;
    spec.seed = 2024;
    return generate_synthetic(spec);
}

Outcome recovery_criterion() {
    const auto d = planted_four();
    std::ostringstream os;
    bool ok = true;
    for (auto alg : {Algorithm::kmeans, Algorithm::hierarchical, Algorithm::spectral, Algorithm::snf}) {
        AlgorithmConfig cfg;
        cfg.algorithm = alg;
        const double ari = adjusted_rand_index(BaseClusterer(d.data, cfg).run_all(4, 7), d.planted);
        os << to_string(alg) << " ARI " << ari << ", ";
        ok = ok && ari == 1.0;
    }
    AlgorithmConfig cfg;
    cfg.algorithm = Algorithm::snf;
    EnsembleOptions opts;
    opts.size = 500;
    opts.master_seed = 7;
    const auto m = consensus_matrix(generate_ensemble(cfg, d.data, 4, opts));
    const auto partition = consensus_partition(m, 4, 7);
    const double ari = adjusted_rand_index(partition, d.planted);
    double within = 1;
    double between = 0;
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            if (i == j) {
                continue;
            }
            if (d.planted[i] == d.planted[j]) {
                within = std::min(within, m.values(i, j));
            } else {
                between = std::max(between, m.values(i, j));
            }
        }
    }
    os << "consensus-snf ARI " << ari << ", min within " << within << ", max between " << between;
    return {ok && ari == 1.0 && within > 0.95 && between < 0.05, os.str()};
}

Outcome selection_criterion() {
    AlgorithmConfig cfg;
    cfg.algorithm = Algorithm::hierarchical;
    std::ostringstream os;
    bool ok = true;
    for (int planted = 2; planted <= 4; ++planted) {
        int correct = 0;
        int flat = 0;
        std::map<int, int> chosen;
        for (int trial = 0; trial < 100; ++trial) {
            SyntheticSpec spec;
            spec.k = planted;
            spec.n_per_cluster = 300 / static_cast<std::size_t>(planted);
            spec.dims = 20;
            spec.separation = 10;
            spec.seed = static_cast<Seed>(1000 * planted + trial);
            const auto d = generate_synthetic(spec);
            EnsembleOptions opts;
            opts.size = 100;
            opts.master_seed = spec.seed;
            const auto r = select_k(cfg, d.data, {2, 3, 4, 5, 6}, opts);
            ++chosen[r.chosen_k];
            if (r.chosen_k != planted) {
                continue;
            }
            for (const auto& c : r.candidates) {
                if (c.k == r.chosen_k && c.cdf.flatness < 0.1) {
                    ++correct;
                    ++flat;
                }
            }
        }
        os << "k=" << planted << ": " << correct << "/100";
        for (const auto& [k, count] : chosen) {
            if (k != planted) {
                os << " (" << count << " chose " << k << ")";
            }
        }
        os << "; ";
        ok = ok && correct >= 95;
    }
    return {ok, os.str()};
}

Outcome ensemble_size_criterion() {
    const auto d = planted_four();
    AlgorithmConfig cfg;
    cfg.algorithm = Algorithm::kmeans;
    const BaseClusterer base(d.data, cfg);
    EnsembleOptions opts;
    opts.master_seed = 99;
    opts.size = 500;
    const auto small = consensus_matrix(generate_ensemble(base, d.data.sample_count(), 4, opts));
    opts.size = 5000;
    const auto large = consensus_matrix(generate_ensemble(base, d.data.sample_count(), 4, opts));
    double ss = 0;
    for (std::size_t i = 0; i < small.values.values().size(); ++i) {
        const double diff = small.values.values()[i] - large.values.values()[i];
        ss += diff * diff;
    }
    const double dist = std::sqrt(ss) / static_cast<double>(small.n);
    const double ari = adjusted_rand_index(consensus_partition(small, 4, 99), consensus_partition(large, 4, 99));
    std::ostringstream os;
    os << "||M500 - M5000||_F / N = " << dist << ", ARI " << ari;
    return {dist < 0.05 && ari == 1.0, os.str()};
}

int shell(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism_criterion() {
    const fs::path root = testing::temp_dir("acceptance_determinism");
    const std::string bin = CCLUST_CLI_PATH;
    const std::string quiet = " >/dev/null 2>&1";
    if (shell(bin + " synth --k 3 --n-per-cluster 20 --dims 15 --views 2 --seed 5 --output-dir " +
              (root / "data").string() + quiet) != 0) {
        return {false, "synth failed"};
    }
    const std::string in = " --input " + (root / "data" / "view1.tsv").string() + " --input " +
                           (root / "data" / "view2.tsv").string();
    const std::vector<std::pair<std::string, std::string>> commands{
        {"preprocess", "preprocess --n-top 10 --standardize" + in},
        {"cluster", "cluster --algorithm snf --k 3" + in},
        {"consensus_kmeans", "consensus --k 3 --ensemble-size 60" + in},
        {"consensus_snf", "consensus --algorithm snf --k 3 --ensemble-size 30 --feature-fraction 0.8" + in},
        {"select_k", "select-k --algorithm hier --k-range 2-5 --ensemble-size 40" + in},
        {"synth", "synth --k 4 --views 2 --noise-views 1"},
    };
    std::size_t compared = 0;
    std::vector<std::string> differing;
    for (const auto& [name, args] : commands) {
        std::vector<fs::path> dirs;
        for (const char* threads : {"1", "8", "8"}) {
            const fs::path dir = root / (name + "_" + threads + "_" + std::to_string(dirs.size()));
            if (shell(bin + " " + args + " --seed 17 --threads " + threads + " --output-dir " + dir.string() +
                      quiet) != 0) {
                return {false, name + " failed"};
            }
            dirs.push_back(dir);
        }
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            if (entry.path().extension() != ".csv" && entry.path().extension() != ".tsv") {
                continue;
            }
            const auto reference = testing::read_file(entry.path());
            for (std::size_t r = 1; r < dirs.size(); ++r) {
                const auto other = dirs[r] / entry.path().filename();
                if (!fs::exists(other) || testing::read_file(other) != reference) {
                    differing.push_back(name + "/" + entry.path().filename().string());
                }
            }
            ++compared;
        }
    }
    std::ostringstream os;
    os << compared << " artifacts compared across thread counts 1, 8, 8; " << differing.size() << " differ";
    for (const auto& name : differing) {
        os << ' ' << name;
    }
    return {differing.empty() && compared > 0, os.str()};
}

Outcome real_data_criterion(const fs::path& rna, const fs::path& mirna) {
    PipelineConfig config;
    config.inputs = {{rna, Orientation::features_as_rows, 5000}, {mirna, Orientation::features_as_rows, 500}};
    config.log_transform = true;
    const auto data = load_views(config);
    std::ostringstream os;
    std::map<Algorithm, double> scores;
    for (auto alg : {Algorithm::snf, Algorithm::kmeans, Algorithm::hierarchical}) {
        AlgorithmConfig cfg;
        cfg.algorithm = alg;
        EnsembleOptions opts;
        opts.size = 500;
        opts.threads = 8;
        const auto m = consensus_matrix(generate_ensemble(cfg, data, 4, opts));
        const auto partition = consensus_partition(m, 4, 0);
        const SymmetricMatrix* fused = nullptr;
        std::optional<SymmetricMatrix> network;
        if (alg == Algorithm::snf) {
            network = snf_cluster(data, 4, 0).network.fused;
            fused = &*network;
        }
        scores[alg] = asw(silhouette_distances(data, cfg, fused), partition);
        os << to_string(alg) << " ASW " << scores[alg] << ", ";
    }
    AlgorithmConfig cfg;
    cfg.algorithm = Algorithm::snf;
    EnsembleOptions opts;
    opts.size = 500;
    opts.threads = 8;
    const int chosen = select_k(cfg, data, {2, 3, 4, 5, 6}, opts).chosen_k;
    os << "select_k chose " << chosen;
    const double s = scores[Algorithm::snf];
    return {s >= 0.75 && s <= 0.84 && chosen == 4 && s > scores[Algorithm::kmeans] &&
                scores[Algorithm::kmeans] >= scores[Algorithm::hierarchical],
            os.str()};
}

}

int main(int argc, char** argv) {
    std::set<int> only;
    std::optional<fs::path> rna;
    std::optional<fs::path> mirna;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            std::stringstream list(argv[++i]);
            for (std::string item; std::getline(list, item, ',');) {
                only.insert(std::stoi(item));
            }
        } else if (arg == "--rna" && i + 1 < argc) {
            rna = argv[++i];
        } else if (arg == "--mirna" && i + 1 < argc) {
            mirna = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--only 1,2,...] [--rna FILE --mirna FILE]\n", argv[0]);
            return 2;
        }
    }

    std::vector<Criterion> criteria{
        {1, "silhouette oracle", 5, silhouette_criterion},
        {2, "consensus counting", 10, counting_criterion},
        {3, "laplacian and eigen", 30, laplacian_criterion},
        {4, "lloyd monotonicity", 10, lloyd_criterion},
        {5, "end-to-end recovery", 120, recovery_criterion},
        {6, "k selection", 600, selection_criterion},
        {7, "ensemble size stability", 300, ensemble_size_criterion},
        {8, "determinism", 0, determinism_criterion},
    };
    if (rna && mirna) {
        criteria.push_back({9, "real data", 0, [&] { return real_data_criterion(*rna, *mirna); }});
    }

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.contains(c.id)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_seconds <= 0 || seconds < c.limit_seconds;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("criterion %d %-24s %s  %.2fs", c.id, c.name, pass ? "PASS" : "FAIL", seconds);
        if (c.limit_seconds > 0) {
            std::printf(" (limit %.0fs)", c.limit_seconds);
        }
        std::printf("  %s\n", o.detail.c_str());
        std::fflush(stdout);
    }
    if (!(rna && mirna) && (only.empty() || only.contains(9))) {
        std::printf("criterion 9 %-24s SKIP  pass --rna and --mirna to run\n", "real data");
    }
    return failures == 0 ? 0 : 1;
}
