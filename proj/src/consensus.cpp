#include "cclust/consensus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

#include "cclust/error.hpp"
#include "cclust/snf.hpp"

namespace cclust {

namespace {

std::size_t draw_count(double fraction, std::size_t total) {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));
}

EnsembleInstance make_instance(const BaseClusterer& clusterer, const ViewSet* views, std::size_t n, int k,
                               Seed seed, const EnsembleOptions& options) {
    Rng rng(derive_seed(seed, 0));
    EnsembleInstance inst;
    inst.seed = seed;
    inst.resample_fraction = options.resample_fraction;

    std::vector<std::size_t> samples;
    if (options.resample_fraction >= 1.0) {
        samples.resize(n);
        std::iota(samples.begin(), samples.end(), std::size_t{0});
    } else {
        samples = sample_without_replacement(rng, n, draw_count(options.resample_fraction, n));
    }
    if (samples.size() < static_cast<std::size_t>(std::max(k, 2))) {
        throw DataError("subsample of " + std::to_string(samples.size()) + " samples is smaller than k=" +
                        std::to_string(k));
    }
    if (options.feature_fraction < 1.0) {
        for (const auto& v : views->views) {
            const std::size_t p = v.data.features();
            const std::size_t m = std::max<std::size_t>(1, draw_count(options.feature_fraction, p));
            inst.features.push_back(sample_without_replacement(rng, p, m));
        }
    }

    inst.sample_mask.assign(n, 0);
    for (auto s : samples) {
        inst.sample_mask[s] = 1;
    }
    inst.labels = clusterer.run(samples, k, seed, inst.features);
    return inst;
}

std::vector<EnsembleInstance> run_ensemble(const BaseClusterer& clusterer, const ViewSet* views, std::size_t n, int k,
                                           const EnsembleOptions& options) {
    if (options.size < 1) {
        throw ConfigError("ensemble size must be at least 1");
    }
    if (!(options.resample_fraction > 0 && options.resample_fraction <= 1)) {
        throw ConfigError("resample_fraction must be in (0, 1]");
    }
    if (!(options.feature_fraction > 0 && options.feature_fraction <= 1)) {
        throw ConfigError("feature_fraction must be in (0, 1]");
    }
    if (k < 1) {
        throw ConfigError("ensemble k must be at least 1");
    }

    std::vector<EnsembleInstance> out(options.size);
    std::vector<std::exception_ptr> failures(options.size);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= options.size) {
                return;
            }
            const Seed base_seed = derive_seed(options.master_seed, b);
            std::exception_ptr last;
            for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
                const Seed seed = attempt == 0 ? base_seed : derive_seed(base_seed, static_cast<std::uint64_t>(attempt));
                try {
                    out[b] = make_instance(clusterer, views, n, k, seed, options);
                    last = nullptr;
                    break;
                } catch (const Error&) {
                    last = std::current_exception();
                }
            }
            failures[b] = last;
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.size)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }

    for (std::size_t b = 0; b < failures.size(); ++b) {
        if (failures[b]) {
            try {
                std::rethrow_exception(failures[b]);
            } catch (const Error& e) {
                throw DataError("ensemble instance " + std::to_string(b) + " failed after " +
                                std::to_string(options.max_retries + 1) + " attempts: " + e.what());
            }
        }
    }
    return out;
}

}

std::vector<EnsembleInstance> generate_ensemble(const BaseClusterer& clusterer, std::size_t samples, int k,
                                                const EnsembleOptions& options) {
    if (options.feature_fraction < 1.0) {
        throw ConfigError("feature subsampling needs the ViewSet overload of generate_ensemble");
    }
    return run_ensemble(clusterer, nullptr, samples, k, options);
}

std::vector<EnsembleInstance> generate_ensemble(const AlgorithmConfig& base, const ViewSet& data, int k,
                                                const EnsembleOptions& options) {
    BaseClusterer clusterer(data, base);
    return run_ensemble(clusterer, &data, data.sample_count(), k, options);
}

ConsensusMatrix consensus_matrix(std::span<const EnsembleInstance> ensemble) {
    if (ensemble.empty()) {
        throw DataError("consensus_matrix: empty ensemble");
    }
    const std::size_t n = ensemble.front().sample_mask.size();
    ConsensusMatrix m;
    m.n = n;
    m.together.assign(n * n, 0);
    m.cosampled.assign(n * n, 0);

    std::vector<std::size_t> included;
    std::vector<int> labels;
    for (std::size_t b = 0; b < ensemble.size(); ++b) {
        const auto& inst = ensemble[b];
        if (inst.sample_mask.size() != n) {
            throw DataError("consensus_matrix: instance " + std::to_string(b) + " covers a different sample universe");
        }
        included.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (inst.sample_mask[i]) {
                included.push_back(i);
            }
        }
        if (included.size() != inst.labels.size()) {
            throw DataError("consensus_matrix: instance " + std::to_string(b) + " labels do not match its mask");
        }
        const auto lab = inst.labels.labels();
        for (std::size_t a = 0; a < included.size(); ++a) {
            const std::size_t i = included[a];
            std::uint32_t* co_row = m.cosampled.data() + i * n;
            std::uint32_t* to_row = m.together.data() + i * n;
            for (std::size_t c = 0; c < included.size(); ++c) {
                const std::size_t j = included[c];
                ++co_row[j];
                to_row[j] += lab[a] == lab[c] ? 1u : 0u;
            }
        }
    }

    m.values = Matrix(n, n);
    for (std::size_t idx = 0; idx < n * n; ++idx) {
        if (m.cosampled[idx] > 0) {
            m.values.values()[idx] = static_cast<double>(m.together[idx]) / static_cast<double>(m.cosampled[idx]);
        }
    }
    return m;
}

CdfCurve consensus_cdf(const ConsensusMatrix& m, std::size_t grid_points) {
    if (grid_points < 2) {
        throw ConfigError("consensus_cdf: grid_points must be at least 2");
    }
    const std::size_t steps = grid_points - 1;
    // histogram[g] = pairs whose smallest grid point at or above the index is g
    std::vector<std::uint64_t> histogram(grid_points, 0);
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = i + 1; j < m.n; ++j) {
            const std::uint64_t co = m.cosample_count(i, j);
            if (co == 0) {
                continue;
            }
            const std::uint64_t to = m.together_count(i, j);
            // smallest g with to * steps <= g * co
            const std::uint64_t g = (to * steps + co - 1) / co;
            ++histogram[g];
            ++pairs;
        }
    }
    if (pairs == 0) {
        throw DataError("consensus_cdf: no pair of samples was ever co-sampled");
    }

    CdfCurve curve;
    curve.grid.resize(grid_points);
    curve.cdf.resize(grid_points);
    std::uint64_t running = 0;
    for (std::size_t g = 0; g < grid_points; ++g) {
        running += histogram[g];
        curve.grid[g] = static_cast<double>(g) / static_cast<double>(steps);
        curve.cdf[g] = static_cast<double>(running) / static_cast<double>(pairs);
    }
    for (std::size_t g = 1; g < grid_points; ++g) {
        curve.area += (curve.grid[g] - curve.grid[g - 1]) * curve.cdf[g];
    }
    auto at = [&](double x) {
        const auto g = static_cast<std::size_t>(std::llround(x * static_cast<double>(steps)));
        return curve.cdf[g];
    };
    curve.flatness = (at(0.9) - at(0.1)) / 0.8;
    return curve;
}

KSelectionReport select_k(const AlgorithmConfig& base, const ViewSet& data, std::vector<int> k_range,
                          const EnsembleOptions& options, double threshold) {
    if (k_range.empty()) {
        throw ConfigError("select_k: empty k range");
    }
    std::sort(k_range.begin(), k_range.end());
    k_range.erase(std::unique(k_range.begin(), k_range.end()), k_range.end());
    const std::size_t n = data.sample_count();
    for (int k : k_range) {
        if (k < 2 || static_cast<std::size_t>(k) > n - 1) {
            throw ConfigError("select_k: k=" + std::to_string(k) + " outside [2, " + std::to_string(n - 1) + "]");
        }
    }

    BaseClusterer clusterer(data, base);
    KSelectionReport report;
    report.threshold = threshold;
    for (int k : k_range) {
        KCandidate c;
        c.k = k;
        auto ensemble = run_ensemble(clusterer, &data, n, k, options);
        c.matrix = consensus_matrix(ensemble);
        c.cdf = consensus_cdf(c.matrix);
        report.candidates.push_back(std::move(c));
    }

    report.chosen_k = report.candidates.front().k;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        auto& c = report.candidates[i];
        if (i == 0) {
            c.delta_area = c.cdf.area;
        } else {
            const double prev = report.candidates[i - 1].cdf.area;
            c.delta_area = prev > 0 ? (c.cdf.area - prev) / prev : 0.0;
        }
        if (c.delta_area > threshold) {
            report.chosen_k = c.k;
        }
    }
    if (report.candidates.size() == 1) {
        report.warnings.push_back("only one k was searched; no comparison was possible");
    }
    return report;
}

ClusterAssignment consensus_partition(const ConsensusMatrix& m, int k, Seed seed, const SpectralOptions& options) {
    if (k == 1) {
        const std::vector<int> zeros(m.n, 0);
        return ClusterAssignment::from_labels(zeros);
    }
    Matrix values = m.values;
    for (std::size_t i = 0; i < m.n; ++i) {
        values(i, i) = 0.0;
    }
    return spectral(SymmetricMatrix::from_matrix(std::move(values)), k, seed, options).assignment;
}

}
