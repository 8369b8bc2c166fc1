#include "cclust/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cclust/error.hpp"
#include "cclust/kernels.hpp"

namespace cclust {

std::string_view to_string(KMeansInit init) noexcept {
    return init == KMeansInit::kmeanspp ? "kmeanspp" : "random";
}

KMeansInit parse_kmeans_init(std::string_view text) {
    if (text == "kmeanspp") {
        return KMeansInit::kmeanspp;
    }
    if (text == "random") {
        return KMeansInit::random;
    }
    throw ConfigError("unknown k-means init '" + std::string(text) + "'");
}

std::size_t count_distinct_rows(const Matrix& x) {
    std::vector<std::size_t> order(x.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        auto ra = x.row(a);
        auto rb = x.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t distinct = x.rows() ? 1 : 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
        auto ra = x.row(order[i - 1]);
        auto rb = x.row(order[i]);
        if (!std::equal(ra.begin(), ra.end(), rb.begin())) {
            ++distinct;
        }
    }
    return distinct;
}

double within_cluster_ss(const Matrix& x, std::span<const int> labels, const Matrix& centers) {
    double total = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        total += kernels::squared_distance(x.row(i), centers.row(static_cast<std::size_t>(labels[i])));
    }
    return total;
}

namespace {

Matrix init_random(const Matrix& x, int k, Rng& rng) {
    const std::size_t n = x.rows();
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Matrix centers(static_cast<std::size_t>(k), x.cols());
    std::size_t chosen = 0;
    for (std::size_t i = 0; i < n && chosen < static_cast<std::size_t>(k); ++i) {
        std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
        auto candidate = x.row(pool[i]);
        bool duplicate = false;
        for (std::size_t c = 0; c < chosen && !duplicate; ++c) {
            auto existing = centers.row(c);
            duplicate = std::equal(candidate.begin(), candidate.end(), existing.begin());
        }
        if (!duplicate) {
            std::copy(candidate.begin(), candidate.end(), centers.row(chosen).begin());
            ++chosen;
        }
    }
    return centers;
}

std::size_t sample_by_weight(const std::vector<double>& weight, double total, Rng& rng) {
    const double target = uniform01(rng) * total;
    double cumulative = 0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        if (weight[i] <= 0) {
            continue;
        }
        last_positive = i;
        cumulative += weight[i];
        if (cumulative > target) {
            return i;
        }
    }
    return last_positive;
}

Matrix init_kmeanspp(const Matrix& x, int k, Rng& rng) {
    const std::size_t n = x.rows();
    const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
    Matrix centers(static_cast<std::size_t>(k), x.cols());

    const std::size_t first = uniform_index(rng, n);
    std::copy(x.row(first).begin(), x.row(first).end(), centers.row(0).begin());
    std::vector<double> closest(n);
    for (std::size_t i = 0; i < n; ++i) {
        closest[i] = kernels::squared_distance(x.row(i), x.row(first));
    }

    std::vector<double> candidate_closest(n);
    std::vector<double> best_closest(n);
    for (int c = 1; c < k; ++c) {
        const double potential = std::accumulate(closest.begin(), closest.end(), 0.0);
        double best_potential = std::numeric_limits<double>::infinity();
        std::size_t best = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::size_t cand = sample_by_weight(closest, potential, rng);
            double cand_potential = 0;
            for (std::size_t i = 0; i < n; ++i) {
                candidate_closest[i] = std::min(closest[i], kernels::squared_distance(x.row(i), x.row(cand)));
                cand_potential += candidate_closest[i];
            }
            if (cand_potential < best_potential) {
                best_potential = cand_potential;
                best = cand;
                best_closest.swap(candidate_closest);
            }
        }
        std::copy(x.row(best).begin(), x.row(best).end(), centers.row(static_cast<std::size_t>(c)).begin());
        closest.swap(best_closest);
    }
    return centers;
}

struct Assignment {
    std::vector<int> labels;
    std::vector<double> cost;
};

void assign_nearest(const Matrix& x, const Matrix& centers, Assignment& a) {
    const std::size_t k = centers.rows();
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto row = x.row(i);
        double best = kernels::squared_distance(row, centers.row(0));
        int label = 0;
        for (std::size_t c = 1; c < k; ++c) {
            const double d = kernels::squared_distance(row, centers.row(c));
            if (d < best) {
                best = d;
                label = static_cast<int>(c);
            }
        }
        a.labels[i] = label;
        a.cost[i] = best;
    }
}

// Moves the sample farthest from its center into each empty cluster. Only
// clusters with two or more members donate, so no new empty cluster appears.
void fill_empty_clusters(const Matrix& x, Matrix& centers, Assignment& a) {
    const std::size_t k = centers.rows();
    std::vector<std::size_t> sizes(k, 0);
    for (int l : a.labels) {
        ++sizes[static_cast<std::size_t>(l)];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) {
            continue;
        }
        std::size_t far = x.rows();
        double far_cost = -1;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            if (sizes[static_cast<std::size_t>(a.labels[i])] > 1 && a.cost[i] > far_cost) {
                far_cost = a.cost[i];
                far = i;
            }
        }
        --sizes[static_cast<std::size_t>(a.labels[far])];
        ++sizes[c];
        a.labels[far] = static_cast<int>(c);
        a.cost[far] = 0;
        std::copy(x.row(far).begin(), x.row(far).end(), centers.row(c).begin());
    }
}

Matrix cluster_means(const Matrix& x, const std::vector<int>& labels, std::size_t k) {
    Matrix sums(k, x.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        kernels::axpy(1.0, x.row(i), sums.row(c));
        ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
        const double inv = 1.0 / static_cast<double>(counts[c]);
        for (double& v : sums.row(c)) {
            v *= inv;
        }
    }
    return sums;
}

KMeansResult lloyd(const Matrix& x, int k, Rng& rng, const KMeansOptions& options) {
    Matrix centers = options.init == KMeansInit::kmeanspp ? init_kmeanspp(x, k, rng) : init_random(x, k, rng);
    const auto kk = static_cast<std::size_t>(k);
    Assignment a{std::vector<int>(x.rows(), 0), std::vector<double>(x.rows(), 0.0)};

    KMeansResult result;
    for (int it = 1; it <= options.max_iter; ++it) {
        assign_nearest(x, centers, a);
        fill_empty_clusters(x, centers, a);
        Matrix updated = cluster_means(x, a.labels, kk);

        double shift = 0;
        for (std::size_t i = 0; i < updated.values().size(); ++i) {
            shift = std::max(shift, std::abs(updated.values()[i] - centers.values()[i]));
        }
        centers = std::move(updated);
        result.objective_trace.push_back(within_cluster_ss(x, a.labels, centers));
        result.iterations = it;
        if (shift < options.tolerance) {
            result.converged = true;
            break;
        }
    }

    result.assignment = ClusterAssignment::from_labels(a.labels);
    // Reorder centers to follow the canonical labels.
    Matrix ordered(kk, x.cols());
    std::vector<bool> placed(kk, false);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto canonical = static_cast<std::size_t>(result.assignment[i]);
        if (!placed[canonical]) {
            auto src = centers.row(static_cast<std::size_t>(a.labels[i]));
            std::copy(src.begin(), src.end(), ordered.row(canonical).begin());
            placed[canonical] = true;
        }
    }
    result.centers = std::move(ordered);
    return result;
}

}

KMeansResult kmeans(const Matrix& x, int k, Seed seed, const KMeansOptions& options) {
    if (k < 1) {
        throw ConfigError("kmeans: k must be at least 1");
    }
    if (x.rows() == 0 || x.cols() == 0) {
        throw DataError("kmeans: empty data matrix");
    }
    if (options.max_iter < 1 || options.restarts < 1) {
        throw ConfigError("kmeans: max_iter and restarts must be positive");
    }
    const std::size_t distinct = count_distinct_rows(x);
    if (static_cast<std::size_t>(k) > distinct) {
        throw ConfigError("kmeans: k=" + std::to_string(k) + " exceeds the " + std::to_string(distinct) +
                          " distinct rows");
    }

    KMeansResult best;
    for (int r = 0; r < options.restarts; ++r) {
        Rng rng(options.restarts == 1 ? seed : derive_seed(seed, static_cast<std::uint64_t>(r)));
        KMeansResult run = lloyd(x, k, rng, options);
        if (r == 0 || run.objective() < best.objective()) {
            best = std::move(run);
        }
    }
    return best;
}

}
