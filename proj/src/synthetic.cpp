#include "cclust/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "cclust/csv.hpp"
#include "cclust/error.hpp"

namespace cclust {

namespace {

constexpr int kMaxPlacementAttempts = 1000;

// Rows of the (k−1) × k Helmert contrast matrix: orthonormal and orthogonal to 1.
Matrix simplex_centers(int k, std::size_t dims, double separation) {
    Matrix c(static_cast<std::size_t>(k), dims, 0.0);
    const double scale = separation / std::sqrt(2.0);
    for (int r = 1; r < k; ++r) {
        const double norm = std::sqrt(static_cast<double>(r) * (r + 1));
        for (int i = 0; i < r; ++i) {
            c(static_cast<std::size_t>(i), static_cast<std::size_t>(r - 1)) = scale / norm;
        }
        c(static_cast<std::size_t>(r), static_cast<std::size_t>(r - 1)) = -scale * r / norm;
    }
    return c;
}

Matrix random_centers(int k, std::size_t dims, double separation, Rng& rng) {
    Matrix c(static_cast<std::size_t>(k), dims);
    for (std::size_t i = 0; i < c.rows(); ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
            for (auto& v : c.row(i)) {
                v = separation * standard_normal(rng);
            }
            placed = true;
            for (std::size_t j = 0; j < i && placed; ++j) {
                double d2 = 0;
                for (std::size_t f = 0; f < dims; ++f) {
                    const double diff = c(i, f) - c(j, f);
                    d2 += diff * diff;
                }
                placed = std::sqrt(d2) >= separation;
            }
        }
        if (!placed) {
            throw NumericalError("could not place centre " + std::to_string(i) + " at separation " +
                                 std::to_string(separation) + " in " + std::to_string(dims) + " dimensions");
        }
    }
    return c;
}

std::string numbered(const char* prefix, std::size_t i, std::size_t total) {
    const int width = static_cast<int>(std::to_string(total).size());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i + 1);
    return buf;
}

}

void SyntheticSpec::validate() const {
    if (k < 1) {
        throw ConfigError("synthetic k must be at least 1");
    }
    if (n_per_cluster < 1) {
        throw ConfigError("synthetic n_per_cluster must be at least 1");
    }
    if (dims < 1) {
        throw ConfigError("synthetic dims must be at least 1");
    }
    if (!(separation > 0) || !std::isfinite(separation)) {
        throw ConfigError("synthetic separation must be positive");
    }
    if (views < 1) {
        throw ConfigError("synthetic views must be at least 1");
    }
    if (noise_views > views) {
        throw ConfigError("synthetic noise_views exceeds views");
    }
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(spec.k) * spec.n_per_cluster;

    Rng order_rng(derive_seed(spec.seed, 0));
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = static_cast<int>(i / spec.n_per_cluster);
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(labels[i - 1], labels[uniform_index(order_rng, i)]);
    }

    std::vector<std::string> sample_ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        sample_ids[i] = numbered("S", i, n);
    }

    SyntheticData out;
    out.planted = ClusterAssignment::from_labels(labels);
    const std::size_t informative = spec.views - spec.noise_views;
    for (std::size_t v = 0; v < spec.views; ++v) {
        Rng rng(derive_seed(spec.seed, v + 1));
        Matrix centers;
        if (v < informative) {
            centers = static_cast<std::size_t>(spec.k) <= spec.dims + 1
                          ? simplex_centers(spec.k, spec.dims, spec.separation)
                          : random_centers(spec.k, spec.dims, spec.separation, rng);
        }
        ExpressionMatrix x;
        x.sample_ids = sample_ids;
        x.feature_ids.resize(spec.dims);
        const std::string prefix = "v" + std::to_string(v + 1) + "_f";
        for (std::size_t f = 0; f < spec.dims; ++f) {
            x.feature_ids[f] = numbered(prefix.c_str(), f, spec.dims);
        }
        x.values = Matrix(n, spec.dims);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t f = 0; f < spec.dims; ++f) {
                const double mean = centers.empty() ? 0.0 : centers(static_cast<std::size_t>(labels[i]), f);
                x.values(i, f) = mean + standard_normal(rng);
            }
        }
        out.data.views.push_back({"view" + std::to_string(v + 1), std::move(x)});
        out.centers.push_back(std::move(centers));
    }
    return out;
}

std::vector<std::filesystem::path> write_synthetic(const std::filesystem::path& dir, const SyntheticData& data) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> paths;
    for (const auto& view : data.data.views) {
        auto path = dir / (view.name + ".tsv");
        write_expression_matrix(path, view.data, Orientation::features_as_rows);
        paths.push_back(std::move(path));
    }
    csv::write_labels(dir / "labels.csv", data.data.sample_ids(), data.planted);
    return paths;
}

}
