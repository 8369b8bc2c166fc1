#include "cclust/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cclust/error.hpp"

namespace cclust {

SilhouetteReport silhouette_widths(const SymmetricMatrix& d, const ClusterAssignment& assignment) {
    const std::size_t n = assignment.size();
    if (d.size() != n) {
        throw DataError("silhouette: distance matrix has " + std::to_string(d.size()) + " samples, assignment has " +
                        std::to_string(n));
    }
    const int k = assignment.k();
    if (k < 2) {
        throw ConfigError("silhouette needs at least 2 clusters, got " + std::to_string(k));
    }
    const auto labels = assignment.labels();
    const auto sizes = assignment.cluster_sizes();

    SilhouetteReport report;
    report.k = k;
    report.widths.assign(n, 0.0);
    std::vector<double> sums(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(labels[i]);
        if (sizes[own] == 1) {
            continue;
        }
        std::fill(sums.begin(), sums.end(), 0.0);
        const auto row = d.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            sums[static_cast<std::size_t>(labels[j])] += row[j];
        }
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sums.size(); ++c) {
            if (c != own) {
                b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
            }
        }
        const double denom = std::max(a, b);
        report.widths[i] = denom > 0 ? (b - a) / denom : 0.0;
    }

    double total = 0;
    for (double w : report.widths) {
        total += w;
    }
    report.asw = total / static_cast<double>(n);

    report.cluster_order = assignment.members();
    report.cluster_widths.resize(report.cluster_order.size());
    for (std::size_t c = 0; c < report.cluster_order.size(); ++c) {
        auto& order = report.cluster_order[c];
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return report.widths[x] > report.widths[y]; });
        for (auto i : order) {
            report.cluster_widths[c].push_back(report.widths[i]);
        }
    }
    return report;
}

double asw(const SymmetricMatrix& d, const ClusterAssignment& assignment) {
    return silhouette_widths(d, assignment).asw;
}

double adjusted_rand_index(const ClusterAssignment& a, const ClusterAssignment& b) {
    const std::size_t n = a.size();
    if (b.size() != n) {
        throw DataError("adjusted_rand_index: assignments have " + std::to_string(n) + " and " +
                        std::to_string(b.size()) + " samples");
    }
    const auto ka = static_cast<std::size_t>(a.k());
    const auto kb = static_cast<std::size_t>(b.k());
    std::vector<double> table(ka * kb, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        table[static_cast<std::size_t>(a[i]) * kb + static_cast<std::size_t>(b[i])] += 1.0;
    }
    auto pairs = [](double x) { return x * (x - 1) / 2; };
    double index = 0;
    for (double t : table) {
        index += pairs(t);
    }
    double row_pairs = 0;
    for (auto s : a.cluster_sizes()) {
        row_pairs += pairs(static_cast<double>(s));
    }
    double col_pairs = 0;
    for (auto s : b.cluster_sizes()) {
        col_pairs += pairs(static_cast<double>(s));
    }
    const double total = pairs(static_cast<double>(n));
    const double expected = total > 0 ? row_pairs * col_pairs / total : 0.0;
    const double max_index = (row_pairs + col_pairs) / 2;
    if (max_index == expected) {
        return 1.0;
    }
    return (index - expected) / (max_index - expected);
}

std::vector<std::size_t> reorder_for_heatmap(const ConsensusMatrix& m, const ClusterAssignment& assignment) {
    if (assignment.size() != m.n) {
        throw DataError("reorder_for_heatmap: assignment size does not match the consensus matrix");
    }
    std::vector<std::size_t> order;
    order.reserve(m.n);
    for (auto members : assignment.members()) {
        std::vector<double> mean(members.size(), 0.0);
        for (std::size_t a = 0; a < members.size(); ++a) {
            double s = 0;
            for (auto j : members) {
                s += m.values(members[a], j);
            }
            mean[a] = s / static_cast<double>(members.size());
        }
        std::vector<std::size_t> idx(members.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return mean[x] > mean[y]; });
        for (auto a : idx) {
            order.push_back(members[a]);
        }
    }
    return order;
}

}
