#include "cclust/hierarchical.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cclust/distance.hpp"
#include "cclust/error.hpp"

namespace cclust {

std::string_view to_string(Linkage l) noexcept {
    switch (l) {
    case Linkage::single:
        return "single";
    case Linkage::complete:
        return "complete";
    case Linkage::average:
        return "average";
    }
    return "unknown";
}

Linkage parse_linkage(std::string_view text) {
    for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
        if (text == to_string(l)) {
            return l;
        }
    }
    throw ConfigError("unknown linkage '" + std::string(text) + "'");
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Agglomerator {
public:
    Agglomerator(const SymmetricMatrix& d, Linkage linkage) :
        n_(d.size()), linkage_(linkage), dist_(d.full()), active_(n_, true), size_(n_, 1), node_(n_),
        nn_(n_, kNone), nn_dist_(n_, std::numeric_limits<double>::infinity()) {
        std::iota(node_.begin(), node_.end(), std::size_t{0});
        for (std::size_t i = 0; i < n_; ++i) {
            refresh(i);
        }
    }

    Dendrogram run() {
        Dendrogram out;
        out.leaves = n_;
        out.merges.reserve(n_ ? n_ - 1 : 0);
        for (std::size_t step = 0; step + 1 < n_; ++step) {
            std::size_t lo = kNone;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n_; ++i) {
                if (active_[i] && nn_[i] != kNone && (lo == kNone || nn_dist_[i] < best)) {
                    best = nn_dist_[i];
                    lo = i;
                }
            }
            const std::size_t hi = nn_[lo];
            merge(lo, hi);
            out.merges.push_back({node_[lo], node_[hi], best, size_[lo] + size_[hi]});
            size_[lo] += size_[hi];
            node_[lo] = n_ + step;
            active_[hi] = false;
            update_neighbours(lo, hi);
        }
        return out;
    }

private:
    // Nearest active slot above `i`; ties go to the lowest slot.
    void refresh(std::size_t i) {
        nn_[i] = kNone;
        nn_dist_[i] = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (active_[j] && (nn_[i] == kNone || dist_(i, j) < nn_dist_[i])) {
                nn_[i] = j;
                nn_dist_[i] = dist_(i, j);
            }
        }
    }

    void merge(std::size_t lo, std::size_t hi) {
        const double ni = static_cast<double>(size_[lo]);
        const double nj = static_cast<double>(size_[hi]);
        for (std::size_t k = 0; k < n_; ++k) {
            if (!active_[k] || k == lo || k == hi) {
                continue;
            }
            const double a = dist_(k, lo);
            const double b = dist_(k, hi);
            double v = 0;
            switch (linkage_) {
            case Linkage::single:
                v = std::min(a, b);
                break;
            case Linkage::complete:
                v = std::max(a, b);
                break;
            case Linkage::average:
                v = (ni * a + nj * b) / (ni + nj);
                break;
            }
            dist_(k, lo) = v;
            dist_(lo, k) = v;
        }
    }

    void update_neighbours(std::size_t lo, std::size_t hi) {
        for (std::size_t k = 0; k < n_; ++k) {
            if (!active_[k] || k == lo) {
                continue;
            }
            if (nn_[k] == lo || nn_[k] == hi) {
                refresh(k);
            } else if (k < lo && (dist_(k, lo) < nn_dist_[k] || (dist_(k, lo) == nn_dist_[k] && lo < nn_[k]))) {
                nn_[k] = lo;
                nn_dist_[k] = dist_(k, lo);
            }
        }
        refresh(lo);
    }

    std::size_t n_;
    Linkage linkage_;
    Matrix dist_;
    std::vector<bool> active_;
    std::vector<std::size_t> size_;
    std::vector<std::size_t> node_;
    std::vector<std::size_t> nn_;
    std::vector<double> nn_dist_;
};

}

Dendrogram hierarchical(const SymmetricMatrix& distances, Linkage linkage) {
    if (distances.size() == 0) {
        throw DataError("hierarchical: empty distance matrix");
    }
    check_distance_matrix(distances);
    return Agglomerator(distances, linkage).run();
}

ClusterAssignment cut_dendrogram(const Dendrogram& dendrogram, std::size_t k) {
    const std::size_t n = dendrogram.leaves;
    if (k < 1 || k > n) {
        throw ConfigError("cut_dendrogram: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    if (dendrogram.merges.size() + 1 != n) {
        throw DataError("cut_dendrogram: dendrogram must hold exactly N-1 merges");
    }
    // Union-find over nodes; merge m creates node n + m.
    std::vector<std::size_t> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t m = 0; m < n - k; ++m) {
        const auto& mg = dendrogram.merges[m];
        parent[find(mg.left)] = n + m;
        parent[find(mg.right)] = n + m;
    }
    std::vector<int> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        roots[i] = static_cast<int>(find(i));
    }
    return ClusterAssignment::from_labels(roots);
}

}
