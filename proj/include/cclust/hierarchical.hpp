#ifndef CCLUST_HIERARCHICAL_HPP
#define CCLUST_HIERARCHICAL_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include "cclust/assignment.hpp"
#include "cclust/matrix.hpp"

namespace cclust {

enum class Linkage { single, complete, average };

std::string_view to_string(Linkage l) noexcept;
Linkage parse_linkage(std::string_view text);

/// One agglomeration step. Leaves are nodes 0..N−1; merge m creates node N+m.
struct Merge {
    std::size_t left;
    std::size_t right;
    double height;
    std::size_t size;
};

struct Dendrogram {
    std::size_t leaves = 0;
    std::vector<Merge> merges;
};

/**
 * Bottom-up agglomerative clustering with Lance–Williams updates.
 *
 * Each active cluster lives in the slot of its smallest leaf index. Among
 * equally near pairs, the one with the lexicographically smallest
 * (lower slot, higher slot) merges first. Throws DataError on an invalid
 * distance matrix.
 */
Dendrogram hierarchical(const SymmetricMatrix& distances, Linkage linkage = Linkage::average);

/// Undo the last k − 1 merges. Throws ConfigError unless 1 <= k <= N.
ClusterAssignment cut_dendrogram(const Dendrogram& dendrogram, std::size_t k);

}

#endif
