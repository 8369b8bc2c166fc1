#ifndef CCLUST_ASSIGNMENT_HPP
#define CCLUST_ASSIGNMENT_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace cclust {

/// Hard cluster labels in [0, k), numbered by first appearance, every cluster non-empty.
class ClusterAssignment {
public:
    ClusterAssignment() = default;

    /// Relabel arbitrary nonnegative labels canonically. Throws DataError on negative labels.
    static ClusterAssignment from_labels(std::span<const int> labels);

    std::span<const int> labels() const noexcept { return labels_; }
    int operator[](std::size_t i) const noexcept { return labels_[i]; }
    std::size_t size() const noexcept { return labels_.size(); }
    int k() const noexcept { return k_; }

    std::vector<std::size_t> cluster_sizes() const;

    /// Members of each cluster in ascending sample order.
    std::vector<std::vector<std::size_t>> members() const;

    friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;

private:
    std::vector<int> labels_;
    int k_ = 0;
};

}

#endif
