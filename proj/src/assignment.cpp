#include "cclust/assignment.hpp"

#include <string>
#include <unordered_map>

#include "cclust/error.hpp"

namespace cclust {

ClusterAssignment ClusterAssignment::from_labels(std::span<const int> labels) {
    ClusterAssignment out;
    out.labels_.resize(labels.size());
    std::unordered_map<int, int> renumber;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0) {
            throw DataError("negative cluster label at sample " + std::to_string(i));
        }
        auto [it, inserted] = renumber.try_emplace(labels[i], out.k_);
        if (inserted) {
            ++out.k_;
        }
        out.labels_[i] = it->second;
    }
    return out;
}

std::vector<std::size_t> ClusterAssignment::cluster_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
    for (int l : labels_) {
        ++sizes[static_cast<std::size_t>(l)];
    }
    return sizes;
}

std::vector<std::vector<std::size_t>> ClusterAssignment::members() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k_));
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        out[static_cast<std::size_t>(labels_[i])].push_back(i);
    }
    return out;
}

}
