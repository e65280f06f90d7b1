#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "spm/graph.hpp"

namespace spm {

/// Hard assignment of every node to one of `community_count` communities.
/// Communities may be empty.
class Partition {
public:
    Partition() = default;
    Partition(std::vector<std::size_t> assignment, std::size_t community_count);

    /// Community count is one past the largest label.
    static Partition from_labels(std::vector<std::size_t> assignment);

    std::size_t node_count() const noexcept { return assignment_.size(); }
    std::size_t community_count() const noexcept { return community_count_; }
    std::size_t operator[](NodeId node) const { return assignment_.at(node); }
    std::span<const std::size_t> assignment() const noexcept { return assignment_; }

    /// Node sets, one per community, each in ascending order.
    std::vector<std::vector<NodeId>> communities() const;

    /// Same grouping of nodes up to renaming communities.
    bool equivalent(const Partition& other) const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::size_t> assignment_;
    std::size_t community_count_ = 0;
};

/// Parses a label sidecar: one `node label` pair per line, `#` comments.
/// Nodes are resolved against the graph's labels; every node must appear once.
Partition parse_label_file(std::string_view text, const SignedGraph& g);

std::string write_label_file(const Partition& p, const SignedGraph& g);

}  // namespace spm
