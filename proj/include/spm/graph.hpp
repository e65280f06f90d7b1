#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "spm/matrix.hpp"

namespace spm {

using NodeId = std::size_t;

enum class Sign : std::uint8_t { positive, negative };

/// Undirected signed edge, stored canonically with i < j.
struct SignedEdge {
    NodeId i = 0;
    NodeId j = 0;
    double weight = 1.0;  // > 0
    Sign sign = Sign::positive;

    double signed_weight() const noexcept { return sign == Sign::positive ? weight : -weight; }
    bool operator==(const SignedEdge&) const = default;
};

/// Input rejected while building a graph. `line` is the 1-based source line
/// when the error came from a text parser.
class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(line ? "line " + std::to_string(*line) + ": " + what : what), line_(line) {}

    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

/// Sparse undirected signed weighted graph. Immutable once built.
///
/// Edges are split by sign; within each list they are sorted by (i, j).
/// Equality is structural: node count and edge sets, labels are ignored.
class SignedGraph {
public:
    SignedGraph() = default;

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t positive_count() const noexcept { return positive_.size(); }
    std::size_t negative_count() const noexcept { return negative_.size(); }
    std::size_t edge_count() const noexcept { return positive_.size() + negative_.size(); }

    std::span<const SignedEdge> positive_edges() const noexcept { return positive_; }
    std::span<const SignedEdge> negative_edges() const noexcept { return negative_; }

    /// All edges sorted by (i, j).
    std::vector<SignedEdge> edges() const;

    const std::string& label(NodeId node) const { return labels_.at(node); }
    std::span<const std::string> labels() const noexcept { return labels_; }
    std::optional<NodeId> find(std::string_view label) const;

    double positive_weight() const noexcept;
    double negative_weight() const noexcept;

    bool operator==(const SignedGraph& other) const noexcept {
        return node_count() == other.node_count() && positive_ == other.positive_ &&
               negative_ == other.negative_;
    }

private:
    friend class GraphBuilder;

    std::vector<std::string> labels_;
    std::vector<SignedEdge> positive_;
    std::vector<SignedEdge> negative_;
};

/// Incremental construction with validation: no self-loops, no zero or
/// non-finite weights, at most one edge per undirected pair.
class GraphBuilder {
public:
    /// Returns the node for `label`, creating it on first sight.
    NodeId intern(std::string_view label);

    /// Adds `count` nodes labelled by their 1-based or 0-based index.
    void add_indexed_nodes(std::size_t count, std::size_t first_label = 0);

    std::size_t node_count() const noexcept { return labels_.size(); }
    bool has_edge(NodeId i, NodeId j) const;

    /// Adds an edge from a signed weight. Throws GraphError on violations.
    void add_edge(NodeId i, NodeId j, double signed_weight,
                  std::optional<std::size_t> line = std::nullopt);

    SignedGraph build() &&;

private:
    static std::uint64_t pair_key(NodeId i, NodeId j) noexcept;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<SignedEdge> edges_;
    std::unordered_set<std::uint64_t> pairs_;
};

/// Parses the edge-list format: `#` starts a comment, blank lines are skipped,
/// every other line is `<src> <dst> <signed-weight>` separated by whitespace.
/// Node labels are interned in first-appearance order. `preset_labels`
/// are interned first, fixing their indices.
SignedGraph load_edge_list(std::string_view text, std::span<const std::string> preset_labels = {});

/// Writes the edge-list format, one line per edge in (i, j) order.
std::string write_edge_list(const SignedGraph& g);

/// Builds a graph from a symmetric, zero-diagonal signed matrix. Entries of
/// the strict upper triangle become edges. Nodes are labelled 1..n unless
/// `labels` is given.
SignedGraph from_adjacency(const Matrix& a, std::span<const std::string> labels = {});

Matrix to_adjacency(const SignedGraph& g);

/// Parses comma-separated rows of signed reals into a square matrix.
Matrix parse_adjacency_csv(std::string_view text);

std::string write_adjacency_csv(const Matrix& a);

/// Reads a whole file; throws std::ios_base::failure naming the path.
std::string read_file(const std::string& path);

}  // namespace spm
