#include "spm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <cstdlib>
#include <sstream>
#include <tuple>

namespace spm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto start = s.find_first_not_of(" \t\r", pos);
        if (start == std::string_view::npos) break;
        auto end = s.find_first_of(" \t\r", start);
        if (end == std::string_view::npos) end = s.size();
        out.push_back(s.substr(start, end - start));
        pos = end;
    }
    return out;
}

std::optional<double> parse_double(std::string_view token) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto line = text.substr(pos, end - pos);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) fn(line, line_no);
        if (end == text.size()) break;
        pos = end + 1;
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int precision = 1; precision < 17; ++precision) {
        char shorter[40];
        std::snprintf(shorter, sizeof shorter, "%.*g", precision, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

}  // namespace

// ----- SignedGraph -----

std::vector<SignedEdge> SignedGraph::edges() const {
    std::vector<SignedEdge> all;
    all.reserve(edge_count());
    std::merge(positive_.begin(), positive_.end(), negative_.begin(), negative_.end(), std::back_inserter(all),
               [](const SignedEdge& a, const SignedEdge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    return all;
}

std::optional<NodeId> SignedGraph::find(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<NodeId>(it - labels_.begin());
}

double SignedGraph::positive_weight() const noexcept {
    double total = 0.0;
    for (const auto& e : positive_) total += e.weight;
    return total;
}

double SignedGraph::negative_weight() const noexcept {
    double total = 0.0;
    for (const auto& e : negative_) total += e.weight;
    return total;
}

// ----- GraphBuilder -----

NodeId GraphBuilder::intern(std::string_view label) {
    std::string key(label);
    if (const auto it = index_.find(key); it != index_.end()) return it->second;
    const NodeId id = labels_.size();
    labels_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

void GraphBuilder::add_indexed_nodes(std::size_t count, std::size_t first_label) {
    for (std::size_t k = 0; k < count; ++k) intern(std::to_string(first_label + k));
}

std::uint64_t GraphBuilder::pair_key(NodeId i, NodeId j) noexcept {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
}

bool GraphBuilder::has_edge(NodeId i, NodeId j) const { return pairs_.contains(pair_key(i, j)); }

void GraphBuilder::add_edge(NodeId i, NodeId j, double signed_weight, std::optional<std::size_t> line) {
    if (i >= labels_.size() || j >= labels_.size()) throw GraphError("edge endpoint out of range", line);
    if (i == j) throw GraphError("self-loop on node '" + labels_[i] + "'", line);
    if (!std::isfinite(signed_weight)) throw GraphError("non-finite edge weight", line);
    if (signed_weight == 0.0) throw GraphError("zero edge weight", line);
    if (!pairs_.insert(pair_key(i, j)).second) {
        throw GraphError("duplicate edge between '" + labels_[i] + "' and '" + labels_[j] + "'", line);
    }
    if (i > j) std::swap(i, j);
    edges_.push_back({i, j, std::abs(signed_weight), signed_weight > 0 ? Sign::positive : Sign::negative});
}

SignedGraph GraphBuilder::build() && {
    SignedGraph g;
    g.labels_ = std::move(labels_);
    for (const auto& e : edges_) (e.sign == Sign::positive ? g.positive_ : g.negative_).push_back(e);
    const auto by_pair = [](const SignedEdge& a, const SignedEdge& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    };
    std::sort(g.positive_.begin(), g.positive_.end(), by_pair);
    std::sort(g.negative_.begin(), g.negative_.end(), by_pair);
    return g;
}

// ----- text formats -----

SignedGraph load_edge_list(std::string_view text, std::span<const std::string> preset_labels) {
    GraphBuilder builder;
    for (const auto& label : preset_labels) builder.intern(label);
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const auto tokens = split_ws(line);
        if (tokens.size() != 3) {
            throw GraphError("expected '<src> <dst> <signed-weight>', got " + std::to_string(tokens.size()) +
                                 " fields",
                             line_no);
        }
        const auto weight = parse_double(tokens[2]);
        if (!weight) throw GraphError("unparsable weight '" + std::string(tokens[2]) + "'", line_no);
        const NodeId i = builder.intern(tokens[0]);
        const NodeId j = builder.intern(tokens[1]);
        builder.add_edge(i, j, *weight, line_no);
    });
    return std::move(builder).build();
}

std::string write_edge_list(const SignedGraph& g) {
    std::string out;
    for (const auto& e : g.edges()) {
        out += g.label(e.i);
        out += ' ';
        out += g.label(e.j);
        out += ' ';
        out += format_number(e.signed_weight());
        out += '\n';
    }
    return out;
}

SignedGraph from_adjacency(const Matrix& a, std::span<const std::string> labels) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw GraphError("adjacency matrix must be square");
    if (!labels.empty() && labels.size() != n) throw GraphError("label count does not match matrix size");
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) != 0.0) throw GraphError("nonzero diagonal entry at row " + std::to_string(i + 1));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(i, j) != a(j, i)) {
                throw GraphError("asymmetric entries at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 ")");
            }
        }
    }
    GraphBuilder builder;
    if (labels.empty()) {
        builder.add_indexed_nodes(n, 1);
    } else {
        for (const auto& l : labels) builder.intern(l);
        if (builder.node_count() != n) throw GraphError("duplicate node labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(i, j) != 0.0) builder.add_edge(i, j, a(i, j));
        }
    }
    return std::move(builder).build();
}

Matrix to_adjacency(const SignedGraph& g) {
    Matrix a(g.node_count(), g.node_count());
    for (const auto& e : g.edges()) {
        a(e.i, e.j) = e.signed_weight();
        a(e.j, e.i) = e.signed_weight();
    }
    return a;
}

Matrix parse_adjacency_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        std::vector<double> row;
        std::size_t pos = 0;
        while (true) {
            auto comma = line.find(',', pos);
            const auto cell = trim(line.substr(pos, comma == std::string_view::npos ? line.size() - pos : comma - pos));
            const auto value = parse_double(cell);
            if (!value) throw GraphError("unparsable matrix entry '" + std::string(cell) + "'", line_no);
            row.push_back(*value);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        rows.push_back(std::move(row));
    });
    const std::size_t n = rows.size();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw GraphError("row has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rows[i][j];
    }
    return a;
}

std::string write_adjacency_csv(const Matrix& a) {
    std::string out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out += ',';
            out += format_number(a(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace spm
