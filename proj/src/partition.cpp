#include "spm/partition.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>

namespace spm {

Partition::Partition(std::vector<std::size_t> assignment, std::size_t community_count)
    : assignment_(std::move(assignment)), community_count_(community_count) {
    for (const auto c : assignment_) {
        if (c >= community_count_) {
            throw std::invalid_argument("community index " + std::to_string(c) + " outside [0, " +
                                        std::to_string(community_count_) + ")");
        }
    }
}

Partition Partition::from_labels(std::vector<std::size_t> assignment) {
    std::size_t count = 0;
    for (const auto c : assignment) count = std::max(count, c + 1);
    return Partition(std::move(assignment), count);
}

std::vector<std::vector<NodeId>> Partition::communities() const {
    std::vector<std::vector<NodeId>> out(community_count_);
    for (NodeId i = 0; i < assignment_.size(); ++i) out[assignment_[i]].push_back(i);
    return out;
}

bool Partition::equivalent(const Partition& other) const {
    if (node_count() != other.node_count()) return false;
    std::map<std::size_t, std::size_t> forward;
    std::map<std::size_t, std::size_t> backward;
    for (NodeId i = 0; i < assignment_.size(); ++i) {
        const auto a = assignment_[i];
        const auto b = other.assignment_[i];
        const auto [fit, fnew] = forward.emplace(a, b);
        const auto [bit, bnew] = backward.emplace(b, a);
        if (fit->second != b || bit->second != a) return false;
    }
    return true;
}

Partition parse_label_file(std::string_view text, const SignedGraph& g) {
    std::vector<std::size_t> assignment(g.node_count());
    std::vector<bool> seen(g.node_count(), false);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string_view::npos) continue;
        const auto a_end = line.find_first_of(" \t\r", a);
        const auto b = a_end == std::string_view::npos ? a_end : line.find_first_not_of(" \t\r", a_end);
        if (b == std::string_view::npos) throw GraphError("expected '<node> <label>'", line_no);
        auto b_end = line.find_first_of(" \t\r", b);
        if (b_end == std::string_view::npos) b_end = line.size();
        if (line.find_first_not_of(" \t\r", b_end) != std::string_view::npos) {
            throw GraphError("expected '<node> <label>'", line_no);
        }
        const auto node_label = line.substr(a, a_end - a);
        const auto value = line.substr(b, b_end - b);
        const auto node = g.find(node_label);
        if (!node) throw GraphError("unknown node '" + std::string(node_label) + "'", line_no);
        if (seen[*node]) throw GraphError("node '" + std::string(node_label) + "' labelled twice", line_no);
        std::size_t community = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), community);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw GraphError("unparsable community label '" + std::string(value) + "'", line_no);
        }
        assignment[*node] = community;
        seen[*node] = true;
    }
    if (const auto missing = std::find(seen.begin(), seen.end(), false); missing != seen.end()) {
        throw GraphError("node '" + g.label(static_cast<NodeId>(missing - seen.begin())) + "' has no label");
    }
    return Partition::from_labels(std::move(assignment));
}

std::string write_label_file(const Partition& p, const SignedGraph& g) {
    std::string out;
    for (NodeId i = 0; i < p.node_count(); ++i) {
        out += g.label(i);
        out += ' ';
        out += std::to_string(p[i]);
        out += '\n';
    }
    return out;
}

}  // namespace spm
