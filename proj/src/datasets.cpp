#include "spm/datasets.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "spm/model.hpp"

namespace spm {

namespace detail {
// Defined in the generated embedded_data.cpp.
extern const std::vector<std::pair<std::string_view, std::string_view>> kEmbeddedFiles;
}  // namespace detail

namespace {

constexpr std::array<std::pair<DatasetId, std::string_view>, 5> kNames{{
    {DatasetId::karate, "karate"},
    {DatasetId::adjnoun_negated, "adjnoun_negated"},
    {DatasetId::illustrative_fig1, "illustrative_fig1"},
    {DatasetId::slovene, "slovene"},
    {DatasetId::gahuku_gama, "gahuku_gama"},
}};

std::string_view require_file(std::string_view name, DatasetId id) {
    if (const auto text = embedded_file(name)) return *text;
    throw DatasetUnavailable("dataset '" + std::string(to_string(id)) + "' is not bundled: data file '" +
                             std::string(name) + "' was absent at build time (see data/README.md)");
}

// First token of every non-comment line of a label file, in order.
std::vector<std::string> node_order(std::string_view labels) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < labels.size()) {
        auto end = labels.find('\n', pos);
        if (end == std::string_view::npos) end = labels.size();
        auto line = labels.substr(pos, end - pos);
        pos = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string_view::npos) continue;
        const auto b = line.find_first_of(" \t\r", a);
        out.emplace_back(line.substr(a, b == std::string_view::npos ? line.size() - a : b - a));
    }
    return out;
}

Dataset labelled_edge_list(DatasetId id, std::string_view edges_file, std::string_view labels_file,
                           std::string description) {
    const auto labels = require_file(labels_file, id);
    const auto order = node_order(labels);
    Dataset d;
    d.id = id;
    d.graph = load_edge_list(require_file(edges_file, id), order);
    if (d.graph.node_count() != order.size()) {
        throw GraphError(std::string(edges_file) + " names nodes missing from " + std::string(labels_file));
    }
    d.truth = parse_label_file(labels, d.graph);
    d.description = std::move(description);
    return d;
}

SignedGraph negate(const SignedGraph& g) {
    GraphBuilder builder;
    for (const auto& label : g.labels()) builder.intern(label);
    for (const auto& e : g.edges()) builder.add_edge(e.i, e.j, -e.signed_weight());
    return std::move(builder).build();
}

}  // namespace

std::vector<std::string_view> dataset_names() {
    std::vector<std::string_view> out;
    for (const auto& [id, name] : kNames) out.push_back(name);
    return out;
}

std::string_view to_string(DatasetId id) {
    for (const auto& [known, name] : kNames) {
        if (known == id) return name;
    }
    return "?";
}

DatasetId parse_dataset(std::string_view name) {
    for (const auto& [id, known] : kNames) {
        if (known == name) return id;
    }
    std::string list;
    for (const auto& [id, known] : kNames) list += (list.empty() ? "" : ", ") + std::string(known);
    throw PreconditionError("unknown dataset '" + std::string(name) + "' (available: " + list + ")");
}

std::vector<std::string_view> dataset_files(DatasetId id) {
    switch (id) {
        case DatasetId::karate: return {"karate.txt", "karate.labels"};
        case DatasetId::adjnoun_negated: return {"adjnoun.txt", "adjnoun.labels"};
        case DatasetId::illustrative_fig1: return {"illustrative_fig1.txt"};
        case DatasetId::slovene: return {"slovene.csv"};
        case DatasetId::gahuku_gama: return {"gahuku_gama.txt", "gahuku_gama.labels"};
    }
    return {};
}

bool dataset_available(DatasetId id) {
    const auto files = dataset_files(id);
    return std::all_of(files.begin(), files.end(), [](std::string_view f) { return embedded_file(f).has_value(); });
}

std::optional<std::string_view> embedded_file(std::string_view name) {
    for (const auto& [file, text] : detail::kEmbeddedFiles) {
        if (file == name) return text;
    }
    return std::nullopt;
}

Dataset bundled_dataset(DatasetId id) {
    switch (id) {
        case DatasetId::karate:
            return labelled_edge_list(id, "karate.txt", "karate.labels",
                                      "Zachary karate club: 34 members, 78 positive ties, 2 factions");
        case DatasetId::adjnoun_negated: {
            Dataset d = labelled_edge_list(id, "adjnoun.txt", "adjnoun.labels",
                                           "adjectives and nouns of David Copperfield, every adjacency negated");
            d.graph = negate(d.graph);
            return d;
        }
        case DatasetId::illustrative_fig1: {
            static const std::vector<std::string> order{"A", "B", "C", "D", "E", "F", "G", "H", "I"};
            Dataset d;
            d.id = id;
            d.graph = load_edge_list(require_file("illustrative_fig1.txt", id), order);
            d.description = "9-node signed network with two overlapping communities";
            return d;
        }
        case DatasetId::slovene: {
            Dataset d;
            d.id = id;
            d.graph = from_adjacency(parse_adjacency_csv(require_file("slovene.csv", id)));
            if (d.graph.node_count() != 10) throw GraphError("slovene.csv must be a 10 x 10 matrix");
            // Parties {1,3,6,8,9} and {2,4,5,7,10}.
            d.truth = Partition({0, 1, 0, 1, 1, 0, 1, 0, 0, 1}, 2);
            d.description = "relations among 10 Slovene parliamentary parties (1994), weights x100";
            return d;
        }
        case DatasetId::gahuku_gama:
            return labelled_edge_list(id, "gahuku_gama.txt", "gahuku_gama.labels",
                                      "alliances and enmities among 16 Gahuku-Gama subtribes");
    }
    throw PreconditionError("unknown dataset");
}

Dataset bundled_dataset(std::string_view name) { return bundled_dataset(parse_dataset(name)); }

}  // namespace spm
