#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spm/datasets.hpp"
#include "spm/graph.hpp"
#include "spm/partition.hpp"

using namespace spm;

TEST_CASE("edge list parse") {
    const SignedGraph g = load_edge_list("0 1 1\n1 2 -1");
    CHECK(g.node_count() == 3);
    CHECK(g.positive_count() == 1);
    CHECK(g.negative_count() == 1);
    CHECK(g.negative_edges()[0].weight == 1.0);
    CHECK(g.label(0) == "0");
}

TEST_CASE("edge list comments, blanks and weights") {
    const SignedGraph g = load_edge_list("# header\n\n a  b  2.5 # trailing\nb c -0.5\r\n");
    REQUIRE(g.edge_count() == 2);
    CHECK(g.positive_edges()[0].weight == 2.5);
    CHECK(g.negative_edges()[0].weight == 0.5);
    CHECK(g.find("c") == NodeId{2});
    CHECK_FALSE(g.find("z").has_value());
}

TEST_CASE("edge list rejects bad input with line numbers") {
    auto line_of = [](const char* text) -> std::optional<std::size_t> {
        try {
            load_edge_list(text);
        } catch (const GraphError& e) {
            return e.line();
        }
        return std::nullopt;
    };
    CHECK(line_of("0 0 1") == std::size_t{1});
    CHECK(line_of("0 1 1\n1 0 -1") == std::size_t{2});
    CHECK(line_of("0 1 0") == std::size_t{1});
    CHECK(line_of("0 1 x") == std::size_t{1});
    CHECK(line_of("0 1") == std::size_t{1});
    CHECK(line_of("0 1 1 extra") == std::size_t{1});
    CHECK(line_of("0 1 nan") == std::size_t{1});
}

TEST_CASE("edge list round trip") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const SignedGraph g = oracle::random_graph(rng, 12, 0.4, 0.3, true);
        const SignedGraph h = load_edge_list(write_edge_list(g), std::vector<std::string>(g.labels().begin(), g.labels().end()));
        CHECK(g == h);
    }
}

TEST_CASE("adjacency") {
    Matrix a(2, 2);
    a(0, 1) = a(1, 0) = -3;
    const SignedGraph g = from_adjacency(a);
    REQUIRE(g.negative_count() == 1);
    CHECK(g.negative_edges()[0].weight == 3.0);
    CHECK(g.label(0) == "1");

    Matrix asym(2, 2);
    asym(0, 1) = 1;
    CHECK_THROWS_AS(from_adjacency(asym), GraphError);
    Matrix diag(2, 2);
    diag(0, 0) = diag(1, 1) = 1;
    CHECK_THROWS_AS(from_adjacency(diag), GraphError);
    CHECK_THROWS_AS(from_adjacency(Matrix(2, 3)), GraphError);
}

TEST_CASE("adjacency round trip") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        const SignedGraph g = oracle::random_graph(rng, 3 + rng() % 10, 0.5, 0.5, t % 2 == 0);
        CHECK(from_adjacency(to_adjacency(g)) == g);
        CHECK(from_adjacency(parse_adjacency_csv(write_adjacency_csv(to_adjacency(g)))) == g);
    }
}

TEST_CASE("graph invariants") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        const SignedGraph g = oracle::random_graph(rng, 2 + rng() % 15, 0.5, 0.5);
        CHECK(g.positive_count() + g.negative_count() == g.edge_count());
        for (const auto& e : g.edges()) {
            CHECK(e.i < e.j);
            CHECK(e.weight > 0.0);
        }
    }
}

TEST_CASE("builder validation") {
    GraphBuilder b;
    b.add_indexed_nodes(3);
    b.add_edge(0, 1, 1.0);
    CHECK_THROWS_AS(b.add_edge(1, 0, -1.0), GraphError);
    CHECK_THROWS_AS(b.add_edge(2, 2, 1.0), GraphError);
    CHECK_THROWS_AS(b.add_edge(0, 2, 0.0), GraphError);
    CHECK_THROWS_AS(b.add_edge(0, 2, std::numeric_limits<double>::infinity()), GraphError);
    CHECK_THROWS_AS(b.add_edge(0, 7, 1.0), GraphError);
    CHECK(b.has_edge(1, 0));
}

TEST_CASE("label files") {
    const SignedGraph g = load_edge_list("a b 1\nb c -1\n");
    const Partition p = parse_label_file("c 1\na 0\nb 0\n", g);
    CHECK(p[0] == 0);
    CHECK(p[2] == 1);
    CHECK(parse_label_file(write_label_file(p, g), g) == p);
    CHECK_THROWS_AS(parse_label_file("a 0\nb 0\n", g), GraphError);
    CHECK_THROWS_AS(parse_label_file("a 0\nb 0\nc 1\nc 1\n", g), GraphError);
    CHECK_THROWS_AS(parse_label_file("a 0\nb 0\nc 1\nd 1\n", g), GraphError);
}

TEST_CASE("karate dataset") {
    const Dataset d = bundled_dataset("karate");
    CHECK(d.graph.node_count() == 34);
    CHECK(d.graph.positive_count() == 78);
    CHECK(d.graph.negative_count() == 0);
    REQUIRE(d.truth.has_value());
    CHECK(d.truth->community_count() == 2);
    CHECK(d.graph.label(0) == "1");
    CHECK(d.graph.label(33) == "34");
}

TEST_CASE("illustrative dataset") {
    const Dataset d = bundled_dataset(DatasetId::illustrative_fig1);
    CHECK(d.graph.node_count() == 9);
    CHECK(d.graph.positive_count() == 16);
    CHECK(d.graph.negative_count() == 9);
    CHECK(d.graph.label(0) == "A");
    CHECK(d.graph.label(8) == "I");
}

TEST_CASE("dataset names") {
    CHECK(dataset_names().size() == 5);
    CHECK_THROWS_AS(bundled_dataset("nope"), std::invalid_argument);
    for (const auto name : dataset_names()) {
        const DatasetId id = parse_dataset(name);
        if (dataset_available(id)) {
            CHECK_NOTHROW(bundled_dataset(id));
        } else {
            CHECK_THROWS_AS(bundled_dataset(id), DatasetUnavailable);
        }
    }
}

TEST_CASE("optional datasets match their stated sizes when bundled") {
    if (dataset_available(DatasetId::gahuku_gama)) {
        const Dataset d = bundled_dataset(DatasetId::gahuku_gama);
        CHECK(d.graph.node_count() == 16);
        CHECK(d.truth->community_count() == 3);
    }
    if (dataset_available(DatasetId::slovene)) {
        CHECK(bundled_dataset(DatasetId::slovene).graph.node_count() == 10);
    }
    if (dataset_available(DatasetId::adjnoun_negated)) {
        const Dataset d = bundled_dataset(DatasetId::adjnoun_negated);
        CHECK(d.graph.node_count() == 112);
        CHECK(d.graph.negative_count() == 425);
        CHECK(d.graph.positive_count() == 0);
    }
}
