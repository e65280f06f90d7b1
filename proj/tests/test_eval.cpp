#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "properties.hpp"
#include "spm/datasets.hpp"
#include "spm/eval.hpp"
#include "spm/generator.hpp"

using namespace spm;

TEST_CASE("nmi examples") {
    const Partition a({0, 0, 1, 1}, 2);
    CHECK(nmi(a, a).nmi == doctest::Approx(1.0));
    // Uniform 2x2 contingency table.
    const Partition b({0, 1, 0, 1}, 2);
    CHECK(oracle::nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0));
    CHECK(nmi(a, b).nmi == doctest::Approx(0.0));
    CHECK(nmi(a, b).mi == doctest::Approx(0.0));
    CHECK(nmi(a, Partition({1, 1, 0, 0}, 2)).nmi == doctest::Approx(1.0));
}

TEST_CASE("nmi degenerate entropies") {
    const Partition one({0, 0, 0}, 1);
    CHECK(nmi(one, one).nmi == 1.0);
    CHECK(nmi(one, Partition({0, 1, 1}, 2)).nmi == 0.0);
    CHECK(nmi(Partition({0, 1, 1}, 2), one).nmi == 0.0);
    CHECK_THROWS_AS(nmi(one, Partition({0, 0}, 1)), PreconditionError);
}

TEST_CASE("nmi against the contingency oracle") {
    // Frozen oracle value for a 3 x 2 table.
    const std::vector<std::size_t> a{0, 0, 0, 1, 1, 1, 2, 2}, b{0, 0, 1, 1, 1, 0, 0, 0};
    const double frozen = 0.21124207693858207;
    CHECK(oracle::nmi(a, b) == doctest::Approx(frozen).epsilon(1e-12));
    CHECK(nmi(Partition::from_labels(a), Partition::from_labels(b)).nmi == doctest::Approx(frozen).epsilon(1e-12));
}

TEST_CASE("node accuracy") {
    const Partition truth({0, 0, 1, 1}, 2);
    CHECK(node_accuracy(truth, truth) == 1.0);
    CHECK(node_accuracy(truth, Partition({1, 1, 0, 0}, 2)) == 1.0);
    CHECK(node_accuracy(truth, Partition({0, 0, 0, 0}, 1)) == 0.5);
    CHECK(node_accuracy(truth, Partition({0, 1, 2, 2}, 3)) == 0.75);
    CHECK_THROWS_AS(node_accuracy(truth, Partition({0}, 1)), PreconditionError);
}

TEST_CASE("error criterion") {
    const auto sg = generate(SyntheticSpec::uniform(4, 30, 16, 0.8, 0, 0, 3));
    const auto point = error_criterion(sg.graph, sg.truth, 0.5);
    CHECK(point.p_c == 0.0);
    CHECK(point.n_count == 0);
    CHECK(point.p_count == 0);

    const SignedGraph g = load_edge_list("0 1 -1\n1 2 1\n2 3 -1\n0 3 1\n0 2 -1\n");
    const Partition p({0, 0, 1, 1}, 2);
    const auto c = error_criterion(g, p, 1.0);
    CHECK(c.p_c == static_cast<double>(c.n_count));
    CHECK(c.n_count == 2);  // 0-1 and 2-3
    CHECK(c.p_count == 2);  // 1-2 and 0-3
    CHECK_THROWS_AS(error_criterion(g, p, 1.5), PreconditionError);
}

TEST_CASE("error criterion on the illustrative network") {
    const Dataset d = bundled_dataset(DatasetId::illustrative_fig1);
    // {A..F} vs {G,H,I}
    const std::vector<std::size_t> labels{0, 0, 0, 0, 0, 0, 1, 1, 1};
    const double expected = oracle::error_criterion(d.graph, labels, 0.5);
    const auto point = error_criterion(d.graph, Partition(labels, 2), 0.5);
    CHECK(point.p_c == expected);
    CHECK(point.p_c == 4.0);  // frozen: 3 negative links inside, 5 positive links across
    CHECK(point.n_count == 3);
    CHECK(point.p_count == 5);
}

TEST_CASE("property: metrics") {
    const auto r = props::metric_properties(31);
    INFO(r.detail);
    CHECK(r.passed);
}

TEST_CASE("overlap nodes") {
    MembershipMatrix m{Matrix(3, 2), {}};
    m.alpha(0, 0) = 1.0;
    m.alpha(1, 0) = m.alpha(1, 1) = 0.5;
    m.alpha(2, 0) = 0.85;
    m.alpha(2, 1) = 0.15;
    CHECK(overlap_nodes(m, 0.5).nodes == std::vector<NodeId>{1});
    CHECK(overlap_nodes(m, 0.15).nodes == std::vector<NodeId>{1, 2});
    CHECK(overlap_nodes(m, 1e-9).nodes == std::vector<NodeId>{1, 2});
    CHECK_THROWS_AS(overlap_nodes(m, 0.0), PreconditionError);
    CHECK_THROWS_AS(overlap_nodes(m, 0.6), PreconditionError);
}

TEST_CASE("mdl score") {
    FitResult f;
    f.params.omega = Matrix(2, 2);
    f.params.omega(1, 1) = 1.0;
    f.params.theta = Matrix(2, 2);
    f.params.theta(0, 0) = f.params.theta(1, 1) = 1.0;
    f.log_likelihood = -10.0;
    const SignedGraph g = load_edge_list("0 1 1\n");
    CHECK(parameter_entropy(f.params) == 0.0);
    CHECK(mdl_score(g, f) == 5.0);
    f.params.omega.fill(0.25);
    CHECK(parameter_entropy(f.params) == doctest::Approx(std::log(4.0)));
    f.log_likelihood = -std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(mdl_score(g, f), PreconditionError);
}

TEST_CASE("canonical form") {
    CHECK(canonical_form(Partition({2, 2, 0, 3}, 4)) == Partition({0, 0, 1, 2}, 3));
    CHECK(canonical_form(Partition({1, 0}, 5)) == canonical_form(Partition({0, 1}, 2)));
}

TEST_CASE("select_k on a partitionable network") {
    const auto sg = generate(SyntheticSpec::uniform(3, 12, 6, 0.9, 0, 0, 8));
    FitConfig cfg;
    cfg.restarts = 10;
    const auto r = select_k(sg.graph, 2, 5, 0.5, cfg);
    REQUIRE(r.curve.size() == 4);
    REQUIRE_FALSE(r.optimal.empty());
    // The generating K lies in the argmin set.
    CHECK(std::find(r.optimal.begin(), r.optimal.end(), 3) != r.optimal.end());
    for (const auto& p : r.curve) {
        REQUIRE(p.criterion.has_value());
        CHECK(p.criterion->communities == p.communities);
    }
    CHECK_THROWS_AS(select_k(sg.graph, 1, 3, 0.5, cfg), PreconditionError);
    CHECK_THROWS_AS(select_k(sg.graph, 3, 2, 0.5, cfg), PreconditionError);
}

TEST_CASE("select_k optima agreement") {
    SelectKResult r;
    SelectKPoint a, b;
    a.communities = 2;
    a.partition = Partition({0, 0, 1}, 2);
    b.communities = 3;
    b.partition = Partition({2, 2, 0}, 3);
    r.curve = {a, b};
    r.optimal = {2, 3};
    CHECK(r.optima_agree());
    r.curve[1].partition = Partition({0, 1, 2}, 3);
    CHECK_FALSE(r.optima_agree());
}
