#pragma once
// Randomized invariants of the model and metrics. Each function returns one
// result so the same checks back both the unit tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spm/eval.hpp"
#include "spm/model.hpp"

namespace props {

struct Result {
    std::string name;
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline bool rows_sum_to_one(const spm::Matrix& m, double tol) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (std::abs(m.row_sum(r) - 1.0) > tol) return false;
    }
    return true;
}

// Runs a single EM chain by hand, checking every step.
inline Result monotonicity_and_normalization(std::size_t graphs = 200, std::uint64_t seed = 1) {
    Result res{"EM monotone and normalized on " + std::to_string(graphs) + " random graphs"};
    std::mt19937_64 rng(seed);
    std::size_t steps = 0;
    for (std::size_t t = 0; t < graphs && res.passed; ++t) {
        const std::size_t n = 4 + rng() % 16;
        const double density = 0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng);
        const double neg = (t % 4 == 0) ? 0.0 : (t % 4 == 1 ? 1.0 : 0.35);
        const spm::SignedGraph g = oracle::random_graph(rng, n, density, neg, t % 3 == 0);
        if (g.edge_count() == 0) continue;
        const std::size_t k = 2 + rng() % 3;
        spm::Rng prng(rng());
        spm::MixtureParams p = spm::init_params(k, n, prng);
        double prev = -std::numeric_limits<double>::infinity();
        for (int it = 0; it < 60; ++it, ++steps) {
            spm::Responsibilities resp;
            try {
                resp = spm::e_step(g, p);
            } catch (const spm::DegenerateEdgeError&) {
                break;
            }
            for (std::size_t e = 0; e < resp.q.rows(); ++e) {
                if (std::abs(resp.q.row_sum(e) - 1.0) > 1e-9) res.fail("q row does not sum to 1");
            }
            for (std::size_t e = 0; e < resp.Q.rows(); ++e) {
                if (std::abs(resp.Q.row_sum(e) - 1.0) > 1e-9) res.fail("Q row does not sum to 1");
                for (std::size_t r = 0; r < k; ++r) {
                    if (resp.pair(e, r, r) != 0.0) res.fail("Q has a nonzero diagonal");
                }
            }
            const double l = resp.log_likelihood;
            if (l < prev - 1e-9 * std::max(1.0, std::abs(prev))) {
                res.fail("graph " + std::to_string(t) + ": L dropped from " + num(prev) + " to " + num(l));
            }
            prev = l;
            p = spm::m_step(g, resp);
            if (std::abs(p.omega.sum() - 1.0) > 1e-9) res.fail("omega does not sum to 1");
            if (!rows_sum_to_one(p.theta, 1e-9)) res.fail("theta row does not sum to 1");
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t s = 0; s < k; ++s)
                    if (p.omega(r, s) != p.omega(s, r)) res.fail("omega not symmetric");
            if (!res.passed) break;
        }
    }
    if (res.passed) res.detail = std::to_string(steps) + " EM steps checked";
    return res;
}

inline Result sign_reductions(std::uint64_t seed = 2) {
    Result res{"positive-only and negative-only omega reductions"};
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 40 && res.passed; ++t) {
        const bool positive_only = t % 2 == 0;
        const spm::SignedGraph g = oracle::random_graph(rng, 8 + rng() % 8, 0.5, positive_only ? 0.0 : 1.0);
        if (g.edge_count() == 0) continue;
        const std::size_t k = 2 + rng() % 3;
        spm::Rng prng(rng());
        spm::MixtureParams p = spm::init_params(k, g.node_count(), prng);
        for (int it = 0; it < 5; ++it) {
            const auto resp = spm::e_step(g, p);
            // Reference update: the general closed form evaluated literally.
            std::vector<oracle::Grid> post;
            const auto edges = oracle::edges_of(g);
            const auto om = oracle::to_grid(p.omega), th = oracle::to_grid(p.theta);
            for (const auto& e : edges) post.push_back(oracle::posterior(e, om, th));
            const oracle::Params ref = oracle::m_step(edges, post, g.node_count());
            p = spm::m_step(g, resp);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t s = 0; s < k; ++s) {
                    const bool should_be_zero = positive_only ? r != s : r == s;
                    if (should_be_zero && p.omega(r, s) != 0.0) res.fail("omega cell not exactly zero");
                    if (std::abs(p.omega(r, s) - ref.omega[r][s]) > 1e-12) res.fail("omega differs from reference");
                }
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t i = 0; i < g.node_count(); ++i)
                    if (std::abs(p.theta(r, i) - ref.theta[r][i]) > 1e-12) res.fail("theta differs from reference");
        }
    }
    if (res.passed) res.detail = "40 graphs, 5 steps each";
    return res;
}

inline Result label_permutation(std::uint64_t seed = 3) {
    Result res{"community relabelling leaves L unchanged"};
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 50 && res.passed; ++t) {
        const spm::SignedGraph g = oracle::random_graph(rng, 6 + rng() % 10, 0.5, 0.4);
        const std::size_t k = 2 + rng() % 3;
        const spm::MixtureParams p = oracle::random_params(rng, k, g.node_count());
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        spm::MixtureParams q = p;
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t s = 0; s < k; ++s) q.omega(perm[r], perm[s]) = p.omega(r, s);
            for (std::size_t i = 0; i < g.node_count(); ++i) q.theta(perm[r], i) = p.theta(r, i);
        }
        const double a = spm::log_likelihood(g, p), b = spm::log_likelihood(g, q);
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) res.fail("L changed: " + num(a) + " vs " + num(b));
        const auto ma = spm::memberships(p), mb = spm::memberships(q);
        for (std::size_t i = 0; i < g.node_count(); ++i)
            for (std::size_t r = 0; r < k; ++r)
                if (std::abs(ma.alpha(i, r) - mb.alpha(i, perm[r])) > 1e-12) res.fail("alpha columns not permuted");
    }
    if (res.passed) res.detail = "50 random parameter sets";
    return res;
}

// Closed-form pieces against literal evaluation on random parameters.
inline Result formula_oracles(std::uint64_t seed = 4) {
    Result res{"likelihood, posteriors, update and memberships match direct evaluation"};
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 50 && res.passed; ++t) {
        const spm::SignedGraph g = oracle::random_graph(rng, 5 + rng() % 8, 0.6, 0.4, t % 2 == 0);
        if (g.edge_count() == 0) continue;
        const std::size_t k = 2 + rng() % 3;
        const spm::MixtureParams p = oracle::random_params(rng, k, g.node_count());
        const auto edges = oracle::edges_of(g);
        const auto om = oracle::to_grid(p.omega), th = oracle::to_grid(p.theta);
        const double l_ref = oracle::log_likelihood(edges, om, th);
        const double l = spm::log_likelihood(g, p);
        if (std::abs(l - l_ref) > 1e-10 * std::max(1.0, std::abs(l_ref))) res.fail("L " + num(l) + " vs " + num(l_ref));
        const auto resp = spm::e_step(g, p);
        std::size_t pi = 0, ni = 0;
        std::vector<oracle::Grid> post;
        for (const auto& e : edges) {
            post.push_back(oracle::posterior(e, om, th));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t s = 0; s < k; ++s) {
                    const double got = e.positive ? (r == s ? resp.q(pi, r) : 0.0) : resp.pair(ni, r, s);
                    if (std::abs(got - post.back()[r][s]) > 1e-12) res.fail("posterior mismatch");
                }
            (e.positive ? pi : ni)++;
        }
        // e_step orders positive edges before negative edges; edges() is merged.
        const auto ref = oracle::m_step(edges, post, g.node_count());
        const auto upd = spm::m_step(g, resp);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t s = 0; s < k; ++s)
                if (std::abs(upd.omega(r, s) - ref.omega[r][s]) > 1e-12) res.fail("omega update mismatch");
            for (std::size_t i = 0; i < g.node_count(); ++i)
                if (std::abs(upd.theta(r, i) - ref.theta[r][i]) > 1e-12) res.fail("theta update mismatch");
        }
        const auto a_ref = oracle::alpha(om, th);
        const auto a = spm::memberships(p);
        for (std::size_t i = 0; i < g.node_count(); ++i)
            for (std::size_t r = 0; r < k; ++r)
                if (std::abs(a.alpha(i, r) - a_ref[i][r]) > 1e-12) res.fail("alpha mismatch");
    }
    if (res.passed) res.detail = "50 random graphs and parameter sets";
    return res;
}

// Small graphs used for the lattice comparison.
inline std::vector<spm::SignedGraph> grid_instances() {
    auto make = [](std::vector<std::tuple<int, int, int>> edges) {
        spm::GraphBuilder b;
        b.add_indexed_nodes(4);
        for (const auto& [i, j, w] : edges) b.add_edge(i, j, w);
        return std::move(b).build();
    };
    return {
        make({{0, 1, 1}, {2, 3, 1}, {1, 2, -1}}),
        make({{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, -1}, {0, 3, -1}}),
        make({{0, 1, -1}, {1, 2, -1}, {2, 3, -1}, {0, 3, 1}}),
        make({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, -1}}),
    };
}

inline Result grid_oracle(std::size_t instances = 4) {
    Result res{"best-of-20 fit reaches the lattice optimum on 4-node graphs"};
    const auto graphs = grid_instances();
    std::string detail;
    for (std::size_t t = 0; t < std::min(instances, graphs.size()); ++t) {
        const double grid = oracle::grid_search_max(oracle::edges_of(graphs[t]));
        spm::FitConfig cfg;
        cfg.communities = 2;
        cfg.restarts = 20;
        cfg.seed = 100 + t;
        const double l = spm::fit(graphs[t], cfg).log_likelihood;
        detail += (detail.empty() ? "" : "; ") + num(l) + " vs lattice " + num(grid);
        if (!(l >= grid - 1e-2)) res.fail("graph " + std::to_string(t) + ": fit " + num(l) + " < lattice " + num(grid));
    }
    if (res.passed) res.detail = detail;
    return res;
}

inline std::vector<std::size_t> random_labels(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> out(n);
    for (auto& v : out) v = rng() % k;
    return out;
}

inline Result metric_properties(std::uint64_t seed = 5) {
    Result res{"NMI, accuracy and error-criterion properties"};
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 200 && res.passed; ++t) {
        const std::size_t n = 4 + rng() % 30, k = 2 + rng() % 4;
        const auto a = random_labels(rng, n, k), b = random_labels(rng, n, k);
        const spm::Partition pa = spm::Partition::from_labels(a), pb = spm::Partition::from_labels(b);
        const double ab = spm::nmi(pa, pb).nmi, ba = spm::nmi(pb, pa).nmi;
        if (std::abs(ab - ba) > 1e-12) res.fail("nmi not symmetric");
        if (std::abs(ab - oracle::nmi(a, b)) > 1e-12) res.fail("nmi differs from contingency oracle");
        if (std::abs(spm::nmi(pa, pa).nmi - 1.0) > 1e-12) res.fail("nmi(a, a) != 1");
        if (ab < 0.0 || ab > 1.0) res.fail("nmi out of range");
        // Relabel b.
        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::size_t> b2(n);
        for (std::size_t i = 0; i < n; ++i) b2[i] = perm[b[i]];
        const spm::Partition pb2 = spm::Partition::from_labels(b2);
        if (std::abs(spm::nmi(pa, pb2).nmi - ab) > 1e-12) res.fail("nmi changed under relabelling");
        if (std::abs(spm::node_accuracy(pa, pa) - 1.0) > 1e-12) res.fail("accuracy(a, a) != 1");
        if (std::abs(spm::node_accuracy(pa, pb2) - spm::node_accuracy(pa, pb)) > 1e-12) {
            res.fail("accuracy changed under relabelling");
        }
        // Balanced truth: accuracy at least chance.
        std::vector<std::size_t> balanced(n - n % k);
        for (std::size_t i = 0; i < balanced.size(); ++i) balanced[i] = i % k;
        std::vector<std::size_t> guess(b.begin(), b.begin() + static_cast<long>(balanced.size()));
        const double acc = spm::node_accuracy(spm::Partition(balanced, k), spm::Partition::from_labels(guess));
        if (acc < 1.0 / static_cast<double>(k) - 1e-12) res.fail("accuracy below 1/K on balanced truth");

        const spm::SignedGraph g = oracle::random_graph(rng, n, 0.3, 0.5);
        const double eta = std::uniform_real_distribution<double>(0, 1)(rng);
        const auto c1 = spm::error_criterion(g, pb, eta), c2 = spm::error_criterion(g, pb2, eta);
        if (std::abs(c1.p_c - oracle::error_criterion(g, b, eta)) > 1e-9) res.fail("criterion differs from brute force");
        if (c1.p_c != c2.p_c) res.fail("criterion changed under relabelling");
        const bool clean = c1.n_count == 0 && c1.p_count == 0;
        const double at_half = spm::error_criterion(g, pb, 0.5).p_c;
        if (clean != (at_half == 0.0)) res.fail("criterion zero iff no misplaced edges");
    }
    if (res.passed) res.detail = "200 random partition pairs";
    return res;
}

inline Result determinism() {
    Result res{"identical configs give bit-identical fits"};
    std::mt19937_64 rng(6);
    const spm::SignedGraph g = oracle::random_graph(rng, 30, 0.3, 0.3);
    spm::FitConfig cfg;
    cfg.communities = 3;
    cfg.seed = 77;
    const auto a = spm::fit(g, cfg), b = spm::fit(g, cfg);
    cfg.workers = 3;
    const auto c = spm::fit(g, cfg);
    if (!(a.params.omega == b.params.omega && a.params.theta == b.params.theta && a.log_likelihood == b.log_likelihood &&
          a.trace == b.trace)) {
        res.fail("repeat run differs");
    }
    if (!(a.params.omega == c.params.omega && a.params.theta == c.params.theta && a.log_likelihood == c.log_likelihood &&
          a.restart_log_likelihoods == c.restart_log_likelihoods)) {
        res.fail("threaded run differs");
    }
    if (res.passed) res.detail = "single-threaded and 3-worker runs agree";
    return res;
}

inline std::vector<Result> all() {
    return {monotonicity_and_normalization(), sign_reductions(), label_permutation(), formula_oracles(),
            grid_oracle(), metric_properties(), determinism()};
}

}  // namespace props
