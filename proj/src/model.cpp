#include "spm/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace spm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_sizes(const SignedGraph& g, const MixtureParams& p) {
    if (p.omega.rows() != p.omega.cols() || p.theta.rows() != p.omega.rows()) {
        throw PreconditionError("omega must be K x K and theta K x n");
    }
    if (p.theta.cols() != g.node_count()) {
        throw PreconditionError("theta has " + std::to_string(p.theta.cols()) + " columns for a graph of " +
                                std::to_string(g.node_count()) + " nodes");
    }
}

double positive_mixture(const SignedEdge& e, const MixtureParams& p) {
    double total = 0.0;
    for (std::size_t r = 0; r < p.community_count(); ++r) total += p.omega(r, r) * p.theta(r, e.i) * p.theta(r, e.j);
    return total;
}

double negative_mixture(const SignedEdge& e, const MixtureParams& p) {
    const std::size_t k = p.community_count();
    double total = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
        const double from_r = p.theta(r, e.i);
        if (from_r == 0.0) continue;
        double inner = 0.0;
        for (std::size_t s = 0; s < k; ++s) {
            if (s != r) inner += p.omega(r, s) * p.theta(s, e.j);
        }
        total += from_r * inner;
    }
    return total;
}

struct ChainOutcome {
    MixtureParams params;
    double log_likelihood = kNegInf;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

ChainOutcome run_chain(const SignedGraph& g, const FitConfig& cfg, std::uint64_t seed) {
    ChainOutcome out;
    Rng rng(seed);
    out.params = init_params(cfg.communities, g.node_count(), rng);
    try {
        double previous = kNegInf;
        for (std::size_t it = 0; it < cfg.max_iter; ++it) {
            const Responsibilities resp = e_step(g, out.params);
            const double current = resp.log_likelihood;
            out.trace.push_back(current);
            if (it > 0 && std::abs(current - previous) / std::max(1.0, std::abs(previous)) < cfg.rel_tol) {
                out.converged = true;
                break;
            }
            previous = current;
            out.params = m_step(g, resp, cfg.smoothing_eps);
            ++out.iterations;
        }
        out.log_likelihood = out.converged ? out.trace.back() : log_likelihood(g, out.params);
    } catch (const DegenerateEdgeError&) {
        out.log_likelihood = kNegInf;
    }
    return out;
}

}  // namespace

void validate(const MixtureParams& p, std::size_t n, double tolerance) {
    const std::size_t k = p.community_count();
    if (k == 0 || p.omega.cols() != k || p.theta.rows() != k || p.theta.cols() != n) {
        throw PreconditionError("parameter shapes do not match K x K and K x n");
    }
    for (const double v : p.omega.values()) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("omega entries must be finite and >= 0");
    }
    for (const double v : p.theta.values()) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("theta entries must be finite and >= 0");
    }
    if (std::abs(p.omega.sum() - 1.0) > tolerance) throw PreconditionError("omega must sum to 1");
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t s = r + 1; s < k; ++s) {
            if (std::abs(p.omega(r, s) - p.omega(s, r)) > tolerance) throw PreconditionError("omega must be symmetric");
        }
        if (std::abs(p.theta.row_sum(r) - 1.0) > tolerance) {
            throw PreconditionError("theta row " + std::to_string(r) + " must sum to 1");
        }
    }
}

void FitConfig::validate() const {
    if (communities < 1) throw PreconditionError("K must be at least 1");
    if (max_iter < 1) throw PreconditionError("max_iter must be at least 1");
    if (restarts < 1) throw PreconditionError("restarts must be at least 1");
    if (!(rel_tol > 0.0)) throw PreconditionError("rel_tol must be positive");
    if (!(smoothing_eps >= 0.0)) throw PreconditionError("smoothing_eps must be non-negative");
    if (workers < 1) throw PreconditionError("workers must be at least 1");
}

Partition FitResult::partition() const { return hard_partition(alpha); }

MixtureParams init_params(std::size_t communities, std::size_t nodes, Rng& rng) {
    if (communities < 1 || nodes < 1) throw PreconditionError("init_params needs K >= 1 and n >= 1");
    MixtureParams p{Matrix(communities, communities), Matrix(communities, nodes)};
    for (double& v : p.omega.values()) v = rng.uniform_positive();
    for (std::size_t r = 0; r < communities; ++r) {
        for (std::size_t s = r + 1; s < communities; ++s) {
            const double mean = 0.5 * (p.omega(r, s) + p.omega(s, r));
            p.omega(r, s) = mean;
            p.omega(s, r) = mean;
        }
    }
    const double total = p.omega.sum();
    for (double& v : p.omega.values()) v /= total;
    for (std::size_t r = 0; r < communities; ++r) {
        auto row = p.theta.row(r);
        for (double& v : row) v = rng.uniform_positive();
        const double row_total = p.theta.row_sum(r);
        for (double& v : row) v /= row_total;
    }
    return p;
}

double edge_probability(const SignedEdge& e, const MixtureParams& p) {
    return e.sign == Sign::positive ? positive_mixture(e, p) : negative_mixture(e, p);
}

double log_likelihood(const SignedGraph& g, const MixtureParams& p) {
    check_sizes(g, p);
    double total = 0.0;
    for (const auto& edges : {g.positive_edges(), g.negative_edges()}) {
        for (const auto& e : edges) {
            const double prob = edge_probability(e, p);
            if (!(prob > 0.0)) return kNegInf;
            total += e.weight * std::log(prob);
        }
    }
    return total;
}

Responsibilities e_step(const SignedGraph& g, const MixtureParams& p) {
    check_sizes(g, p);
    const std::size_t k = p.community_count();
    Responsibilities resp;
    resp.community_count = k;
    resp.q = Matrix(g.positive_count(), k);
    resp.Q = Matrix(g.negative_count(), k * k);

    double total = 0.0;
    const auto positive = g.positive_edges();
    for (std::size_t e = 0; e < positive.size(); ++e) {
        const auto& edge = positive[e];
        auto row = resp.q.row(e);
        double denom = 0.0;
        for (std::size_t r = 0; r < k; ++r) {
            row[r] = p.omega(r, r) * p.theta(r, edge.i) * p.theta(r, edge.j);
            denom += row[r];
        }
        if (!(denom > 0.0)) throw DegenerateEdgeError(edge);
        for (double& v : row) v /= denom;
        total += edge.weight * std::log(denom);
    }

    const auto negative = g.negative_edges();
    for (std::size_t e = 0; e < negative.size(); ++e) {
        const auto& edge = negative[e];
        auto row = resp.Q.row(e);
        double denom = 0.0;
        for (std::size_t r = 0; r < k; ++r) {
            const double from_r = p.theta(r, edge.i);
            for (std::size_t s = 0; s < k; ++s) {
                if (s == r) continue;
                const double v = p.omega(r, s) * from_r * p.theta(s, edge.j);
                row[r * k + s] = v;
                denom += v;
            }
        }
        if (!(denom > 0.0)) throw DegenerateEdgeError(edge);
        for (double& v : row) v /= denom;
        total += edge.weight * std::log(denom);
    }
    resp.log_likelihood = total;
    return resp;
}

MixtureParams m_step(const SignedGraph& g, const Responsibilities& resp, double smoothing_eps) {
    const std::size_t k = resp.community_count;
    const std::size_t n = g.node_count();
    if (resp.q.rows() != g.positive_count() || resp.Q.rows() != g.negative_count()) {
        throw PreconditionError("responsibilities do not cover the graph's edges");
    }

    // Expected edge mass per community pair and per (community, node).
    Matrix pair_mass(k, k);
    Matrix node_mass(k, n);

    const auto positive = g.positive_edges();
    for (std::size_t e = 0; e < positive.size(); ++e) {
        const auto& edge = positive[e];
        const auto row = resp.q.row(e);
        for (std::size_t r = 0; r < k; ++r) {
            const double mass = edge.weight * row[r];
            pair_mass(r, r) += mass;
            node_mass(r, edge.i) += mass;
            node_mass(r, edge.j) += mass;
        }
    }

    const auto negative = g.negative_edges();
    for (std::size_t e = 0; e < negative.size(); ++e) {
        const auto& edge = negative[e];
        const auto row = resp.Q.row(e);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t s = 0; s < k; ++s) {
                if (s == r) continue;
                const double mass = edge.weight * row[r * k + s];
                pair_mass(r, s) += mass;
                node_mass(r, edge.i) += mass;  // lower endpoint drawn from r
                node_mass(s, edge.j) += mass;  // upper endpoint drawn from s
            }
        }
    }

    MixtureParams p{Matrix(k, k), Matrix(k, n)};
    const double total = pair_mass.sum();
    if (total > 0.0) {
        for (std::size_t r = 0; r < k; ++r) {
            p.omega(r, r) = pair_mass(r, r) / total;
            for (std::size_t s = r + 1; s < k; ++s) {
                const double v = 0.5 * (pair_mass(r, s) + pair_mass(s, r)) / total;
                p.omega(r, s) = v;
                p.omega(s, r) = v;
            }
        }
    } else {
        p.omega.fill(1.0 / static_cast<double>(k * k));
    }

    for (std::size_t r = 0; r < k; ++r) {
        auto src = node_mass.row(r);
        auto dst = p.theta.row(r);
        double row_total = node_mass.row_sum(r);
        if (!(row_total > 0.0)) {
            // Empty community: smoothing keeps the row a valid distribution.
            const double fill = smoothing_eps > 0.0 ? smoothing_eps : 1.0;
            for (double& v : src) v += fill;
            row_total = node_mass.row_sum(r);
        }
        for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] / row_total;
    }
    return p;
}

FitResult fit(const SignedGraph& g, const FitConfig& cfg) {
    cfg.validate();
    if (g.node_count() == 0) throw PreconditionError("cannot fit an empty graph");
    if (cfg.communities == 1 && g.negative_count() > 0) {
        throw PreconditionError("K = 1 cannot generate negative edges; use K >= 2");
    }

    std::vector<ChainOutcome> chains(cfg.restarts);
    const auto run = [&](std::size_t index) { chains[index] = run_chain(g, cfg, derive_seed(cfg.seed, index)); };

    const std::size_t workers = std::min(cfg.workers, cfg.restarts);
    if (workers <= 1) {
        for (std::size_t index = 0; index < cfg.restarts; ++index) run(index);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t index = next++; index < cfg.restarts; index = next++) run(index);
            });
        }
    }

    FitResult result;
    result.restart_log_likelihoods.reserve(chains.size());
    std::size_t best = chains.size();
    for (std::size_t index = 0; index < chains.size(); ++index) {
        const double ll = chains[index].log_likelihood;
        result.restart_log_likelihoods.push_back(ll);
        if (std::isfinite(ll) && (best == chains.size() || ll > chains[best].log_likelihood)) best = index;
    }
    if (best == chains.size()) {
        throw FitFailure("all " + std::to_string(cfg.restarts) + " restarts ended with zero-probability edges");
    }

    auto& winner = chains[best];
    result.params = std::move(winner.params);
    result.alpha = memberships(result.params);
    result.log_likelihood = winner.log_likelihood;
    result.iterations = winner.iterations;
    result.converged = winner.converged;
    result.restart_index = best;
    result.trace = std::move(winner.trace);
    return result;
}

MembershipMatrix memberships(const MixtureParams& p) {
    const std::size_t k = p.community_count();
    const std::size_t n = p.node_count();
    std::vector<double> pair_weight(k, 0.0);
    for (std::size_t r = 0; r < k; ++r) pair_weight[r] = p.omega.row_sum(r);

    MembershipMatrix m{Matrix(n, k), {}};
    for (std::size_t i = 0; i < n; ++i) {
        auto row = m.alpha.row(i);
        double total = 0.0;
        for (std::size_t r = 0; r < k; ++r) {
            row[r] = pair_weight[r] * p.theta(r, i);
            total += row[r];
        }
        if (total > 0.0) {
            for (double& v : row) v /= total;
        } else {
            for (double& v : row) v = 1.0 / static_cast<double>(k);
            m.uniform_rows.push_back(i);
        }
    }
    return m;
}

Partition hard_partition(const MembershipMatrix& m) {
    std::vector<std::size_t> assignment(m.node_count(), 0);
    for (std::size_t i = 0; i < m.node_count(); ++i) {
        const auto row = m.alpha.row(i);
        std::size_t best = 0;
        for (std::size_t r = 1; r < row.size(); ++r) {
            if (row[r] > row[best]) best = r;
        }
        assignment[i] = best;
    }
    return Partition(std::move(assignment), std::max<std::size_t>(m.community_count(), 1));
}

}  // namespace spm
