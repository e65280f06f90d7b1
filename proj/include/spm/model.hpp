#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "spm/graph.hpp"
#include "spm/matrix.hpp"
#include "spm/partition.hpp"
#include "spm/random.hpp"

namespace spm {

/// Invalid arguments to a model operation (bad K, mismatched sizes, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An edge whose mixture probability is zero under the current parameters.
/// Signals a failed restart.
class DegenerateEdgeError : public std::runtime_error {
public:
    DegenerateEdgeError(const SignedEdge& edge)
        : std::runtime_error("edge (" + std::to_string(edge.i) + "," + std::to_string(edge.j) +
                             ") has zero probability under the current parameters"),
          edge_(edge) {}

    const SignedEdge& edge() const noexcept { return edge_; }

private:
    SignedEdge edge_;
};

/// Every restart of a fit failed.
class FitFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mixture parameters of the signed model.
///
/// `omega(r, s)` is the probability that an edge picks the community pair
/// (r, s): the diagonal carries positive edges, off-diagonal cells negative
/// edges. It is symmetric and sums to one. `theta(r, i)` is the probability
/// that community r emits node i; each row sums to one.
struct MixtureParams {
    Matrix omega;  // K x K
    Matrix theta;  // K x n

    std::size_t community_count() const noexcept { return omega.rows(); }
    std::size_t node_count() const noexcept { return theta.cols(); }
};

/// Throws PreconditionError unless `p` satisfies the MixtureParams
/// invariants for an n-node graph, within `tolerance`.
void validate(const MixtureParams& p, std::size_t n, double tolerance = 1e-9);

/// Per-edge posteriors from the E-step.
///
/// `q` has one row per positive edge (in graph order) holding q_{ij,rr}.
/// `Q` has one row per negative edge holding the K x K posterior over ordered
/// community pairs, flattened row-major: Q(e, r*K + s) is the probability
/// that the lower endpoint i came from r and j from s. Its diagonal is zero.
struct Responsibilities {
    std::size_t community_count = 0;
    Matrix q;
    Matrix Q;
    /// Log-likelihood of the parameters the posteriors were computed from.
    double log_likelihood = 0.0;

    double pair(std::size_t edge, std::size_t r, std::size_t s) const noexcept {
        return Q(edge, r * community_count + s);
    }
};

struct MembershipMatrix {
    Matrix alpha;  // n x K, rows sum to one
    /// Nodes with no mass in any community; their rows are uniform.
    std::vector<NodeId> uniform_rows;

    std::size_t node_count() const noexcept { return alpha.rows(); }
    std::size_t community_count() const noexcept { return alpha.cols(); }
};

struct FitConfig {
    std::size_t communities = 2;
    std::size_t max_iter = 1000;
    double rel_tol = 1e-8;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    double smoothing_eps = 1e-12;
    /// Restarts run on this many threads. Each restart is a pure function of
    /// its derived seed, so results do not depend on the thread count.
    std::size_t workers = 1;

    void validate() const;
};

struct FitResult {
    MixtureParams params;
    MembershipMatrix alpha;
    double log_likelihood = -std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t restart_index = 0;
    /// Log-likelihood before each M-step of the winning chain.
    std::vector<double> trace;
    /// Final log-likelihood of every restart; -inf marks a failed restart.
    std::vector<double> restart_log_likelihoods;

    Partition partition() const;
};

/// Random strictly positive parameters: omega symmetrized and normalized to
/// sum 1, each theta row normalized.
MixtureParams init_params(std::size_t communities, std::size_t nodes, Rng& rng);

/// Probability of edge `e` under `p` (the mixture sum, not raised to the weight).
double edge_probability(const SignedEdge& e, const MixtureParams& p);

/// Sum over edges of weight * ln(edge probability). Returns -infinity when
/// any edge has probability zero.
double log_likelihood(const SignedGraph& g, const MixtureParams& p);

/// Posteriors of the hidden community pair of every edge. Throws
/// DegenerateEdgeError on the first zero-probability edge.
Responsibilities e_step(const SignedGraph& g, const MixtureParams& p);

/// Closed-form maximizer of the expected complete-data log-likelihood.
/// Negative-edge mass is pooled over both orientations so omega stays
/// symmetric; all-zero theta rows are smoothed with `smoothing_eps`.
MixtureParams m_step(const SignedGraph& g, const Responsibilities& resp, double smoothing_eps = 1e-12);

/// Best-of-restarts EM. Throws PreconditionError for K = 1 on a graph with
/// negative edges and FitFailure when no restart produces a finite likelihood.
FitResult fit(const SignedGraph& g, const FitConfig& cfg);

/// Soft memberships: alpha(i, r) proportional to theta(r, i) * sum_s omega(r, s).
MembershipMatrix memberships(const MixtureParams& p);

/// argmax of each alpha row; ties go to the lowest community index.
Partition hard_partition(const MembershipMatrix& m);

}  // namespace spm
