#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spm/graph.hpp"
#include "spm/model.hpp"
#include "spm/partition.hpp"

namespace spm {

struct NmiReport {
    double mi = 0.0;
    double h_truth = 0.0;
    double h_found = 0.0;
    double nmi = 0.0;
};

/// Normalized mutual information 2 MI / (H(truth) + H(found)), natural log.
/// Both entropies zero gives 1; exactly one zero gives 0.
NmiReport nmi(const Partition& truth, const Partition& found);

/// Best fraction of correctly labelled nodes over all one-to-one matchings of
/// community labels (Hungarian assignment on the confusion matrix).
double node_accuracy(const Partition& truth, const Partition& found);

struct CriterionPoint {
    std::size_t communities = 0;
    double p_c = 0.0;
    std::size_t n_count = 0;  // negative edges inside communities
    std::size_t p_count = 0;  // positive edges between communities
    double eta = 0.5;
};

/// P(C) = eta * N + (1 - eta) * P with N, P edge counts under `part`.
CriterionPoint error_criterion(const SignedGraph& g, const Partition& part, double eta);

struct SelectKPoint {
    std::size_t communities = 0;
    std::optional<CriterionPoint> criterion;  // empty when the fit failed
    std::optional<Partition> partition;
    double log_likelihood = 0.0;
    double mdl = 0.0;
    std::string error;
};

struct SelectKResult {
    std::vector<SelectKPoint> curve;
    std::vector<std::size_t> optimal;  // every K attaining the minimum P(C)

    /// True when all optimal K share one hard partition (up to relabelling,
    /// ignoring empty communities).
    bool optima_agree() const;
};

/// Fits every K in [k_min, k_max] with `cfg` (its K is overridden) and scores
/// the hard partitions. A failed fit is recorded on its point; the sweep goes on.
SelectKResult select_k(const SignedGraph& g, std::size_t k_min, std::size_t k_max, double eta, FitConfig cfg);

/// Entropy of the parameters: -sum omega ln omega - sum theta ln theta (0 ln 0 = 0).
double parameter_entropy(const MixtureParams& p);

/// Description length -L/2 + parameter_entropy.
double mdl_score(const SignedGraph& g, const FitResult& fit);

struct OverlapReport {
    std::vector<NodeId> nodes;
    double threshold = 0.15;
};

inline constexpr double kDefaultOverlapThreshold = 0.15;

/// Nodes whose second-largest membership is at least `threshold` (0 < threshold <= 0.5).
OverlapReport overlap_nodes(const MembershipMatrix& m, double threshold = kDefaultOverlapThreshold);

/// Relabels a partition so that it compares equal when the grouping matches,
/// empty communities dropped. Used for comparing partitions across K.
Partition canonical_form(const Partition& p);

}  // namespace spm
