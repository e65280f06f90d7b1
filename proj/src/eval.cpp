#include "spm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace spm {

namespace {

double entropy_of(const std::vector<double>& counts, double total) {
    double h = 0.0;
    for (const double c : counts) {
        if (c > 0.0) h -= (c / total) * std::log(c / total);
    }
    return h;
}

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Minimum-cost assignment on a square cost matrix (Kuhn-Munkres with
// potentials). Returns the row assigned to each column.
std::vector<std::size_t> hungarian(const Matrix& cost) {
    const std::size_t n = cost.rows();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), way_cost(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::fill(way_cost.begin(), way_cost.end(), inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[col0] = true;
            const std::size_t r0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t col = 1; col <= n; ++col) {
                if (used[col]) continue;
                const double cur = cost(r0 - 1, col - 1) - u[r0] - v[col];
                if (cur < way_cost[col]) {
                    way_cost[col] = cur;
                    way[col] = col0;
                }
                if (way_cost[col] < delta) {
                    delta = way_cost[col];
                    col1 = col;
                }
            }
            for (std::size_t col = 0; col <= n; ++col) {
                if (used[col]) {
                    u[match[col]] += delta;
                    v[col] -= delta;
                } else {
                    way_cost[col] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> row_of_col(n);
    for (std::size_t col = 1; col <= n; ++col) row_of_col[col - 1] = match[col] - 1;
    return row_of_col;
}

void require_same_nodes(const Partition& a, const Partition& b) {
    if (a.node_count() != b.node_count()) {
        throw PreconditionError("partitions cover different node sets (" + std::to_string(a.node_count()) + " vs " +
                                std::to_string(b.node_count()) + " nodes)");
    }
}

}  // namespace

NmiReport nmi(const Partition& truth, const Partition& found) {
    require_same_nodes(truth, found);
    NmiReport report;
    const std::size_t n = truth.node_count();
    if (n == 0) {
        report.nmi = 1.0;
        return report;
    }
    std::map<std::pair<std::size_t, std::size_t>, double> joint;
    std::vector<double> a(truth.community_count(), 0.0);
    std::vector<double> b(found.community_count(), 0.0);
    for (NodeId i = 0; i < n; ++i) {
        joint[{truth[i], found[i]}] += 1.0;
        a[truth[i]] += 1.0;
        b[found[i]] += 1.0;
    }
    const double total = static_cast<double>(n);
    for (const auto& [cell, count] : joint) {
        report.mi += (count / total) * std::log(count * total / (a[cell.first] * b[cell.second]));
    }
    report.mi = std::max(report.mi, 0.0);
    report.h_truth = entropy_of(a, total);
    report.h_found = entropy_of(b, total);
    const bool flat_truth = report.h_truth == 0.0;
    const bool flat_found = report.h_found == 0.0;
    if (flat_truth && flat_found) {
        report.nmi = 1.0;
    } else if (flat_truth || flat_found) {
        report.nmi = 0.0;
    } else {
        report.nmi = std::clamp(2.0 * report.mi / (report.h_truth + report.h_found), 0.0, 1.0);
    }
    return report;
}

double node_accuracy(const Partition& truth, const Partition& found) {
    require_same_nodes(truth, found);
    if (truth.node_count() == 0) return 1.0;
    const std::size_t k = std::max({truth.community_count(), found.community_count(), std::size_t{1}});
    Matrix cost(k, k);
    for (NodeId i = 0; i < truth.node_count(); ++i) cost(truth[i], found[i]) -= 1.0;
    const auto row_of_col = hungarian(cost);
    double correct = 0.0;
    for (std::size_t col = 0; col < k; ++col) correct -= cost(row_of_col[col], col);
    return correct / static_cast<double>(truth.node_count());
}

CriterionPoint error_criterion(const SignedGraph& g, const Partition& part, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw PreconditionError("eta must lie in [0, 1]");
    if (part.node_count() != g.node_count()) throw PreconditionError("partition does not match the graph");
    CriterionPoint point;
    point.communities = part.community_count();
    point.eta = eta;
    for (const auto& e : g.negative_edges()) {
        if (part[e.i] == part[e.j]) ++point.n_count;
    }
    for (const auto& e : g.positive_edges()) {
        if (part[e.i] != part[e.j]) ++point.p_count;
    }
    point.p_c = eta * static_cast<double>(point.n_count) + (1.0 - eta) * static_cast<double>(point.p_count);
    return point;
}

bool SelectKResult::optima_agree() const {
    std::optional<Partition> first;
    for (const auto k : optimal) {
        const auto it = std::find_if(curve.begin(), curve.end(), [&](const SelectKPoint& p) { return p.communities == k; });
        if (it == curve.end() || !it->partition) return false;
        const Partition canon = canonical_form(*it->partition);
        if (!first) {
            first = canon;
        } else if (!(canon == *first)) {
            return false;
        }
    }
    return true;
}

SelectKResult select_k(const SignedGraph& g, std::size_t k_min, std::size_t k_max, double eta, FitConfig cfg) {
    if (k_min < 2 || k_max < k_min || k_max > g.node_count()) {
        throw PreconditionError("K range must satisfy 2 <= k_min <= k_max <= n");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) throw PreconditionError("eta must lie in [0, 1]");

    SelectKResult result;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        SelectKPoint point;
        point.communities = k;
        cfg.communities = k;
        try {
            const FitResult fitted = fit(g, cfg);
            const Partition part = fitted.partition();
            point.criterion = error_criterion(g, part, eta);
            point.partition = part;
            point.log_likelihood = fitted.log_likelihood;
            point.mdl = mdl_score(g, fitted);
        } catch (const std::exception& ex) {
            point.error = ex.what();
        }
        result.curve.push_back(std::move(point));
    }

    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : result.curve) {
        if (p.criterion) best = std::min(best, p.criterion->p_c);
    }
    for (const auto& p : result.curve) {
        if (p.criterion && std::abs(p.criterion->p_c - best) <= 1e-9) result.optimal.push_back(p.communities);
    }
    return result;
}

double parameter_entropy(const MixtureParams& p) {
    double h = 0.0;
    for (const double w : p.omega.values()) h -= x_log_x(w);
    for (const double t : p.theta.values()) h -= x_log_x(t);
    return h;
}

double mdl_score(const SignedGraph&, const FitResult& fit) {
    if (!std::isfinite(fit.log_likelihood)) throw PreconditionError("MDL needs a finite log-likelihood");
    return -fit.log_likelihood / 2.0 + parameter_entropy(fit.params);
}

OverlapReport overlap_nodes(const MembershipMatrix& m, double threshold) {
    if (!(threshold > 0.0 && threshold <= 0.5)) throw PreconditionError("overlap threshold must lie in (0, 0.5]");
    OverlapReport report;
    report.threshold = threshold;
    for (NodeId i = 0; i < m.node_count(); ++i) {
        const auto row = m.alpha.row(i);
        double first = -1.0;
        double second = -1.0;
        for (const double v : row) {
            if (v > first) {
                second = first;
                first = v;
            } else if (v > second) {
                second = v;
            }
        }
        if (second >= threshold) report.nodes.push_back(i);
    }
    return report;
}

Partition canonical_form(const Partition& p) {
    std::map<std::size_t, std::size_t> rename;
    std::vector<std::size_t> assignment(p.node_count());
    for (NodeId i = 0; i < p.node_count(); ++i) {
        const auto [it, inserted] = rename.emplace(p[i], rename.size());
        assignment[i] = it->second;
    }
    return Partition(std::move(assignment), rename.size());
}

}  // namespace spm
