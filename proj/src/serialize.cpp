#include "spm/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace spm {

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j.at(0).size() : 0;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j.at(r).size() != cols) throw std::invalid_argument("ragged matrix in JSON");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
    }
    return m;
}

}  // namespace

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

nlohmann::json fit_to_json(const FitResult& fit) {
    nlohmann::json j;
    j["K"] = fit.params.community_count();
    if (std::isfinite(fit.log_likelihood)) {
        j["log_likelihood"] = fit.log_likelihood;
    } else {
        j["log_likelihood"] = nullptr;
    }
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    j["omega"] = matrix_to_json(fit.params.omega);
    j["theta"] = matrix_to_json(fit.params.theta);
    j["alpha"] = matrix_to_json(fit.alpha.alpha);
    const Partition part = fit.partition();
    const auto assignment = part.assignment();
    j["assignment"] = std::vector<std::size_t>(assignment.begin(), assignment.end());
    return j;
}

FitResult fit_from_json(const nlohmann::json& j) {
    FitResult fit;
    fit.params.omega = matrix_from_json(j.at("omega"));
    fit.params.theta = matrix_from_json(j.at("theta"));
    fit.alpha.alpha = matrix_from_json(j.at("alpha"));
    const auto& ll = j.at("log_likelihood");
    fit.log_likelihood = ll.is_null() ? -std::numeric_limits<double>::infinity() : ll.get<double>();
    fit.iterations = j.at("iterations").get<std::size_t>();
    fit.converged = j.at("converged").get<bool>();
    if (j.at("K").get<std::size_t>() != fit.params.community_count()) {
        throw std::invalid_argument("K does not match omega");
    }
    return fit;
}

std::string membership_csv(const MembershipMatrix& m, const SignedGraph& g) {
    const std::size_t k = m.community_count();
    std::string out = "node";
    for (std::size_t r = 1; r <= k; ++r) out += ",alpha_" + std::to_string(r);
    out += ",assignment\n";
    const Partition part = hard_partition(m);
    for (NodeId i = 0; i < m.node_count(); ++i) {
        out += g.label(i);
        for (const double v : m.alpha.row(i)) out += "," + format_fixed(v);
        out += "," + std::to_string(part[i] + 1) + "\n";
    }
    return out;
}

nlohmann::json overlap_to_json(const OverlapReport& report, const MembershipMatrix& m, const SignedGraph& g) {
    nlohmann::json j;
    j["threshold"] = report.threshold;
    auto nodes = nlohmann::json::array();
    for (const NodeId i : report.nodes) {
        const auto row = m.alpha.row(i);
        nodes.push_back({{"node", g.label(i)}, {"alpha", std::vector<double>(row.begin(), row.end())}});
    }
    j["overlapping"] = nodes;
    return j;
}

std::string criterion_csv(const SelectKResult& result) {
    std::string out = "K,p_c,n_count,p_count\n";
    for (const auto& point : result.curve) {
        out += std::to_string(point.communities);
        if (point.criterion) {
            out += "," + format_fixed(point.criterion->p_c, 4) + "," + std::to_string(point.criterion->n_count) + "," +
                   std::to_string(point.criterion->p_count);
        } else {
            out += ",,,";
        }
        out += "\n";
    }
    return out;
}

}  // namespace spm
