#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spm/eval.hpp"
#include "spm/graph.hpp"
#include "spm/model.hpp"

namespace spm {

/// {K, log_likelihood, iterations, converged, omega, theta, alpha, assignment}
/// with omega K x K, theta K x n, alpha n x K as nested arrays and the
/// 0-based hard assignment. A non-finite log-likelihood is written as null.
nlohmann::json fit_to_json(const FitResult& fit);

/// Inverse of fit_to_json for the parameter and membership fields.
FitResult fit_from_json(const nlohmann::json& j);

/// `node,alpha_1..alpha_K,assignment`; assignment is the 1-based column index.
std::string membership_csv(const MembershipMatrix& m, const SignedGraph& g);

nlohmann::json overlap_to_json(const OverlapReport& report, const MembershipMatrix& m, const SignedGraph& g);

/// `K,p_c,n_count,p_count`; failed fits leave the criterion cells empty.
std::string criterion_csv(const SelectKResult& result);

/// Fixed-precision decimal used by all CSV writers.
std::string format_fixed(double v, int digits = 6);

}  // namespace spm
