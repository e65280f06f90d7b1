#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spm/eval.hpp"
#include "spm/generator.hpp"
#include "spm/model.hpp"

namespace spm {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExperimentOptions {
    std::size_t replicates = 30;  // per point of a robustness curve
    std::size_t instances = 5;    // fresh instances per fixed synthetic network
    std::size_t restarts = 20;
    std::size_t max_iter = 1000;
    double rel_tol = 1e-8;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    double eta = 0.5;
    double threshold = kDefaultOverlapThreshold;

    FitConfig fit_config(std::size_t communities) const;
};

struct ExperimentReport {
    std::string name;
    std::vector<Check> checks;
    /// Output files (name, contents) in write order.
    std::vector<std::pair<std::string, std::string>> files;

    bool passed() const;
    nlohmann::json to_json() const;
};

std::vector<std::string_view> experiment_names();

/// Runs one named experiment. Throws PreconditionError for an unknown name.
/// Missing datasets turn into failed checks rather than exceptions.
ExperimentReport run_experiment(std::string_view name, const ExperimentOptions& opts);

struct RobustnessPoint {
    double value = 0.0;
    double secondary = 0.0;
    double mean_nmi = 0.0;
    double std_nmi = 0.0;  // population standard deviation
    std::size_t samples = 0;
};

/// Mean NMI of K = c fits against the planted partition at each grid point.
/// Instances without ground truth are skipped.
std::vector<RobustnessPoint> robustness_curve(const SyntheticSpec& base, SweepAxis axis,
                                              const std::vector<double>& values, std::size_t replicates,
                                              const FitConfig& cfg);

/// `axis_value,mean_nmi,std_nmi`; the joint axis writes `p_plus,p_minus,mean_nmi,std_nmi`.
std::string robustness_csv(const std::vector<RobustnessPoint>& curve, SweepAxis axis);

/// Smallest worst-case absolute difference between the rows of `found` and
/// `expected` over all permutations of the columns of `found`.
/// `perm` receives the best permutation: found column perm[c] pairs with expected column c.
double best_relabelled_deviation(const std::vector<std::vector<double>>& found,
                                 const std::vector<std::vector<double>>& expected,
                                 std::vector<std::size_t>* perm = nullptr);

}  // namespace spm
