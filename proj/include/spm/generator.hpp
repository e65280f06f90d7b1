#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spm/graph.hpp"
#include "spm/partition.hpp"

namespace spm {

/// Configuration of a planted signed network SG(c, (n_1..n_c), k, p_in, p+, p-).
///
/// Each node aims for `degree` edges. A proposed edge stays inside the
/// node's community with probability `p_in`. Inside edges are negative with
/// probability `p_minus`; cross edges are positive with probability `p_plus`.
struct SyntheticSpec {
    std::vector<std::size_t> sizes;
    std::size_t degree = 16;
    double p_in = 0.8;
    double p_plus = 0.0;
    double p_minus = 0.0;
    std::uint64_t seed = 0;

    /// c communities of n nodes each.
    static SyntheticSpec uniform(std::size_t c, std::size_t n, std::size_t degree, double p_in, double p_plus,
                                 double p_minus, std::uint64_t seed = 0);

    std::size_t community_count() const noexcept { return sizes.size(); }
    std::size_t node_count() const noexcept;

    /// Noise above 0.5 on either sign leaves no recoverable ground truth.
    bool has_ground_truth() const noexcept { return p_plus <= 0.5 && p_minus <= 0.5 && p_in > 0.0; }

    /// Throws PreconditionError when the spec is invalid or infeasible.
    void validate() const;

    /// Short form used in reports, e.g. "SG(4,30,16,0.8,0,0)".
    std::string name() const;
};

struct SyntheticGraph {
    SignedGraph graph;
    Partition truth;
    bool has_ground_truth = true;
};

/// Attempts per stub before the node settles for a lower degree.
inline constexpr int kMaxStubAttempts = 100;

/// Draws one instance. Nodes are labelled 0..n-1, community by community, and
/// propose their stubs in a seeded random order.
SyntheticGraph generate(const SyntheticSpec& spec);

enum class SweepAxis { p_in, p_plus, p_minus, joint };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepInstance {
    double value = 0.0;      // axis value (p_plus for the joint axis)
    double secondary = 0.0;  // p_minus for the joint axis, otherwise unused
    std::size_t replicate = 0;
    SyntheticSpec spec;
    SyntheticGraph instance;
};

/// Deterministic grid of instances. For the joint axis the grid is the
/// Cartesian product values x values over (p_plus, p_minus). Each instance
/// gets a seed derived from the template seed, its grid position and replicate.
std::vector<SweepInstance> sweep(const SyntheticSpec& base, SweepAxis axis, const std::vector<double>& values,
                                 std::size_t replicates);

/// Grid specs without generating graphs; used by callers that stream instances.
std::vector<SweepInstance> sweep_specs(const SyntheticSpec& base, SweepAxis axis, const std::vector<double>& values,
                                       std::size_t replicates);

}  // namespace spm
