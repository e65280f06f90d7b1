#include "spm/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "spm/model.hpp"
#include "spm/random.hpp"

namespace spm {

namespace {

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

}  // namespace

SyntheticSpec SyntheticSpec::uniform(std::size_t c, std::size_t n, std::size_t degree, double p_in, double p_plus,
                                     double p_minus, std::uint64_t seed) {
    return SyntheticSpec{std::vector<std::size_t>(c, n), degree, p_in, p_plus, p_minus, seed};
}

std::size_t SyntheticSpec::node_count() const noexcept {
    return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

void SyntheticSpec::validate() const {
    if (sizes.size() < 2) throw PreconditionError("a synthetic network needs at least 2 communities");
    for (const auto s : sizes) {
        if (s < 2) throw PreconditionError("every community needs at least 2 nodes");
    }
    for (const double p : {p_in, p_plus, p_minus}) {
        if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("probabilities must lie in [0, 1]");
    }
    const std::size_t n = node_count();
    if (degree < 1 || degree >= n) throw PreconditionError("degree must lie in [1, n)");
    const std::size_t smallest = *std::min_element(sizes.begin(), sizes.end());
    const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
    if (p_in == 1.0 && degree > smallest - 1) {
        throw PreconditionError("degree " + std::to_string(degree) + " cannot be reached inside a community of " +
                                std::to_string(smallest) + " nodes");
    }
    if (p_in == 0.0 && degree > n - largest) {
        throw PreconditionError("degree " + std::to_string(degree) + " cannot be reached across communities");
    }
}

std::string SyntheticSpec::name() const {
    std::string sz;
    const bool equal = std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s == sizes.front(); });
    if (equal) {
        sz = std::to_string(sizes.front());
    } else {
        sz = "(";
        for (std::size_t c = 0; c < sizes.size(); ++c) sz += (c ? "," : "") + std::to_string(sizes[c]);
        sz += ")";
    }
    return "SG(" + std::to_string(sizes.size()) + "," + sz + "," + std::to_string(degree) + "," +
           format_probability(p_in) + "," + format_probability(p_plus) + "," + format_probability(p_minus) + ")";
}

SyntheticGraph generate(const SyntheticSpec& spec) {
    spec.validate();
    const std::size_t c = spec.community_count();
    const std::size_t n = spec.node_count();

    std::vector<std::size_t> community(n);
    std::vector<std::vector<NodeId>> inside(c);
    for (std::size_t label = 0, node = 0; label < c; ++label) {
        for (std::size_t k = 0; k < spec.sizes[label]; ++k, ++node) {
            community[node] = label;
            inside[label].push_back(node);
        }
    }
    std::vector<std::vector<NodeId>> outside(c);
    for (std::size_t label = 0; label < c; ++label) {
        for (NodeId node = 0; node < n; ++node) {
            if (community[node] != label) outside[label].push_back(node);
        }
    }

    Rng rng(spec.seed);
    std::vector<std::vector<NodeId>> adjacency(n);
    struct Drawn {
        NodeId i;
        NodeId j;
        double weight;
    };
    std::vector<Drawn> drawn;
    drawn.reserve(n * spec.degree / 2);

    const auto adjacent = [&](NodeId u, NodeId v) {
        const auto& list = adjacency[u];
        return std::find(list.begin(), list.end(), v) != list.end();
    };

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t a = n; a > 1; --a) std::swap(order[a - 1], order[rng.below(a)]);

    for (const NodeId u : order) {
        while (adjacency[u].size() < spec.degree) {
            const bool within = rng.bernoulli(spec.p_in);
            const auto& pool = within ? inside[community[u]] : outside[community[u]];
            NodeId partner = u;
            bool placed = false;
            for (int attempt = 0; attempt < kMaxStubAttempts; ++attempt) {
                partner = pool[rng.below(pool.size())];
                if (partner != u && !adjacent(u, partner) && adjacency[partner].size() < spec.degree) {
                    placed = true;
                    break;
                }
            }
            if (!placed) break;
            adjacency[u].push_back(partner);
            adjacency[partner].push_back(u);
            const bool negative = within ? rng.bernoulli(spec.p_minus) : !rng.bernoulli(spec.p_plus);
            drawn.push_back({u, partner, negative ? -1.0 : 1.0});
        }
    }

    GraphBuilder builder;
    builder.add_indexed_nodes(n, 0);
    for (const auto& e : drawn) builder.add_edge(e.i, e.j, e.weight);
    return SyntheticGraph{std::move(builder).build(), Partition(std::move(community), c), spec.has_ground_truth()};
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "p_in") return SweepAxis::p_in;
    if (name == "p_plus") return SweepAxis::p_plus;
    if (name == "p_minus") return SweepAxis::p_minus;
    if (name == "joint") return SweepAxis::joint;
    throw PreconditionError("unknown sweep axis '" + std::string(name) + "' (expected p_in, p_plus, p_minus, joint)");
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::p_in: return "p_in";
        case SweepAxis::p_plus: return "p_plus";
        case SweepAxis::p_minus: return "p_minus";
        case SweepAxis::joint: return "joint";
    }
    return "?";
}

std::vector<SweepInstance> sweep_specs(const SyntheticSpec& base, SweepAxis axis, const std::vector<double>& values,
                                       std::size_t replicates) {
    if (values.empty()) throw PreconditionError("sweep needs at least one value");
    if (replicates < 1) throw PreconditionError("sweep needs at least one replicate");

    std::vector<std::pair<double, double>> grid;
    if (axis == SweepAxis::joint) {
        for (const double a : values) {
            for (const double b : values) grid.emplace_back(a, b);
        }
    } else {
        for (const double a : values) grid.emplace_back(a, 0.0);
    }

    std::vector<SweepInstance> out;
    out.reserve(grid.size() * replicates);
    for (std::size_t point = 0; point < grid.size(); ++point) {
        for (std::size_t rep = 0; rep < replicates; ++rep) {
            SweepInstance item;
            item.value = grid[point].first;
            item.secondary = grid[point].second;
            item.replicate = rep;
            item.spec = base;
            switch (axis) {
                case SweepAxis::p_in: item.spec.p_in = item.value; break;
                case SweepAxis::p_plus: item.spec.p_plus = item.value; break;
                case SweepAxis::p_minus: item.spec.p_minus = item.value; break;
                case SweepAxis::joint:
                    item.spec.p_plus = item.value;
                    item.spec.p_minus = item.secondary;
                    break;
            }
            item.spec.seed = derive_seed(base.seed, point, rep);
            item.spec.validate();
            out.push_back(std::move(item));
        }
    }
    return out;
}

std::vector<SweepInstance> sweep(const SyntheticSpec& base, SweepAxis axis, const std::vector<double>& values,
                                 std::size_t replicates) {
    auto out = sweep_specs(base, axis, values, replicates);
    for (auto& item : out) item.instance = generate(item.spec);
    return out;
}

}  // namespace spm
