#pragma once

#include "couplaw/graphs.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace couplaw {

// Union of the five coupling graphs, edges kept source -> target, as
// compressed adjacency.
class ReachabilityGraph {
public:
    explicit ReachabilityGraph(const CouplingGraphs& graphs);

    std::size_t node_count() const noexcept { return offsets_.size() - 1; }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::size_t in_degree(NodeId n) const { return in_degree_[n]; }
    std::size_t total_degree(NodeId n) const { return offsets_[n + 1] - offsets_[n] + in_degree_[n]; }

    // Nodes nothing points to, standing in for program entry points.
    std::vector<NodeId> default_roots() const;

    // Share of all nodes reachable from the surviving roots without passing
    // through a removed node.
    double reachable_fraction(const std::vector<NodeId>& roots, const std::vector<bool>& removed) const;

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<std::size_t> in_degree_;
};

// Name-based form. Throws InvalidParams for names that are not nodes.
double reachable_fraction(const CouplingGraphs& graphs, const std::vector<std::string>& roots,
                          const std::set<std::string>& removed);

enum class RemovalMode { Random, TargetedByDegree };

std::string_view removal_mode_name(RemovalMode mode);

struct RemovalExperiment {
    RemovalMode mode = RemovalMode::Random;
    double fraction = 0.1;
    std::size_t trials = 1;
    std::uint64_t rng_seed = 42;
    // Absent means every node with union indegree 0.
    std::optional<std::vector<std::string>> roots;
    // One entry per trial once run; targeted mode runs a single trial.
    std::vector<double> results;
};

// Random mode removes floor(fraction * |V|) nodes drawn uniformly per trial,
// trial t using the stream seeded by rng_seed ^ splitmix64(t). Targeted mode
// removes that many nodes of highest union degree, ties broken by name.
RemovalExperiment run_experiment(const CouplingGraphs& graphs, RemovalExperiment experiment);

// "mode<TAB>fraction<TAB>trial<TAB>reachable_fraction" per trial.
void write_experiment(const RemovalExperiment& experiment, std::ostream& out);

}  // namespace couplaw
