#include "couplaw/robustness.hpp"

#include "couplaw/error.hpp"
#include "couplaw/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace couplaw {

ReachabilityGraph::ReachabilityGraph(const CouplingGraphs& graphs) : names_(graphs.nodes()) {
    std::vector<Edge> all;
    for (auto c : kCouplings) all.insert(all.end(), graphs.edges(c).begin(), graphs.edges(c).end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    offsets_.assign(names_.size() + 1, 0);
    in_degree_.assign(names_.size(), 0);
    for (const auto& e : all) {
        ++offsets_[e.source + 1];
        ++in_degree_[e.target];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    targets_.reserve(all.size());
    for (const auto& e : all) targets_.push_back(e.target);  // already grouped by source
}

std::vector<NodeId> ReachabilityGraph::default_roots() const {
    std::vector<NodeId> roots;
    for (NodeId n = 0; n < node_count(); ++n)
        if (in_degree_[n] == 0) roots.push_back(n);
    return roots;
}

double ReachabilityGraph::reachable_fraction(const std::vector<NodeId>& roots, const std::vector<bool>& removed) const {
    if (node_count() == 0) return 0.0;
    std::vector<bool> seen(node_count(), false);
    std::vector<NodeId> stack;
    for (NodeId r : roots) {
        if (!removed[r] && !seen[r]) {
            seen[r] = true;
            stack.push_back(r);
        }
    }
    std::size_t reached = stack.size();
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        for (std::size_t i = offsets_[n]; i < offsets_[n + 1]; ++i) {
            NodeId t = targets_[i];
            if (removed[t] || seen[t]) continue;
            seen[t] = true;
            ++reached;
            stack.push_back(t);
        }
    }
    return static_cast<double>(reached) / static_cast<double>(node_count());
}

namespace {

NodeId require_node(const CouplingGraphs& graphs, const std::string& name) {
    auto id = graphs.id_of(name);
    if (!id) throw InvalidParams("not a graph node: " + name);
    return *id;
}

std::vector<NodeId> resolve_roots(const CouplingGraphs& graphs, const ReachabilityGraph& g,
                                  const std::optional<std::vector<std::string>>& roots) {
    if (!roots) return g.default_roots();
    std::vector<NodeId> out;
    for (const auto& r : *roots) out.push_back(require_node(graphs, r));
    return out;
}

}  // namespace

double reachable_fraction(const CouplingGraphs& graphs, const std::vector<std::string>& roots,
                          const std::set<std::string>& removed) {
    ReachabilityGraph g(graphs);
    std::vector<bool> mask(g.node_count(), false);
    for (const auto& r : removed) mask[require_node(graphs, r)] = true;
    return g.reachable_fraction(resolve_roots(graphs, g, roots), mask);
}

std::string_view removal_mode_name(RemovalMode mode) {
    return mode == RemovalMode::Random ? "random" : "targeted";
}

RemovalExperiment run_experiment(const CouplingGraphs& graphs, RemovalExperiment experiment) {
    if (!(experiment.fraction >= 0.0 && experiment.fraction <= 1.0))
        throw InvalidParams("removal fraction must lie in [0, 1]");
    if (experiment.trials == 0) throw InvalidParams("at least one trial is required");

    ReachabilityGraph g(graphs);
    const std::size_t n = g.node_count();
    const std::vector<NodeId> roots = resolve_roots(graphs, g, experiment.roots);
    // The epsilon keeps fraction * n from landing just under an integer.
    const auto k = std::min(n, static_cast<std::size_t>(std::floor(experiment.fraction * static_cast<double>(n) + 1e-9)));
    experiment.results.clear();

    if (experiment.mode == RemovalMode::TargetedByDegree) {
        std::vector<NodeId> order(n);
        std::iota(order.begin(), order.end(), NodeId{0});
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            if (g.total_degree(a) != g.total_degree(b)) return g.total_degree(a) > g.total_degree(b);
            return g.names()[a] < g.names()[b];
        });
        std::vector<bool> removed(n, false);
        for (std::size_t i = 0; i < k; ++i) removed[order[i]] = true;
        experiment.results.push_back(g.reachable_fraction(roots, removed));
        return experiment;
    }

    std::vector<NodeId> ids(n);
    for (std::size_t trial = 0; trial < experiment.trials; ++trial) {
        Xorshift64Star rng(experiment.rng_seed ^ splitmix64(trial));
        std::iota(ids.begin(), ids.end(), NodeId{0});
        std::vector<bool> removed(n, false);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(ids[i], ids[j]);
            removed[ids[i]] = true;
        }
        experiment.results.push_back(g.reachable_fraction(roots, removed));
    }
    return experiment;
}

void write_experiment(const RemovalExperiment& experiment, std::ostream& out) {
    for (std::size_t t = 0; t < experiment.results.size(); ++t) {
        out << fmt::format("{}\t{:.4f}\t{}\t{:.4f}\n", removal_mode_name(experiment.mode), experiment.fraction, t,
                           experiment.results[t]);
    }
}

}  // namespace couplaw
