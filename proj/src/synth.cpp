#include "couplaw/synth.hpp"

#include "couplaw/error.hpp"
#include "couplaw/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace couplaw {

void validate(const SynthParams& p) {
    if (p.seed_size < 2) throw InvalidParams("seed_size must be at least 2");
    if (p.n_classes < p.seed_size) throw InvalidParams("n_classes must be at least seed_size");
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) throw InvalidParams("alpha must lie in [0, 1]");
    if (!(p.interface_fraction >= 0.0 && p.interface_fraction <= 1.0))
        throw InvalidParams("interface_fraction must lie in [0, 1]");
    if (auto it = p.edges_per_class.find(Coupling::Inheritance); it != p.edges_per_class.end() && it->second > 1)
        throw InvalidParams("a class has at most one superclass");
}

namespace {

// Attachment state for one coupling type: who may be targeted, and a ticket
// list in which every eligible node appears indeg + 1 times.
struct Attachment {
    std::vector<NodeId> eligible;
    std::vector<NodeId> tickets;

    void admit(NodeId n) {
        eligible.push_back(n);
        tickets.push_back(n);
    }

    NodeId draw(Xorshift64Star& rng, double alpha) {
        if (rng.uniform() < alpha) return eligible[rng.below(eligible.size())];
        return tickets[rng.below(tickets.size())];
    }

    std::vector<NodeId> draw_distinct(Xorshift64Star& rng, double alpha, std::size_t m) {
        if (m >= eligible.size()) return eligible;
        std::vector<NodeId> picked;
        while (picked.size() < m) {
            NodeId t = draw(rng, alpha);
            if (std::find(picked.begin(), picked.end(), t) == picked.end()) picked.push_back(t);
        }
        return picked;
    }
};

struct Node {
    bool is_interface = false;
    std::array<std::vector<NodeId>, kCouplings.size()> targets;
};

}  // namespace

Corpus generate(const SynthParams& params) {
    validate(params);
    Xorshift64Star rng(params.rng_seed);
    const std::size_t width = fmt::format("{}", params.n_classes - 1).size();
    auto name_of = [&](NodeId i) { return fmt::format("S{:0{}}", i, width); };
    auto m_of = [&](Coupling c) {
        auto it = params.edges_per_class.find(c);
        return it == params.edges_per_class.end() ? std::size_t{0} : it->second;
    };

    std::vector<Node> nodes(params.n_classes);
    std::array<Attachment, kCouplings.size()> pools;
    auto pool = [&](Coupling c) -> Attachment& { return pools[static_cast<std::size_t>(c)]; };
    auto admit = [&](NodeId n) {
        for (auto c : kCouplings) {
            if (c == Coupling::Inheritance && nodes[n].is_interface) continue;
            if (c == Coupling::InterfaceImpl && !nodes[n].is_interface) continue;
            pool(c).admit(n);
        }
    };

    for (NodeId j = 0; j < params.seed_size; ++j) {
        for (NodeId i = 0; i < j; ++i) {
            nodes[j].targets[static_cast<std::size_t>(Coupling::Aggregation)].push_back(i);
            pool(Coupling::Aggregation).tickets.push_back(i);
        }
    }
    for (NodeId j = 0; j < params.seed_size; ++j) admit(j);

    for (auto j = static_cast<NodeId>(params.seed_size); j < params.n_classes; ++j) {
        Node& node = nodes[j];
        node.is_interface = rng.uniform() < params.interface_fraction;
        for (auto c : kCouplings) {
            std::size_t m = m_of(c);
            if (m == 0 || (c == Coupling::Inheritance && node.is_interface)) continue;
            node.targets[static_cast<std::size_t>(c)] = pool(c).draw_distinct(rng, params.alpha, m);
        }
        // Degrees move only after the whole class is drawn.
        for (auto c : kCouplings)
            for (NodeId t : node.targets[static_cast<std::size_t>(c)]) pool(c).tickets.push_back(t);
        admit(j);
    }

    SourceUnit unit;
    unit.file = "<synthetic>";
    for (NodeId j = 0; j < params.n_classes; ++j) {
        const Node& node = nodes[j];
        ClassSummary cls;
        cls.qualified_name = name_of(j);
        cls.kind = node.is_interface ? TypeKind::Interface : TypeKind::Class;
        auto targets = [&](Coupling c) -> const std::vector<NodeId>& {
            return node.targets[static_cast<std::size_t>(c)];
        };
        if (!targets(Coupling::Inheritance).empty()) cls.superclass = name_of(targets(Coupling::Inheritance)[0]);
        for (NodeId t : targets(Coupling::InterfaceImpl)) cls.interfaces.push_back(name_of(t));
        std::sort(cls.interfaces.begin(), cls.interfaces.end());
        std::size_t k = 0;
        for (NodeId t : targets(Coupling::Aggregation)) cls.fields.push_back({fmt::format("f{}", k++), name_of(t)});
        if (!targets(Coupling::Parameter).empty()) {
            Method accept{"accept", "void", {}};
            for (NodeId t : targets(Coupling::Parameter)) accept.param_types.push_back(name_of(t));
            cls.methods.push_back(std::move(accept));
        }
        k = 0;
        for (NodeId t : targets(Coupling::ReturnType)) cls.methods.push_back({fmt::format("get{}", k++), name_of(t), {}});
        unit.classes.push_back(std::move(cls));
    }
    std::vector<SourceUnit> units;
    units.push_back(std::move(unit));
    return Corpus::from_units(std::move(units));
}

std::vector<std::uint64_t> sample_power_law(double a, std::size_t n, std::uint64_t x_max, std::uint64_t rng_seed) {
    if (!(a > 1.0) || !std::isfinite(a)) throw InvalidParams("power-law exponent must exceed 1");
    if (n == 0) throw InvalidParams("sample size must be positive");
    if (x_max == 0 || x_max > 100'000'000) throw InvalidParams("x_max must lie in [1, 1e8]");

    std::vector<double> cdf(x_max);
    double total = 0.0;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        total += std::pow(static_cast<double>(x), -a);
        cdf[x - 1] = total;
    }
    for (auto& c : cdf) c /= total;
    cdf.back() = 1.0;

    Xorshift64Star rng(rng_seed);
    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.uniform();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out.push_back(static_cast<std::uint64_t>(it - cdf.begin()) + 1);
    }
    return out;
}

}  // namespace couplaw
