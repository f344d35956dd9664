#include "couplaw/graphs.hpp"

#include "couplaw/error.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

namespace couplaw {

namespace {

constexpr std::array<std::string_view, kCouplings.size()> kCouplingNames = {
    "inheritance", "interface_impl", "aggregation", "parameter", "return_type"};

struct RelationshipInfo {
    std::string_view label;
    std::string_view slug;
};

constexpr std::array<RelationshipInfo, kRelationships.size()> kRelationshipInfo = {{
    {"Number of Methods", "methods"},
    {"Number of Fields", "fields"},
    {"Number of Constructors", "constructors"},
    {"Subclasses", "subclasses"},
    {"Implemented Interfaces", "implemented-interfaces"},
    {"Interface Implementations", "interface-implementations"},
    {"References to class as a member", "member-references"},
    {"Members of class type", "members-of-class-type"},
    {"References to class as a parameter", "parameter-references"},
    {"Parameter-type class references", "parameter-type-references"},
    {"References to class as return type", "return-references"},
    {"Methods returning classes", "methods-returning-classes"},
}};

std::size_t index(Coupling c) { return static_cast<std::size_t>(c); }

}  // namespace

std::string_view coupling_name(Coupling c) { return kCouplingNames[index(c)]; }

std::optional<Coupling> coupling_from_name(std::string_view name) {
    for (auto c : kCouplings)
        if (coupling_name(c) == name) return c;
    return std::nullopt;
}

std::string_view relationship_name(Relationship r) { return kRelationshipInfo[static_cast<std::size_t>(r)].label; }

std::string_view relationship_slug(Relationship r) { return kRelationshipInfo[static_cast<std::size_t>(r)].slug; }

Relationship relationship_from_name(std::string_view name) {
    for (auto r : kRelationships)
        if (relationship_name(r) == name || relationship_slug(r) == name) return r;
    throw UnknownRelationship(std::string(name));
}

std::optional<NodeId> CouplingGraphs::id_of(const std::string& name) const {
    auto lookup = [&](auto first, auto last) -> std::optional<NodeId> {
        auto it = std::lower_bound(first, last, name);
        if (it != last && *it == name) return static_cast<NodeId>(it - nodes_.begin());
        return std::nullopt;
    };
    auto split = nodes_.begin() + static_cast<std::ptrdiff_t>(class_count_);
    if (auto id = lookup(nodes_.begin(), split)) return id;
    return lookup(split, nodes_.end());
}

std::vector<std::size_t> CouplingGraphs::in_degrees(Coupling c) const {
    std::vector<std::size_t> deg(nodes_.size(), 0);
    for (const auto& e : edges(c)) ++deg[e.target];
    return deg;
}

std::vector<std::size_t> CouplingGraphs::out_degrees(Coupling c) const {
    std::vector<std::size_t> deg(nodes_.size(), 0);
    for (const auto& e : edges(c)) ++deg[e.source];
    return deg;
}

CouplingGraphs build_graphs(const Corpus& corpus, const GraphOptions& options) {
    using NamePair = std::pair<std::string, std::string>;
    std::array<std::set<NamePair>, kCouplings.size()> named;
    std::set<std::string> external;
    std::vector<std::string> diagnostics;

    for (const auto& [name, cls] : corpus.classes()) {
        auto add = [&](Coupling c, const std::string& target, bool target_is_source) {
            if (is_primitive(target)) return;
            std::string resolved;
            if (auto r = corpus.resolve(name, target)) {
                resolved = *r;
            } else if (options.include_external) {
                resolved = target;
                external.insert(target);
            } else {
                return;
            }
            if (target_is_source) named[index(c)].emplace(resolved, name);
            else named[index(c)].emplace(name, resolved);
        };

        if (cls.superclass) {
            if (corpus.resolve(name, *cls.superclass) == name) diagnostics.push_back(name + " extends itself");
            else add(Coupling::Inheritance, *cls.superclass, true);
        }
        for (const auto& i : cls.interfaces) add(Coupling::InterfaceImpl, i, true);
        for (const auto& f : cls.fields) add(Coupling::Aggregation, f.type, false);
        for (const auto& k : cls.constructors)
            for (const auto& p : k.param_types) add(Coupling::Parameter, p, false);
        for (const auto& m : cls.methods) {
            for (const auto& p : m.param_types) add(Coupling::Parameter, p, false);
            add(Coupling::ReturnType, m.return_type, false);
        }
    }

    CouplingGraphs g;
    for (const auto& [name, cls] : corpus.classes()) g.nodes_.push_back(name);
    g.class_count_ = g.nodes_.size();
    // A corpus class never lands in `external`: resolution would have found it.
    g.nodes_.insert(g.nodes_.end(), external.begin(), external.end());

    for (auto c : kCouplings) {
        auto& edges = g.edges_[index(c)];
        for (const auto& [src, dst] : named[index(c)]) edges.push_back({*g.id_of(src), *g.id_of(dst)});
        std::sort(edges.begin(), edges.end());
    }

    // Each class has at most one superclass, so following parents from any
    // node either terminates or enters a cycle.
    std::vector<std::optional<NodeId>> parent(g.nodes_.size());
    for (const auto& e : g.edges(Coupling::Inheritance)) parent[e.target] = e.source;
    std::vector<int> state(g.nodes_.size(), 0);  // 0 unvisited, 1 on current walk, 2 done
    for (NodeId start = 0; start < g.nodes_.size(); ++start) {
        std::vector<NodeId> walk;
        std::optional<NodeId> at = start;
        while (at && state[*at] == 0) {
            state[*at] = 1;
            walk.push_back(*at);
            at = parent[*at];
        }
        if (at && state[*at] == 1) diagnostics.push_back("inheritance cycle through " + g.nodes_[*at]);
        for (auto n : walk) state[n] = 2;
    }
    g.diagnostics_ = std::move(diagnostics);
    return g;
}

void write_edge_list(const CouplingGraphs& graphs, std::ostream& out) {
    std::vector<std::string> lines;
    for (auto c : kCouplings) {
        for (const auto& e : graphs.edges(c)) {
            lines.push_back(std::string(coupling_name(c)) + '\t' + graphs.nodes()[e.source] + '\t' +
                            graphs.nodes()[e.target]);
        }
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out << l << '\n';
}

std::vector<std::size_t> DegreeSeries::values() const {
    std::vector<std::size_t> out;
    out.reserve(counts.size());
    for (const auto& [name, n] : counts) out.push_back(n);
    return out;
}

std::size_t DegreeSeries::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0},
                           [](std::size_t acc, const auto& entry) { return acc + entry.second; });
}

std::array<DegreeSeries, 3> member_counts(const Corpus& corpus) {
    std::array<DegreeSeries, 3> out{DegreeSeries{Relationship::Methods, {}}, DegreeSeries{Relationship::Fields, {}},
                                    DegreeSeries{Relationship::Constructors, {}}};
    for (const auto& [name, cls] : corpus.classes()) {
        out[0].counts.emplace_back(name, cls.methods.size());
        out[1].counts.emplace_back(name, cls.fields.size());
        out[2].counts.emplace_back(name, cls.constructors.size());
    }
    return out;
}

DegreeSeries degree_series(const Corpus& corpus, const CouplingGraphs& graphs, Relationship r) {
    switch (r) {
        case Relationship::Methods: return member_counts(corpus)[0];
        case Relationship::Fields: return member_counts(corpus)[1];
        case Relationship::Constructors: return member_counts(corpus)[2];
        default: break;
    }

    auto from = [&](Coupling c, bool incoming) {
        auto deg = incoming ? graphs.in_degrees(c) : graphs.out_degrees(c);
        DegreeSeries s{r, {}};
        s.counts.reserve(graphs.class_count());
        for (NodeId i = 0; i < graphs.class_count(); ++i) s.counts.emplace_back(graphs.nodes()[i], deg[i]);
        return s;
    };

    switch (r) {
        case Relationship::Subclasses: return from(Coupling::Inheritance, false);
        case Relationship::ImplementedInterfaces: return from(Coupling::InterfaceImpl, true);
        case Relationship::InterfaceImplementations: return from(Coupling::InterfaceImpl, false);
        case Relationship::MemberReferences: return from(Coupling::Aggregation, false);
        case Relationship::MembersOfClassType: return from(Coupling::Aggregation, true);
        case Relationship::ParameterReferences: return from(Coupling::Parameter, true);
        case Relationship::ParameterTypeReferences: return from(Coupling::Parameter, false);
        case Relationship::ReturnReferences: return from(Coupling::ReturnType, true);
        case Relationship::MethodsReturningClasses: return from(Coupling::ReturnType, false);
        default: break;
    }
    throw UnknownRelationship(std::to_string(static_cast<int>(r)));
}

std::array<DegreeSeries, kRelationships.size()> all_series(const Corpus& corpus, const CouplingGraphs& graphs) {
    std::array<DegreeSeries, kRelationships.size()> out;
    for (std::size_t i = 0; i < kRelationships.size(); ++i) out[i] = degree_series(corpus, graphs, kRelationships[i]);
    return out;
}

}  // namespace couplaw
