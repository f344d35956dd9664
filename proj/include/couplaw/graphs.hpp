#pragma once

#include "couplaw/ingest.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace couplaw {

enum class Coupling { Inheritance, InterfaceImpl, Aggregation, Parameter, ReturnType };

inline constexpr std::array kCouplings = {Coupling::Inheritance, Coupling::InterfaceImpl, Coupling::Aggregation,
                                          Coupling::Parameter, Coupling::ReturnType};

std::string_view coupling_name(Coupling c);
std::optional<Coupling> coupling_from_name(std::string_view name);

using NodeId = std::uint32_t;

struct Edge {
    NodeId source;
    NodeId target;

    auto operator<=>(const Edge&) const = default;
};

struct GraphOptions {
    // Keep unresolved targets as extra leaf nodes instead of dropping them.
    bool include_external = false;
};

// Five deduplicated directed graphs over one node set. Nodes [0, class_count)
// are the corpus classes in name order; any external nodes follow, also in
// name order. Edge orientation:
//   inheritance     superclass -> subclass
//   interface_impl  interface  -> implementing class (or extending interface)
//   aggregation     container  -> field type
//   parameter       declarer   -> parameter type (methods and constructors)
//   return_type     declarer   -> return type
class CouplingGraphs {
public:
    const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    std::size_t class_count() const noexcept { return class_count_; }
    bool is_external(NodeId id) const noexcept { return id >= class_count_; }

    const std::vector<Edge>& edges(Coupling c) const { return edges_[static_cast<std::size_t>(c)]; }
    std::optional<NodeId> id_of(const std::string& name) const;

    std::vector<std::size_t> in_degrees(Coupling c) const;
    std::vector<std::size_t> out_degrees(Coupling c) const;

    // Inheritance cycles and self-extension, one line each.
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

    bool operator==(const CouplingGraphs&) const = default;

private:
    friend CouplingGraphs build_graphs(const Corpus&, const GraphOptions&);

    std::vector<std::string> nodes_;
    std::size_t class_count_ = 0;
    std::array<std::vector<Edge>, kCouplings.size()> edges_;
    std::vector<std::string> diagnostics_;
};

CouplingGraphs build_graphs(const Corpus& corpus, const GraphOptions& options = {});

// "coupling<TAB>source<TAB>target" per edge, lines sorted bytewise.
void write_edge_list(const CouplingGraphs& graphs, std::ostream& out);

enum class Relationship {
    Methods,
    Fields,
    Constructors,
    Subclasses,
    ImplementedInterfaces,
    InterfaceImplementations,
    MemberReferences,
    MembersOfClassType,
    ParameterReferences,
    ParameterTypeReferences,
    ReturnReferences,
    MethodsReturningClasses,
};

// Canonical report order.
inline constexpr std::array kRelationships = {
    Relationship::Methods,
    Relationship::Fields,
    Relationship::Constructors,
    Relationship::Subclasses,
    Relationship::ImplementedInterfaces,
    Relationship::InterfaceImplementations,
    Relationship::MemberReferences,
    Relationship::MembersOfClassType,
    Relationship::ParameterReferences,
    Relationship::ParameterTypeReferences,
    Relationship::ReturnReferences,
    Relationship::MethodsReturningClasses,
};

// Report label, e.g. "Members of class type".
std::string_view relationship_name(Relationship r);
// File-name friendly form, e.g. "members-of-class-type".
std::string_view relationship_slug(Relationship r);
// Accepts a label or a slug. Throws UnknownRelationship.
Relationship relationship_from_name(std::string_view name);

struct DegreeSeries {
    Relationship relationship;
    // One entry per corpus class, in name order; zeros included.
    std::vector<std::pair<std::string, std::size_t>> counts;

    std::vector<std::size_t> values() const;
    std::size_t total() const;
};

// Methods, fields and constructors declared by each class.
std::array<DegreeSeries, 3> member_counts(const Corpus& corpus);

DegreeSeries degree_series(const Corpus& corpus, const CouplingGraphs& graphs, Relationship r);

std::array<DegreeSeries, kRelationships.size()> all_series(const Corpus& corpus, const CouplingGraphs& graphs);

}  // namespace couplaw
