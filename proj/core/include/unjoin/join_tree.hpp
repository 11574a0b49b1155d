#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unjoin/attribute_set.hpp"
#include "unjoin/mvd.hpp"

namespace unjoin {

/// A tree of attribute bags. A valid join tree is connected, acyclic, and
/// satisfies the running intersection property: for every attribute, the
/// nodes whose bags contain it form a connected subtree.
struct JoinTree {
    std::vector<AttributeSet> bags;
    std::vector<std::pair<int, int>> edges;

    int node_count() const { return static_cast<int>(bags.size()); }
    AttributeSet all_attributes() const;
    AttributeSet edge_label(std::size_t e) const {
        return bags[static_cast<std::size_t>(edges[e].first)] &
               bags[static_cast<std::size_t>(edges[e].second)];
    }

    /// Empty string when valid, otherwise a description of the violation.
    std::string validate() const;
    bool is_valid() const { return validate().empty(); }

    /// Attribute sets of the two subtrees obtained by removing edge e,
    /// ordered (side of edge.first, side of edge.second).
    std::pair<AttributeSet, AttributeSet> split_by_edge(std::size_t e) const;

    static JoinTree single_node(AttributeSet bag) { return JoinTree{{bag}, {}}; }
};

/// A set of relation schemas (bags), none contained in another.
struct AcyclicSchema {
    std::vector<AttributeSet> relations;  // sorted ascending by bits

    static AcyclicSchema from_bags(std::vector<AttributeSet> bags);
    int relation_count() const { return static_cast<int>(relations.size()); }
    AttributeSet all_attributes() const;

    friend bool operator==(const AcyclicSchema&, const AcyclicSchema&) = default;
    friend bool operator<(const AcyclicSchema& a, const AcyclicSchema& b) {
        return a.relations < b.relations;
    }
};

/// Schema defined by a tree's bags.
AcyclicSchema schema_of(const JoinTree& tree);

/// One binary MVD per tree edge: key is the bag intersection, the dependents
/// are the attributes of the two subtrees minus the key. Returned in edge
/// order. Throws StructureError on an invalid tree.
std::vector<Mvd> mvd_support(const JoinTree& tree);

/// Builds a join tree for a bag set via a maximum-weight spanning tree on
/// pairwise intersection sizes, the classic acyclicity test: the schema is
/// acyclic iff the resulting tree satisfies running intersection. Throws
/// StructureError when the schema is not acyclic.
JoinTree join_tree_for(const AcyclicSchema& schema);

}  // namespace unjoin
