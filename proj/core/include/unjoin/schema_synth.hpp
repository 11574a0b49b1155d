#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "unjoin/entropy_oracle.hpp"
#include "unjoin/join_tree.hpp"
#include "unjoin/miner.hpp"
#include "unjoin/mvd.hpp"

namespace unjoin {

/// Whether two MVDs can coexist in the support of one acyclic schema: there
/// must be a dependent index i of phi and j of psi such that (1) each key is
/// covered by the other MVD's key plus that dependent, and (2) the covering
/// sets each intersect at least two dependents of the other MVD.
bool compatible(const Mvd& phi, const Mvd& psi);

/// Undirected graph on MVD indices; adjacency marks *in*compatibility.
struct IncompatibilityGraph {
    std::vector<Mvd> vertices;               // canonical order
    std::vector<std::vector<char>> adjacent;  // symmetric, no self loops

    std::size_t edge_count() const;
};

IncompatibilityGraph build_incompatibility_graph(std::vector<Mvd> mvds);

/// Streams the maximal independent sets of a graph in lexicographic order
/// (vertex lists ascending). Classic queue-and-dictionary scheme: each
/// output set spawns candidate prefixes that are greedily completed, giving
/// polynomial delay per set.
class MaxIndependentSetEnumerator {
public:
    explicit MaxIndependentSetEnumerator(const IncompatibilityGraph& graph);

    /// Next maximal independent set (vertex indices ascending), or nullopt
    /// when exhausted.
    std::optional<std::vector<int>> next();

private:
    bool adjacent(int u, int v) const {
        return graph_->adjacent[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != 0;
    }
    std::vector<int> complete(std::vector<int> partial) const;

    const IncompatibilityGraph* graph_;
    std::set<std::vector<int>> queue_;
    std::set<std::vector<int>> seen_;
};

struct BuildResult {
    AcyclicSchema schema;
    JoinTree tree;
    /// Indices into the input set of the MVDs actually applied (the rest
    /// were redundant: they did not split any relation).
    std::vector<std::size_t> applied;
    /// Some key or subtree placement was ambiguous and resolved by the
    /// deterministic first-candidate rule.
    bool ambiguous_placement = false;
};

/// Splits {Omega} by the given pairwise-compatible MVDs in ascending key
/// cardinality, maintaining a join tree alongside. Throws
/// IncompatibleMvdsError when a placement is impossible.
BuildResult build_acyclic_schema(const std::vector<Mvd>& mvds, AttributeSet omega);

struct SchemaResult {
    AcyclicSchema schema;
    JoinTree tree;
    double j_bits = 0.0;
    std::vector<Mvd> support_mvds;  // support of the emitted tree
    bool ambiguous_placement = false;
};

struct EnumerateLimits {
    std::size_t max_schemas = SIZE_MAX;
    Deadline deadline;
};

struct EnumerationResult {
    std::vector<SchemaResult> schemas;
    bool truncated = false;
};

/// For every maximal independent set of the incompatibility graph over M,
/// synthesizes the schema, evaluates its exact J via the oracle, and emits
/// it. Schemas are deduplicated by relation set (redundant-MVD skips can
/// make distinct sets synthesize the same schema). Deterministic order.
EnumerationResult enumerate_schemas(const std::vector<Mvd>& mvds, const EntropyOracle& oracle,
                                    const EnumerateLimits& limits = {});

}  // namespace unjoin
