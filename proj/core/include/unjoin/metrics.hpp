#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unjoin/entropy_oracle.hpp"
#include "unjoin/join_tree.hpp"
#include "unjoin/relation.hpp"

namespace unjoin {

/// Exact size of the natural join of the relation's projections onto the
/// tree's bags, computed leaf-to-root without materializing the join:
/// each node's distinct projected tuples carry the count of subtree join
/// tuples they extend, and counts multiply across child separators.
/// 128-bit checked arithmetic; throws JoinCountOverflow beyond that, and
/// StructureError for an invalid tree or one not covering the relation.
unsigned __int128 acyclic_join_count(const Relation& rel, const JoinTree& tree);

struct SpuriousTuples {
    unsigned __int128 absolute = 0;  // join size minus N
    double percent = 0.0;            // 100 * absolute / N
};

/// Tuples present in the join of projections but absent from the relation.
SpuriousTuples spurious_tuples(const Relation& rel, const JoinTree& tree);

/// Percentage of cells saved when the relation is replaced by deduplicated
/// projections: 100 * (1 - sum_i |distinct R[bag_i]| * |bag_i| / (N * n)).
/// Negative when the decomposition stores more than the original.
double cell_savings_percent(const Relation& rel, const AcyclicSchema& schema);

int schema_width(const AcyclicSchema& schema);
/// Largest pairwise bag intersection; 0 for a single-relation schema.
int schema_int_width(const AcyclicSchema& schema);

struct SchemaReport {
    std::string schema_id;
    std::vector<AttributeSet> relations;
    double j_bits = 0.0;
    unsigned __int128 spurious_count = 0;
    double spurious_pct = 0.0;
    double cell_savings_pct = 0.0;
    int relation_count = 0;
    int width = 0;
    int int_width = 0;
};

SchemaReport evaluate_schema(const Relation& rel, const EntropyOracle& oracle,
                             const AcyclicSchema& schema, const JoinTree& tree,
                             std::string schema_id);

/// Indices of points not dominated on the (savings, spurious) plane: point i
/// is dropped iff some j has savings >= and spurious <= with at least one
/// strict. Input order preserved.
std::vector<std::size_t> pareto_indices(
    const std::vector<std::pair<double, double>>& savings_spurious);

/// Reports not dominated on the (savings, spurious) plane, sorted by
/// ascending spurious percentage (stable for ties).
std::vector<SchemaReport> pareto_front(std::vector<SchemaReport> reports);

/// Decimal rendering of the 128-bit counters used in reports.
std::string u128_to_string(unsigned __int128 v);

}  // namespace unjoin
