#pragma once

// Independent reference implementations used as test oracles. Everything
// here goes through Relation::project_counts and set materialization only;
// none of it touches the partition-table oracle, so agreement between the
// two paths is meaningful.

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "unjoin/attribute_set.hpp"
#include "unjoin/join_tree.hpp"
#include "unjoin/mvd.hpp"
#include "unjoin/relation.hpp"

namespace unjoin::testsupport {

/// Group-by entropy with memoization.
class NaiveEntropy {
public:
    explicit NaiveEntropy(const Relation& rel) : rel_(&rel) {}

    double entropy(AttributeSet attrs) const;
    double cmi(AttributeSet y, AttributeSet z, AttributeSet x) const;
    double j_mvd(const Mvd& mvd) const;
    double j_tree(const JoinTree& tree) const;
    const Relation& relation() const { return *rel_; }

private:
    const Relation* rel_;
    mutable std::unordered_map<AttributeSet, double, AttributeSetHash> memo_;
};

/// Whether some MVD with key `s` separating a and b holds within epsilon.
/// Merging dependents never increases J, so it is enough to scan the binary
/// bipartitions of the non-key attributes that keep a and b apart.
bool naive_separates(const NaiveEntropy& h, AttributeSet s, double epsilon, int a, int b);

/// All inclusion-minimal separating sets for (a, b), by exhaustive scan over
/// subsets of the non-pair attributes. Sorted by (size, bits).
std::vector<AttributeSet> brute_min_seps(const NaiveEntropy& h, double epsilon, int a, int b);

/// All full MVDs with key s separating a and b within epsilon, by exhaustive
/// enumeration of the set partitions of the non-key attributes. Fullness is
/// checked by splitting each dependent in every way. Sorted canonically.
std::vector<Mvd> brute_full_mvds(const NaiveEntropy& h, AttributeSet s, double epsilon,
                                 int a, int b);

/// Materialized natural join of the relation's projections onto the given
/// bags. Rows are full-width code tuples; attribute positions not covered
/// yet are meaningless until the join covers them.
struct MaterializedJoin {
    AttributeSet attrs;
    std::vector<std::vector<std::uint32_t>> rows;  // codes indexed by position in attrs
};
MaterializedJoin materialize_join(const Relation& rel, const std::vector<AttributeSet>& bags);

std::uint64_t naive_join_size(const Relation& rel, const JoinTree& tree);

}  // namespace unjoin::testsupport
