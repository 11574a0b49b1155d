#pragma once

#include <cstdint>
#include <vector>

#include "unjoin/attribute_set.hpp"
#include "unjoin/relation.hpp"

namespace unjoin {

/// Compressed group index for one attribute set: the rows are partitioned by
/// their projected value tuple and only groups of size >= 2 are kept
/// (singleton groups contribute nothing to the entropy sum). Each group
/// carries a 64-bit value fingerprint used as its bucket key; the tid lists
/// are the ground truth for group identity, so fingerprint collisions can
/// never merge two distinct groups.
class PartitionTable {
public:
    struct Group {
        std::uint64_t val = 0;               // value fingerprint (bucket key)
        std::vector<std::uint32_t> tids;     // ascending, size >= 2
    };

    PartitionTable() = default;

    /// Groups rows of `rel` by their projection onto `attrs`.
    static PartitionTable build(const Relation& rel, AttributeSet attrs);

    /// Table for the empty attribute set: one group holding every tid
    /// (empty when N < 2, since singleton groups are stripped).
    static PartitionTable for_empty_set(std::uint64_t row_count);

    AttributeSet attrs() const { return attrs_; }
    const std::vector<Group>& groups() const { return groups_; }
    std::size_t group_count() const { return groups_.size(); }
    /// Total number of tids across groups.
    std::uint64_t stripped_size() const;

    /// Sum of c * log2(c) over group sizes c; the non-constant part of the
    /// entropy formula.
    double sum_count_log_count() const;

    /// Approximate heap footprint, used for memory budgeting.
    std::size_t byte_size() const;

private:
    friend PartitionTable compose(const PartitionTable&, const PartitionTable&);
    AttributeSet attrs_;
    std::vector<Group> groups_;
};

/// Joins two tables on tuple id, producing the table for the union of their
/// attribute sets; groups that shrink below 2 tids are dropped. Group order
/// and tid order are deterministic. Throws StructureError if the attribute
/// sets overlap.
PartitionTable compose(const PartitionTable& left, const PartitionTable& right);

}  // namespace unjoin
