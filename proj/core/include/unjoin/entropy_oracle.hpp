#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "unjoin/attribute_set.hpp"
#include "unjoin/join_tree.hpp"
#include "unjoin/mvd.hpp"
#include "unjoin/partition_table.hpp"
#include "unjoin/relation.hpp"

namespace unjoin {

/// Quantities that are analytically >= 0 but may come out of floating point
/// slightly off are snapped to zero within this tolerance.
inline constexpr double kZeroTolerance = 1e-9;

inline double clamp_information(double v) {
    return (v > -kZeroTolerance && v < kZeroTolerance) ? 0.0 : v;
}

struct OracleConfig {
    /// Attributes are partitioned into ceil(n / block_size) blocks; all
    /// partition tables for subsets within a block are precomputed.
    int block_size = 10;
    /// Hard cap on the memory held by precomputed block tables.
    std::size_t precompute_budget_bytes = std::size_t{1} << 30;  // 1 GiB
    /// Byte budget for the LRU cache of cross-block composed tables.
    std::size_t cache_budget_bytes = std::size_t{512} << 20;  // 512 MiB
    /// When false, no locking is performed; callers must be single-threaded.
    bool thread_safe = false;
};

struct OracleStats {
    std::uint64_t entropy_queries = 0;
    std::uint64_t memo_hits = 0;
    std::uint64_t composed_cache_hits = 0;
    std::uint64_t composes = 0;
};

/// Answers empirical-entropy queries over a relation in bits. Entropies are
/// memoized; tables for cross-block attribute sets are composed on demand
/// and kept in a byte-budgeted LRU cache. The relation must outlive the
/// oracle.
class EntropyOracle {
public:
    EntropyOracle(const Relation& rel, OracleConfig config = {});

    const Relation& relation() const { return *rel_; }
    const OracleConfig& config() const { return config_; }
    const std::vector<AttributeSet>& blocks() const { return blocks_; }

    /// H(attrs) in bits: log2(N) minus the normalized sum of c*log2(c) over
    /// duplicate groups. entropy({}) == 0; 0 <= entropy <= log2(N).
    double entropy(AttributeSet attrs) const;

    /// I(Y;Z|X) = H(XY) + H(XZ) - H(XYZ) - H(X), clamped at zero.
    /// Y, Z, X must be pairwise disjoint and Y, Z nonempty.
    double cond_mutual_information(AttributeSet y, AttributeSet z, AttributeSet x) const;

    /// J(X ->> Y1|...|Ym) = sum H(X Yi) - (m-1) H(X) - H(X Y1...Ym).
    /// Equals cond_mutual_information for m == 2. Clamped at zero.
    double j_mvd(const Mvd& mvd) const;

    /// J of a join tree: sum of bag entropies minus edge-label entropies
    /// minus H of all attributes. Requires a valid tree whose bags cover the
    /// relation's attributes. Clamped at zero.
    double j_tree(const JoinTree& tree) const;

    /// Composed (or precomputed) partition table for an attribute set;
    /// exposed for tests and diagnostics.
    std::shared_ptr<const PartitionTable> table(AttributeSet attrs) const;

    OracleStats stats() const;

private:
    std::shared_ptr<const PartitionTable> table_locked(AttributeSet attrs) const;
    double entropy_locked(AttributeSet attrs) const;
    void cache_insert(AttributeSet attrs, std::shared_ptr<const PartitionTable> t) const;
    std::shared_ptr<const PartitionTable> cache_lookup(AttributeSet attrs) const;

    const Relation* rel_;
    OracleConfig config_;
    double log2_n_rows_;
    std::vector<AttributeSet> blocks_;
    // block_tables_[b][local_mask - 1] holds the table for the subset of
    // block b encoded by local_mask over the block's attribute list.
    std::vector<std::vector<std::shared_ptr<const PartitionTable>>> block_tables_;
    std::shared_ptr<const PartitionTable> empty_table_;

    mutable std::mutex mu_;
    mutable std::unordered_map<AttributeSet, double, AttributeSetHash> entropy_memo_;

    // LRU over composed cross-block tables, accounted in bytes.
    struct CacheEntry {
        AttributeSet attrs;
        std::shared_ptr<const PartitionTable> table;
        std::size_t bytes;
    };
    mutable std::list<CacheEntry> lru_;
    mutable std::unordered_map<AttributeSet, std::list<CacheEntry>::iterator,
                               AttributeSetHash>
        cache_index_;
    mutable std::size_t cache_bytes_ = 0;
    mutable OracleStats stats_;
};

}  // namespace unjoin
