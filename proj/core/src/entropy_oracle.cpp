#include "unjoin/entropy_oracle.hpp"

#include <cmath>

#include "unjoin/errors.hpp"

namespace unjoin {

namespace {

struct MaybeLock {
    explicit MaybeLock(std::mutex& mu, bool enabled) : mu_(mu), enabled_(enabled) {
        if (enabled_) mu_.lock();
    }
    ~MaybeLock() {
        if (enabled_) mu_.unlock();
    }
    MaybeLock(const MaybeLock&) = delete;
    MaybeLock& operator=(const MaybeLock&) = delete;

private:
    std::mutex& mu_;
    bool enabled_;
};

}  // namespace

EntropyOracle::EntropyOracle(const Relation& rel, OracleConfig config)
    : rel_(&rel), config_(config) {
    const int n = rel.attribute_count();
    if (config_.block_size < 1 || config_.block_size > 20)
        throw OracleError("block size must be between 1 and 20");
    log2_n_rows_ = std::log2(static_cast<double>(rel.row_count()));
    empty_table_ =
        std::make_shared<const PartitionTable>(PartitionTable::for_empty_set(rel.row_count()));

    // Contiguous blocks of at most block_size attributes, ascending.
    for (int start = 0; start < n; start += config_.block_size) {
        AttributeSet block;
        for (int a = start; a < n && a < start + config_.block_size; ++a)
            block.insert(a);
        blocks_.push_back(block);
    }

    // Precompute tables for every nonempty subset of each block, walking the
    // subset lattice so each table composes one precomputed singleton onto a
    // smaller precomputed table (groups only shrink along the way).
    std::size_t used_bytes = 0;
    block_tables_.resize(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const std::vector<int> attrs = blocks_[b].indices();
        const std::size_t width = attrs.size();
        auto& tables = block_tables_[b];
        tables.resize((std::size_t{1} << width) - 1);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << width); ++mask) {
            std::shared_ptr<const PartitionTable> t;
            if ((mask & (mask - 1)) == 0) {
                int a = attrs[static_cast<std::size_t>(std::countr_zero(mask))];
                t = std::make_shared<const PartitionTable>(
                    PartitionTable::build(*rel_, AttributeSet::single(a)));
            } else {
                const std::uint64_t low_bit = mask & (~mask + 1);
                const std::uint64_t rest = mask ^ low_bit;
                t = std::make_shared<const PartitionTable>(
                    compose(*tables[rest - 1], *tables[low_bit - 1]));
            }
            used_bytes += t->byte_size();
            if (used_bytes > config_.precompute_budget_bytes)
                throw OracleError(
                    "estimated partition-table precompute memory exceeds budget (" +
                    std::to_string(used_bytes) + " bytes used; lower the block size)");
            tables[mask - 1] = std::move(t);
        }
    }
}

std::shared_ptr<const PartitionTable> EntropyOracle::cache_lookup(AttributeSet attrs) const {
    auto it = cache_index_.find(attrs);
    if (it == cache_index_.end()) return nullptr;
    lru_.splice(lru_.begin(), lru_, it->second);  // move to front
    ++stats_.composed_cache_hits;
    return it->second->table;
}

void EntropyOracle::cache_insert(AttributeSet attrs,
                                 std::shared_ptr<const PartitionTable> t) const {
    const std::size_t bytes = t->byte_size();
    if (bytes > config_.cache_budget_bytes) return;  // too large to ever cache
    while (cache_bytes_ + bytes > config_.cache_budget_bytes && !lru_.empty()) {
        cache_bytes_ -= lru_.back().bytes;
        cache_index_.erase(lru_.back().attrs);
        lru_.pop_back();
    }
    lru_.push_front(CacheEntry{attrs, std::move(t), bytes});
    cache_bytes_ += bytes;
    cache_index_[attrs] = lru_.begin();
}

std::shared_ptr<const PartitionTable> EntropyOracle::table_locked(AttributeSet attrs) const {
    if (attrs.empty()) return empty_table_;

    // Single-block subsets are precomputed.
    std::vector<std::pair<std::size_t, std::uint64_t>> pieces;  // (block, local mask)
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        AttributeSet part = attrs & blocks_[b];
        if (part.empty()) continue;
        std::uint64_t local = 0;
        const std::vector<int> block_attrs = blocks_[b].indices();
        for (std::size_t i = 0; i < block_attrs.size(); ++i)
            if (part.contains(block_attrs[i])) local |= std::uint64_t{1} << i;
        pieces.emplace_back(b, local);
    }
    if (pieces.size() == 1)
        return block_tables_[pieces[0].first][pieces[0].second - 1];

    if (auto cached = cache_lookup(attrs)) return cached;

    // Fold pieces in ascending block order; intermediate results are cached
    // so shared prefixes across queries are reused.
    std::shared_ptr<const PartitionTable> acc =
        block_tables_[pieces[0].first][pieces[0].second - 1];
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        const auto& next = block_tables_[pieces[i].first][pieces[i].second - 1];
        AttributeSet key = acc->attrs() | next->attrs();
        std::shared_ptr<const PartitionTable> step;
        if (i + 1 < pieces.size()) {
            if (auto cached = cache_lookup(key)) {
                acc = cached;
                continue;
            }
        }
        ++stats_.composes;
        step = std::make_shared<const PartitionTable>(compose(*acc, *next));
        cache_insert(key, step);
        acc = std::move(step);
    }
    return acc;
}

std::shared_ptr<const PartitionTable> EntropyOracle::table(AttributeSet attrs) const {
    MaybeLock lock(mu_, config_.thread_safe);
    return table_locked(attrs);
}

double EntropyOracle::entropy_locked(AttributeSet attrs) const {
    ++stats_.entropy_queries;
    if (attrs.empty()) return 0.0;
    auto memo = entropy_memo_.find(attrs);
    if (memo != entropy_memo_.end()) {
        ++stats_.memo_hits;
        return memo->second;
    }
    auto t = table_locked(attrs);
    double h = log2_n_rows_ -
               t->sum_count_log_count() / static_cast<double>(rel_->row_count());
    if (h < 0.0 && h > -kZeroTolerance) h = 0.0;
    entropy_memo_.emplace(attrs, h);
    return h;
}

double EntropyOracle::entropy(AttributeSet attrs) const {
    if (!rel_->all_attributes().is_superset_of(attrs))
        throw StructureError("entropy query outside the relation's attributes");
    MaybeLock lock(mu_, config_.thread_safe);
    return entropy_locked(attrs);
}

double EntropyOracle::cond_mutual_information(AttributeSet y, AttributeSet z,
                                              AttributeSet x) const {
    if (y.empty() || z.empty())
        throw StructureError("mutual information needs nonempty argument sets");
    if (y.intersects(z) || y.intersects(x) || z.intersects(x))
        throw StructureError("mutual information arguments must be pairwise disjoint");
    if (!rel_->all_attributes().is_superset_of(x | y | z))
        throw StructureError("mutual information query outside the relation's attributes");
    MaybeLock lock(mu_, config_.thread_safe);
    const double v = entropy_locked(x | y) + entropy_locked(x | z) -
                     entropy_locked(x | y | z) - entropy_locked(x);
    return clamp_information(v);
}

double EntropyOracle::j_mvd(const Mvd& mvd) const {
    if (!rel_->all_attributes().is_superset_of(mvd.attributes()))
        throw StructureError("MVD uses attributes outside the relation");
    MaybeLock lock(mu_, config_.thread_safe);
    const AttributeSet key = mvd.key();
    double sum = 0.0;
    AttributeSet all = key;
    for (const auto& dep : mvd.dependents()) {
        sum += entropy_locked(key | dep);
        all |= dep;
    }
    sum -= static_cast<double>(mvd.arity() - 1) * entropy_locked(key);
    sum -= entropy_locked(all);
    return clamp_information(sum);
}

double EntropyOracle::j_tree(const JoinTree& tree) const {
    if (auto err = tree.validate(); !err.empty()) throw StructureError(err);
    if (tree.all_attributes() != rel_->all_attributes())
        throw StructureError("join tree must cover exactly the relation's attributes");
    MaybeLock lock(mu_, config_.thread_safe);
    double sum = 0.0;
    for (const auto& bag : tree.bags) sum += entropy_locked(bag);
    for (std::size_t e = 0; e < tree.edges.size(); ++e)
        sum -= entropy_locked(tree.edge_label(e));
    sum -= entropy_locked(tree.all_attributes());
    return clamp_information(sum);
}

OracleStats EntropyOracle::stats() const {
    MaybeLock lock(mu_, config_.thread_safe);
    return stats_;
}

}  // namespace unjoin
