#include "unjoin/partition_table.hpp"

#include <cmath>
#include <unordered_map>

#include "unjoin/errors.hpp"

namespace unjoin {

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

PartitionTable PartitionTable::build(const Relation& rel, AttributeSet attrs) {
    if (!rel.all_attributes().is_superset_of(attrs))
        throw StructureError("partition table attributes outside the relation");
    const std::uint64_t n_rows = rel.row_count();
    if (attrs.empty()) return for_empty_set(n_rows);

    // Refine row group ids one attribute at a time; codes are dense so a
    // flat key (group * domain + code) indexes a hash map cheaply.
    std::vector<std::uint32_t> group_of(n_rows, 0);
    std::uint64_t group_count = 1;
    for (int a : attrs.indices()) {
        const auto& col = rel.column(a);
        const std::uint64_t domain = rel.domain_size(a);
        std::unordered_map<std::uint64_t, std::uint32_t> remap;
        remap.reserve(n_rows / 2 + 8);
        std::uint32_t next = 0;
        for (std::uint64_t r = 0; r < n_rows; ++r) {
            std::uint64_t key = static_cast<std::uint64_t>(group_of[r]) * domain + col[r];
            auto [it, inserted] = remap.emplace(key, next);
            if (inserted) ++next;
            group_of[r] = it->second;
        }
        group_count = next;
    }

    std::vector<std::uint32_t> size_of(group_count, 0);
    for (std::uint64_t r = 0; r < n_rows; ++r) ++size_of[group_of[r]];

    // Groups in first-tid order (group ids were assigned in scan order).
    std::vector<std::int64_t> slot(group_count, -1);
    PartitionTable t;
    t.attrs_ = attrs;
    for (std::uint64_t r = 0; r < n_rows; ++r) {
        std::uint32_t g = group_of[r];
        if (size_of[g] < 2) continue;
        if (slot[g] < 0) {
            slot[g] = static_cast<std::int64_t>(t.groups_.size());
            Group grp;
            std::uint64_t h = 1469598103934665603ULL;
            for (int a : attrs.indices()) h = mix(h, rel.code(r, a));
            grp.val = h;
            grp.tids.reserve(size_of[g]);
            t.groups_.push_back(std::move(grp));
        }
        t.groups_[static_cast<std::size_t>(slot[g])].tids.push_back(
            static_cast<std::uint32_t>(r));
    }
    return t;
}

PartitionTable PartitionTable::for_empty_set(std::uint64_t row_count) {
    PartitionTable t;
    if (row_count >= 2) {
        Group g;
        g.val = 0;
        g.tids.resize(row_count);
        for (std::uint64_t r = 0; r < row_count; ++r)
            g.tids[r] = static_cast<std::uint32_t>(r);
        t.groups_.push_back(std::move(g));
    }
    return t;
}

std::uint64_t PartitionTable::stripped_size() const {
    std::uint64_t total = 0;
    for (const auto& g : groups_) total += g.tids.size();
    return total;
}

double PartitionTable::sum_count_log_count() const {
    double sum = 0.0;
    for (const auto& g : groups_) {
        const double c = static_cast<double>(g.tids.size());
        sum += c * std::log2(c);
    }
    return sum;
}

std::size_t PartitionTable::byte_size() const {
    std::size_t bytes = sizeof(PartitionTable) + groups_.size() * sizeof(Group);
    for (const auto& g : groups_) bytes += g.tids.capacity() * sizeof(std::uint32_t);
    return bytes;
}

PartitionTable compose(const PartitionTable& left, const PartitionTable& right) {
    if (left.attrs().intersects(right.attrs()))
        throw StructureError("compose requires disjoint attribute sets");

    // Index the right side by tid. Group ids are exact identities, so the
    // pair (left group, right group) identifies a joined group with no
    // possibility of hash collision.
    std::unordered_map<std::uint32_t, std::uint32_t> right_group_of;
    right_group_of.reserve(right.stripped_size() * 2 + 8);
    for (std::uint32_t g = 0; g < right.groups().size(); ++g)
        for (std::uint32_t tid : right.groups()[g].tids)
            right_group_of.emplace(tid, g);

    PartitionTable out;
    out.attrs_ = left.attrs() | right.attrs();
    std::unordered_map<std::uint64_t, std::uint32_t> bucket;  // (g1,g2) -> slot
    const std::uint64_t right_count = right.groups().size();
    for (std::uint32_t g1 = 0; g1 < left.groups().size(); ++g1) {
        for (std::uint32_t tid : left.groups()[g1].tids) {
            auto it = right_group_of.find(tid);
            if (it == right_group_of.end()) continue;
            const std::uint64_t key = static_cast<std::uint64_t>(g1) * right_count + it->second;
            auto [slot_it, inserted] =
                bucket.emplace(key, static_cast<std::uint32_t>(out.groups_.size()));
            if (inserted) {
                PartitionTable::Group grp;
                grp.val = mix(left.groups()[g1].val, right.groups()[it->second].val);
                out.groups_.push_back(std::move(grp));
            }
            out.groups_[slot_it->second].tids.push_back(tid);
        }
    }
    // Strip groups that fell below two tids.
    std::size_t keep = 0;
    for (std::size_t i = 0; i < out.groups_.size(); ++i) {
        if (out.groups_[i].tids.size() >= 2) {
            if (keep != i) out.groups_[keep] = std::move(out.groups_[i]);
            ++keep;
        }
    }
    out.groups_.resize(keep);
    return out;
}

}  // namespace unjoin
