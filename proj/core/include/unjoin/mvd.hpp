#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "unjoin/attribute_set.hpp"

namespace unjoin {

/// A multivalued dependency: key X plus m >= 2 dependents Y1|...|Ym, all
/// pairwise disjoint and disjoint from the key. Dependents are kept in
/// canonical order (sorted by lowest attribute index), which makes equality,
/// hashing and output order stable.
class Mvd {
public:
    /// Validates and canonicalizes. Throws StructureError on empty or
    /// overlapping dependents, overlap with the key, or m < 2.
    Mvd(AttributeSet key, std::vector<AttributeSet> dependents);

    AttributeSet key() const { return key_; }
    const std::vector<AttributeSet>& dependents() const { return dependents_; }
    int arity() const { return static_cast<int>(dependents_.size()); }
    /// Union of key and all dependents.
    AttributeSet attributes() const;

    /// Index of the dependent containing `attr`, or -1 when it is absent
    /// from every dependent.
    int dependent_of(int attr) const;
    bool separates(int a, int b) const;

    /// Replaces dependents i and j by their union (key unchanged), then
    /// re-canonicalizes. Throws StructureError on bad indices.
    Mvd merge_dependents(std::size_t i, std::size_t j) const;

    std::string to_string(const std::vector<std::string>& names) const;
    std::string to_string() const;

    friend bool operator==(const Mvd& a, const Mvd& b) {
        return a.key_ == b.key_ && a.dependents_ == b.dependents_;
    }
    /// Total order: by key, then arity, then dependents; used for stable
    /// output and deduplication.
    friend bool operator<(const Mvd& a, const Mvd& b);

private:
    AttributeSet key_;
    std::vector<AttributeSet> dependents_;
};

struct MvdHash {
    std::size_t operator()(const Mvd& m) const noexcept;
};

/// True iff phi and psi have the same key and every dependent of phi lies
/// inside some dependent of psi (phi partitions at least as finely).
bool refines(const Mvd& phi, const Mvd& psi);

/// The common refinement of two same-key MVDs: dependents are all nonempty
/// pairwise intersections. Throws StructureError on key mismatch.
Mvd join_mvds(const Mvd& phi, const Mvd& psi);

}  // namespace unjoin
