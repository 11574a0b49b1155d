#pragma once

#include <vector>

#include "unjoin/attribute_set.hpp"

namespace unjoin {

/// Incrementally maintains the inclusion-minimal transversals (hitting sets)
/// of a growing set family, Berge style: adding a set keeps the transversals
/// that already hit it and extends the others by one element each, then
/// filters to the minimal ones. For the empty family the sole minimal
/// transversal is the empty set; a family containing the empty set has none.
class TransversalEnumerator {
public:
    TransversalEnumerator() { transversals_ = {AttributeSet{}}; }

    void add_set(AttributeSet s);

    /// Current minimal transversals, deterministically ordered by
    /// (cardinality, bit pattern).
    const std::vector<AttributeSet>& transversals() const { return transversals_; }
    const std::vector<AttributeSet>& family() const { return family_; }

private:
    std::vector<AttributeSet> family_;
    std::vector<AttributeSet> transversals_;
};

/// All inclusion-minimal transversals of a family, each exactly once, in the
/// enumerator's deterministic order.
std::vector<AttributeSet> enumerate_min_transversals(const std::vector<AttributeSet>& family);

}  // namespace unjoin
