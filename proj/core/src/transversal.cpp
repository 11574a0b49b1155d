#include "unjoin/transversal.hpp"

#include <algorithm>

namespace unjoin {

namespace {

bool set_less(AttributeSet a, AttributeSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits() < b.bits();
}

// Filters a candidate list down to its inclusion-minimal members.
std::vector<AttributeSet> minimize(std::vector<AttributeSet> cands) {
    std::sort(cands.begin(), cands.end(), set_less);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<AttributeSet> out;
    for (AttributeSet c : cands) {
        bool dominated = false;
        for (AttributeSet kept : out) {
            if (c.is_superset_of(kept)) {  // kept is subset of c
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(c);
    }
    return out;
}

}  // namespace

void TransversalEnumerator::add_set(AttributeSet s) {
    family_.push_back(s);
    std::vector<AttributeSet> next;
    next.reserve(transversals_.size());
    for (AttributeSet t : transversals_) {
        if (t.intersects(s)) {
            next.push_back(t);
        } else {
            for (int x : s.indices()) {
                AttributeSet ext = t;
                ext.insert(x);
                next.push_back(ext);
            }
        }
    }
    // Adding the empty set leaves no way to hit it: no transversals.
    transversals_ = minimize(std::move(next));
}

std::vector<AttributeSet> enumerate_min_transversals(
    const std::vector<AttributeSet>& family) {
    TransversalEnumerator e;
    for (AttributeSet s : family) e.add_set(s);
    return e.transversals();
}

}  // namespace unjoin
