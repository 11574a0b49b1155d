#include "unjoin/mvd.hpp"

#include <algorithm>

#include "unjoin/errors.hpp"

namespace unjoin {

Mvd::Mvd(AttributeSet key, std::vector<AttributeSet> dependents)
    : key_(key), dependents_(std::move(dependents)) {
    if (dependents_.size() < 2)
        throw StructureError("an MVD needs at least two dependents");
    AttributeSet seen = key_;
    for (const auto& d : dependents_) {
        if (d.empty()) throw StructureError("empty dependent in MVD");
        if (d.intersects(seen))
            throw StructureError("MVD dependents must be disjoint from each other and the key");
        seen |= d;
    }
    std::sort(dependents_.begin(), dependents_.end(),
              [](AttributeSet a, AttributeSet b) { return a.lowest() < b.lowest(); });
}

AttributeSet Mvd::attributes() const {
    AttributeSet all = key_;
    for (const auto& d : dependents_) all |= d;
    return all;
}

int Mvd::dependent_of(int attr) const {
    for (std::size_t i = 0; i < dependents_.size(); ++i)
        if (dependents_[i].contains(attr)) return static_cast<int>(i);
    return -1;
}

bool Mvd::separates(int a, int b) const {
    int ia = dependent_of(a);
    int ib = dependent_of(b);
    return ia >= 0 && ib >= 0 && ia != ib;
}

Mvd Mvd::merge_dependents(std::size_t i, std::size_t j) const {
    if (i == j || i >= dependents_.size() || j >= dependents_.size())
        throw StructureError("merge_dependents: index out of range");
    std::vector<AttributeSet> deps;
    deps.reserve(dependents_.size() - 1);
    for (std::size_t k = 0; k < dependents_.size(); ++k) {
        if (k == j) continue;
        deps.push_back(k == i ? (dependents_[i] | dependents_[j]) : dependents_[k]);
    }
    return Mvd(key_, std::move(deps));
}

std::string Mvd::to_string(const std::vector<std::string>& names) const {
    auto render = [&](AttributeSet s) {
        std::string out;
        for (int idx : s.indices()) {
            if (!out.empty()) out += ',';
            out += names[static_cast<std::size_t>(idx)];
        }
        return out.empty() ? std::string("{}") : out;
    };
    std::string out = render(key_) + " ->> ";
    for (std::size_t i = 0; i < dependents_.size(); ++i) {
        if (i) out += " | ";
        out += render(dependents_[i]);
    }
    return out;
}

std::string Mvd::to_string() const {
    std::string out = key_.to_string() + " ->> ";
    for (std::size_t i = 0; i < dependents_.size(); ++i) {
        if (i) out += " | ";
        out += dependents_[i].to_string();
    }
    return out;
}

bool operator<(const Mvd& a, const Mvd& b) {
    if (a.key_ != b.key_) return a.key_ < b.key_;
    if (a.dependents_.size() != b.dependents_.size())
        return a.dependents_.size() < b.dependents_.size();
    return a.dependents_ < b.dependents_;
}

std::size_t MvdHash::operator()(const Mvd& m) const noexcept {
    AttributeSetHash h;
    std::size_t out = h(m.key());
    for (const auto& d : m.dependents())
        out ^= h(d) + 0x9e3779b97f4a7c15ULL + (out << 6) + (out >> 2);
    return out;
}

bool refines(const Mvd& phi, const Mvd& psi) {
    if (phi.key() != psi.key()) return false;
    for (const auto& a : phi.dependents()) {
        bool inside = false;
        for (const auto& b : psi.dependents()) {
            if (a.is_subset_of(b)) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

Mvd join_mvds(const Mvd& phi, const Mvd& psi) {
    if (phi.key() != psi.key())
        throw StructureError("join of MVDs requires equal keys");
    std::vector<AttributeSet> cells;
    for (const auto& a : phi.dependents())
        for (const auto& b : psi.dependents()) {
            AttributeSet c = a & b;
            if (!c.empty()) cells.push_back(c);
        }
    return Mvd(phi.key(), std::move(cells));
}

}  // namespace unjoin
