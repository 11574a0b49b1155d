#include "support/naive.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "unjoin/entropy_oracle.hpp"
#include "unjoin/errors.hpp"

namespace unjoin::testsupport {

double NaiveEntropy::entropy(AttributeSet attrs) const {
    auto it = memo_.find(attrs);
    if (it != memo_.end()) return it->second;
    const double n_rows = static_cast<double>(rel_->row_count());
    double sum = 0.0;
    for (const auto& [tuple, count] : rel_->project_counts(attrs)) {
        const double c = static_cast<double>(count);
        sum += c * std::log2(c);
    }
    double h = std::log2(n_rows) - sum / n_rows;
    if (h < 0.0 && h > -kZeroTolerance) h = 0.0;
    memo_.emplace(attrs, h);
    return h;
}

double NaiveEntropy::cmi(AttributeSet y, AttributeSet z, AttributeSet x) const {
    return clamp_information(entropy(x | y) + entropy(x | z) - entropy(x | y | z) -
                             entropy(x));
}

double NaiveEntropy::j_mvd(const Mvd& mvd) const {
    double sum = 0.0;
    AttributeSet all = mvd.key();
    for (const auto& d : mvd.dependents()) {
        sum += entropy(mvd.key() | d);
        all |= d;
    }
    sum -= static_cast<double>(mvd.arity() - 1) * entropy(mvd.key());
    sum -= entropy(all);
    return clamp_information(sum);
}

double NaiveEntropy::j_tree(const JoinTree& tree) const {
    double sum = 0.0;
    for (const auto& bag : tree.bags) sum += entropy(bag);
    for (std::size_t e = 0; e < tree.edges.size(); ++e) sum -= entropy(tree.edge_label(e));
    sum -= entropy(tree.all_attributes());
    return clamp_information(sum);
}

bool naive_separates(const NaiveEntropy& h, AttributeSet s, double epsilon, int a, int b) {
    const AttributeSet rest =
        h.relation().all_attributes() - s - AttributeSet::single(a) - AttributeSet::single(b);
    const std::vector<int> free_attrs = rest.indices();
    const std::uint64_t combos = std::uint64_t{1} << free_attrs.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        AttributeSet y = AttributeSet::single(a);
        AttributeSet z = AttributeSet::single(b);
        for (std::size_t i = 0; i < free_attrs.size(); ++i) {
            if ((mask >> i) & 1)
                y.insert(free_attrs[i]);
            else
                z.insert(free_attrs[i]);
        }
        if (h.cmi(y, z, s) <= epsilon) return true;
    }
    return false;
}

std::vector<AttributeSet> brute_min_seps(const NaiveEntropy& h, double epsilon, int a, int b) {
    const AttributeSet candidates = h.relation().all_attributes() - AttributeSet::single(a) -
                                    AttributeSet::single(b);
    const std::vector<int> attrs = candidates.indices();
    std::vector<AttributeSet> separating;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << attrs.size()); ++mask) {
        AttributeSet s;
        for (std::size_t i = 0; i < attrs.size(); ++i)
            if ((mask >> i) & 1) s.insert(attrs[i]);
        if (naive_separates(h, s, epsilon, a, b)) separating.push_back(s);
    }
    std::vector<AttributeSet> minimal;
    for (AttributeSet s : separating) {
        bool is_min = true;
        for (AttributeSet t : separating) {
            if (t != s && t.is_subset_of(s)) {
                is_min = false;
                break;
            }
        }
        if (is_min) minimal.push_back(s);
    }
    std::sort(minimal.begin(), minimal.end(), [](AttributeSet l, AttributeSet r) {
        if (l.size() != r.size()) return l.size() < r.size();
        return l.bits() < r.bits();
    });
    return minimal;
}

namespace {

// All set partitions of `elements` via restricted growth strings.
void enumerate_partitions(const std::vector<int>& elements,
                          const std::function<void(const std::vector<AttributeSet>&)>& yield) {
    const std::size_t n = elements.size();
    std::vector<std::size_t> assign(n, 0);
    std::vector<AttributeSet> blocks;
    const std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                                  std::size_t used) {
        if (i == n) {
            blocks.assign(used, AttributeSet{});
            for (std::size_t k = 0; k < n; ++k) blocks[assign[k]].insert(elements[k]);
            yield(blocks);
            return;
        }
        for (std::size_t g = 0; g <= used && g < n; ++g) {
            assign[i] = g;
            rec(i + 1, g == used ? used + 1 : used);
        }
    };
    rec(0, 0);
}

}  // namespace

std::vector<Mvd> brute_full_mvds(const NaiveEntropy& h, AttributeSet s, double epsilon,
                                 int a, int b) {
    const AttributeSet rest = h.relation().all_attributes() - s;
    if (!rest.contains(a) || !rest.contains(b))
        throw StructureError("pair must lie outside the key");
    std::vector<Mvd> hits;
    enumerate_partitions(rest.indices(), [&](const std::vector<AttributeSet>& blocks) {
        if (blocks.size() < 2) return;
        Mvd mvd(s, blocks);
        if (!mvd.separates(a, b)) return;
        if (h.j_mvd(mvd) > epsilon) return;
        // Full iff no single-dependent bipartition stays within epsilon.
        for (const AttributeSet& dep : mvd.dependents()) {
            if (dep.size() < 2) continue;
            const std::vector<int> members = dep.indices();
            // Nontrivial bipartitions; fix member 0 on one side to halve.
            for (std::uint64_t m = 1; m < (std::uint64_t{1} << (members.size() - 1)); ++m) {
                AttributeSet d1 = AttributeSet::single(members[0]);
                AttributeSet d2;
                for (std::size_t i = 1; i < members.size(); ++i) {
                    if ((m >> (i - 1)) & 1)
                        d2.insert(members[i]);
                    else
                        d1.insert(members[i]);
                }
                // Splitting dep into d1|d2 adds I(d1; d2 | key) to J.
                if (h.j_mvd(mvd) + h.cmi(d1, d2, s) <= epsilon) return;
            }
        }
        hits.push_back(std::move(mvd));
    });
    std::sort(hits.begin(), hits.end());
    return hits;
}

MaterializedJoin materialize_join(const Relation& rel,
                                  const std::vector<AttributeSet>& bags) {
    MaterializedJoin acc;
    if (bags.empty()) throw StructureError("join of zero bags");
    const int n = rel.attribute_count();

    auto distinct_projection = [&](AttributeSet bag) {
        std::vector<std::vector<std::uint32_t>> rows;
        std::map<std::vector<std::uint32_t>, bool> uniq;
        for (std::uint64_t r = 0; r < rel.row_count(); ++r)
            uniq.emplace(rel.row_projection(r, bag), true);
        rows.reserve(uniq.size());
        for (auto& [tuple, _] : uniq) {
            std::vector<std::uint32_t> wide(static_cast<std::size_t>(n), 0);
            std::size_t pos = 0;
            for (int attr : bag.indices()) wide[static_cast<std::size_t>(attr)] = tuple[pos++];
            rows.push_back(std::move(wide));
        }
        return rows;
    };

    acc.attrs = bags[0];
    acc.rows = distinct_projection(bags[0]);
    for (std::size_t i = 1; i < bags.size(); ++i) {
        const AttributeSet bag = bags[i];
        const AttributeSet shared = acc.attrs & bag;
        auto right_rows = distinct_projection(bag);
        std::vector<std::vector<std::uint32_t>> merged;
        for (const auto& lrow : acc.rows) {
            for (const auto& rrow : right_rows) {
                bool match = true;
                for (int attr : shared.indices()) {
                    if (lrow[static_cast<std::size_t>(attr)] !=
                        rrow[static_cast<std::size_t>(attr)]) {
                        match = false;
                        break;
                    }
                }
                if (!match) continue;
                auto row = lrow;
                for (int attr : (bag - acc.attrs).indices())
                    row[static_cast<std::size_t>(attr)] = rrow[static_cast<std::size_t>(attr)];
                merged.push_back(std::move(row));
            }
        }
        acc.rows = std::move(merged);
        acc.attrs |= bag;
    }
    return acc;
}

std::uint64_t naive_join_size(const Relation& rel, const JoinTree& tree) {
    return materialize_join(rel, tree.bags).rows.size();
}

}  // namespace unjoin::testsupport
