#include "unjoin/metrics.hpp"

#include <algorithm>
#include <unordered_map>

#include "unjoin/errors.hpp"

namespace unjoin {

namespace {

using U128 = unsigned __int128;

U128 checked_add(U128 a, U128 b) {
    U128 out;
    if (__builtin_add_overflow(a, b, &out))
        throw JoinCountOverflow("join size exceeds 128-bit range");
    return out;
}

U128 checked_mul(U128 a, U128 b) {
    U128 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw JoinCountOverflow("join size exceeds 128-bit range");
    return out;
}

struct TupleHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

template <typename V>
using TupleMap = std::unordered_map<std::vector<std::uint32_t>, V, TupleHash>;

}  // namespace

unsigned __int128 acyclic_join_count(const Relation& rel, const JoinTree& tree) {
    if (auto err = tree.validate(); !err.empty()) throw StructureError(err);
    if (tree.all_attributes() != rel.all_attributes())
        throw StructureError("join tree must cover exactly the relation's attributes");

    const int m = tree.node_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
    for (auto [a, b] : tree.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }

    // Post-order over the tree rooted at node 0.
    std::vector<int> order;
    std::vector<int> parent(static_cast<std::size_t>(m), -1);
    {
        std::vector<int> stack{0};
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        seen[0] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            order.push_back(u);
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    parent[static_cast<std::size_t>(v)] = u;
                    stack.push_back(v);
                }
            }
        }
        std::reverse(order.begin(), order.end());  // children before parents
    }

    // Upward message per node: separator tuple -> sum of subtree counts.
    std::vector<TupleMap<U128>> message(static_cast<std::size_t>(m));
    for (int u : order) {
        const AttributeSet bag = tree.bags[static_cast<std::size_t>(u)];
        // Distinct projected tuples of the bag with their subtree counts.
        TupleMap<U128> f;
        f.reserve(rel.row_count() / 2 + 8);
        std::vector<int> children;
        for (int v : adj[static_cast<std::size_t>(u)])
            if (v != parent[static_cast<std::size_t>(u)]) children.push_back(v);

        std::vector<AttributeSet> child_seps;
        child_seps.reserve(children.size());
        for (int c : children)
            child_seps.push_back(bag & tree.bags[static_cast<std::size_t>(c)]);

        for (std::uint64_t r = 0; r < rel.row_count(); ++r) {
            auto key = rel.row_projection(r, bag);
            if (!f.emplace(std::move(key), U128{0}).second) continue;  // already done
        }
        for (auto& [tuple, count] : f) {
            U128 prod = 1;
            // Map the bag tuple onto each child's separator positions.
            const std::vector<int> bag_attrs = bag.indices();
            for (std::size_t ci = 0; ci < children.size(); ++ci) {
                std::vector<std::uint32_t> sep_key;
                const std::vector<int> sep_attrs = child_seps[ci].indices();
                sep_key.reserve(sep_attrs.size());
                std::size_t pos = 0;
                for (int a : sep_attrs) {
                    while (bag_attrs[pos] != a) ++pos;
                    sep_key.push_back(tuple[pos]);
                }
                const auto& msg = message[static_cast<std::size_t>(children[ci])];
                auto it = msg.find(sep_key);
                if (it == msg.end()) {
                    prod = 0;
                    break;
                }
                prod = checked_mul(prod, it->second);
            }
            count = prod;
        }

        if (parent[static_cast<std::size_t>(u)] < 0) {
            U128 total = 0;
            for (const auto& [tuple, count] : f) total = checked_add(total, count);
            return total;
        }
        // Aggregate onto this node's separator with its parent.
        const AttributeSet sep =
            bag & tree.bags[static_cast<std::size_t>(parent[static_cast<std::size_t>(u)])];
        const std::vector<int> bag_attrs = bag.indices();
        const std::vector<int> sep_attrs = sep.indices();
        TupleMap<U128>& up = message[static_cast<std::size_t>(u)];
        for (const auto& [tuple, count] : f) {
            std::vector<std::uint32_t> sep_key;
            sep_key.reserve(sep_attrs.size());
            std::size_t pos = 0;
            for (int a : sep_attrs) {
                while (bag_attrs[pos] != a) ++pos;
                sep_key.push_back(tuple[pos]);
            }
            auto [it, inserted] = up.emplace(std::move(sep_key), count);
            if (!inserted) it->second = checked_add(it->second, count);
        }
    }
    throw StructureError("unreachable: tree had no root");
}

SpuriousTuples spurious_tuples(const Relation& rel, const JoinTree& tree) {
    const U128 join_size = acyclic_join_count(rel, tree);
    const U128 n_rows = rel.row_count();
    SpuriousTuples out;
    out.absolute = join_size - n_rows;  // join of projections always contains R
    out.percent = 100.0 * static_cast<double>(out.absolute) / static_cast<double>(n_rows);
    return out;
}

double cell_savings_percent(const Relation& rel, const AcyclicSchema& schema) {
    if (schema.all_attributes() != rel.all_attributes())
        throw StructureError("schema must cover exactly the relation's attributes");
    double cells = 0.0;
    for (AttributeSet bag : schema.relations)
        cells += static_cast<double>(rel.distinct_count(bag)) * bag.size();
    const double original = static_cast<double>(rel.row_count()) *
                            static_cast<double>(rel.attribute_count());
    return 100.0 * (1.0 - cells / original);
}

int schema_width(const AcyclicSchema& schema) {
    if (schema.relations.empty()) throw StructureError("empty schema");
    int w = 0;
    for (AttributeSet r : schema.relations) w = std::max(w, r.size());
    return w;
}

int schema_int_width(const AcyclicSchema& schema) {
    if (schema.relations.empty()) throw StructureError("empty schema");
    int w = 0;
    for (std::size_t i = 0; i < schema.relations.size(); ++i)
        for (std::size_t j = i + 1; j < schema.relations.size(); ++j)
            w = std::max(w, (schema.relations[i] & schema.relations[j]).size());
    return w;
}

SchemaReport evaluate_schema(const Relation& rel, const EntropyOracle& oracle,
                             const AcyclicSchema& schema, const JoinTree& tree,
                             std::string schema_id) {
    SchemaReport r;
    r.schema_id = std::move(schema_id);
    r.relations = schema.relations;
    r.j_bits = oracle.j_tree(tree);
    const SpuriousTuples sp = spurious_tuples(rel, tree);
    r.spurious_count = sp.absolute;
    r.spurious_pct = sp.percent;
    r.cell_savings_pct = cell_savings_percent(rel, schema);
    r.relation_count = schema.relation_count();
    r.width = schema_width(schema);
    r.int_width = schema_int_width(schema);
    return r;
}

std::vector<std::size_t> pareto_indices(
    const std::vector<std::pair<double, double>>& savings_spurious) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < savings_spurious.size(); ++i) {
        const auto [si, ei] = savings_spurious[i];
        bool dominated = false;
        for (std::size_t j = 0; j < savings_spurious.size() && !dominated; ++j) {
            if (i == j) continue;
            const auto [sj, ej] = savings_spurious[j];
            if (sj >= si && ej <= ei && (sj > si || ej < ei)) dominated = true;
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

std::vector<SchemaReport> pareto_front(std::vector<SchemaReport> reports) {
    std::vector<std::pair<double, double>> points;
    points.reserve(reports.size());
    for (const auto& r : reports) points.emplace_back(r.cell_savings_pct, r.spurious_pct);
    std::vector<SchemaReport> out;
    for (std::size_t i : pareto_indices(points)) out.push_back(std::move(reports[i]));
    std::stable_sort(out.begin(), out.end(), [](const SchemaReport& a, const SchemaReport& b) {
        return a.spurious_pct < b.spurious_pct;
    });
    return out;
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace unjoin
