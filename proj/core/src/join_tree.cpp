#include "unjoin/join_tree.hpp"

#include <algorithm>
#include <numeric>

#include "unjoin/errors.hpp"

namespace unjoin {

AttributeSet JoinTree::all_attributes() const {
    AttributeSet all;
    for (auto b : bags) all |= b;
    return all;
}

namespace {

// Union-find over node indices.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

}  // namespace

std::string JoinTree::validate() const {
    const int n = node_count();
    if (n == 0) return "join tree has no nodes";
    if (edges.size() != static_cast<std::size_t>(n) - 1)
        return "join tree must have exactly n-1 edges";
    Dsu dsu(n);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) return "edge index out of range";
        if (a == b) return "self-loop edge";
        if (!dsu.unite(a, b)) return "cycle in join tree";
    }
    // n-1 successful unions on n nodes imply connectivity.

    // Running intersection: per attribute, the nodes containing it induce a
    // connected subgraph. Count nodes and intra-edges per attribute.
    AttributeSet attrs = all_attributes();
    for (int a : attrs.indices()) {
        int nodes_with = 0;
        int edges_with = 0;
        for (const auto& bag : bags)
            if (bag.contains(a)) ++nodes_with;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edge_label(e).contains(a)) ++edges_with;
        if (edges_with != nodes_with - 1)
            return "running intersection violated for attribute " + std::to_string(a);
    }
    return "";
}

std::pair<AttributeSet, AttributeSet> JoinTree::split_by_edge(std::size_t e) const {
    const int n = node_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i == e) continue;
        adj[static_cast<std::size_t>(edges[i].first)].push_back(edges[i].second);
        adj[static_cast<std::size_t>(edges[i].second)].push_back(edges[i].first);
    }
    auto gather = [&](int start) {
        AttributeSet acc;
        std::vector<int> stack{start};
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            acc |= bags[static_cast<std::size_t>(u)];
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
            }
        }
        return acc;
    };
    return {gather(edges[e].first), gather(edges[e].second)};
}

AcyclicSchema AcyclicSchema::from_bags(std::vector<AttributeSet> bags) {
    std::sort(bags.begin(), bags.end());
    bags.erase(std::unique(bags.begin(), bags.end()), bags.end());
    for (const auto& a : bags)
        for (const auto& b : bags)
            if (a != b && a.is_subset_of(b))
                throw StructureError("schema relation contained in another");
    return AcyclicSchema{std::move(bags)};
}

AttributeSet AcyclicSchema::all_attributes() const {
    AttributeSet all;
    for (auto r : relations) all |= r;
    return all;
}

AcyclicSchema schema_of(const JoinTree& tree) {
    return AcyclicSchema::from_bags(tree.bags);
}

std::vector<Mvd> mvd_support(const JoinTree& tree) {
    if (auto err = tree.validate(); !err.empty()) throw StructureError(err);
    std::vector<Mvd> out;
    out.reserve(tree.edges.size());
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        AttributeSet key = tree.edge_label(e);
        auto [left, right] = tree.split_by_edge(e);
        out.emplace_back(key, std::vector<AttributeSet>{left - key, right - key});
    }
    return out;
}

JoinTree join_tree_for(const AcyclicSchema& schema) {
    const int m = schema.relation_count();
    if (m == 0) throw StructureError("empty schema");
    JoinTree tree;
    tree.bags = schema.relations;
    if (m == 1) return tree;

    // Kruskal on intersection size, descending; ties broken by (i, j) for
    // determinism.
    struct Cand {
        int w, i, j;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            cands.push_back({(schema.relations[static_cast<std::size_t>(i)] &
                              schema.relations[static_cast<std::size_t>(j)])
                                 .size(),
                             i, j});
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.w > b.w; });
    Dsu dsu(m);
    for (const auto& c : cands) {
        if (static_cast<int>(tree.edges.size()) == m - 1) break;
        if (dsu.unite(c.i, c.j)) tree.edges.emplace_back(c.i, c.j);
    }
    if (auto err = tree.validate(); !err.empty())
        throw StructureError("schema is not acyclic: " + err);
    return tree;
}

}  // namespace unjoin
