#include "unjoin/schema_synth.hpp"

#include <algorithm>

#include "unjoin/errors.hpp"

namespace unjoin {

bool compatible(const Mvd& phi, const Mvd& psi) {
    const AttributeSet x = phi.key();
    const AttributeSet y = psi.key();
    const auto& a_deps = phi.dependents();
    const auto& b_deps = psi.dependents();

    auto hits_two = [](AttributeSet probe, const std::vector<AttributeSet>& deps) {
        int hits = 0;
        for (const auto& d : deps)
            if (probe.intersects(d) && ++hits >= 2) return true;
        return false;
    };

    for (std::size_t i = 0; i < a_deps.size(); ++i) {
        const AttributeSet xa = x | a_deps[i];
        if (!xa.is_superset_of(y)) continue;
        for (std::size_t j = 0; j < b_deps.size(); ++j) {
            const AttributeSet yb = y | b_deps[j];
            if (!yb.is_superset_of(x)) continue;
            // Both conditions must hold for the same (i, j).
            if (hits_two(xa, b_deps) && hits_two(yb, a_deps)) return true;
        }
    }
    return false;
}

std::size_t IncompatibilityGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& row : adjacent)
        for (char c : row) twice += static_cast<std::size_t>(c);
    return twice / 2;
}

IncompatibilityGraph build_incompatibility_graph(std::vector<Mvd> mvds) {
    std::sort(mvds.begin(), mvds.end());
    mvds.erase(std::unique(mvds.begin(), mvds.end()), mvds.end());
    IncompatibilityGraph g;
    const std::size_t n = mvds.size();
    g.vertices = std::move(mvds);
    g.adjacent.assign(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!compatible(g.vertices[i], g.vertices[j])) {
                g.adjacent[i][j] = 1;
                g.adjacent[j][i] = 1;
            }
        }
    }
    return g;
}

MaxIndependentSetEnumerator::MaxIndependentSetEnumerator(const IncompatibilityGraph& graph)
    : graph_(&graph) {
    std::vector<int> first = complete({});
    seen_.insert(first);
    queue_.insert(std::move(first));
}

std::vector<int> MaxIndependentSetEnumerator::complete(std::vector<int> partial) const {
    const int n = static_cast<int>(graph_->vertices.size());
    for (int v = 0; v < n; ++v) {
        if (std::binary_search(partial.begin(), partial.end(), v)) continue;
        bool blocked = false;
        for (int u : partial) {
            if (adjacent(u, v)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) partial.insert(std::lower_bound(partial.begin(), partial.end(), v), v);
    }
    return partial;
}

std::optional<std::vector<int>> MaxIndependentSetEnumerator::next() {
    if (queue_.empty()) return std::nullopt;
    std::vector<int> out = *queue_.begin();
    queue_.erase(queue_.begin());

    const int n = static_cast<int>(graph_->vertices.size());
    for (int j = 0; j < n; ++j) {
        if (std::binary_search(out.begin(), out.end(), j)) continue;
        // Keep the part of `out` below j compatible with j, add j.
        std::vector<int> t;
        for (int v : out) {
            if (v >= j) break;
            if (!adjacent(v, j)) t.push_back(v);
        }
        t.push_back(j);
        // t must be maximal within the prefix graph on vertices 0..j.
        bool maximal = true;
        for (int u = 0; u <= j && maximal; ++u) {
            if (std::binary_search(t.begin(), t.end(), u)) continue;
            bool blocked = false;
            for (int v : t) {
                if (adjacent(u, v)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) maximal = false;
        }
        if (!maximal) continue;
        std::vector<int> candidate = complete(std::move(t));
        if (seen_.insert(candidate).second) queue_.insert(std::move(candidate));
    }
    return out;
}

namespace {

struct TreeState {
    std::vector<AttributeSet> bags;
    std::vector<std::pair<int, int>> edges;

    std::vector<int> neighbors(int u) const {
        std::vector<int> out;
        for (auto [a, b] : edges) {
            if (a == u) out.push_back(b);
            if (b == u) out.push_back(a);
        }
        return out;
    }

    // Attributes on w's side when edge (u, w) is removed.
    AttributeSet side_attributes(int u, int w) const {
        AttributeSet acc;
        std::vector<int> stack{w};
        std::vector<char> seen(bags.size(), 0);
        seen[static_cast<std::size_t>(w)] = 1;
        seen[static_cast<std::size_t>(u)] = 1;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            acc |= bags[static_cast<std::size_t>(cur)];
            for (int nb : neighbors(cur)) {
                if (!seen[static_cast<std::size_t>(nb)]) {
                    seen[static_cast<std::size_t>(nb)] = 1;
                    stack.push_back(nb);
                }
            }
        }
        return acc;
    }
};

}  // namespace

BuildResult build_acyclic_schema(const std::vector<Mvd>& mvds, AttributeSet omega) {
    for (const Mvd& m : mvds)
        if (!omega.is_superset_of(m.attributes()))
            throw StructureError("MVD uses attributes outside the given universe");

    // Ascending key cardinality; ties broken lexicographically by key bits,
    // then by canonical MVD order.
    std::vector<std::size_t> order(mvds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const Mvd& a = mvds[l];
        const Mvd& b = mvds[r];
        if (a.key().size() != b.key().size()) return a.key().size() < b.key().size();
        if (a.key() != b.key()) return a.key() < b.key();
        return a < b;
    });

    BuildResult result;
    TreeState tree;
    tree.bags = {omega};

    for (std::size_t idx : order) {
        const Mvd& phi = mvds[idx];
        const AttributeSet key = phi.key();

        // Candidate hosts: relations containing the key where the MVD is
        // non-redundant (splits into at least two fragments).
        int host = -1;
        int containing = 0;
        int non_redundant = 0;
        std::vector<AttributeSet> host_fragments;
        for (std::size_t u = 0; u < tree.bags.size(); ++u) {
            const AttributeSet bag = tree.bags[u];
            if (!bag.is_superset_of(key)) continue;
            ++containing;
            std::vector<AttributeSet> fragments;
            for (const AttributeSet& dep : phi.dependents()) {
                AttributeSet part = dep & bag;
                if (!part.empty()) fragments.push_back(key | part);
            }
            if (fragments.size() >= 2) {
                ++non_redundant;
                if (host < 0) {
                    host = static_cast<int>(u);
                    host_fragments = std::move(fragments);
                }
            }
        }
        if (containing == 0)
            throw IncompatibleMvdsError("no relation contains the key of " + phi.to_string());
        if (non_redundant == 0) continue;  // redundant, skip
        if (non_redundant > 1) result.ambiguous_placement = true;

        // Remember old neighbors and their side attributes before mutating.
        const AttributeSet host_bag = tree.bags[static_cast<std::size_t>(host)];
        struct Reattach {
            int node;
            AttributeSet label;
            AttributeSet side;
        };
        std::vector<Reattach> reattach;
        for (int w : tree.neighbors(host))
            reattach.push_back(
                {w, host_bag & tree.bags[static_cast<std::size_t>(w)],
                 tree.side_attributes(host, w)});

        // Replace the host bag by the fragments: host keeps fragment 0, new
        // nodes take the rest, star-connected through the first fragment.
        std::vector<int> fragment_node(host_fragments.size());
        tree.bags[static_cast<std::size_t>(host)] = host_fragments[0];
        fragment_node[0] = host;
        for (std::size_t f = 1; f < host_fragments.size(); ++f) {
            fragment_node[f] = static_cast<int>(tree.bags.size());
            tree.bags.push_back(host_fragments[f]);
        }
        std::vector<std::pair<int, int>> new_edges;
        for (const auto& e : tree.edges)
            if (e.first != host && e.second != host) new_edges.push_back(e);
        for (std::size_t f = 1; f < host_fragments.size(); ++f)
            new_edges.emplace_back(fragment_node[0], fragment_node[f]);

        // Reattach former neighbors: prefer the fragment of the unique
        // dependent that contains the subtree's non-key material; otherwise
        // any fragment containing the old edge label.
        for (const Reattach& r : reattach) {
            const AttributeSet outside = r.side - key;
            int target = -1;
            int by_dependent = 0;
            for (std::size_t f = 0; f < host_fragments.size(); ++f) {
                // fragment f came from dependent (host_fragments[f] - key)
                AttributeSet dep_full;
                for (const AttributeSet& dep : phi.dependents())
                    if (dep.intersects(host_fragments[f] - key)) dep_full = dep;
                if (!outside.empty() && dep_full.is_superset_of(outside)) {
                    ++by_dependent;
                    if (by_dependent == 1) target = fragment_node[f];
                }
            }
            if (by_dependent != 1) {
                int by_label = 0;
                for (std::size_t f = 0; f < host_fragments.size(); ++f) {
                    if (host_fragments[f].is_superset_of(r.label)) {
                        ++by_label;
                        if (by_label == 1 && by_dependent != 1) target = fragment_node[f];
                    }
                }
                if (by_label == 0)
                    throw IncompatibleMvdsError(
                        "cannot reattach subtree while applying " + phi.to_string());
                if (by_label > 1 && by_dependent == 0) result.ambiguous_placement = true;
            }
            new_edges.emplace_back(target, r.node);
        }
        tree.edges = std::move(new_edges);
        result.applied.push_back(idx);
    }

    result.tree.bags = tree.bags;
    result.tree.edges = tree.edges;
    if (auto err = result.tree.validate(); !err.empty())
        throw IncompatibleMvdsError("synthesized tree invalid: " + err);
    result.schema = schema_of(result.tree);
    return result;
}

EnumerationResult enumerate_schemas(const std::vector<Mvd>& mvds, const EntropyOracle& oracle,
                                    const EnumerateLimits& limits) {
    EnumerationResult out;
    const AttributeSet omega = oracle.relation().all_attributes();
    IncompatibilityGraph graph = build_incompatibility_graph(mvds);
    MaxIndependentSetEnumerator mis(graph);
    std::set<std::vector<AttributeSet>> seen_schemas;

    while (auto q = mis.next()) {
        if (out.schemas.size() >= limits.max_schemas) break;
        if (deadline_passed(limits.deadline)) {
            out.truncated = true;
            break;
        }
        std::vector<Mvd> chosen;
        chosen.reserve(q->size());
        for (int v : *q) chosen.push_back(graph.vertices[static_cast<std::size_t>(v)]);
        BuildResult built = build_acyclic_schema(chosen, omega);
        if (!seen_schemas.insert(built.schema.relations).second) continue;

        SchemaResult r;
        r.j_bits = oracle.j_tree(built.tree);
        r.support_mvds = mvd_support(built.tree);
        r.schema = std::move(built.schema);
        r.tree = std::move(built.tree);
        r.ambiguous_placement = built.ambiguous_placement;
        out.schemas.push_back(std::move(r));
    }
    return out;
}

}  // namespace unjoin
