#include "support/gen.hpp"

#include <algorithm>

#include "unjoin/errors.hpp"

namespace unjoin::testsupport {

Relation example_relation(bool with_fifth_row) {
    std::vector<std::vector<std::string>> rows = {
        {"a1", "b1", "c1", "d1", "e1", "f1"},
        {"a2", "b2", "c1", "d1", "e2", "f2"},
        {"a2", "b2", "c2", "d2", "e3", "f2"},
        {"a1", "b2", "c1", "d2", "e3", "f1"},
    };
    if (with_fifth_row) rows.push_back({"a1", "b2", "c1", "d2", "e2", "f1"});
    return Relation::from_rows({"A", "B", "C", "D", "E", "F"}, rows);
}

Relation two_tuple_relation() {
    return Relation::from_rows({"X", "A", "B", "C"},
                               {{"0", "0", "0", "0"}, {"0", "1", "1", "1"}});
}

Relation random_relation(Rng& rng, int max_attrs, std::uint64_t max_rows) {
    std::uniform_int_distribution<int> attr_dist(2, max_attrs);
    const int n = attr_dist(rng);
    std::uniform_int_distribution<std::uint64_t> row_dist(2, max_rows);
    const std::uint64_t target_rows = row_dist(rng);

    std::vector<std::vector<std::string>> rows(target_rows,
                                               std::vector<std::string>(static_cast<std::size_t>(n)));
    std::uniform_int_distribution<int> kind_dist(0, 9);
    std::uniform_int_distribution<int> domain_dist(1, 6);

    for (int a = 0; a < n; ++a) {
        const int kind = kind_dist(rng);
        if (kind <= 4 || a == 0) {
            // Independent column with a small random domain.
            const int domain = domain_dist(rng);
            std::uniform_int_distribution<int> value(0, domain - 1);
            for (auto& row : rows)
                row[static_cast<std::size_t>(a)] = "v" + std::to_string(value(rng));
        } else if (kind <= 6) {
            // Copy of an earlier column (exact dependence).
            std::uniform_int_distribution<int> src_dist(0, a - 1);
            const int src = src_dist(rng);
            for (auto& row : rows)
                row[static_cast<std::size_t>(a)] = row[static_cast<std::size_t>(src)] + "'";
        } else if (kind <= 8) {
            // Function of two earlier columns with occasional noise.
            std::uniform_int_distribution<int> src_dist(0, a - 1);
            const int s1 = src_dist(rng);
            const int s2 = src_dist(rng);
            std::uniform_int_distribution<int> noise(0, 9);
            for (auto& row : rows) {
                std::string v = row[static_cast<std::size_t>(s1)] + "x" +
                                row[static_cast<std::size_t>(s2)];
                if (noise(rng) == 0) v += "!";
                row[static_cast<std::size_t>(a)] = v;
            }
        } else {
            // Near-constant column.
            std::uniform_int_distribution<int> value(0, 1);
            std::uniform_int_distribution<int> rare(0, 19);
            for (auto& row : rows)
                row[static_cast<std::size_t>(a)] =
                    rare(rng) == 0 ? "r" + std::to_string(value(rng)) : "c";
        }
    }

    std::vector<std::string> names(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) names[static_cast<std::size_t>(a)] = "A" + std::to_string(a);
    return Relation::from_rows(std::move(names), rows, /*dedup=*/true);
}

JoinTree random_join_tree(const Relation& rel, Rng& rng) {
    const AttributeSet omega = rel.all_attributes();
    JoinTree tree = JoinTree::single_node(omega);
    std::uniform_int_distribution<int> split_count(0, rel.attribute_count());
    const int splits = split_count(rng);

    for (int s = 0; s < splits; ++s) {
        // Pick a node and split off some of its private attributes (those
        // not shared with any neighbor), keeping the shared part in both
        // halves so running intersection is preserved.
        std::uniform_int_distribution<int> node_dist(0, tree.node_count() - 1);
        const int u = node_dist(rng);
        AttributeSet bag = tree.bags[static_cast<std::size_t>(u)];
        AttributeSet shared;
        for (std::size_t e = 0; e < tree.edges.size(); ++e)
            if (tree.edges[e].first == u || tree.edges[e].second == u)
                shared |= tree.edge_label(e);
        AttributeSet private_attrs = bag - shared;
        if (private_attrs.size() < 2) continue;

        const std::vector<int> priv = private_attrs.indices();
        // Nonempty split of the private attributes; a random prefix of a
        // shuffle keeps both sides nonempty.
        std::vector<int> shuffled = priv;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::uniform_int_distribution<std::size_t> cut_dist(1, shuffled.size() - 1);
        const std::size_t cut = cut_dist(rng);
        AttributeSet left;
        for (std::size_t i = 0; i < cut; ++i) left.insert(shuffled[i]);
        AttributeSet right = private_attrs - left;
        // Both halves keep everything the node shares with its neighbors.
        AttributeSet rest = bag - private_attrs;
        tree.bags[static_cast<std::size_t>(u)] = rest | left;
        tree.bags.push_back(rest | right);
        tree.edges.emplace_back(u, tree.node_count() - 1);
    }
    if (!tree.is_valid()) throw StructureError("generator produced an invalid tree");
    return tree;
}

Mvd random_mvd(const Relation& rel, Rng& rng, int min_dependents) {
    const int n = rel.attribute_count();
    for (;;) {
        std::uniform_int_distribution<int> part_dist(0, min_dependents + 1);
        std::vector<int> assign(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) assign[static_cast<std::size_t>(a)] = part_dist(rng);
        // Slot 0 is the key (may end up empty); slots 1.. are dependents.
        AttributeSet key;
        std::vector<AttributeSet> deps(static_cast<std::size_t>(min_dependents + 1));
        for (int a = 0; a < n; ++a) {
            const int slot = assign[static_cast<std::size_t>(a)];
            if (slot == 0)
                key.insert(a);
            else
                deps[static_cast<std::size_t>(slot - 1)].insert(a);
        }
        std::vector<AttributeSet> nonempty;
        for (AttributeSet d : deps)
            if (!d.empty()) nonempty.push_back(d);
        if (static_cast<int>(nonempty.size()) >= min_dependents)
            return Mvd(key, std::move(nonempty));
    }
}

}  // namespace unjoin::testsupport
