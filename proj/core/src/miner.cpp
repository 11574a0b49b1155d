#include "unjoin/miner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "unjoin/transversal.hpp"

namespace unjoin {

namespace {

void check_deadline(const Deadline& d) {
    if (deadline_passed(d)) throw BudgetExpired();
}

Mvd finest_partition(AttributeSet key, AttributeSet rest) {
    std::vector<AttributeSet> deps;
    deps.reserve(static_cast<std::size_t>(rest.size()));
    for (int a : rest.indices()) deps.push_back(AttributeSet::single(a));
    return Mvd(key, std::move(deps));
}

void require_valid_pair(const EntropyOracle& oracle, AttributeSet s, int a, int b) {
    AttributeSet omega = oracle.relation().all_attributes();
    if (a == b || !omega.contains(a) || !omega.contains(b))
        throw StructureError("separator search needs two distinct attributes of the relation");
    if (s.contains(a) || s.contains(b))
        throw StructureError("separator key must not contain the probed pair");
    if (!omega.is_superset_of(s))
        throw StructureError("separator key outside the relation's attributes");
}

// Candidate stack shared by the existence test and the full enumeration.
struct FullMvdSearch {
    const EntropyOracle& oracle;
    double epsilon;
    int a, b;
    bool pruning;
    const Deadline& deadline;

    std::vector<Mvd> stack;
    std::unordered_set<Mvd, MvdHash> visited;

    void push(Mvd candidate) {
        std::optional<Mvd> closed =
            pruning ? pairwise_consistent_reduce(oracle, epsilon, candidate, a, b)
                    : std::make_optional(std::move(candidate));
        if (!closed) return;
        if (visited.insert(*closed).second) stack.push_back(std::move(*closed));
    }

    bool start(AttributeSet s) {
        AttributeSet rest = oracle.relation().all_attributes() - s;
        if (!rest.contains(a) || !rest.contains(b)) return false;
        if (rest.size() < 2) return false;
        push(finest_partition(s, rest));
        return true;
    }

    // Runs the DFS, invoking sink(mvd, j) for every candidate within
    // epsilon. Returns when sink returns false or the space is exhausted.
    template <typename Sink>
    void run(Sink&& sink) {
        while (!stack.empty()) {
            check_deadline(deadline);
            Mvd phi = std::move(stack.back());
            stack.pop_back();
            const double j = oracle.j_mvd(phi);
            if (j <= epsilon) {
                if (!sink(std::move(phi), j)) return;
                continue;
            }
            // Expand: merge any two dependents that keep a and b apart.
            const auto& deps = phi.dependents();
            for (std::size_t i = 0; i + 1 < deps.size(); ++i) {
                for (std::size_t k = i + 1; k < deps.size(); ++k) {
                    const bool has_a = deps[i].contains(a) || deps[k].contains(a);
                    const bool has_b = deps[i].contains(b) || deps[k].contains(b);
                    if (has_a && has_b) continue;
                    push(phi.merge_dependents(i, k));
                }
            }
        }
    }
};

}  // namespace

std::optional<Mvd> pairwise_consistent_reduce(const EntropyOracle& oracle, double epsilon,
                                              const Mvd& mvd, int a, int b) {
    if (!mvd.separates(a, b))
        throw StructureError("pairwise_consistent_reduce needs the pair in distinct dependents");
    Mvd phi = mvd;
    for (;;) {
        if (!phi.separates(a, b)) return std::nullopt;
        bool merged = false;
        const auto& deps = phi.dependents();
        for (std::size_t i = 0; i + 1 < deps.size() && !merged; ++i) {
            for (std::size_t k = i + 1; k < deps.size() && !merged; ++k) {
                if (oracle.cond_mutual_information(deps[i], deps[k], phi.key()) > epsilon) {
                    phi = phi.merge_dependents(i, k);
                    merged = true;
                }
            }
        }
        if (!merged) return phi;
    }
}

bool separates(const EntropyOracle& oracle, AttributeSet s, double epsilon, int a, int b,
               const Deadline& deadline, bool pairwise_pruning) {
    require_valid_pair(oracle, s, a, b);
    if (epsilon < 0) return false;
    FullMvdSearch search{oracle, epsilon, a, b, pairwise_pruning, deadline, {}, {}};
    if (!search.start(s)) return false;
    bool found = false;
    search.run([&](Mvd&&, double) {
        found = true;
        return false;  // first witness settles it
    });
    return found;
}

std::vector<Mvd> get_full_mvds(const EntropyOracle& oracle, AttributeSet s, double epsilon,
                               int a, int b, std::size_t max_results, bool pairwise_pruning,
                               const Deadline& deadline) {
    require_valid_pair(oracle, s, a, b);
    if (max_results == 0) throw StructureError("max_results must be at least 1");
    if (epsilon < 0) throw StructureError("epsilon must be non-negative");

    FullMvdSearch search{oracle, epsilon, a, b, pairwise_pruning, deadline, {}, {}};
    std::vector<Mvd> hits;
    if (search.start(s)) {
        search.run([&](Mvd&& phi, double) {
            hits.push_back(std::move(phi));
            return true;
        });
    }

    // The traversal can reach a coarsening of an epsilon-MVD through merges
    // whose intermediates all exceed epsilon, so hits may contain MVDs that
    // are not full. Full MVDs are exactly the refinement-maximal hits: every
    // non-full hit is strictly refined by some full hit, and all full MVDs
    // are reachable (any path to one passes only through its strict
    // refinements, which all exceed epsilon).
    std::vector<Mvd> full;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        bool refined = false;
        for (std::size_t j = 0; j < hits.size() && !refined; ++j)
            if (i != j && !(hits[j] == hits[i]) && refines(hits[j], hits[i]))
                refined = true;
        if (!refined) full.push_back(hits[i]);
    }
    std::sort(full.begin(), full.end());
    if (full.size() > max_results) full.resize(max_results);
    return full;
}

AttributeSet reduce_min_sep(const EntropyOracle& oracle, double epsilon, AttributeSet x,
                            int a, int b, const Deadline& deadline, bool pairwise_pruning) {
    require_valid_pair(oracle, x, a, b);
    if (!separates(oracle, x, epsilon, a, b, deadline, pairwise_pruning))
        throw StructureError("reduce_min_sep: input does not separate the pair");
    AttributeSet s = x;
    for (int attr : x.indices()) {  // fixed schema order
        AttributeSet probe = s;
        probe.erase(attr);
        if (separates(oracle, probe, epsilon, a, b, deadline, pairwise_pruning))
            s = probe;
    }
    return s;
}

SeparatorFamily mine_min_seps(const EntropyOracle& oracle, double epsilon, int a, int b,
                              const Deadline& deadline, bool pairwise_pruning,
                              MinerStats* stats) {
    require_valid_pair(oracle, AttributeSet{}, a, b);
    SeparatorFamily family;
    family.pair = {a, b};
    MinerStats local;
    MinerStats& st = stats ? *stats : local;

    const AttributeSet omega = oracle.relation().all_attributes();
    const AttributeSet largest = omega - AttributeSet::single(a) - AttributeSet::single(b);

    try {
        // The largest candidate key conditions on everything else; if even it
        // fails there is no separator at all.
        if (oracle.cond_mutual_information(AttributeSet::single(a), AttributeSet::single(b),
                                           largest) > epsilon)
            return family;

        TransversalEnumerator transversals;
        std::unordered_set<AttributeSet, AttributeSetHash> processed;
        std::uint64_t run = 0;

        auto note_discovery = [&](AttributeSet sep) {
            family.members.push_back(sep);
            transversals.add_set(sep);
            ++st.separators_found;
            run = 0;
        };
        auto track_run = [&]() {
            if (run > st.max_nonproductive_run) {
                st.max_nonproductive_run = run;
                st.family_size_at_max_run = family.members.size();
                const std::uint64_t bound = static_cast<std::uint64_t>(omega.size()) *
                                            family.members.size();
                if (run > bound) st.border_bound_violated = true;
            }
        };

        note_discovery(reduce_min_sep(oracle, epsilon, largest, a, b, deadline,
                                      pairwise_pruning));

        for (;;) {
            check_deadline(deadline);
            // Next unprocessed minimal transversal of the current family, in
            // the enumerator's deterministic order.
            const AttributeSet* next = nullptr;
            for (const AttributeSet& d : transversals.transversals()) {
                if (!processed.count(d)) {
                    next = &d;
                    break;
                }
            }
            if (!next) break;
            AttributeSet d = *next;
            processed.insert(d);
            ++st.transversals_processed;
            ++run;
            track_run();

            AttributeSet candidate = omega - d - AttributeSet::single(a) -
                                     AttributeSet::single(b);
            if (separates(oracle, candidate, epsilon, a, b, deadline, pairwise_pruning)) {
                note_discovery(reduce_min_sep(oracle, epsilon, candidate, a, b, deadline,
                                              pairwise_pruning));
            }
        }
    } catch (const BudgetExpired&) {
        family.truncated = true;
    }

    std::sort(family.members.begin(), family.members.end(),
              [](AttributeSet l, AttributeSet r) {
                  if (l.size() != r.size()) return l.size() < r.size();
                  return l.bits() < r.bits();
              });
    return family;
}

namespace {

struct Accumulator {
    std::map<Mvd, MinedMvd> found;
    bool truncated = false;
    MinerStats stats;
    std::mutex mu;

    void merge_pair(const std::vector<Mvd>& mvds, const EntropyOracle& oracle, int a, int b,
                    bool pair_truncated, const MinerStats& pair_stats) {
        std::lock_guard<std::mutex> lock(mu);
        for (const Mvd& m : mvds) {
            auto it = found.find(m);
            if (it == found.end()) {
                MinedMvd rec{m, oracle.j_mvd(m), {{a, b}}};
                found.emplace(m, std::move(rec));
            } else {
                it->second.witnesses.emplace_back(a, b);
            }
        }
        truncated = truncated || pair_truncated;
        stats.transversals_processed += pair_stats.transversals_processed;
        stats.separators_found += pair_stats.separators_found;
        if (pair_stats.max_nonproductive_run > stats.max_nonproductive_run) {
            stats.max_nonproductive_run = pair_stats.max_nonproductive_run;
            stats.family_size_at_max_run = pair_stats.family_size_at_max_run;
        }
        stats.border_bound_violated |= pair_stats.border_bound_violated;
    }
};

}  // namespace

MiningResult mine_all(const EntropyOracle& oracle, double epsilon,
                      const MineOptions& options) {
    const int n = oracle.relation().attribute_count();
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

    const auto start = std::chrono::steady_clock::now();
    Deadline global;
    if (options.budget) global = start + *options.budget;

    Accumulator acc;

    auto run_pair = [&](std::size_t idx, const Deadline& slice_deadline) {
        auto [a, b] = pairs[idx];
        MinerStats pair_stats;
        SeparatorFamily seps = mine_min_seps(oracle, epsilon, a, b, slice_deadline,
                                             options.pairwise_pruning, &pair_stats);
        std::vector<Mvd> pair_mvds;
        bool pair_truncated = seps.truncated;
        try {
            for (AttributeSet s : seps.members) {
                auto full = get_full_mvds(oracle, s, epsilon, a, b, SIZE_MAX,
                                          options.pairwise_pruning, slice_deadline);
                pair_mvds.insert(pair_mvds.end(), full.begin(), full.end());
            }
        } catch (const BudgetExpired&) {
            pair_truncated = true;
        }
        acc.merge_pair(pair_mvds, oracle, a, b, pair_truncated, pair_stats);
    };

    if (options.threads <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto now = std::chrono::steady_clock::now();
            if (deadline_passed(global)) {
                acc.truncated = true;
                break;
            }
            Deadline slice = global;
            if (global) {
                // Even split of the remaining budget across remaining pairs
                // so early pairs cannot starve late ones.
                const auto remaining = *global - now;
                slice = now + remaining / static_cast<long>(pairs.size() - i);
            }
            run_pair(i, slice);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(options.threads));
        for (int t = 0; t < options.threads; ++t) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= pairs.size()) return;
                    if (deadline_passed(global)) {
                        std::lock_guard<std::mutex> lock(acc.mu);
                        acc.truncated = true;
                        return;
                    }
                    run_pair(i, global);
                }
            });
        }
        for (auto& w : workers) w.join();
    }

    MiningResult result;
    result.truncated = acc.truncated;
    result.stats = acc.stats;
    result.mvds.reserve(acc.found.size());
    for (auto& [mvd, rec] : acc.found) {
        std::sort(rec.witnesses.begin(), rec.witnesses.end());
        result.mvds.push_back(std::move(rec));
    }
    return result;
}

}  // namespace unjoin
