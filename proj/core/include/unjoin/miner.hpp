#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "unjoin/attribute_set.hpp"
#include "unjoin/entropy_oracle.hpp"
#include "unjoin/errors.hpp"
#include "unjoin/mvd.hpp"

namespace unjoin {

/// Raised by mining primitives when the caller-supplied deadline passes.
struct BudgetExpired : Error {
    BudgetExpired() : Error("mining budget expired") {}
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

inline bool deadline_passed(const Deadline& d) {
    return d && std::chrono::steady_clock::now() >= *d;
}

/// Counters exposed for diagnostics and tests.
struct MinerStats {
    std::uint64_t transversals_processed = 0;
    std::uint64_t separators_found = 0;
    /// Longest run of processed transversals between separator discoveries
    /// (or before loop exit), and the family size in force at that point.
    /// The enumeration theory bounds the run by n * |family|.
    std::uint64_t max_nonproductive_run = 0;
    std::uint64_t family_size_at_max_run = 0;
    bool border_bound_violated = false;
};

/// Minimal separators of one attribute pair.
struct SeparatorFamily {
    std::pair<int, int> pair;
    std::vector<AttributeSet> members;  // sorted by (size, bits)
    bool truncated = false;
};

/// One discovered full MVD with its measure and the attribute pairs whose
/// separator search produced it.
struct MinedMvd {
    Mvd mvd;
    double j_bits = 0.0;
    std::vector<std::pair<int, int>> witnesses;
};

struct MiningResult {
    std::vector<MinedMvd> mvds;  // canonical order, deduplicated
    bool truncated = false;
    MinerStats stats;
};

struct MineOptions {
    /// Wall-clock budget; nullopt means unlimited. A zero budget yields an
    /// empty, truncated result.
    std::optional<std::chrono::milliseconds> budget;
    /// Parallelism over attribute pairs. The oracle must be constructed
    /// thread-safe when threads > 1.
    int threads = 1;
    /// Pairwise-consistency pruning of the full-MVD search. The unpruned
    /// variant exists for differential testing only.
    bool pairwise_pruning = true;
};

/// True iff some MVD with key `s` separating a and b has J <= epsilon.
/// Early-exits on the first witness.
bool separates(const EntropyOracle& oracle, AttributeSet s, double epsilon, int a, int b,
               const Deadline& deadline = std::nullopt, bool pairwise_pruning = true);

/// Repeatedly merges a dependent pair whose conditional mutual information
/// given the key exceeds epsilon (lowest pair first) until the MVD is
/// pairwise consistent; returns nullopt when the merges force a and b into
/// one dependent. a and b must start in distinct dependents.
std::optional<Mvd> pairwise_consistent_reduce(const EntropyOracle& oracle, double epsilon,
                                              const Mvd& mvd, int a, int b);

/// All full MVDs with key `s` that separate a and b and have J <= epsilon:
/// each result admits no strict same-key refinement within epsilon. At most
/// max_results are returned, in canonical order. Throws BudgetExpired when
/// the deadline passes mid-search.
std::vector<Mvd> get_full_mvds(const EntropyOracle& oracle, AttributeSet s, double epsilon,
                               int a, int b, std::size_t max_results = SIZE_MAX,
                               bool pairwise_pruning = true,
                               const Deadline& deadline = std::nullopt);

/// Shrinks a separating set to an inclusion-minimal separator by probing
/// attribute removals in ascending index order (the fixed order matters for
/// completeness of the separator enumeration). Throws StructureError when x
/// does not separate a and b to begin with.
AttributeSet reduce_min_sep(const EntropyOracle& oracle, double epsilon, AttributeSet x,
                            int a, int b, const Deadline& deadline = std::nullopt,
                            bool pairwise_pruning = true);

/// Enumerates every minimal epsilon-separator of the pair (a, b) by
/// alternating minimal-transversal generation with separator reduction.
/// Returns an empty family when even the largest candidate key fails to
/// separate. On deadline expiry the partial family is returned with the
/// truncated flag set.
SeparatorFamily mine_min_seps(const EntropyOracle& oracle, double epsilon, int a, int b,
                              const Deadline& deadline = std::nullopt,
                              bool pairwise_pruning = true, MinerStats* stats = nullptr);

/// Full pipeline over all unordered attribute pairs: minimal separators,
/// then all full MVDs per separator, deduplicated by canonical form with
/// witness pairs accumulated. Respects the wall-clock budget with per-pair
/// time slices; partial results carry the truncated flag.
MiningResult mine_all(const EntropyOracle& oracle, double epsilon,
                      const MineOptions& options = {});

}  // namespace unjoin
