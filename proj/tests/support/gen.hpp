#pragma once

// Deterministic data generators for property suites and fixtures for the
// worked examples used across the tests.

#include <random>
#include <string>
#include <vector>

#include "unjoin/join_tree.hpp"
#include "unjoin/relation.hpp"

namespace unjoin::testsupport {

using Rng = std::mt19937_64;

/// Six columns A..F, four rows; the optional fifth row breaks the exact
/// decomposition.
Relation example_relation(bool with_fifth_row);

/// Columns X,A,B,C with rows 0000 and 0111.
Relation two_tuple_relation();

/// Random relation mixing structure kinds: independent columns, copied
/// columns, functional combinations, and join-shaped couplings.
Relation random_relation(Rng& rng, int max_attrs, std::uint64_t max_rows);

/// Random valid join tree covering the relation's attributes (running
/// intersection holds by construction).
JoinTree random_join_tree(const Relation& rel, Rng& rng);

/// Random well-formed MVD over the relation's attributes: the key may be
/// empty, dependents cover everything else.
Mvd random_mvd(const Relation& rel, Rng& rng, int min_dependents = 2);

}  // namespace unjoin::testsupport
