#pragma once

// Brute-force reference implementations: correctness over speed. These power
// the property tests and pin down expected values independently of the
// optimized algorithms.

#include <cstdint>
#include <vector>

#include "tav/core.hpp"

namespace tav {

// Canonical translation: the row-major least position moves to the origin.
// Two assemblies are equivalent up to translation iff their canonical forms
// compare equal.
Assembly canonicalize(const Assembly& a);

// Subset dynamic program over the domain: a subset is buildable iff it is a
// singleton or splits into two buildable parts with seam strength >= tau.
// Exact by the definition of assembly trees. Enforces |a| <= 20.
bool producible_oracle(const Assembly& a, const TileSet& ts, int32_t tau);

struct OracleLimits {
    // Hard cap on the number of canonical assemblies an enumeration may
    // produce; exceeding it throws instead of silently truncating.
    size_t max_assemblies = 200000;
};

// Closure of the singletons under all non-overlapping stable pairwise
// combinations at all abutting offsets, deduplicated canonically and
// truncated at max_size. Sorted by (size, placements) for determinism.
std::vector<Assembly> enumerate_producible(const TileSet& ts, int32_t tau, int32_t max_size,
                                           const OracleLimits& limits = {});

// Temperature-1 hierarchical UPV by bounded enumeration: every producible up
// to |a| must embed into a, every stable pairwise join of those must embed
// (a minimal counterexample's subtrees embed into a, hence have size <= |a|),
// a itself must be producible, and a must be terminal.
bool upv_hier_oracle(const TileSet& ts, const Assembly& a, const OracleLimits& limits = {});

// Temperature-1 seeded UPV by exhaustive single-tile accretion from the seed
// at anchor, up to size |a|+1: true iff every producible is a subassembly of
// a, a itself is reached, and a is terminal.
bool upv_seeded_oracle(const TileSet& ts, int32_t seed_tile, const Assembly& a, Position anchor,
                       const OracleLimits& limits = {});

// Deletes p and breadth-first searches from the seed: true iff q is
// unreached (true by convention when p is the seed itself).
bool precedes_oracle(const Assembly& a, const TileSet& ts, Position seed_pos, Position p,
                     Position q);

}  // namespace tav
