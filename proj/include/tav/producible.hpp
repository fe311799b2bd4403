#pragma once

// Hierarchical producibility at temperature tau: the quadratic reference
// decider, the near-linear greedy decider, and witness-tree replay.

#include <cstdint>
#include <optional>
#include <vector>

#include "tav/assembly_tree.hpp"
#include "tav/core.hpp"

namespace tav {

// Component ids are the dense row-major index of the component's
// representative (its least position). Replaying the log from singletons
// reproduces the final partition and defines the witness tree's joins.
struct MergeEntry {
    int32_t first = -1;
    int32_t second = -1;
    int32_t strength = 0;
};

struct MergeLog {
    std::vector<MergeEntry> entries;
};

struct ProducibleStats {
    uint64_t heap_pops = 0;        // including lazily discarded stale entries
    uint64_t adjacency_folds = 0;  // neighbor entries folded during merges
    uint64_t pair_scans = 0;       // naive decider: seam evaluations
};

struct ProducibleOptions {
    bool build_witness = true;
    // When set, equal-strength pairs are popped in a pseudorandom order
    // derived from this seed instead of the deterministic least-id order.
    std::optional<uint64_t> tie_break_seed;
};

struct ProducibleResult {
    bool producible = false;
    std::optional<AssemblyTree> witness;  // present iff producible and requested
    MergeLog log;                         // complete iff producible
    ProducibleStats stats;
};

// Algorithm that scans all component pairs each round. Reference
// implementation; quadratic and fine at desk scale.
ProducibleResult is_producible_naive(const Assembly& a, const TileSet& ts, int32_t tau,
                                     const ProducibleOptions& options = {});

// Greedy decider: repeatedly pop the maximum-strength adjacent component
// pair; below tau means not producible, otherwise merge the smaller
// component into the larger, folding adjacency with summed seam strengths.
// O(|a| log^2 |a|).
ProducibleResult is_producible_fast(const Assembly& a, const TileSet& ts, int32_t tau,
                                    const ProducibleOptions& options = {});

// Rebuilds the witness tree from a merge log produced by a successful run
// on a. Throws on a malformed log (merge of an unknown component).
AssemblyTree replay_merge_log(const Assembly& a, const MergeLog& log);

}  // namespace tav
