#pragma once

// Assembly trees: the witness structure for hierarchical producibility,
// their validation, the sibling-pair finder over hierarchical divisions,
// and the surgery that merges witness trees of consistently overlapping
// producible assemblies.

#include <string>
#include <vector>

#include "tav/core.hpp"

namespace tav {

// Full binary tree; leaves carry (position, tile index), internal nodes are
// joins whose assembly is the union of their leaves' placements.
struct AssemblyTree {
    struct Node {
        int32_t parent = -1;
        int32_t left = -1;   // -1 on leaves
        int32_t right = -1;
        Position pos{};      // leaf payload
        int32_t tile = -1;   // leaf payload

        bool is_leaf() const { return left < 0; }
    };

    std::vector<Node> nodes;
    int32_t root = -1;

    int32_t add_leaf(Position pos, int32_t tile);
    int32_t add_join(int32_t left, int32_t right);  // sets parent links and root
    size_t leaf_count() const;

    static AssemblyTree single(Position pos, int32_t tile);
};

// True iff the subtrees rooted at (a, na) and (b, nb) have identical shape
// and leaf payloads, including child order.
bool subtree_equal(const AssemblyTree& a, int32_t na, const AssemblyTree& b, int32_t nb);

// Id of a node in haystack whose subtree equals needle, or -1.
int32_t find_subtree(const AssemblyTree& haystack, const AssemblyTree& needle);

struct TreeValidation {
    bool ok = true;
    std::string message;  // first violation
    int32_t node = -1;    // offending node, when meaningful

    explicit operator bool() const { return ok; }
};

// A tree validates for (a, ts, tau) iff its leaves are exactly a's
// placements, every join's children occupy disjoint positions, and every
// join's seam strength is >= tau. Children-stable plus seam >= tau implies
// the joined assembly is stable, so a validating tree certifies
// producibility; this is cross-checked against the min-cut route in tests.
TreeValidation validate_tree(const AssemblyTree& tree, const Assembly& a,
                             const TileSet& ts, int32_t tau);

// ---------------------------------------------------------------------------
// Hierarchical divisions and the sibling-pair finder
// ---------------------------------------------------------------------------

// The set skeleton of an assembly tree over abstract elements 0..m-1:
// the root is the whole set, leaves are singletons, and each internal node
// is the disjoint union of its children.
struct HierarchicalDivision {
    struct Node {
        int32_t parent = -1;
        int32_t left = -1;
        int32_t right = -1;
        int32_t element = -1;  // leaf payload

        bool is_leaf() const { return left < 0; }
    };

    std::vector<Node> nodes;
    int32_t root = -1;

    int32_t add_leaf(int32_t element);
    int32_t add_join(int32_t left, int32_t right);
};

// Skeleton of an assembly tree; elements are the row-major ranks of the
// leaf positions.
HierarchicalDivision division_of(const AssemblyTree& tree);

struct SiblingPair {
    int32_t class1 = -1;  // index into the partition
    int32_t class2 = -1;
    int32_t node1 = -1;   // sibling nodes of the division
    int32_t node2 = -1;
};

// Given a division of S and a partition of S other than {S}, finds classes
// C1 != C2 and sibling nodes whose sets are contained in C1 and C2. Labels
// leaves with their class, propagates labels upward while both children
// agree, then descends from the root through unlabeled children. Throws if
// the partition is invalid or equals {S}.
SiblingPair find_sibling_pair(const HierarchicalDivision& division,
                              const std::vector<std::vector<int32_t>>& partition);

// ---------------------------------------------------------------------------
// Tree surgery for unions of producible assemblies
// ---------------------------------------------------------------------------

// Builds a validating tree for union_assemblies(a, b) from validating trees
// of a and b, splicing tree_a in place of one shared-position leaf of tree_b
// and then eliminating duplicate-position leaf pairs one at a time. The
// spliced copy of tree_a is left untouched, so the result witnesses that a
// can grow into the union. Requires consistent(a, b) and a nonempty overlap.
AssemblyTree merge_trees(const AssemblyTree& tree_a, const Assembly& a,
                         const AssemblyTree& tree_b, const Assembly& b,
                         const TileSet& ts, int32_t tau);

}  // namespace tav
