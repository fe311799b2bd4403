#include "tav/assembly_tree.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>
#include <unordered_set>

namespace tav {

// ---------------------------------------------------------------------------
// AssemblyTree basics
// ---------------------------------------------------------------------------

int32_t AssemblyTree::add_leaf(Position pos, int32_t tile) {
    Node n;
    n.pos = pos;
    n.tile = tile;
    nodes.push_back(n);
    int32_t id = static_cast<int32_t>(nodes.size()) - 1;
    if (root < 0) root = id;
    return id;
}

int32_t AssemblyTree::add_join(int32_t left, int32_t right) {
    Node n;
    n.left = left;
    n.right = right;
    nodes.push_back(n);
    int32_t id = static_cast<int32_t>(nodes.size()) - 1;
    nodes[left].parent = id;
    nodes[right].parent = id;
    root = id;
    return id;
}

size_t AssemblyTree::leaf_count() const {
    size_t k = 0;
    for (const Node& n : nodes) k += n.is_leaf();
    return k;
}

AssemblyTree AssemblyTree::single(Position pos, int32_t tile) {
    AssemblyTree t;
    t.add_leaf(pos, tile);
    return t;
}

bool subtree_equal(const AssemblyTree& a, int32_t na, const AssemblyTree& b, int32_t nb) {
    std::vector<std::pair<int32_t, int32_t>> stack = {{na, nb}};
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        const auto& u = a.nodes[x];
        const auto& v = b.nodes[y];
        if (u.is_leaf() != v.is_leaf()) return false;
        if (u.is_leaf()) {
            if (u.pos != v.pos || u.tile != v.tile) return false;
        } else {
            stack.push_back({u.left, v.left});
            stack.push_back({u.right, v.right});
        }
    }
    return true;
}

int32_t find_subtree(const AssemblyTree& haystack, const AssemblyTree& needle) {
    if (needle.root < 0) return -1;
    for (int32_t i = 0; i < static_cast<int32_t>(haystack.nodes.size()); ++i) {
        if (subtree_equal(haystack, i, needle, needle.root)) return i;
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

TreeValidation fail(std::string message, int32_t node = -1) {
    return TreeValidation{false, std::move(message), node};
}

// Post-order of the subtree rooted at `root`, or empty if the structure is
// not a tree (cycle, shared node, bad link).
std::vector<int32_t> post_order(const AssemblyTree& t, int32_t root, bool* ok) {
    *ok = true;
    std::vector<int32_t> order;
    if (root < 0 || root >= static_cast<int32_t>(t.nodes.size())) {
        *ok = false;
        return order;
    }
    std::vector<char> seen(t.nodes.size(), 0);
    std::vector<std::pair<int32_t, int>> stack = {{root, 0}};
    while (!stack.empty()) {
        auto& [id, phase] = stack.back();
        const auto& n = t.nodes[id];
        if (phase == 0) {
            if (seen[id]) {  // node reached twice: not a tree
                *ok = false;
                return order;
            }
            seen[id] = 1;
            phase = 1;
            if (!n.is_leaf()) {
                if (n.left < 0 || n.left >= static_cast<int32_t>(t.nodes.size()) || n.right < 0 ||
                    n.right >= static_cast<int32_t>(t.nodes.size()) || n.left == n.right) {
                    *ok = false;
                    return order;
                }
                stack.push_back({n.right, 0});
                stack.push_back({n.left, 0});
            }
        } else {
            order.push_back(id);
            stack.pop_back();
        }
    }
    return order;
}

}  // namespace

TreeValidation validate_tree(const AssemblyTree& tree, const Assembly& a,
                             const TileSet& ts, int32_t tau) {
    bool ok = false;
    std::vector<int32_t> order = post_order(tree, tree.root, &ok);
    if (!ok) return fail("malformed tree structure");
    if (order.size() != tree.nodes.size()) return fail("tree has unreachable nodes");

    const BindingGraph g = binding_graph(a, ts);
    const int32_t n = static_cast<int32_t>(a.size());

    // (a) Leaves are exactly the placements of a.
    std::vector<char> used(n, 0);
    size_t leaves = 0;
    for (int32_t id : order) {
        const auto& node = tree.nodes[id];
        if (!node.is_leaf()) continue;
        ++leaves;
        int32_t idx = a.index_of(node.pos);
        if (idx < 0) return fail("leaf at " + to_string(node.pos) + " is outside the assembly", id);
        if (a.placements()[idx].tile != node.tile) {
            return fail("leaf tile at " + to_string(node.pos) + " disagrees with the assembly", id);
        }
        if (used[idx]) return fail("duplicate leaf position " + to_string(node.pos), id);
        used[idx] = 1;
    }
    if (leaves != static_cast<size_t>(n)) {
        return fail("tree has " + std::to_string(leaves) + " leaves for " + std::to_string(n) +
                    " tiles");
    }

    // (b) + (c): children disjoint, seam strength >= tau at every join.
    // Small-to-large set merging keeps this near-linearithmic.
    std::vector<std::unordered_set<int32_t>> sets(tree.nodes.size());
    for (int32_t id : order) {
        const auto& node = tree.nodes[id];
        if (node.is_leaf()) {
            sets[id].insert(a.index_of(node.pos));
            continue;
        }
        auto& ls = sets[node.left];
        auto& rs = sets[node.right];
        auto& small = ls.size() <= rs.size() ? ls : rs;
        auto& large = ls.size() <= rs.size() ? rs : ls;
        int64_t seam = 0;
        for (int32_t p : small) {
            if (large.contains(p)) {
                return fail("children of join overlap at " + to_string(g.verts[p]), id);
            }
            for (int d = 0; d < 4; ++d) {
                int32_t q = g.grid_nbr[p][d];
                if (q >= 0 && g.bond[p][d] > 0 && large.contains(q)) seam += g.bond[p][d];
            }
        }
        if (seam < tau) {
            return fail("join seam strength " + std::to_string(seam) + " is below temperature " +
                        std::to_string(tau), id);
        }
        large.insert(small.begin(), small.end());
        small.clear();
        sets[id] = std::move(large);
    }
    return TreeValidation{};
}

// ---------------------------------------------------------------------------
// Hierarchical divisions and the sibling-pair finder
// ---------------------------------------------------------------------------

int32_t HierarchicalDivision::add_leaf(int32_t element) {
    Node n;
    n.element = element;
    nodes.push_back(n);
    int32_t id = static_cast<int32_t>(nodes.size()) - 1;
    if (root < 0) root = id;
    return id;
}

int32_t HierarchicalDivision::add_join(int32_t left, int32_t right) {
    Node n;
    n.left = left;
    n.right = right;
    nodes.push_back(n);
    int32_t id = static_cast<int32_t>(nodes.size()) - 1;
    nodes[left].parent = id;
    nodes[right].parent = id;
    root = id;
    return id;
}

HierarchicalDivision division_of(const AssemblyTree& tree) {
    // Elements are row-major ranks of the leaf positions.
    std::vector<Position> positions;
    for (const auto& n : tree.nodes) {
        if (n.is_leaf()) positions.push_back(n.pos);
    }
    std::sort(positions.begin(), positions.end());
    std::unordered_map<Position, int32_t, PositionHash> rank;
    for (size_t i = 0; i < positions.size(); ++i) rank.emplace(positions[i], static_cast<int32_t>(i));

    HierarchicalDivision d;
    d.nodes.resize(tree.nodes.size());
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        d.nodes[i].parent = n.parent;
        d.nodes[i].left = n.left;
        d.nodes[i].right = n.right;
        d.nodes[i].element = n.is_leaf() ? rank.at(n.pos) : -1;
    }
    d.root = tree.root;
    return d;
}

SiblingPair find_sibling_pair(const HierarchicalDivision& division,
                              const std::vector<std::vector<int32_t>>& partition) {
    if (division.root < 0) throw Error("empty division");
    if (partition.size() < 2) throw Error("partition must have at least two classes");

    // element -> class index; reject anything that is not a partition of the
    // division's leaf elements.
    std::unordered_map<int32_t, int32_t> cls;
    for (size_t c = 0; c < partition.size(); ++c) {
        if (partition[c].empty()) throw Error("partition class " + std::to_string(c) + " is empty");
        for (int32_t e : partition[c]) {
            if (!cls.emplace(e, static_cast<int32_t>(c)).second) {
                throw Error("element " + std::to_string(e) + " appears in two classes");
            }
        }
    }
    size_t leaf_total = 0;
    for (const auto& n : division.nodes) {
        if (!n.is_leaf()) continue;
        ++leaf_total;
        if (!cls.contains(n.element)) {
            throw Error("leaf element " + std::to_string(n.element) + " is missing from the partition");
        }
    }
    if (leaf_total != cls.size()) throw Error("partition covers elements outside the division");

    // Label leaves, then propagate upward while both children carry the same
    // label. Post-order reaches the fixed point in one sweep.
    std::vector<int32_t> label(division.nodes.size(), -1);
    std::vector<std::pair<int32_t, int>> stack = {{division.root, 0}};
    while (!stack.empty()) {
        auto& [id, phase] = stack.back();
        const auto& n = division.nodes[id];
        if (phase == 0) {
            phase = 1;
            if (!n.is_leaf()) {
                stack.push_back({n.right, 0});
                stack.push_back({n.left, 0});
            }
        } else {
            if (n.is_leaf()) {
                label[id] = cls.at(n.element);
            } else if (label[n.left] >= 0 && label[n.left] == label[n.right]) {
                label[id] = label[n.left];
            }
            stack.pop_back();
        }
    }

    // The root is unlabeled (no class equals S). Descend through unlabeled
    // children until both children are labeled; they are labeled differently
    // by the propagation's stopping condition.
    int32_t cur = division.root;
    if (label[cur] >= 0) throw Error("partition must differ from {S}");
    while (true) {
        const auto& n = division.nodes[cur];
        assert(!n.is_leaf());
        if (label[n.left] >= 0 && label[n.right] >= 0) {
            assert(label[n.left] != label[n.right]);
            return SiblingPair{label[n.left], label[n.right], n.left, n.right};
        }
        cur = label[n.left] < 0 ? n.left : n.right;
    }
}

// ---------------------------------------------------------------------------
// Tree surgery
// ---------------------------------------------------------------------------

namespace {

struct Surgeon {
    std::vector<AssemblyTree::Node> nodes;
    std::vector<char> dead;
    int32_t root = -1;
    int32_t alpha_begin = 0;  // nodes [alpha_begin, end) are the spliced copy of tree_a

    bool in_alpha(int32_t id) const { return id >= alpha_begin; }

    void replace_child(int32_t parent, int32_t old_child, int32_t new_child) {
        if (parent < 0) {
            root = new_child;
        } else if (nodes[parent].left == old_child) {
            nodes[parent].left = new_child;
        } else {
            assert(nodes[parent].right == old_child);
            nodes[parent].right = new_child;
        }
        nodes[new_child].parent = parent;
    }

    int32_t depth(int32_t id) const {
        int32_t d = 0;
        for (int32_t cur = id; nodes[cur].parent >= 0; cur = nodes[cur].parent) ++d;
        return d;
    }

    // Naive parent-walk LCA; depths are recomputed per query since each
    // rewrite changes them.
    int32_t lca(int32_t u, int32_t v) const {
        int32_t du = depth(u), dv = depth(v);
        while (du > dv) { u = nodes[u].parent; --du; }
        while (dv > du) { v = nodes[v].parent; --dv; }
        while (u != v) {
            u = nodes[u].parent;
            v = nodes[v].parent;
        }
        return u;
    }

    // Child of ancestor `anc` on the path down to `id`.
    int32_t child_toward(int32_t anc, int32_t id) const {
        int32_t cur = id;
        while (nodes[cur].parent != anc) cur = nodes[cur].parent;
        return cur;
    }

    AssemblyTree compact() const {
        AssemblyTree out;
        out.nodes.reserve(nodes.size());
        std::vector<int32_t> remap(nodes.size(), -1);
        // Two-phase DFS assigns ids in post-order, children before parents.
        std::vector<std::pair<int32_t, int>> stack = {{root, 0}};
        while (!stack.empty()) {
            auto& [id, phase] = stack.back();
            const AssemblyTree::Node& n = nodes[id];  // stable; pushes may move `id`
            if (phase == 0) {
                phase = 1;
                if (!n.is_leaf()) {
                    stack.push_back({n.right, 0});
                    stack.push_back({n.left, 0});
                }
            } else {
                remap[id] = n.is_leaf() ? out.add_leaf(n.pos, n.tile)
                                        : out.add_join(remap[n.left], remap[n.right]);
                stack.pop_back();
            }
        }
        out.root = remap[root];
        return out;
    }
};

#ifndef NDEBUG
// Debug-only invariant from the surgery's correctness argument: after each
// elimination round every live node's leaves collapse (set semantics) to a
// consistent, tau-stable placement set.
bool node_assemblies_stable(const Surgeon& s, const TileSet& ts, int32_t tau) {
    std::vector<std::vector<Placement>> collected(s.nodes.size());
    bool all_ok = true;
    std::vector<std::pair<int32_t, int>> stack = {{s.root, 0}};
    while (!stack.empty() && all_ok) {
        auto& [id, phase] = stack.back();
        const auto& n = s.nodes[id];
        if (phase == 0) {
            phase = 1;
            if (!n.is_leaf()) {
                stack.push_back({n.right, 0});
                stack.push_back({n.left, 0});
            }
        } else {
            std::vector<Placement>& mine = collected[id];
            if (n.is_leaf()) {
                mine = {{n.pos, n.tile}};
            } else {
                mine = collected[n.left];
                std::unordered_map<Position, int32_t, PositionHash> seen;
                for (const Placement& p : mine) seen.emplace(p.pos, p.tile);
                for (const Placement& p : collected[n.right]) {
                    auto [it, fresh] = seen.emplace(p.pos, p.tile);
                    if (fresh) mine.push_back(p);
                    else if (it->second != p.tile) all_ok = false;  // inconsistent collapse
                }
                // Stability of the collapsed set, bypassing Assembly's
                // connectivity requirement: min_cut reports 0 if disconnected.
                if (all_ok && mine.size() > 1) {
                    BindingGraph g;
                    std::unordered_map<Position, int32_t, PositionHash> index;
                    std::vector<Placement> sorted = mine;
                    std::sort(sorted.begin(), sorted.end(),
                              [](const Placement& x, const Placement& y) { return x.pos < y.pos; });
                    for (size_t i = 0; i < sorted.size(); ++i) {
                        index.emplace(sorted[i].pos, static_cast<int32_t>(i));
                        g.verts.push_back(sorted[i].pos);
                    }
                    g.grid_nbr.assign(sorted.size(), {-1, -1, -1, -1});
                    g.bond.assign(sorted.size(), {0, 0, 0, 0});
                    for (size_t i = 0; i < sorted.size(); ++i) {
                        const TileType& ti = ts.tile(sorted[i].tile);
                        for (Direction d : kDirections) {
                            auto it = index.find(sorted[i].pos + direction_offset(d));
                            if (it == index.end()) continue;
                            g.grid_nbr[i][static_cast<uint8_t>(d)] = it->second;
                            const Glue& gi = ti.side(d);
                            const Glue& gj = ts.tile(sorted[it->second].tile).side(opposite(d));
                            if (gi.label == gj.label && gi.strength > 0) {
                                g.bond[i][static_cast<uint8_t>(d)] = gi.strength;
                            }
                        }
                    }
                    if (min_cut(g) < tau) all_ok = false;
                }
            }
            stack.pop_back();
        }
    }
    return all_ok;
}
#endif

}  // namespace

AssemblyTree merge_trees(const AssemblyTree& tree_a, const Assembly& a,
                         const AssemblyTree& tree_b, const Assembly& b,
                         const TileSet& ts, int32_t tau) {
    if (TreeValidation v = validate_tree(tree_a, a, ts, tau); !v) {
        throw Error("first input tree fails validation: " + v.message);
    }
    if (TreeValidation v = validate_tree(tree_b, b, ts, tau); !v) {
        throw Error("second input tree fails validation: " + v.message);
    }
    if (!consistent(a, b)) throw Error("assemblies are not consistent");

    // Shared positions in row-major order; the least one hosts the splice.
    std::vector<Position> shared;
    for (const Placement& p : a.placements()) {
        if (b.contains(p.pos)) shared.push_back(p.pos);
    }
    if (shared.empty()) throw Error("assemblies do not overlap");

    if (b.size() == 1) return tree_a;          // union is exactly a
    if (a.size() == 1 && shared.size() == 1) {
        // Splicing a single leaf in place of a leaf changes nothing.
        return tree_b;
    }

    Surgeon s;
    s.nodes.assign(tree_b.nodes.begin(), tree_b.nodes.end());
    const int32_t nb = static_cast<int32_t>(tree_b.nodes.size());
    s.alpha_begin = nb;
    for (const auto& n : tree_a.nodes) {
        AssemblyTree::Node shifted = n;
        if (shifted.parent >= 0) shifted.parent += nb;
        if (shifted.left >= 0) shifted.left += nb;
        if (shifted.right >= 0) shifted.right += nb;
        s.nodes.push_back(shifted);
    }
    s.dead.assign(s.nodes.size(), 0);
    s.root = tree_b.root;
    const int32_t alpha_root = tree_a.root + nb;

    // Leaf lookup by position for both copies.
    std::unordered_map<Position, int32_t, PositionHash> leaf_b, leaf_a;
    for (int32_t i = 0; i < nb; ++i) {
        if (s.nodes[i].is_leaf()) leaf_b.emplace(s.nodes[i].pos, i);
    }
    for (int32_t i = nb; i < static_cast<int32_t>(s.nodes.size()); ++i) {
        if (s.nodes[i].is_leaf()) leaf_a.emplace(s.nodes[i].pos, i);
    }

    // Splice: replace tree_b's leaf at the least shared position with the
    // whole copy of tree_a.
    {
        int32_t l2 = leaf_b.at(shared.front());
        s.replace_child(s.nodes[l2].parent, l2, alpha_root);
        s.dead[l2] = 1;
    }

    // Eliminate the remaining duplicate-position leaf pairs, one per round.
    for (size_t k = 1; k < shared.size(); ++k) {
        const int32_t l1 = leaf_a.at(shared[k]);
        const int32_t l2 = leaf_b.at(shared[k]);
        const int32_t anc = s.lca(l1, l2);
        assert(!s.in_alpha(anc));
        const int32_t r1 = s.child_toward(anc, l1);
        const int32_t r2 = s.child_toward(anc, l2);
        const int32_t p2 = s.nodes[l2].parent;
        const int32_t pa = s.nodes[anc].parent;
        if (p2 == anc) {
            // l2 is a direct child of the ancestor: the rewrite collapses to
            // replacing the ancestor with the subtree containing l1.
            assert(r2 == l2);
            s.replace_child(pa, anc, r1);
        } else {
            s.replace_child(p2, l2, r1);
            s.replace_child(pa, anc, r2);
        }
        s.dead[l2] = 1;
        s.dead[anc] = 1;
#ifndef NDEBUG
        if (a.size() + b.size() <= 64) assert(node_assemblies_stable(s, ts, tau));
#endif
    }

    AssemblyTree merged = s.compact();
    assert(find_subtree(merged, tree_a) >= 0);
    return merged;
}

}  // namespace tav
