#pragma once

// Shared helpers for the test suites: small tile-set builders, randomized
// instance generators, and brute-force micro-oracles that stay independent
// of the library's algorithm paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tav/assembly_tree.hpp"
#include "tav/core.hpp"

namespace tu {

inline tav::TileSet::GlueSpec g(std::string label, int32_t strength) {
    return {std::move(label), strength};
}

inline tav::TileSet::GlueSpec nil() { return {"-", 0}; }

// Fluent builder: sides in N, E, S, W order.
struct Tiles {
    tav::TileSet ts;

    Tiles& tile(const std::string& name, tav::TileSet::GlueSpec n, tav::TileSet::GlueSpec e,
                tav::TileSet::GlueSpec s, tav::TileSet::GlueSpec w) {
        ts.add_tile(name, {std::move(n), std::move(e), std::move(s), std::move(w)});
        return *this;
    }
};

inline tav::Assembly asm_of(std::vector<tav::Placement> p) { return tav::Assembly(std::move(p)); }

// ---------------------------------------------------------------------------
// Randomized generators (all take an explicit engine; tests log the seed)
// ---------------------------------------------------------------------------

// Tile set with `types` tiles over at most `labels` glue labels, each label
// carrying a fixed random strength in [1, max_strength]; sides are null with
// probability null_prob.
inline tav::TileSet random_tileset(std::mt19937_64& rng, int types, int labels, int max_strength,
                                   double null_prob = 0.35) {
    std::vector<int32_t> strengths(labels);
    std::uniform_int_distribution<int32_t> sd(1, max_strength);
    for (auto& s : strengths) s = sd(rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> ld(0, labels - 1);
    tav::TileSet ts;
    for (int t = 0; t < types; ++t) {
        std::array<tav::TileSet::GlueSpec, 4> sides;
        for (auto& side : sides) {
            if (coin(rng) < null_prob) {
                side = nil();
            } else {
                int l = ld(rng);
                side = {"L" + std::to_string(l), strengths[l]};
            }
        }
        ts.add_tile("T" + std::to_string(t), sides);
    }
    return ts;
}

// Random connected shape of `size` cells grown by frontier accretion.
inline std::vector<tav::Position> random_shape(std::mt19937_64& rng, int size) {
    std::unordered_set<tav::Position, tav::PositionHash> occupied = {tav::Position{0, 0}};
    std::vector<tav::Position> cells = {tav::Position{0, 0}};
    std::vector<tav::Position> frontier;
    for (tav::Direction d : tav::kDirections) frontier.push_back(tav::Position{0, 0} + tav::direction_offset(d));
    while (static_cast<int>(cells.size()) < size) {
        size_t pick = rng() % frontier.size();
        tav::Position p = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        if (!occupied.insert(p).second) continue;
        cells.push_back(p);
        for (tav::Direction d : tav::kDirections) {
            tav::Position q = p + tav::direction_offset(d);
            if (!occupied.contains(q)) frontier.push_back(q);
        }
    }
    return cells;
}

// Random connected assembly over ts with `size` tiles.
inline tav::Assembly random_connected_assembly(std::mt19937_64& rng, const tav::TileSet& ts,
                                               int size) {
    std::uniform_int_distribution<int32_t> td(0, static_cast<int32_t>(ts.size()) - 1);
    std::vector<tav::Placement> placements;
    for (tav::Position p : random_shape(rng, size)) placements.push_back({p, td(rng)});
    return tav::Assembly(std::move(placements));
}

// Random connected subassembly of `a` with k tiles, grown from a random
// start by random adjacent accretion.
inline tav::Assembly random_connected_subassembly(std::mt19937_64& rng, const tav::Assembly& a,
                                                  int k) {
    const auto placements = a.placements();
    std::unordered_set<int32_t> chosen;
    std::vector<int32_t> frontier = {static_cast<int32_t>(rng() % placements.size())};
    std::vector<tav::Placement> result;
    while (static_cast<int>(chosen.size()) < k && !frontier.empty()) {
        size_t pick = rng() % frontier.size();
        int32_t i = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        if (!chosen.insert(i).second) continue;
        result.push_back(placements[i]);
        for (tav::Direction d : tav::kDirections) {
            int32_t j = a.index_of(placements[i].pos + tav::direction_offset(d));
            if (j >= 0 && !chosen.contains(j)) frontier.push_back(j);
        }
    }
    return tav::Assembly(std::move(result));
}

// ---------------------------------------------------------------------------
// Micro-oracles
// ---------------------------------------------------------------------------

// Global min cut by exhaustive bipartition enumeration; n <= 20.
inline int64_t brute_min_cut(const tav::Assembly& a, const tav::TileSet& ts) {
    const auto placements = a.placements();
    const int n = static_cast<int>(placements.size());
    if (n == 1) return INT64_MAX;
    int64_t best = INT64_MAX;
    for (uint32_t side = 1; side < (1u << (n - 1)); ++side) {  // vertex n-1 stays on the right
        int64_t w = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (((side >> i) & 1) == ((side >> j) & 1)) continue;
                w += tav::bond_strength(a, ts, placements[i].pos, placements[j].pos);
            }
        }
        best = std::min(best, w);
    }
    return best;
}

// All fixed polyominoes (shapes up to translation) with exactly `cells`
// cells, canonically translated.
inline std::vector<std::vector<tav::Position>> fixed_polyominoes(int cells) {
    auto canonical = [](std::vector<tav::Position> shape) {
        std::sort(shape.begin(), shape.end());
        const tav::Position m = shape.front();
        for (auto& p : shape) p = {p.x - m.x, p.y - m.y};
        return shape;
    };
    auto key = [](const std::vector<tav::Position>& shape) {
        std::string k;
        for (const auto& p : shape) {
            k += std::to_string(p.x) + "," + std::to_string(p.y) + ";";
        }
        return k;
    };

    std::vector<std::vector<tav::Position>> current = {{tav::Position{0, 0}}};
    for (int s = 2; s <= cells; ++s) {
        std::vector<std::vector<tav::Position>> next;
        std::unordered_set<std::string> seen;
        for (const auto& shape : current) {
            std::unordered_set<tav::Position, tav::PositionHash> in(shape.begin(), shape.end());
            for (const auto& p : shape) {
                for (tav::Direction d : tav::kDirections) {
                    tav::Position q = p + tav::direction_offset(d);
                    if (in.contains(q)) continue;
                    std::vector<tav::Position> grown = shape;
                    grown.push_back(q);
                    grown = canonical(std::move(grown));
                    if (seen.insert(key(grown)).second) next.push_back(std::move(grown));
                }
            }
        }
        current = std::move(next);
    }
    return current;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of divisions and partitions (for the sibling-pair tests)
// ---------------------------------------------------------------------------

inline tav::HierarchicalDivision join_divisions(const tav::HierarchicalDivision& a,
                                                const tav::HierarchicalDivision& b) {
    tav::HierarchicalDivision out = a;
    const int32_t off = static_cast<int32_t>(out.nodes.size());
    for (const auto& n : b.nodes) {
        auto shifted = n;
        if (shifted.parent >= 0) shifted.parent += off;
        if (shifted.left >= 0) shifted.left += off;
        if (shifted.right >= 0) shifted.right += off;
        out.nodes.push_back(shifted);
    }
    out.add_join(a.root, b.root + off);
    return out;
}

// Every full binary tree whose leaves are exactly `elements` (as a set).
inline std::vector<tav::HierarchicalDivision> all_divisions(
    const std::vector<int32_t>& elements) {
    if (elements.size() == 1) {
        tav::HierarchicalDivision d;
        d.add_leaf(elements[0]);
        return {d};
    }
    std::vector<tav::HierarchicalDivision> out;
    const int m = static_cast<int>(elements.size());
    // The first element stays on the left; unordered splits counted once.
    // Mask bits send the remaining elements right; mask 0 would leave the
    // right side empty.
    for (uint32_t mask = 1; mask < (1u << (m - 1)); ++mask) {
        std::vector<int32_t> left = {elements[0]}, right;
        for (int i = 1; i < m; ++i) {
            if ((mask >> (i - 1)) & 1) right.push_back(elements[i]);
            else left.push_back(elements[i]);
        }
        for (const auto& lt : all_divisions(left)) {
            for (const auto& rt : all_divisions(right)) {
                out.push_back(join_divisions(lt, rt));
            }
        }
    }
    return out;
}

// Every partition of {0..m-1} via restricted growth strings.
inline std::vector<std::vector<std::vector<int32_t>>> all_partitions(int m) {
    std::vector<std::vector<std::vector<int32_t>>> out;
    std::vector<int> assign(m, 0);
    auto emit = [&] {
        int classes = *std::max_element(assign.begin(), assign.end()) + 1;
        std::vector<std::vector<int32_t>> p(classes);
        for (int i = 0; i < m; ++i) p[assign[i]].push_back(i);
        out.push_back(std::move(p));
    };
    std::function<void(int, int)> rec = [&](int i, int max_used) {
        if (i == m) {
            emit();
            return;
        }
        for (int c = 0; c <= max_used + 1; ++c) {
            assign[i] = c;
            rec(i + 1, std::max(max_used, c));
        }
    };
    rec(1, 0);  // assign[0] is fixed to class 0
    return out;
}

// Leaf elements of the subtree rooted at `node`.
inline std::vector<int32_t> division_leaf_set(const tav::HierarchicalDivision& d, int32_t node) {
    std::vector<int32_t> out, stack = {node};
    while (!stack.empty()) {
        int32_t id = stack.back();
        stack.pop_back();
        if (d.nodes[id].is_leaf()) {
            out.push_back(d.nodes[id].element);
        } else {
            stack.push_back(d.nodes[id].left);
            stack.push_back(d.nodes[id].right);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tu
