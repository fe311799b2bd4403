#include "tav/upv.hpp"

#include <algorithm>
#include <cassert>

namespace tav {

GlueIndex build_glue_index(const TileSet& ts) {
    GlueIndex idx;
    for (int32_t t = 0; t < static_cast<int32_t>(ts.size()); ++t) {
        for (Direction d : kDirections) {
            const Glue& g = ts.tile(t).side(d);
            if (g.strength > 0) idx.by_direction_[static_cast<uint8_t>(d)][g.label].push_back(t);
        }
    }
    return idx;  // per-label vectors are ascending by construction
}

// ---------------------------------------------------------------------------
// Hopcroft-Tarjan, pass 1
// ---------------------------------------------------------------------------

namespace {

struct Frame {
    int32_t v;
    uint8_t dir;
};

void count_step(PrecedesStats* stats) {
    if (stats) ++stats->steps;
}

}  // namespace

BiconnectedDecomposition biconnected_decomposition(const BindingGraph& g, int32_t root) {
    const int32_t n = static_cast<int32_t>(g.vertex_count());
    BiconnectedDecomposition bd;
    bd.root = root;
    bd.disc.assign(n, -1);
    bd.low.assign(n, 0);
    bd.parent.assign(n, -1);
    bd.subtree_end.assign(n, 0);
    bd.is_cut.assign(n, 0);

    int32_t timer = 0;
    int32_t root_children = 0;
    std::vector<Frame> stack;
    stack.reserve(n);
    stack.push_back({root, 0});
    bd.disc[root] = timer++;
    bd.low[root] = bd.disc[root];

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.dir < 4) {
            const uint8_t d = f.dir++;
            const int32_t u = g.grid_nbr[f.v][d];
            if (u < 0 || g.bond[f.v][d] <= 0) continue;
            if (bd.disc[u] < 0) {
                bd.parent[u] = f.v;
                bd.disc[u] = timer++;
                bd.low[u] = bd.disc[u];
                stack.push_back({u, 0});
            } else if (u != bd.parent[f.v]) {
                bd.low[f.v] = std::min(bd.low[f.v], bd.disc[u]);
            }
        } else {
            const int32_t v = f.v;
            bd.subtree_end[v] = timer - 1;
            stack.pop_back();
            const int32_t p = bd.parent[v];
            if (p >= 0) {
                bd.low[p] = std::min(bd.low[p], bd.low[v]);
                if (p == root) {
                    ++root_children;
                } else if (bd.low[v] >= bd.disc[p]) {
                    bd.is_cut[p] = 1;
                }
            }
        }
    }
    if (root_children >= 2) bd.is_cut[root] = 1;
    if (timer != n) throw Error("binding graph is not connected");
    return bd;
}

// ---------------------------------------------------------------------------
// Pass 2: weave the precedence checks into a second DFS
// ---------------------------------------------------------------------------

std::vector<uint8_t> precedes_map(const BindingGraph& g, int32_t seed_idx, PrecedesStats* stats) {
    const int32_t n = static_cast<int32_t>(g.vertex_count());
    BiconnectedDecomposition bd = biconnected_decomposition(g, seed_idx);
    if (stats) stats->steps += static_cast<uint64_t>(n) * 5;  // pass-1 visits + slots

    enum : uint8_t { kUnvisited = 0, kVisiting = 1, kVisited = 2 };
    std::vector<uint8_t> state(n, kUnvisited);
    std::vector<int32_t> active_child(n, -1);
    std::vector<uint8_t> mask(n, 0);

    // Evaluated at q's discovery: p precedes q iff p is the seed, or p is a
    // cut vertex currently being visited and the open child subtree of p that
    // contains q cannot reach above p.
    auto scan_neighbors = [&](int32_t q) {
        for (uint8_t d = 0; d < 4; ++d) {
            count_step(stats);
            const int32_t p = g.grid_nbr[q][d];
            if (p < 0) continue;
            bool prec;
            if (p == seed_idx) {
                prec = true;
            } else if (state[p] != kVisiting) {
                prec = false;  // q is not inside p's subtree
            } else {
                const int32_t c = bd.parent[q] == p ? q : active_child[p];
                prec = bd.is_cut[p] && bd.low[c] >= bd.disc[p];
            }
            if (prec) mask[q] |= uint8_t(1) << d;
        }
    };

    std::vector<Frame> stack;
    stack.reserve(n);
    stack.push_back({seed_idx, 0});
    state[seed_idx] = kVisiting;
    scan_neighbors(seed_idx);

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.dir < 4) {
            const uint8_t d = f.dir++;
            count_step(stats);
            const int32_t u = g.grid_nbr[f.v][d];
            if (u < 0 || g.bond[f.v][d] <= 0 || state[u] != kUnvisited) continue;
            state[u] = kVisiting;
            active_child[f.v] = u;
            scan_neighbors(u);
            stack.push_back({u, 0});
        } else {
            state[f.v] = kVisited;
            stack.pop_back();
        }
    }
    return mask;
}

bool precedes(const Assembly& a, const TileSet& ts, Position seed_pos, Position p, Position q) {
    const int32_t pi = a.index_of(p);
    const int32_t qi = a.index_of(q);
    const int32_t si = a.index_of(seed_pos);
    if (pi < 0) throw Error("position " + to_string(p) + " outside the assembly");
    if (qi < 0) throw Error("position " + to_string(q) + " outside the assembly");
    if (si < 0) throw Error("seed position " + to_string(seed_pos) + " outside the assembly");
    if (pi == qi) throw Error("precedes requires distinct positions");
    if (pi == si) return true;   // every production starts at the seed
    if (qi == si) return false;  // nothing separates the seed from itself

    const BindingGraph g = binding_graph(a, ts);
    const BiconnectedDecomposition bd = biconnected_decomposition(g, si);
    if (!bd.in_subtree(pi, qi) || !bd.is_cut[pi]) return false;
    // Find p's DFS child whose subtree holds q; the grid degree bounds the
    // number of children by 4.
    for (uint8_t d = 0; d < 4; ++d) {
        const int32_t c = g.grid_nbr[pi][d];
        if (c < 0 || g.bond[pi][d] <= 0 || bd.parent[c] != pi) continue;
        if (bd.in_subtree(c, qi)) return bd.low[c] >= bd.disc[pi];
    }
    return false;  // q == p handled above; q outside every child subtree
}

// ---------------------------------------------------------------------------
// Seeded temperature-1 UPV
// ---------------------------------------------------------------------------

const char* to_string(UpvOutcome o) {
    switch (o) {
        case UpvOutcome::Unique: return "unique";
        case UpvOutcome::NotProducible: return "not-producible";
        case UpvOutcome::NotTerminal: return "not-terminal";
        case UpvOutcome::NotUnique: return "not-unique";
    }
    return "?";
}

namespace {

UpvVerdict verdict(UpvOutcome o, std::string message) {
    return UpvVerdict{o, std::nullopt, std::move(message)};
}

// Not-terminal when any side facing an empty position carries a non-null
// glue; with a normalized tile set some tile matches that glue, and at
// temperature 1 one bond suffices for an attachment.
std::optional<UpvVerdict> check_terminal(const BindingGraph& g, const Assembly& a,
                                         const TileSet& ts) {
    const auto placements = a.placements();
    for (size_t i = 0; i < placements.size(); ++i) {
        const TileType& t = ts.tile(placements[i].tile);
        for (uint8_t d = 0; d < 4; ++d) {
            if (g.grid_nbr[i][d] < 0 && !t.sides[d].is_null()) {
                return verdict(UpvOutcome::NotTerminal,
                               "glue '" + ts.label_name(t.sides[d].label) + "' on side " +
                                   direction_name(Direction(d)) + " of " +
                                   to_string(placements[i].pos) + " is unbound");
            }
        }
    }
    return std::nullopt;
}

UpvVerdict upv_seeded_impl(const TileSet& ts, const GlueIndex& gidx, const BindingGraph& g,
                           const Assembly& a, int32_t anchor_idx) {
    const auto placements = a.placements();
    const std::vector<uint8_t> preceded_by = precedes_map(g, anchor_idx);

    for (size_t qi = 0; qi < placements.size(); ++qi) {
        for (uint8_t d = 0; d < 4; ++d) {
            // p = q + d; skip when p precedes q (q never exists without p).
            const int32_t pi = g.grid_nbr[qi][d];
            if (pi < 0 || (preceded_by[qi] & (uint8_t(1) << d))) continue;
            const Glue& facing = ts.tile(placements[qi].tile).side(Direction(d));
            if (facing.strength <= 0) continue;
            const Direction toward_q = opposite(Direction(d));
            for (int32_t t : gidx.tiles_with(toward_q, facing.label)) {
                if (t == placements[pi].tile) continue;
                UpvDiagnostic diag;
                diag.kind = UpvDiagnostic::Kind::AlternativeTile;
                diag.position = placements[pi].pos;
                diag.direction = toward_q;
                diag.alternative = t;
                UpvVerdict res;
                res.outcome = UpvOutcome::NotUnique;
                res.diagnostic = diag;
                res.message = "tile '" + ts.tile(t).name + "' could also attach at " +
                              to_string(placements[pi].pos) + " via the glue on side " +
                              direction_name(Direction(d)) + " of " + to_string(placements[qi].pos);
                return res;
            }
        }
    }
    return verdict(UpvOutcome::Unique, "uniquely produced");
}

}  // namespace

UpvVerdict upv_seeded_t1(const TileSet& ts, int32_t seed_tile, const Assembly& a,
                         Position anchor) {
    if (!tileset_is_normalized(ts)) {
        throw Error("tile set contains functionally null glues; normalize it first");
    }
    if (seed_tile < 0 || static_cast<size_t>(seed_tile) >= ts.size()) {
        throw Error("seed tile index out of range");
    }
    const int32_t anchor_idx = a.index_of(anchor);
    if (anchor_idx < 0) throw Error("anchor " + to_string(anchor) + " is outside the assembly");
    if (a.placements()[anchor_idx].tile != seed_tile) {
        throw Error("anchor " + to_string(anchor) + " does not hold the seed tile '" +
                    ts.tile(seed_tile).name + "'");
    }

    const BindingGraph g = binding_graph(a, ts);
    if (!binding_connected(g)) {
        return verdict(UpvOutcome::NotProducible, "binding graph is not connected");
    }
    if (auto nt = check_terminal(g, a, ts)) return *nt;

    const GlueIndex gidx = build_glue_index(ts);
    return upv_seeded_impl(ts, gidx, g, a, anchor_idx);
}

// ---------------------------------------------------------------------------
// Hierarchical temperature-1 UPV
// ---------------------------------------------------------------------------

UpvVerdict upv_hier_t1(const TileSet& ts, const Assembly& a, const UpvHierOptions& options) {
    if (!tileset_is_normalized(ts)) {
        throw Error("tile set contains functionally null glues; normalize it first");
    }
    const BindingGraph g = binding_graph(a, ts);

    // Every tile type must appear somewhere; a missing type is itself a
    // producible assembly with no embedding into a.
    std::vector<std::vector<int32_t>> occurrences(ts.size());
    const auto placements = a.placements();
    for (int32_t i = 0; i < static_cast<int32_t>(placements.size()); ++i) {
        occurrences[placements[i].tile].push_back(i);  // row-major ascending
    }
    for (int32_t t = 0; t < static_cast<int32_t>(ts.size()); ++t) {
        if (occurrences[t].empty()) {
            UpvVerdict res;
            res.outcome = UpvOutcome::NotUnique;
            res.diagnostic = UpvDiagnostic{UpvDiagnostic::Kind::MissingTileType, {}, Direction::North, t};
            res.message = "tile type '" + ts.tile(t).name + "' does not appear in the assembly";
            return res;
        }
    }

    if (!binding_connected(g)) {
        return verdict(UpvOutcome::NotProducible, "binding graph is not connected");
    }
    if (auto nt = check_terminal(g, a, ts)) return *nt;

    const GlueIndex gidx = build_glue_index(ts);

    // One seeded check per tile type (per occurrence in strict mode). The
    // checks are independent; the verdict is the lowest-index failure.
    std::vector<int32_t> anchors;
    for (int32_t t = 0; t < static_cast<int32_t>(ts.size()); ++t) {
        if (options.strict_anchors) {
            anchors.insert(anchors.end(), occurrences[t].begin(), occurrences[t].end());
        } else {
            anchors.push_back(occurrences[t].front());
        }
    }

    const int32_t count = static_cast<int32_t>(anchors.size());
    std::vector<UpvVerdict> results(count);
    std::vector<char> failed(count, 0);
    std::string error;
#pragma omp parallel for schedule(dynamic, 1)
    for (int32_t i = 0; i < count; ++i) {
        try {
            UpvVerdict v = upv_seeded_impl(ts, gidx, g, a, anchors[i]);
            if (!v.unique()) {
                results[i] = std::move(v);
                failed[i] = 1;
            }
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw Error(error);
    for (int32_t i = 0; i < count; ++i) {
        if (failed[i]) return results[i];
    }
    return verdict(UpvOutcome::Unique, "uniquely produced");
}

}  // namespace tav
