#include "tav/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <string>
#include <unordered_set>

namespace tav {

Assembly canonicalize(const Assembly& a) {
    Position m = a.min_position();
    return a.translated({-m.x, -m.y});
}

// ---------------------------------------------------------------------------
// Subset DP producibility
// ---------------------------------------------------------------------------

bool producible_oracle(const Assembly& a, const TileSet& ts, int32_t tau) {
    const int n = static_cast<int>(a.size());
    if (n > 20) throw Error("producible_oracle is capped at 20 tiles (got " + std::to_string(n) + ")");
    const BindingGraph g = binding_graph(a, ts);
    if (n == 1) return true;

    auto seam = [&](uint32_t part, uint32_t rest) -> int64_t {
        int64_t total = 0;
        for (uint32_t bits = part; bits;) {
            const int p = std::countr_zero(bits);
            bits &= bits - 1;
            for (int d = 0; d < 4; ++d) {
                const int32_t q = g.grid_nbr[p][d];
                if (q >= 0 && g.bond[p][d] > 0 && (rest >> q) & 1) total += g.bond[p][d];
            }
        }
        return total;
    };

    std::vector<int8_t> memo(size_t(1) << n, -1);
    std::function<bool(uint32_t)> buildable = [&](uint32_t s) -> bool {
        if (std::popcount(s) == 1) return true;
        int8_t& m = memo[s];
        if (m >= 0) return m == 1;
        m = 0;
        const uint32_t low = s & (~s + 1);
        // Splits with the lowest member on the left avoid double counting.
        for (uint32_t part = (s - 1) & s; part; part = (part - 1) & s) {
            if (!(part & low)) continue;
            const uint32_t rest = s ^ part;
            if (seam(part, rest) >= tau && buildable(part) && buildable(rest)) {
                m = 1;
                break;
            }
        }
        return m == 1;
    };
    return buildable((uint32_t(1) << n) - 1);
}

// ---------------------------------------------------------------------------
// Hierarchical enumeration
// ---------------------------------------------------------------------------

namespace {

std::string assembly_key(const Assembly& a) {
    std::string key;
    key.reserve(a.size() * 12);
    for (const Placement& p : a.placements()) {
        key.append(reinterpret_cast<const char*>(&p.pos.x), 4);
        key.append(reinterpret_cast<const char*>(&p.pos.y), 4);
        key.append(reinterpret_cast<const char*>(&p.tile), 4);
    }
    return key;
}

// Calls fn with the union of x and a translation of y for every offset that
// produces at least one interacting abutment and no overlap, provided the
// union is tau-stable and within max_size. Offsets with no interacting
// abutment cannot yield a positive seam, hence no stable combination.
void for_each_stable_combination(const Assembly& x, const Assembly& y, const TileSet& ts,
                                 int32_t tau, size_t max_size,
                                 const std::function<void(const Assembly&)>& fn) {
    if (x.size() + y.size() > max_size) return;
    std::unordered_set<uint64_t> tried;
    for (const Placement& px : x.placements()) {
        const TileType& tx = ts.tile(px.tile);
        for (Direction d : kDirections) {
            if (tx.side(d).strength <= 0) continue;
            for (const Placement& py : y.placements()) {
                if (!interacts(tx, d, ts.tile(py.tile))) continue;
                const Position target = px.pos + direction_offset(d);
                const int64_t vx = static_cast<int64_t>(target.x) - py.pos.x;
                const int64_t vy = static_cast<int64_t>(target.y) - py.pos.y;
                if (!tried.insert((static_cast<uint64_t>(static_cast<uint32_t>(vx)) << 32) |
                                  static_cast<uint32_t>(vy)).second) {
                    continue;
                }
                Assembly moved = y.translated({static_cast<int32_t>(vx), static_cast<int32_t>(vy)});
                bool overlap = false;
                for (const Placement& p : moved.placements()) {
                    if (x.contains(p.pos)) {
                        overlap = true;
                        break;
                    }
                }
                if (overlap) continue;
                std::vector<Placement> merged(x.placements().begin(), x.placements().end());
                merged.insert(merged.end(), moved.placements().begin(), moved.placements().end());
                Assembly u(std::move(merged));
                // At temperature 1 both parts are stable (= binding-connected)
                // and share an interacting abutment, so the union is stable.
                if (tau > 1 && !is_stable(u, ts, tau)) continue;
                fn(u);
            }
        }
    }
}

bool assembly_terminal_t1(const Assembly& a, const TileSet& ts) {
    for (const Placement& p : a.placements()) {
        const TileType& t = ts.tile(p.tile);
        for (Direction d : kDirections) {
            if (!t.side(d).is_null() && !a.contains(p.pos + direction_offset(d))) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Assembly> enumerate_producible(const TileSet& ts, int32_t tau, int32_t max_size,
                                           const OracleLimits& limits) {
    if (max_size < 1) throw Error("max_size must be positive");
    std::vector<Assembly> result;
    std::unordered_set<std::string> seen;
    std::deque<size_t> worklist;

    auto add = [&](const Assembly& a) {
        Assembly c = canonicalize(a);
        if (!seen.insert(assembly_key(c)).second) return;
        if (result.size() >= limits.max_assemblies) {
            throw Error("enumeration exceeded the cap of " + std::to_string(limits.max_assemblies) +
                        " assemblies");
        }
        worklist.push_back(result.size());
        result.push_back(std::move(c));
    };

    for (int32_t t = 0; t < static_cast<int32_t>(ts.size()); ++t) {
        add(Assembly({{Position{0, 0}, t}}));
    }

    while (!worklist.empty()) {
        const size_t i = worklist.front();
        worklist.pop_front();
        const size_t snapshot = result.size();
        // Copies: add() grows `result`, which would invalidate references.
        const Assembly x = result[i];
        for (size_t j = 0; j < snapshot; ++j) {
            const Assembly y = result[j];
            for_each_stable_combination(x, y, ts, tau, static_cast<size_t>(max_size),
                                        [&](const Assembly& u) { add(u); });
        }
    }

    std::sort(result.begin(), result.end(), [](const Assembly& a, const Assembly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(
            a.placements().begin(), a.placements().end(), b.placements().begin(),
            b.placements().end(), [](const Placement& x, const Placement& y) {
                if (x.pos != y.pos) return x.pos < y.pos;
                return x.tile < y.tile;
            });
    });
    return result;
}

bool upv_hier_oracle(const TileSet& ts, const Assembly& a, const OracleLimits& limits) {
    if (a.size() > 8) throw Error("upv_hier_oracle is capped at 8 tiles");
    if (ts.size() > 4) throw Error("upv_hier_oracle is capped at 4 tile types");

    const std::vector<Assembly> producibles =
        enumerate_producible(ts, 1, static_cast<int32_t>(a.size()), limits);

    // a itself must be producible.
    const Assembly canon = canonicalize(a);
    bool found = false;
    for (const Assembly& b : producibles) {
        if (b == canon) {
            found = true;
            break;
        }
    }
    if (!found) return false;

    // Every producible embeds into a, ...
    for (const Assembly& b : producibles) {
        if (!find_embedding(b, a)) return false;
    }

    // ... and so does every stable pairwise join: a minimal non-embedding
    // producible has embeddable subtrees, which therefore appear above.
    bool all_embed = true;
    for (const Assembly& x : producibles) {
        if (!all_embed) break;
        for (const Assembly& y : producibles) {
            if (!all_embed) break;
            for_each_stable_combination(x, y, ts, 1, 2 * a.size(), [&](const Assembly& u) {
                if (all_embed && !find_embedding(u, a)) all_embed = false;
            });
        }
    }
    if (!all_embed) return false;

    return assembly_terminal_t1(a, ts);
}

// ---------------------------------------------------------------------------
// Seeded enumeration
// ---------------------------------------------------------------------------

bool upv_seeded_oracle(const TileSet& ts, int32_t seed_tile, const Assembly& a, Position anchor,
                       const OracleLimits& limits) {
    if (a.size() > 8) throw Error("upv_seeded_oracle is capped at 8 tiles");
    if (ts.size() > 4) throw Error("upv_seeded_oracle is capped at 4 tile types");
    if (a.tile_at(anchor) != seed_tile) throw Error("anchor does not hold the seed tile");

    const size_t max_size = a.size() + 1;
    std::vector<Assembly> all;
    std::unordered_set<std::string> seen;
    std::deque<size_t> worklist;

    auto add = [&](Assembly b) {
        if (!seen.insert(assembly_key(b)).second) return;
        if (all.size() >= limits.max_assemblies) {
            throw Error("enumeration exceeded the cap of " + std::to_string(limits.max_assemblies) +
                        " assemblies");
        }
        worklist.push_back(all.size());
        all.push_back(std::move(b));
    };

    add(Assembly({{anchor, seed_tile}}));
    while (!worklist.empty()) {
        const Assembly cur = all[worklist.front()];  // copy: `all` may reallocate
        worklist.pop_front();
        if (cur.size() >= max_size) continue;
        // Try every tile type at every empty neighbor; at temperature 1 an
        // attachment is stable iff one bond forms.
        for (const Placement& p : cur.placements()) {
            for (Direction d : kDirections) {
                const Position r = p.pos + direction_offset(d);
                if (cur.contains(r)) continue;
                for (int32_t t = 0; t < static_cast<int32_t>(ts.size()); ++t) {
                    bool binds = false;
                    for (Direction e : kDirections) {
                        const int32_t nb = cur.tile_at(r + direction_offset(e));
                        if (nb >= 0 && interacts(ts.tile(t), e, ts.tile(nb))) {
                            binds = true;
                            break;
                        }
                    }
                    if (!binds) continue;
                    std::vector<Placement> grown(cur.placements().begin(), cur.placements().end());
                    grown.push_back({r, t});
                    add(Assembly(std::move(grown)));
                }
            }
        }
    }

    bool reached_a = false;
    for (const Assembly& b : all) {
        if (!is_subassembly(b, a)) return false;
        if (b == a) reached_a = true;
    }
    return reached_a && assembly_terminal_t1(a, ts);
}

// ---------------------------------------------------------------------------
// Precedence oracle
// ---------------------------------------------------------------------------

bool precedes_oracle(const Assembly& a, const TileSet& ts, Position seed_pos, Position p,
                     Position q) {
    const int32_t pi = a.index_of(p);
    const int32_t qi = a.index_of(q);
    const int32_t si = a.index_of(seed_pos);
    if (pi < 0 || qi < 0 || si < 0) throw Error("positions must lie inside the assembly");
    if (pi == si) return true;
    if (qi == si || qi == pi) return false;

    const BindingGraph g = binding_graph(a, ts);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int32_t> stack = {si};
    seen[si] = 1;
    seen[pi] = 1;  // deleted
    while (!stack.empty()) {
        const int32_t v = stack.back();
        stack.pop_back();
        for (int d = 0; d < 4; ++d) {
            const int32_t u = g.grid_nbr[v][d];
            if (u >= 0 && g.bond[v][d] > 0 && !seen[u]) {
                if (u == qi) return false;
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
    return true;
}

}  // namespace tav
