#include "tav/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>

namespace tav {

const char* direction_name(Direction d) {
    static constexpr const char* names[4] = {"N", "E", "S", "W"};
    return names[static_cast<uint8_t>(d)];
}

std::string to_string(Position p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

// ---------------------------------------------------------------------------
// TileSet
// ---------------------------------------------------------------------------

TileSet::TileSet() {
    label_names_.push_back("-");
    label_strengths_.push_back(0);
    label_index_.emplace("-", kNullLabel);
}

namespace {

bool identifier_ok(std::string_view s, bool allow_colon) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#') return false;
        if (!allow_colon && c == ':') return false;
    }
    return true;
}

}  // namespace

int32_t TileSet::intern_label(std::string_view label, int32_t strength) {
    if (!identifier_ok(label, false)) {
        throw Error("glue label '" + std::string(label) + "' contains characters the text format cannot carry");
    }
    if (strength < 0) throw Error("negative glue strength for label '" + std::string(label) + "'");
    if (label == "-") {
        if (strength != 0) throw Error("null glue '-' must have strength 0");
        return kNullLabel;
    }
    if (strength == 0) {
        throw Error("glue label '" + std::string(label) + "' must have positive strength (only '-' has strength 0)");
    }
    auto it = label_index_.find(std::string(label));
    if (it != label_index_.end()) {
        int32_t id = it->second;
        if (label_strengths_[id] != strength) {
            throw Error("glue label '" + std::string(label) + "' used with strengths " +
                        std::to_string(label_strengths_[id]) + " and " + std::to_string(strength));
        }
        return id;
    }
    int32_t id = static_cast<int32_t>(label_names_.size());
    label_names_.emplace_back(label);
    label_strengths_.push_back(strength);
    label_index_.emplace(label_names_.back(), id);
    return id;
}

int32_t TileSet::add_tile(const std::string& name, const std::array<GlueSpec, 4>& sides) {
    TileType t;
    t.name = name;
    for (int d = 0; d < 4; ++d) {
        int32_t id = intern_label(sides[d].label, sides[d].strength);
        t.sides[d] = Glue{id, label_strengths_[id]};
    }
    return add_tile(std::move(t));
}

int32_t TileSet::add_tile(TileType t) {
    if (!identifier_ok(t.name, true)) {
        throw Error("tile name '" + t.name + "' contains characters the text format cannot carry");
    }
    if (tile_index_.contains(t.name)) throw Error("duplicate tile name '" + t.name + "'");
    for (const Glue& g : t.sides) {
        if (g.label < 0 || g.label >= label_count()) throw Error("tile '" + t.name + "' uses an unknown glue label id");
        if (g.strength != label_strengths_[g.label]) {
            throw Error("tile '" + t.name + "' glue strength disagrees with the label table");
        }
    }
    int32_t idx = static_cast<int32_t>(tiles_.size());
    tile_index_.emplace(t.name, idx);
    tiles_.push_back(std::move(t));
    return idx;
}

TileSet TileSet::from_parts(std::vector<TileType> tiles,
                            std::vector<std::string> label_names,
                            std::vector<int32_t> label_strengths) {
    if (label_names.size() != label_strengths.size() || label_names.empty() ||
        label_names[0] != "-" || label_strengths[0] != 0) {
        throw Error("from_parts: label table must start with the null label '-'");
    }
    TileSet ts;
    ts.label_names_ = std::move(label_names);
    ts.label_strengths_ = std::move(label_strengths);
    ts.label_index_.clear();
    ts.label_index_.reserve(ts.label_names_.size());
    for (int32_t i = 0; i < ts.label_count(); ++i) ts.label_index_.emplace(ts.label_names_[i], i);
    ts.tile_index_.reserve(tiles.size());
    for (size_t i = 0; i < tiles.size(); ++i) {
        for (const Glue& g : tiles[i].sides) {
            if (g.label < 0 || g.label >= ts.label_count() || g.strength != ts.label_strengths_[g.label]) {
                throw Error("from_parts: tile '" + tiles[i].name + "' has an inconsistent glue");
            }
        }
        if (!ts.tile_index_.emplace(tiles[i].name, static_cast<int32_t>(i)).second) {
            throw Error("from_parts: duplicate tile name '" + tiles[i].name + "'");
        }
    }
    ts.tiles_ = std::move(tiles);
    return ts;
}

const TileType& TileSet::tile(int32_t index) const {
    if (index < 0 || static_cast<size_t>(index) >= tiles_.size()) {
        throw Error("tile index " + std::to_string(index) + " out of range");
    }
    return tiles_[index];
}

std::optional<int32_t> TileSet::find_tile(std::string_view name) const {
    auto it = tile_index_.find(std::string(name));
    if (it == tile_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int32_t> TileSet::find_label(std::string_view name) const {
    auto it = label_index_.find(std::string(name));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

// present[d][g]: some tile carries positive-strength label g on side d.
std::array<std::vector<char>, 4> presence_by_direction(const TileSet& ts) {
    std::array<std::vector<char>, 4> present;
    for (auto& v : present) v.assign(ts.label_count(), 0);
    for (const TileType& t : ts.tiles()) {
        for (int d = 0; d < 4; ++d) {
            const Glue& g = t.sides[d];
            if (g.strength > 0) present[d][g.label] = 1;
        }
    }
    return present;
}

}  // namespace

TileSet normalize_tileset(const TileSet& ts, std::vector<NulledGlue>* report) {
    auto present = presence_by_direction(ts);
    std::vector<TileType> tiles(ts.tiles().begin(), ts.tiles().end());
    for (size_t i = 0; i < tiles.size(); ++i) {
        for (int d = 0; d < 4; ++d) {
            Glue& g = tiles[i].sides[d];
            int od = (d + 2) & 3;
            if (g.strength > 0 && !present[od][g.label]) {
                if (report) report->push_back({static_cast<int32_t>(i), Direction(d), g.label});
                g = Glue{};
            }
        }
    }
    std::vector<std::string> names(ts.label_count());
    std::vector<int32_t> strengths(ts.label_count());
    for (int32_t j = 0; j < ts.label_count(); ++j) {
        names[j] = ts.label_name(j);
        strengths[j] = ts.label_strength(j);
    }
    return TileSet::from_parts(std::move(tiles), std::move(names), std::move(strengths));
}

bool tileset_is_normalized(const TileSet& ts) {
    auto present = presence_by_direction(ts);
    for (const TileType& t : ts.tiles()) {
        for (int d = 0; d < 4; ++d) {
            const Glue& g = t.sides[d];
            if (g.strength > 0 && !present[(d + 2) & 3][g.label]) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

namespace {

bool adjacent(Position p, Position q) {
    int64_t dx = std::abs(static_cast<int64_t>(p.x) - q.x);
    int64_t dy = std::abs(static_cast<int64_t>(p.y) - q.y);
    return dx + dy == 1;
}

}  // namespace

Assembly::Assembly(std::vector<Placement> placements) : placements_(std::move(placements)) {
    if (placements_.empty()) throw Error("assembly must be nonempty");
    std::sort(placements_.begin(), placements_.end(),
              [](const Placement& a, const Placement& b) { return a.pos < b.pos; });
    for (size_t i = 1; i < placements_.size(); ++i) {
        if (placements_[i].pos == placements_[i - 1].pos) {
            throw Error("duplicate position " + to_string(placements_[i].pos));
        }
    }
    build_index();

    // Domain must be connected in the full grid graph.
    std::vector<char> seen(placements_.size(), 0);
    std::vector<int32_t> stack = {0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        int32_t i = stack.back();
        stack.pop_back();
        for (Direction d : kDirections) {
            int32_t j = index_of(placements_[i].pos + direction_offset(d));
            if (j >= 0 && !seen[j]) {
                seen[j] = 1;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    if (reached != placements_.size()) throw Error("assembly domain is not connected");
}

Assembly::Assembly(Unchecked, std::vector<Placement> sorted) : placements_(std::move(sorted)) {
    build_index();
}

void Assembly::build_index() {
    index_.reserve(placements_.size() * 2);
    for (size_t i = 0; i < placements_.size(); ++i) {
        index_.emplace(placements_[i].pos, static_cast<int32_t>(i));
    }
}

Assembly Assembly::translated(Offset v) const {
    constexpr int64_t lo = std::numeric_limits<int32_t>::min();
    constexpr int64_t hi = std::numeric_limits<int32_t>::max();
    std::vector<Placement> shifted;
    shifted.reserve(placements_.size());
    for (const Placement& p : placements_) {
        int64_t x = static_cast<int64_t>(p.pos.x) + v.dx;
        int64_t y = static_cast<int64_t>(p.pos.y) + v.dy;
        if (x < lo || x > hi || y < lo || y > hi) {
            throw Error("coordinate overflow translating " + to_string(p.pos));
        }
        shifted.push_back({{static_cast<int32_t>(x), static_cast<int32_t>(y)}, p.tile});
    }
    return Assembly(Unchecked{}, std::move(shifted));  // translation preserves sortedness and connectivity
}

int32_t bond_strength(const Assembly& a, const TileSet& ts, Position p, Position q) {
    int32_t tp = a.tile_at(p);
    int32_t tq = a.tile_at(q);
    if (tp < 0) throw Error("position " + to_string(p) + " outside the assembly");
    if (tq < 0) throw Error("position " + to_string(q) + " outside the assembly");
    if (!adjacent(p, q)) return 0;
    Direction d;
    if (q.x == p.x + 1) d = Direction::East;
    else if (q.x == p.x - 1) d = Direction::West;
    else if (q.y == p.y + 1) d = Direction::North;
    else d = Direction::South;
    const Glue& gp = ts.tile(tp).side(d);
    const Glue& gq = ts.tile(tq).side(opposite(d));
    return (gp.label == gq.label && gp.strength > 0) ? gp.strength : 0;
}

// ---------------------------------------------------------------------------
// Binding graph
// ---------------------------------------------------------------------------

BindingGraph binding_graph(const Assembly& a, const TileSet& ts) {
    const auto placements = a.placements();
    const size_t n = placements.size();
    BindingGraph g;
    g.verts.reserve(n);
    for (const Placement& p : placements) {
        if (p.tile < 0 || static_cast<size_t>(p.tile) >= ts.size()) {
            throw Error("tile index " + std::to_string(p.tile) + " at " + to_string(p.pos) +
                        " is not in the tile set");
        }
        g.verts.push_back(p.pos);
    }
    g.grid_nbr.assign(n, {-1, -1, -1, -1});
    g.bond.assign(n, {0, 0, 0, 0});
    for (size_t i = 0; i < n; ++i) {
        const TileType& ti = ts.tile(placements[i].tile);
        for (Direction d : kDirections) {
            int32_t j = a.index_of(placements[i].pos + direction_offset(d));
            g.grid_nbr[i][static_cast<uint8_t>(d)] = j;
            if (j < 0) continue;
            const Glue& gi = ti.side(d);
            const Glue& gj = ts.tile(placements[j].tile).side(opposite(d));
            if (gi.label == gj.label && gi.strength > 0) {
                g.bond[i][static_cast<uint8_t>(d)] = gi.strength;
                if (static_cast<int32_t>(i) < j) ++g.edge_count;
            } else if (!gi.is_null() && !gj.is_null() && static_cast<int32_t>(i) < j) {
                g.mismatches.emplace_back(static_cast<int32_t>(i), j);
            }
        }
    }
    return g;
}

bool binding_connected(const BindingGraph& g) {
    if (g.verts.empty()) return false;
    std::vector<char> seen(g.verts.size(), 0);
    std::vector<int32_t> stack = {0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        int32_t i = stack.back();
        stack.pop_back();
        for (int d = 0; d < 4; ++d) {
            int32_t j = g.grid_nbr[i][d];
            if (j >= 0 && g.bond[i][d] > 0 && !seen[j]) {
                seen[j] = 1;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    return reached == g.verts.size();
}

int32_t min_cut(const BindingGraph& g) {
    const size_t n = g.vertex_count();
    if (n == 1) return std::numeric_limits<int32_t>::max();
    if (n > 4096) throw Error("min_cut supports desk-scale assemblies only (got " + std::to_string(n) + " tiles)");
    if (!binding_connected(g)) return 0;

    // Stoer-Wagner with an adjacency matrix; rows are merged in place.
    std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (int d = 0; d < 4; ++d) {
            int32_t j = g.grid_nbr[i][d];
            if (j >= 0 && g.bond[i][d] > 0) w[i][j] = g.bond[i][d];
        }
    }
    std::vector<int32_t> active(n);
    for (size_t i = 0; i < n; ++i) active[i] = static_cast<int32_t>(i);

    int64_t best = std::numeric_limits<int64_t>::max();
    while (active.size() > 1) {
        const size_t m = active.size();
        std::vector<int64_t> weight_to_set(m, 0);
        std::vector<char> added(m, 0);
        int32_t prev = -1, last = -1;
        for (size_t step = 0; step < m; ++step) {
            int32_t pick = -1;
            for (size_t i = 0; i < m; ++i) {
                if (!added[i] && (pick < 0 || weight_to_set[i] > weight_to_set[pick])) {
                    pick = static_cast<int32_t>(i);
                }
            }
            added[pick] = 1;
            prev = last;
            last = pick;
            if (step == m - 1) break;
            for (size_t i = 0; i < m; ++i) {
                if (!added[i]) weight_to_set[i] += w[active[last]][active[i]];
            }
        }
        best = std::min(best, weight_to_set[last]);
        // Merge last into prev.
        int32_t a = active[prev], b = active[last];
        for (size_t i = 0; i < m; ++i) {
            int32_t c = active[i];
            w[a][c] += w[b][c];
            w[c][a] = w[a][c];
        }
        active.erase(active.begin() + last);
    }
    return static_cast<int32_t>(std::min<int64_t>(best, std::numeric_limits<int32_t>::max()));
}

bool is_stable(const Assembly& a, const TileSet& ts, int32_t tau) {
    if (a.size() == 1) return true;
    return min_cut(binding_graph(a, ts)) >= tau;
}

// ---------------------------------------------------------------------------
// Consistency, union, embedding
// ---------------------------------------------------------------------------

bool consistent(const Assembly& a, const Assembly& b) {
    const Assembly& small = a.size() <= b.size() ? a : b;
    const Assembly& large = a.size() <= b.size() ? b : a;
    for (const Placement& p : small.placements()) {
        int32_t t = large.tile_at(p.pos);
        if (t >= 0 && t != p.tile) return false;
    }
    return true;
}

Assembly union_assemblies(const Assembly& a, const Assembly& b) {
    std::vector<Placement> merged(a.placements().begin(), a.placements().end());
    merged.reserve(a.size() + b.size());
    for (const Placement& p : b.placements()) {
        int32_t t = a.tile_at(p.pos);
        if (t < 0) {
            merged.push_back(p);
        } else if (t != p.tile) {
            throw Error("inconsistent overlap at " + to_string(p.pos));
        }
    }
    return Assembly(std::move(merged));  // validates connectivity
}

bool is_subassembly(const Assembly& a, const Assembly& b) {
    if (a.size() > b.size()) return false;
    for (const Placement& p : a.placements()) {
        if (b.tile_at(p.pos) != p.tile) return false;
    }
    return true;
}

std::optional<Offset> find_embedding(const Assembly& sub, const Assembly& host) {
    if (sub.size() > host.size()) return std::nullopt;
    constexpr int64_t lo = std::numeric_limits<int32_t>::min();
    constexpr int64_t hi = std::numeric_limits<int32_t>::max();
    const Position anchor = sub.min_position();
    for (const Placement& cand : host.placements()) {
        int64_t dx = static_cast<int64_t>(cand.pos.x) - anchor.x;
        int64_t dy = static_cast<int64_t>(cand.pos.y) - anchor.y;
        if (dx < lo || dx > hi || dy < lo || dy > hi) continue;
        Offset v{static_cast<int32_t>(dx), static_cast<int32_t>(dy)};
        bool ok = true;
        for (const Placement& p : sub.placements()) {
            int64_t x = static_cast<int64_t>(p.pos.x) + v.dx;
            int64_t y = static_cast<int64_t>(p.pos.y) + v.dy;
            if (x < lo || x > hi || y < lo || y > hi ||
                host.tile_at({static_cast<int32_t>(x), static_cast<int32_t>(y)}) != p.tile) {
                ok = false;
                break;
            }
        }
        if (ok) return v;
    }
    return std::nullopt;
}

}  // namespace tav
