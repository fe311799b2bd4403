#pragma once

// Domain model of the abstract Tile Assembly Model: tile sets, assemblies,
// binding graphs, stability, translation, consistency, union.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tav {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Directions and positions
// ---------------------------------------------------------------------------

enum class Direction : uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::North, Direction::East, Direction::South, Direction::West};

constexpr Direction opposite(Direction d) {
    return Direction((static_cast<uint8_t>(d) + 2) & 3);
}

const char* direction_name(Direction d);

struct Offset {
    int32_t dx = 0;
    int32_t dy = 0;

    friend constexpr bool operator==(Offset, Offset) = default;
};

// Unit vectors: N=(0,1), E=(1,0), S=(0,-1), W=(-1,0).
constexpr Offset direction_offset(Direction d) {
    constexpr int32_t dx[4] = {0, 1, 0, -1};
    constexpr int32_t dy[4] = {1, 0, -1, 0};
    return {dx[static_cast<uint8_t>(d)], dy[static_cast<uint8_t>(d)]};
}

struct Position {
    int32_t x = 0;
    int32_t y = 0;

    friend constexpr bool operator==(Position, Position) = default;

    // Row-major order: y first, then x. This is the fixed tie-breaking and
    // canonicalization order used throughout.
    friend constexpr std::strong_ordering operator<=>(Position a, Position b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }

    friend constexpr Position operator+(Position p, Offset v) {
        return {p.x + v.dx, p.y + v.dy};
    }
};

struct PositionHash {
    size_t operator()(Position p) const {
        uint64_t z = (static_cast<uint64_t>(static_cast<uint32_t>(p.x)) << 32) |
                     static_cast<uint32_t>(p.y);
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdULL;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ULL;
        z ^= z >> 33;
        return static_cast<size_t>(z);
    }
};

std::string to_string(Position p);

// ---------------------------------------------------------------------------
// Glues, tile types, tile sets
// ---------------------------------------------------------------------------

// Glue labels are interned to dense integer ids; id 0 is the null label "-".
inline constexpr int32_t kNullLabel = 0;

struct Glue {
    int32_t label = kNullLabel;
    int32_t strength = 0;

    bool is_null() const { return label == kNullLabel; }
    friend constexpr bool operator==(Glue, Glue) = default;
};

struct TileType {
    std::string name;
    std::array<Glue, 4> sides{};  // indexed by Direction

    const Glue& side(Direction d) const { return sides[static_cast<uint8_t>(d)]; }
    Glue& side(Direction d) { return sides[static_cast<uint8_t>(d)]; }
};

// Two tile types interact across direction d if the abutting glue labels are
// equal with positive strength.
inline bool interacts(const TileType& t, Direction d, const TileType& u) {
    const Glue& a = t.side(d);
    const Glue& b = u.side(opposite(d));
    return a.label == b.label && a.strength > 0;
}

// A finite set of tile types with a global label -> strength table.
// A given label carries the same strength everywhere in the set.
class TileSet {
public:
    struct GlueSpec {
        std::string label;  // "-" is the null glue
        int32_t strength = 0;
    };

    TileSet();

    // Interns a label, enforcing one strength per label. "-" must have
    // strength 0 and any other label must have positive strength.
    int32_t intern_label(std::string_view label, int32_t strength);

    // Adds a tile; throws on duplicate names or label/strength conflicts.
    // Returns the tile's index.
    int32_t add_tile(const std::string& name, const std::array<GlueSpec, 4>& sides);
    int32_t add_tile(TileType t);  // glues must already be interned

    // Bulk constructor for generated sets whose labels are known-consistent.
    // label_strengths[i] is the strength of label id i; id 0 must be the null
    // label with strength 0.
    static TileSet from_parts(std::vector<TileType> tiles,
                              std::vector<std::string> label_names,
                              std::vector<int32_t> label_strengths);

    std::span<const TileType> tiles() const { return tiles_; }
    const TileType& tile(int32_t index) const;
    size_t size() const { return tiles_.size(); }
    std::optional<int32_t> find_tile(std::string_view name) const;

    int32_t label_count() const { return static_cast<int32_t>(label_names_.size()); }
    const std::string& label_name(int32_t id) const { return label_names_.at(id); }
    int32_t label_strength(int32_t id) const { return label_strengths_.at(id); }
    std::optional<int32_t> find_label(std::string_view name) const;

private:
    std::vector<TileType> tiles_;
    std::unordered_map<std::string, int32_t> tile_index_;
    std::vector<std::string> label_names_;
    std::vector<int32_t> label_strengths_;
    std::unordered_map<std::string, int32_t> label_index_;
};

// A tile system: tile set, temperature, optional single seed tile.
struct TileSystem {
    TileSet tileset;
    int32_t temperature = 1;
    std::optional<int32_t> seed;  // index into tileset
};

// One glue per tile side that was found functionally null, for reporting.
struct NulledGlue {
    int32_t tile = 0;
    Direction direction = Direction::North;
    int32_t label = kNullLabel;
};

// Replaces every positive-strength glue facing direction d that has no
// partner on any tile in direction -d with the null glue. Idempotent.
TileSet normalize_tileset(const TileSet& ts, std::vector<NulledGlue>* report = nullptr);

// True iff normalize_tileset would leave ts unchanged.
bool tileset_is_normalized(const TileSet& ts);

// ---------------------------------------------------------------------------
// Assemblies
// ---------------------------------------------------------------------------

struct Placement {
    Position pos;
    int32_t tile = 0;  // index into a TileSet

    friend constexpr bool operator==(Placement, Placement) = default;
};

// A finite, nonempty placement of tiles whose domain is connected in the full
// grid graph. Immutable after construction.
class Assembly {
public:
    // Validates: nonempty, no duplicate positions, connected domain.
    explicit Assembly(std::vector<Placement> placements);

    // Placements in row-major order of position.
    std::span<const Placement> placements() const { return placements_; }
    size_t size() const { return placements_.size(); }

    // Tile index at p, or -1 if p is outside the domain.
    int32_t tile_at(Position p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : placements_[it->second].tile;
    }
    bool contains(Position p) const { return index_.contains(p); }

    // Dense index of p in placements(), or -1.
    int32_t index_of(Position p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : it->second;
    }

    // Row-major least position of the domain.
    Position min_position() const { return placements_.front().pos; }

    Assembly translated(Offset v) const;

    friend bool operator==(const Assembly& a, const Assembly& b) {
        return a.placements_ == b.placements_;
    }

private:
    struct Unchecked {};
    Assembly(Unchecked, std::vector<Placement> sorted);
    void build_index();

    std::vector<Placement> placements_;  // sorted row-major
    std::unordered_map<Position, int32_t, PositionHash> index_;
};

// Shared glue strength between the tiles at p and q if they are adjacent and
// interact; 0 otherwise. Throws if p or q is outside the domain.
int32_t bond_strength(const Assembly& a, const TileSet& ts, Position p, Position q);

// ---------------------------------------------------------------------------
// Binding graphs
// ---------------------------------------------------------------------------

// Weighted grid graph over an assembly's positions. Vertices are dense
// indices in row-major order; per-vertex arrays give the grid neighbor and
// bond strength in each direction (bond 0 = adjacent but not interacting).
struct BindingGraph {
    std::vector<Position> verts;
    std::vector<std::array<int32_t, 4>> grid_nbr;  // -1 if no tile there
    std::vector<std::array<int32_t, 4>> bond;      // strength, >= 1 iff edge
    std::vector<std::pair<int32_t, int32_t>> mismatches;  // both non-null, labels differ
    size_t edge_count = 0;  // interacting pairs

    size_t vertex_count() const { return verts.size(); }
};

BindingGraph binding_graph(const Assembly& a, const TileSet& ts);

// True iff the positive-strength edges connect all vertices.
bool binding_connected(const BindingGraph& g);

// Global minimum cut weight of the binding graph (Stoer-Wagner).
// Returns INT32_MAX for a single vertex (no cuts exist) and 0 when the
// graph is disconnected. Desk-scale inputs; O(n^3).
int32_t min_cut(const BindingGraph& g);

// True iff every cut of the binding graph has weight >= tau. Single-tile
// assemblies are stable by convention. Oracle/validation facility, not a
// fast path.
bool is_stable(const Assembly& a, const TileSet& ts, int32_t tau);

// ---------------------------------------------------------------------------
// Consistency, union, embedding
// ---------------------------------------------------------------------------

// True iff a and b agree on every shared position.
bool consistent(const Assembly& a, const Assembly& b);

// Union of two consistent assemblies (a's placements win where both are
// defined, which is the same thing). Throws on an inconsistent overlap,
// naming the conflicting position, and on a disconnected union.
Assembly union_assemblies(const Assembly& a, const Assembly& b);

// True iff dom a is a subset of dom b and the tiles agree on dom a.
bool is_subassembly(const Assembly& a, const Assembly& b);

// Some v with translate(sub, v) a subassembly of host, or nullopt. Returns
// the row-major least such v (least y, then least x).
std::optional<Offset> find_embedding(const Assembly& sub, const Assembly& host);

}  // namespace tav
