#pragma once

// Temperature-1 Unique Production Verification for seeded and hierarchical
// systems, including the precedence relation computed from the binding
// graph's biconnected-component structure.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tav/core.hpp"

namespace tav {

// ---------------------------------------------------------------------------
// Glue index
// ---------------------------------------------------------------------------

// (direction, glue label) -> ascending tile indices presenting that glue
// with positive strength in that direction.
class GlueIndex {
public:
    std::span<const int32_t> tiles_with(Direction d, int32_t label) const {
        const auto& m = by_direction_[static_cast<uint8_t>(d)];
        auto it = m.find(label);
        if (it == m.end()) return {};
        return it->second;
    }

    friend GlueIndex build_glue_index(const TileSet& ts);

private:
    std::array<std::unordered_map<int32_t, std::vector<int32_t>>, 4> by_direction_;
};

GlueIndex build_glue_index(const TileSet& ts);

// ---------------------------------------------------------------------------
// Biconnected decomposition and precedence
// ---------------------------------------------------------------------------

// Hopcroft-Tarjan state over the binding graph, rooted at the seed's vertex.
// DFS is iterative; assemblies can reach 10^6 tiles.
struct BiconnectedDecomposition {
    int32_t root = -1;
    std::vector<int32_t> disc;         // preorder discovery number
    std::vector<int32_t> low;          // classic low-link
    std::vector<int32_t> parent;       // DFS tree parent, -1 at the root
    std::vector<int32_t> subtree_end;  // max discovery number in the subtree
    std::vector<char> is_cut;

    bool in_subtree(int32_t p, int32_t q) const {
        return disc[p] <= disc[q] && disc[q] <= subtree_end[p];
    }
};

// Requires a binding-connected graph (throws otherwise).
BiconnectedDecomposition biconnected_decomposition(const BindingGraph& g, int32_t root);

struct PrecedesStats {
    uint64_t steps = 0;  // neighbor-slot examinations across both passes
};

// For every vertex q and direction d with a grid neighbor p = q + d, bit d of
// mask[q] is set iff p precedes q: removing p from the binding graph leaves q
// disconnected from the seed (the seed precedes every other position by
// convention). Two passes: the first computes cut vertices, the second weaves
// the visiting/visited checks using the first pass's numbers. Linear time.
std::vector<uint8_t> precedes_map(const BindingGraph& g, int32_t seed_idx,
                                  PrecedesStats* stats = nullptr);

// Single-pair form of the above; p and q need not be adjacent. Requires
// p != q, both in the assembly, and a connected binding graph.
bool precedes(const Assembly& a, const TileSet& ts, Position seed_pos, Position p, Position q);

// ---------------------------------------------------------------------------
// UPV verdicts
// ---------------------------------------------------------------------------

enum class UpvOutcome { Unique, NotProducible, NotTerminal, NotUnique };

const char* to_string(UpvOutcome o);

struct UpvDiagnostic {
    enum class Kind {
        AlternativeTile,  // a different tile type could attach at `position`
        MissingTileType,  // `alternative` never appears in the assembly
    };
    Kind kind = Kind::AlternativeTile;
    Position position{};
    Direction direction = Direction::North;  // from `position` toward the enabling neighbor
    int32_t alternative = -1;                // offending tile index
};

struct UpvVerdict {
    UpvOutcome outcome = UpvOutcome::Unique;
    std::optional<UpvDiagnostic> diagnostic;  // present iff outcome == NotUnique
    std::string message;

    bool unique() const { return outcome == UpvOutcome::Unique; }
};

// Seeded temperature-1 UPV anchored at `anchor`, which must hold tile
// `seed_tile`. The tile set must be normalized (throws otherwise, rather
// than silently normalizing). Returns the first failure in row-major scan
// order, with a diagnostic on non-uniqueness.
UpvVerdict upv_seeded_t1(const TileSet& ts, int32_t seed_tile, const Assembly& a,
                         Position anchor);

struct UpvHierOptions {
    // Check every occurrence of each tile type as an anchor instead of just
    // the row-major least one. Investigation aid; the reduction itself runs
    // one seeded check per tile type.
    bool strict_anchors = false;
};

// Hierarchical temperature-1 UPV: every tile type must appear in the
// assembly, the assembly must be producible (connected binding graph) and
// terminal, and the per-tile-type seeded checks must all pass. The seeded
// checks are independent and run in parallel when OpenMP is enabled; the
// reported failure is deterministic regardless.
UpvVerdict upv_hier_t1(const TileSet& ts, const Assembly& a, const UpvHierOptions& options = {});

}  // namespace tav
