#include "tav/producible.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <unordered_set>

namespace tav {

namespace {

uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Tie-break key for equal-strength pairs: lexicographically least
// (min representative, max representative) pops first, or a seeded
// pseudorandom shuffle of that order.
uint64_t tie_key(int32_t rep_a, int32_t rep_b, int64_t weight,
                 const std::optional<uint64_t>& seed) {
    uint32_t lo = static_cast<uint32_t>(std::min(rep_a, rep_b));
    uint32_t hi = static_cast<uint32_t>(std::max(rep_a, rep_b));
    uint64_t packed = (static_cast<uint64_t>(lo) << 32) | hi;
    if (!seed) return packed;
    return splitmix64(packed ^ splitmix64(static_cast<uint64_t>(weight) ^ *seed));
}

AssemblyTree witness_or_replay(const Assembly& a, const MergeLog& log, bool build) {
    return build ? replay_merge_log(a, log) : AssemblyTree{};
}

}  // namespace

// ---------------------------------------------------------------------------
// Reference decider: scan all component pairs each round
// ---------------------------------------------------------------------------

ProducibleResult is_producible_naive(const Assembly& a, const TileSet& ts, int32_t tau,
                                     const ProducibleOptions& options) {
    const BindingGraph g = binding_graph(a, ts);
    const int32_t n = static_cast<int32_t>(a.size());
    ProducibleResult result;

    struct Component {
        int32_t rep;  // least dense index = least row-major position
        std::unordered_set<int32_t> members;
    };
    std::vector<Component> comps(n);
    std::vector<int32_t> alive(n);  // kept sorted by rep
    for (int32_t i = 0; i < n; ++i) {
        comps[i].rep = i;
        comps[i].members.insert(i);
        alive[i] = i;
    }

    auto seam = [&](const Component& x, const Component& y) -> int64_t {
        const Component& small = x.members.size() <= y.members.size() ? x : y;
        const Component& large = x.members.size() <= y.members.size() ? y : x;
        int64_t total = 0;
        for (int32_t p : small.members) {
            for (int d = 0; d < 4; ++d) {
                int32_t q = g.grid_nbr[p][d];
                if (q >= 0 && g.bond[p][d] > 0 && large.members.contains(q)) total += g.bond[p][d];
            }
        }
        return total;
    };

    while (alive.size() > 1) {
        bool merged = false;
        for (size_t i = 0; i < alive.size() && !merged; ++i) {
            for (size_t j = i + 1; j < alive.size(); ++j) {
                Component& ci = comps[alive[i]];
                Component& cj = comps[alive[j]];
                ++result.stats.pair_scans;
                int64_t w = seam(ci, cj);
                if (w < tau) continue;
                result.log.entries.push_back(
                    {ci.rep, cj.rep, static_cast<int32_t>(std::min<int64_t>(w, INT32_MAX))});
                if (ci.members.size() < cj.members.size()) ci.members.swap(cj.members);
                ci.members.insert(cj.members.begin(), cj.members.end());
                ci.rep = std::min(ci.rep, cj.rep);
                alive.erase(alive.begin() + static_cast<ptrdiff_t>(j));
                merged = true;
                break;
            }
        }
        if (!merged) return result;  // no attachable pair: not producible
    }

    result.producible = true;
    if (options.build_witness) result.witness = witness_or_replay(a, result.log, true);
    return result;
}

// ---------------------------------------------------------------------------
// Greedy decider with a lazy-deletion max-heap and small-to-large folds
// ---------------------------------------------------------------------------

namespace {

struct EdgeInfo {
    int64_t weight = 0;
    uint32_t version = 0;
};

struct Slot {
    int32_t rep = -1;   // least dense index in the component
    int32_t size = 0;   // tile count; 0 = dead
    std::map<int32_t, EdgeInfo> nbrs;
};

struct HeapEntry {
    int64_t weight;
    uint64_t tie;
    int32_t a, b;
    uint32_t version;
};

struct HeapCmp {
    // Max-heap by weight; among equal weights the smallest tie key pops first.
    bool operator()(const HeapEntry& x, const HeapEntry& y) const {
        if (x.weight != y.weight) return x.weight < y.weight;
        if (x.tie != y.tie) return x.tie > y.tie;
        if (x.a != y.a) return x.a > y.a;
        if (x.b != y.b) return x.b > y.b;
        return x.version > y.version;
    }
};

#ifndef NDEBUG
// Recomputes every seam incident to slot c1 from scratch and compares with
// the stored adjacency. Debug-only spot check of the bookkeeping.
void check_seams(const BindingGraph& g, const std::vector<Slot>& slots,
                 const std::vector<int32_t>& vertex_slot,
                 const std::vector<std::vector<int32_t>>& members, int32_t c1) {
    std::map<int32_t, int64_t> recomputed;
    for (int32_t p : members[c1]) {
        for (int d = 0; d < 4; ++d) {
            int32_t q = g.grid_nbr[p][d];
            if (q < 0 || g.bond[p][d] <= 0) continue;
            int32_t s = vertex_slot[q];
            if (s != c1) recomputed[s] += g.bond[p][d];
        }
    }
    assert(recomputed.size() == slots[c1].nbrs.size());
    for (const auto& [nb, info] : slots[c1].nbrs) {
        auto it = recomputed.find(nb);
        assert(it != recomputed.end() && it->second == info.weight);
    }
}
#endif

}  // namespace

ProducibleResult is_producible_fast(const Assembly& a, const TileSet& ts, int32_t tau,
                                    const ProducibleOptions& options) {
    const BindingGraph g = binding_graph(a, ts);
    const int32_t n = static_cast<int32_t>(a.size());
    ProducibleResult result;

    std::vector<Slot> slots(n);
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCmp> heap;
    for (int32_t i = 0; i < n; ++i) {
        slots[i].rep = i;
        slots[i].size = 1;
    }
    for (int32_t i = 0; i < n; ++i) {
        for (int d = 0; d < 4; ++d) {
            int32_t j = g.grid_nbr[i][d];
            if (j > i && g.bond[i][d] > 0) {
                int64_t w = g.bond[i][d];
                slots[i].nbrs[j] = {w, 0};
                slots[j].nbrs[i] = {w, 0};
                heap.push({w, tie_key(i, j, w, options.tie_break_seed), i, j, 0});
            }
        }
    }

#ifndef NDEBUG
    std::vector<int32_t> vertex_slot(n);
    std::vector<std::vector<int32_t>> members(n);
    for (int32_t i = 0; i < n; ++i) {
        vertex_slot[i] = i;
        members[i] = {i};
    }
    uint64_t merge_count = 0;
#endif

    int32_t component_count = n;
    while (component_count > 1) {
        if (heap.empty()) return result;  // binding graph disconnected: not producible
        HeapEntry e = heap.top();
        heap.pop();
        ++result.stats.heap_pops;
        if (slots[e.a].size == 0 || slots[e.b].size == 0) continue;  // stale
        auto seam_it = slots[e.a].nbrs.find(e.b);
        if (seam_it == slots[e.a].nbrs.end() || seam_it->second.version != e.version) continue;

        const int64_t w = seam_it->second.weight;
        if (w < tau) return result;  // strongest remaining seam too weak

        int32_t c1 = e.a, c2 = e.b;
        if (slots[c1].size < slots[c2].size) std::swap(c1, c2);
        result.log.entries.push_back(
            {slots[c1].rep, slots[c2].rep, static_cast<int32_t>(std::min<int64_t>(w, INT32_MAX))});

        slots[c1].rep = std::min(slots[c1].rep, slots[c2].rep);
        slots[c1].size += slots[c2].size;
        slots[c1].nbrs.erase(c2);

        // Fold c2's adjacency into c1's, summing seams that both shared.
        for (auto& [nb, info2] : slots[c2].nbrs) {
            if (nb == c1) continue;
            ++result.stats.adjacency_folds;
            slots[nb].nbrs.erase(c2);
            auto [it1, fresh] = slots[c1].nbrs.try_emplace(nb);
            if (fresh) {
                it1->second = {info2.weight, 0};
            } else {
                it1->second.weight += info2.weight;
                ++it1->second.version;
            }
            slots[nb].nbrs[c1] = it1->second;
            heap.push({it1->second.weight,
                       tie_key(slots[c1].rep, slots[nb].rep, it1->second.weight,
                               options.tie_break_seed),
                       c1, nb, it1->second.version});
        }
        slots[c2].nbrs.clear();
        slots[c2].size = 0;
        --component_count;

#ifndef NDEBUG
        for (int32_t p : members[c2]) vertex_slot[p] = c1;
        members[c1].insert(members[c1].end(), members[c2].begin(), members[c2].end());
        members[c2].clear();
        if (n <= 4096 && (++merge_count % 61) == 0) {
            check_seams(g, slots, vertex_slot, members, c1);
        }
#endif
    }

    result.producible = true;
    if (options.build_witness) result.witness = witness_or_replay(a, result.log, true);
    return result;
}

// ---------------------------------------------------------------------------
// Witness replay
// ---------------------------------------------------------------------------

AssemblyTree replay_merge_log(const Assembly& a, const MergeLog& log) {
    const int32_t n = static_cast<int32_t>(a.size());
    if (log.entries.size() + 1 != static_cast<size_t>(n)) {
        throw Error("merge log has " + std::to_string(log.entries.size()) + " entries for " +
                    std::to_string(n) + " tiles; expected " + std::to_string(n - 1));
    }
    AssemblyTree tree;
    tree.nodes.reserve(2 * static_cast<size_t>(n) - 1);
    std::vector<int32_t> node_at(n);    // representative -> current tree node
    std::vector<char> is_rep(n, 1);
    const auto placements = a.placements();
    for (int32_t i = 0; i < n; ++i) node_at[i] = tree.add_leaf(placements[i].pos, placements[i].tile);

    for (const MergeEntry& m : log.entries) {
        if (m.first < 0 || m.first >= n || m.second < 0 || m.second >= n ||
            m.first == m.second || !is_rep[m.first] || !is_rep[m.second]) {
            throw Error("merge log refers to an unknown component");
        }
        int32_t join = tree.add_join(node_at[m.first], node_at[m.second]);
        int32_t keep = std::min(m.first, m.second);
        is_rep[std::max(m.first, m.second)] = 0;
        node_at[keep] = join;
    }
    return tree;
}

}  // namespace tav
