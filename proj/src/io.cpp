#include "tav/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace tav {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    // '#' starts a comment.
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

template <typename T>
T parse_int(std::string_view token, int line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

// Walks lines, calling fn(line_number, tokens) for nonempty ones.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++line_no;
        auto tokens = tokenize(text.substr(pos, nl - pos));
        if (!tokens.empty()) fn(line_no, tokens);
        pos = nl + 1;
    }
}

struct GlueToken {
    std::string label;
    int32_t strength = 0;
};

GlueToken parse_glue(std::string_view token, int line) {
    if (token == "-") return {"-", 0};
    size_t colon = token.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == token.size() ||
        token.find(':', colon + 1) != std::string_view::npos) {
        throw ParseError(line, "glue must be '-' or 'label:strength', got '" + std::string(token) + "'");
    }
    GlueToken g;
    g.label = std::string(token.substr(0, colon));
    g.strength = parse_int<int32_t>(token.substr(colon + 1), line, "glue strength");
    if (g.strength <= 0) {
        throw ParseError(line, "glue '" + g.label + "' must have positive strength (use '-' for null)");
    }
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tile sets
// ---------------------------------------------------------------------------

ParsedTileSystem parse_tileset(std::string_view text) {
    TileSet ts;
    std::optional<int32_t> temperature;
    std::optional<std::string> seed_name;
    int seed_line = 0;
    std::unordered_map<std::string, std::pair<int32_t, int>> label_seen;  // strength, line

    for_each_line(text, [&](int line, const std::vector<std::string_view>& tok) {
        if (tok[0] == "temperature") {
            if (temperature) throw ParseError(line, "duplicate temperature line");
            if (tok.size() != 2) throw ParseError(line, "expected: temperature K");
            int32_t k = parse_int<int32_t>(tok[1], line, "temperature");
            if (k < 1) throw ParseError(line, "temperature must be positive");
            temperature = k;
        } else if (tok[0] == "seed") {
            if (seed_name) throw ParseError(line, "duplicate seed line");
            if (tok.size() != 2) throw ParseError(line, "expected: seed NAME");
            seed_name = std::string(tok[1]);
            seed_line = line;
        } else if (tok[0] == "tile") {
            if (tok.size() != 6) throw ParseError(line, "expected: tile NAME N=.. E=.. S=.. W=..");
            std::array<std::optional<GlueToken>, 4> sides;
            for (size_t i = 2; i < 6; ++i) {
                std::string_view t = tok[i];
                if (t.size() < 3 || t[1] != '=') {
                    throw ParseError(line, "expected side assignment like N=g:1, got '" + std::string(t) + "'");
                }
                int d;
                switch (t[0]) {
                    case 'N': d = 0; break;
                    case 'E': d = 1; break;
                    case 'S': d = 2; break;
                    case 'W': d = 3; break;
                    default: throw ParseError(line, std::string("unknown side '") + t[0] + "'");
                }
                if (sides[d]) throw ParseError(line, std::string("side ") + t[0] + " given twice");
                sides[d] = parse_glue(t.substr(2), line);
            }
            std::array<TileSet::GlueSpec, 4> specs;
            for (int d = 0; d < 4; ++d) {
                if (!sides[d]) throw ParseError(line, "missing a side assignment");
                auto [it, fresh] = label_seen.try_emplace(sides[d]->label,
                                                          std::make_pair(sides[d]->strength, line));
                if (!fresh && it->second.first != sides[d]->strength && sides[d]->label != "-") {
                    throw ParseError(line, "glue label '" + sides[d]->label + "' has strength " +
                                               std::to_string(sides[d]->strength) + " but line " +
                                               std::to_string(it->second.second) + " gave it strength " +
                                               std::to_string(it->second.first));
                }
                specs[d] = {sides[d]->label, sides[d]->strength};
            }
            std::string name(tok[1]);
            if (ts.find_tile(name)) throw ParseError(line, "duplicate tile name '" + name + "'");
            ts.add_tile(name, specs);
        } else {
            throw ParseError(line, "unknown directive '" + std::string(tok[0]) + "'");
        }
    });

    if (ts.size() == 0) throw Error("no tiles");
    if (!temperature) throw Error("missing temperature line");

    ParsedTileSystem out;
    out.system.tileset = normalize_tileset(ts, &out.nulled);
    out.system.temperature = *temperature;
    if (seed_name) {
        auto idx = out.system.tileset.find_tile(*seed_name);
        if (!idx) throw ParseError(seed_line, "seed tile '" + *seed_name + "' is not defined");
        out.system.seed = *idx;
    }
    return out;
}

std::string write_tileset(const TileSystem& system) {
    std::ostringstream out;
    out << "temperature " << system.temperature << "\n";
    if (system.seed) out << "seed " << system.tileset.tile(*system.seed).name << "\n";
    const TileSet& ts = system.tileset;
    for (const TileType& t : ts.tiles()) {
        out << "tile " << t.name;
        static constexpr const char* side_names[4] = {"N", "E", "S", "W"};
        for (int d = 0; d < 4; ++d) {
            out << ' ' << side_names[d] << '=';
            const Glue& g = t.sides[d];
            if (g.is_null()) out << '-';
            else out << ts.label_name(g.label) << ':' << g.strength;
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Assemblies
// ---------------------------------------------------------------------------

Assembly parse_assembly(std::string_view text, const TileSet& ts) {
    std::vector<Placement> placements;
    for_each_line(text, [&](int line, const std::vector<std::string_view>& tok) {
        if (tok.size() != 3) throw ParseError(line, "expected: X Y TILENAME");
        Position p{parse_int<int32_t>(tok[0], line, "x coordinate"),
                   parse_int<int32_t>(tok[1], line, "y coordinate")};
        auto tile = ts.find_tile(tok[2]);
        if (!tile) throw ParseError(line, "unknown tile '" + std::string(tok[2]) + "'");
        placements.push_back({p, *tile});
    });
    return Assembly(std::move(placements));  // reports duplicates and disconnection
}

std::string write_assembly(const Assembly& a, const TileSet& ts) {
    std::ostringstream out;
    for (const Placement& p : a.placements()) {
        out << p.pos.x << ' ' << p.pos.y << ' ' << ts.tile(p.tile).name << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

AssemblyTree parse_tree(std::string_view text, const TileSet& ts) {
    struct Raw {
        bool leaf = false;
        Position pos{};
        int32_t tile = -1;
        int32_t left = -1;
        int32_t right = -1;
        bool present = false;
        int line = 0;
    };
    std::vector<Raw> raw;
    int32_t last_id = -1;

    auto slot = [&](int32_t id, int line) -> Raw& {
        if (id < 0) throw ParseError(line, "node id must be nonnegative");
        if (static_cast<size_t>(id) >= raw.size()) raw.resize(id + 1);
        return raw[id];
    };

    for_each_line(text, [&](int line, const std::vector<std::string_view>& tok) {
        if (tok[0] == "L") {
            if (tok.size() != 5) throw ParseError(line, "expected: L <id> <x> <y> <tilename>");
            int32_t id = parse_int<int32_t>(tok[1], line, "node id");
            Raw& r = slot(id, line);
            if (r.present) throw ParseError(line, "duplicate node id " + std::to_string(id));
            r.present = true;
            r.leaf = true;
            r.line = line;
            r.pos = {parse_int<int32_t>(tok[2], line, "x coordinate"),
                     parse_int<int32_t>(tok[3], line, "y coordinate")};
            auto tile = ts.find_tile(tok[4]);
            if (!tile) throw ParseError(line, "unknown tile '" + std::string(tok[4]) + "'");
            r.tile = *tile;
            last_id = id;
        } else if (tok[0] == "J") {
            if (tok.size() != 4) throw ParseError(line, "expected: J <id> <left-id> <right-id>");
            int32_t id = parse_int<int32_t>(tok[1], line, "node id");
            Raw& r = slot(id, line);
            if (r.present) throw ParseError(line, "duplicate node id " + std::to_string(id));
            r.present = true;
            r.line = line;
            r.left = parse_int<int32_t>(tok[2], line, "child id");
            r.right = parse_int<int32_t>(tok[3], line, "child id");
            if (r.left == r.right) throw ParseError(line, "children of a join must differ");
            last_id = id;
        } else {
            throw ParseError(line, "expected an L or J node line");
        }
    });

    if (raw.empty()) throw Error("empty tree");
    const int32_t n = static_cast<int32_t>(raw.size());
    for (int32_t i = 0; i < n; ++i) {
        if (!raw[i].present) throw Error("node ids are not dense: id " + std::to_string(i) + " missing");
    }

    AssemblyTree tree;
    tree.nodes.resize(n);
    std::vector<int32_t> ref_count(n, 0);
    for (int32_t i = 0; i < n; ++i) {
        auto& node = tree.nodes[i];
        if (raw[i].leaf) {
            node.pos = raw[i].pos;
            node.tile = raw[i].tile;
        } else {
            for (int32_t c : {raw[i].left, raw[i].right}) {
                if (c < 0 || c >= n) {
                    throw ParseError(raw[i].line, "child id " + std::to_string(c) + " does not exist");
                }
                if (++ref_count[c] > 1) {
                    throw ParseError(raw[i].line, "node " + std::to_string(c) + " has two parents");
                }
                tree.nodes[c].parent = i;
            }
            node.left = raw[i].left;
            node.right = raw[i].right;
        }
    }
    tree.root = last_id;
    if (ref_count[tree.root] != 0) throw Error("the last node line must be the root");

    // Reachability from the root catches cycles and disconnected clumps.
    std::vector<char> seen(n, 0);
    std::vector<int32_t> stack = {tree.root};
    seen[tree.root] = 1;
    int32_t reached = 1;
    while (!stack.empty()) {
        int32_t v = stack.back();
        stack.pop_back();
        if (tree.nodes[v].is_leaf()) continue;
        for (int32_t c : {tree.nodes[v].left, tree.nodes[v].right}) {
            if (!seen[c]) {
                seen[c] = 1;
                ++reached;
                stack.push_back(c);
            }
        }
    }
    if (reached != n) throw Error("tree has nodes unreachable from the root");
    return tree;
}

std::string write_tree(const AssemblyTree& tree, const TileSet& ts) {
    if (tree.root < 0) throw Error("cannot write an empty tree");
    std::ostringstream out;
    // Post-order emission: children appear before parents, root last, ids
    // dense from 0 in emission order.
    std::vector<int32_t> remap(tree.nodes.size(), -1);
    int32_t next = 0;
    std::vector<std::pair<int32_t, int>> stack = {{tree.root, 0}};
    while (!stack.empty()) {
        auto& [id, phase] = stack.back();
        const auto& node = tree.nodes[id];
        if (phase == 0) {
            phase = 1;
            if (!node.is_leaf()) {
                stack.push_back({node.right, 0});
                stack.push_back({node.left, 0});
            }
        } else {
            remap[id] = next++;
            if (node.is_leaf()) {
                out << "L " << remap[id] << ' ' << node.pos.x << ' ' << node.pos.y << ' '
                    << ts.tile(node.tile).name << "\n";
            } else {
                out << "J " << remap[id] << ' ' << remap[node.left] << ' ' << remap[node.right]
                    << "\n";
            }
            stack.pop_back();
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace tav
