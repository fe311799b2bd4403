#include "tav/gen.hpp"

#include <random>
#include <unordered_map>
#include <unordered_set>

namespace tav {

namespace {

std::string xy_name(const char* prefix, int32_t x, int32_t y) {
    return std::string(prefix) + std::to_string(x) + "_" + std::to_string(y);
}

}  // namespace

std::pair<TileSystem, Assembly> generate_square(int32_t n, int32_t tau) {
    if (n < 1) throw Error("square side must be positive");
    if (tau < 1) throw Error("temperature must be positive");

    // Label ids: 0 null, then horizontal abutments row by row, then vertical.
    const int64_t horiz = static_cast<int64_t>(n - 1) * n;
    auto h_id = [&](int32_t x, int32_t y) { return static_cast<int32_t>(1 + static_cast<int64_t>(y) * (n - 1) + x); };
    auto v_id = [&](int32_t x, int32_t y) { return static_cast<int32_t>(1 + horiz + static_cast<int64_t>(y) * n + x); };

    std::vector<std::string> names;
    std::vector<int32_t> strengths;
    names.reserve(1 + 2 * horiz);
    strengths.reserve(1 + 2 * horiz);
    names.emplace_back("-");
    strengths.push_back(0);
    for (int32_t y = 0; y < n; ++y)
        for (int32_t x = 0; x + 1 < n; ++x) {
            names.push_back(xy_name("h", x, y));
            strengths.push_back(tau);
        }
    for (int32_t y = 0; y + 1 < n; ++y)
        for (int32_t x = 0; x < n; ++x) {
            names.push_back(xy_name("v", x, y));
            strengths.push_back(tau);
        }

    std::vector<TileType> tiles;
    std::vector<Placement> placements;
    tiles.reserve(static_cast<size_t>(n) * n);
    placements.reserve(static_cast<size_t>(n) * n);
    for (int32_t y = 0; y < n; ++y) {
        for (int32_t x = 0; x < n; ++x) {
            TileType t;
            t.name = xy_name("t", x, y);
            if (y + 1 < n) t.side(Direction::North) = {v_id(x, y), tau};
            if (x + 1 < n) t.side(Direction::East) = {h_id(x, y), tau};
            if (y > 0) t.side(Direction::South) = {v_id(x, y - 1), tau};
            if (x > 0) t.side(Direction::West) = {h_id(x - 1, y), tau};
            placements.push_back({{x, y}, static_cast<int32_t>(tiles.size())});
            tiles.push_back(std::move(t));
        }
    }

    TileSystem sys{TileSet::from_parts(std::move(tiles), std::move(names), std::move(strengths)),
                   tau, std::nullopt};
    return {std::move(sys), Assembly(std::move(placements))};
}

std::pair<TileSystem, Assembly> generate_line(int32_t n, int32_t tau) {
    if (n < 1) throw Error("line length must be positive");
    if (tau < 1) throw Error("temperature must be positive");

    std::vector<std::string> names = {"-"};
    std::vector<int32_t> strengths = {0};
    for (int32_t i = 0; i + 1 < n; ++i) {
        names.push_back("g" + std::to_string(i));
        strengths.push_back(tau);
    }

    std::vector<TileType> tiles;
    std::vector<Placement> placements;
    for (int32_t i = 0; i < n; ++i) {
        TileType t;
        t.name = "t" + std::to_string(i);
        if (i + 1 < n) t.side(Direction::East) = {i + 1, tau};
        if (i > 0) t.side(Direction::West) = {i, tau};
        placements.push_back({{i, 0}, i});
        tiles.push_back(std::move(t));
    }

    TileSystem sys{TileSet::from_parts(std::move(tiles), std::move(names), std::move(strengths)),
                   tau, std::nullopt};
    return {std::move(sys), Assembly(std::move(placements))};
}

std::pair<TileSystem, Assembly> generate_random_blob(int32_t n, int32_t tau, uint64_t rng_seed) {
    if (n < 1) throw Error("blob size must be positive");
    if (tau < 1) throw Error("temperature must be positive");
    std::mt19937_64 rng(rng_seed);

    // Grow a connected shape by occupying random frontier cells.
    std::unordered_set<Position, PositionHash> occupied = {Position{0, 0}};
    std::vector<Position> cells = {Position{0, 0}};
    std::vector<Position> frontier;
    for (Direction d : kDirections) frontier.push_back(Position{0, 0} + direction_offset(d));
    while (static_cast<int32_t>(cells.size()) < n) {
        if (frontier.empty()) throw Error("frontier exhausted");  // cannot happen
        const size_t pick = rng() % frontier.size();
        const Position p = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        if (!occupied.insert(p).second) continue;
        cells.push_back(p);
        for (Direction d : kDirections) {
            const Position q = p + direction_offset(d);
            if (!occupied.contains(q)) frontier.push_back(q);
        }
    }
    std::sort(cells.begin(), cells.end());

    // One tile type per cell; every interior abutment gets a fresh glue with
    // random strength in [1, tau].
    std::unordered_map<Position, int32_t, PositionHash> cell_index;
    for (size_t i = 0; i < cells.size(); ++i) cell_index.emplace(cells[i], static_cast<int32_t>(i));
    std::vector<std::string> names = {"-"};
    std::vector<int32_t> strengths = {0};
    std::vector<TileType> tiles(cells.size());
    std::vector<Placement> placements;
    std::uniform_int_distribution<int32_t> strength_dist(1, tau);
    for (size_t i = 0; i < cells.size(); ++i) {
        tiles[i].name = "t" + std::to_string(i);
        placements.push_back({cells[i], static_cast<int32_t>(i)});
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        for (Direction d : {Direction::North, Direction::East}) {
            auto it = cell_index.find(cells[i] + direction_offset(d));
            if (it == cell_index.end()) continue;
            const int32_t s = strength_dist(rng);
            const int32_t label = static_cast<int32_t>(names.size());
            names.push_back("g" + std::to_string(label));
            strengths.push_back(s);
            tiles[i].side(d) = {label, s};
            tiles[it->second].side(opposite(d)) = {label, s};
        }
    }

    TileSystem sys{TileSet::from_parts(std::move(tiles), std::move(names), std::move(strengths)),
                   tau, std::nullopt};
    return {std::move(sys), Assembly(std::move(placements))};
}

}  // namespace tav
