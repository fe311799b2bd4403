#pragma once

// Text formats: tile sets, assemblies, and assembly trees. Line oriented,
// whitespace separated, '#' starts a comment, the null glue is spelled '-'.

#include <string>
#include <string_view>
#include <vector>

#include "tav/assembly_tree.hpp"
#include "tav/core.hpp"

namespace tav {

class ParseError : public Error {
public:
    ParseError(int line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Tile set grammar:
//   temperature K
//   seed NAME            (optional)
//   tile NAME N=- E=g:1 S=- W=h:2
// Sides may appear in any order but each of N,E,S,W exactly once. A label
// must carry one strength everywhere; the error names the label and both
// lines. The returned tile set is normalized, with the nulled glues reported.
struct ParsedTileSystem {
    TileSystem system;
    std::vector<NulledGlue> nulled;
};

ParsedTileSystem parse_tileset(std::string_view text);
std::string write_tileset(const TileSystem& system);

// Assembly grammar: one "x y TILENAME" per line.
Assembly parse_assembly(std::string_view text, const TileSet& ts);
std::string write_assembly(const Assembly& a, const TileSet& ts);

// Tree grammar: one node per line, ids dense from 0, root last.
//   L <id> <x> <y> <tilename>
//   J <id> <left-id> <right-id>
AssemblyTree parse_tree(std::string_view text, const TileSet& ts);
std::string write_tree(const AssemblyTree& tree, const TileSet& ts);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace tav
