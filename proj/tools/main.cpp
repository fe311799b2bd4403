// tav: verification toolkit for the abstract Tile Assembly Model.
//
// Exit codes: 0 = affirmative verdict, 1 = negative verdict,
// 2 = input or usage error. Machine output goes to stdout, diagnostics to
// stderr.

#include <cmath>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tav/bench.hpp"
#include "tav/core.hpp"
#include "tav/gen.hpp"
#include "tav/io.hpp"
#include "tav/producible.hpp"
#include "tav/upv.hpp"

namespace {

using namespace tav;

struct LoadedSystem {
    TileSystem system;
};

TileSystem load_tileset(const std::string& path) {
    ParsedTileSystem parsed = parse_tileset(read_file(path));
    if (!parsed.nulled.empty()) {
        std::cerr << "note: " << parsed.nulled.size()
                  << " functionally null glue side(s) were replaced with the null glue\n";
        for (const NulledGlue& n : parsed.nulled) {
            std::cerr << "  tile '" << parsed.system.tileset.tile(n.tile).name << "' side "
                      << direction_name(n.direction) << " glue '"
                      << parsed.system.tileset.label_name(n.label) << "'\n";
        }
    }
    return std::move(parsed.system);
}

Assembly load_assembly(const std::string& path, const TileSet& ts) {
    return parse_assembly(read_file(path), ts);
}

AssemblyTree load_tree(const std::string& path, const TileSet& ts) {
    return parse_tree(read_file(path), ts);
}

Position parse_anchor(const std::string& text) {
    const size_t comma = text.find(',');
    if (comma == std::string::npos) throw Error("anchor must be X,Y");
    try {
        return Position{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error("anchor must be X,Y");
    }
}

int require_temperature_1(const TileSystem& sys) {
    if (sys.temperature != 1) {
        throw Error("UPV commands require a temperature-1 system (file says " +
                    std::to_string(sys.temperature) + ")");
    }
    return 1;
}

int run_check_producible(const std::string& tileset_path, const std::string& assembly_path,
                         std::optional<int32_t> temperature, bool naive,
                         const std::string& witness_path) {
    TileSystem sys = load_tileset(tileset_path);
    Assembly a = load_assembly(assembly_path, sys.tileset);
    const int32_t tau = temperature.value_or(sys.temperature);
    if (tau < 1) throw Error("temperature must be positive");

    ProducibleOptions opts;
    opts.build_witness = !witness_path.empty();
    ProducibleResult res = naive ? is_producible_naive(a, sys.tileset, tau, opts)
                                 : is_producible_fast(a, sys.tileset, tau, opts);
    if (res.producible) {
        if (!witness_path.empty()) write_file(witness_path, write_tree(*res.witness, sys.tileset));
        std::cout << "producible\n";
        return 0;
    }
    std::cout << "not-producible\n";
    return 1;
}

int report_upv(const UpvVerdict& v) {
    std::cout << to_string(v.outcome) << "\n";
    if (!v.unique()) std::cerr << v.message << "\n";
    return v.unique() ? 0 : 1;
}

int run_upv_seeded(const std::string& tileset_path, const std::string& assembly_path,
                   const std::string& seed_name, const std::string& anchor_text,
                   bool strict_anchors) {
    TileSystem sys = load_tileset(tileset_path);
    require_temperature_1(sys);
    Assembly a = load_assembly(assembly_path, sys.tileset);
    auto seed = sys.tileset.find_tile(seed_name);
    if (!seed) throw Error("seed tile '" + seed_name + "' is not in the tile set");

    std::vector<Position> anchors;
    if (!anchor_text.empty()) {
        anchors.push_back(parse_anchor(anchor_text));
    } else {
        for (const Placement& p : a.placements()) {
            if (p.tile == *seed) {
                anchors.push_back(p.pos);
                if (!strict_anchors) break;  // row-major least occurrence
            }
        }
        if (anchors.empty()) {
            std::cout << to_string(UpvOutcome::NotProducible) << "\n";
            std::cerr << "the seed tile does not occur in the assembly\n";
            return 1;
        }
    }
    for (const Position& anchor : anchors) {
        UpvVerdict v = upv_seeded_t1(sys.tileset, *seed, a, anchor);
        if (!v.unique()) return report_upv(v);
    }
    return report_upv(UpvVerdict{});
}

int run_upv_hier(const std::string& tileset_path, const std::string& assembly_path,
                 bool strict_anchors) {
    TileSystem sys = load_tileset(tileset_path);
    require_temperature_1(sys);
    Assembly a = load_assembly(assembly_path, sys.tileset);
    UpvHierOptions opts;
    opts.strict_anchors = strict_anchors;
    return report_upv(upv_hier_t1(sys.tileset, a, opts));
}

int run_union_trees(const std::string& tileset_path, const std::string& assembly_a,
                    const std::string& tree_a, const std::string& assembly_b,
                    const std::string& tree_b, const std::string& out_path,
                    std::optional<int32_t> temperature) {
    TileSystem sys = load_tileset(tileset_path);
    const int32_t tau = temperature.value_or(sys.temperature);
    Assembly a = load_assembly(assembly_a, sys.tileset);
    Assembly b = load_assembly(assembly_b, sys.tileset);
    AssemblyTree ta = load_tree(tree_a, sys.tileset);
    AssemblyTree tb = load_tree(tree_b, sys.tileset);
    AssemblyTree merged = merge_trees(ta, a, tb, b, sys.tileset, tau);
    std::string text = write_tree(merged, sys.tileset);
    if (out_path.empty()) std::cout << text;
    else write_file(out_path, text);
    return 0;
}

int run_validate_tree(const std::string& tileset_path, const std::string& assembly_path,
                      const std::string& tree_path, std::optional<int32_t> temperature) {
    TileSystem sys = load_tileset(tileset_path);
    const int32_t tau = temperature.value_or(sys.temperature);
    Assembly a = load_assembly(assembly_path, sys.tileset);
    AssemblyTree tree = load_tree(tree_path, sys.tileset);
    TreeValidation v = validate_tree(tree, a, sys.tileset, tau);
    if (v) {
        std::cout << "valid\n";
        return 0;
    }
    std::cout << "invalid\n";
    std::cerr << v.message << (v.node >= 0 ? " (node " + std::to_string(v.node) + ")" : "") << "\n";
    return 1;
}

int run_gen(const std::string& family, int64_t n, int32_t temperature, uint64_t rng_seed,
            const std::string& out_tileset, const std::string& out_assembly) {
    std::pair<TileSystem, Assembly> generated = [&] {
        if (family == "square") {
            const auto side = static_cast<int32_t>(std::llround(std::sqrt(static_cast<double>(n))));
            return generate_square(std::max(side, 1), temperature);
        }
        if (family == "line") return generate_line(static_cast<int32_t>(n), temperature);
        if (family == "random") return generate_random_blob(static_cast<int32_t>(n), temperature, rng_seed);
        throw Error("unknown family '" + family + "' (square|line|random)");
    }();
    write_file(out_tileset, write_tileset(generated.first));
    write_file(out_assembly, write_assembly(generated.second, generated.first.tileset));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for hierarchical and seeded tile assembly"};
    app.require_subcommand(1);
    std::function<int()> run;

    // check-producible
    {
        auto* cmd = app.add_subcommand("check-producible",
                                       "decide hierarchical producibility of an assembly");
        auto tileset = std::make_shared<std::string>();
        auto assembly = std::make_shared<std::string>();
        auto temperature = std::make_shared<int32_t>(0);
        auto naive = std::make_shared<bool>(false);
        auto witness = std::make_shared<std::string>();
        cmd->add_option("--tileset", *tileset, "tile set file")->required();
        cmd->add_option("--assembly", *assembly, "assembly file")->required();
        auto* temp_opt = cmd->add_option("--temperature", *temperature, "override the file temperature");
        cmd->add_flag("--naive", *naive, "use the quadratic reference decider");
        cmd->add_option("--witness", *witness, "write the witness assembly tree here");
        cmd->callback([=, &run] {
            run = [=] {
                return run_check_producible(*tileset, *assembly,
                                            temp_opt->count() ? std::optional<int32_t>(*temperature)
                                                              : std::nullopt,
                                            *naive, *witness);
            };
        });
    }

    // upv-seeded
    {
        auto* cmd = app.add_subcommand("upv-seeded", "temperature-1 seeded unique production");
        auto tileset = std::make_shared<std::string>();
        auto assembly = std::make_shared<std::string>();
        auto seed = std::make_shared<std::string>();
        auto anchor = std::make_shared<std::string>();
        auto strict = std::make_shared<bool>(false);
        cmd->add_option("--tileset", *tileset, "tile set file")->required();
        cmd->add_option("--assembly", *assembly, "assembly file")->required();
        cmd->add_option("--seed", *seed, "seed tile name")->required();
        cmd->add_option("--anchor", *anchor, "seed position X,Y (default: least occurrence)");
        cmd->add_flag("--strict-anchors", *strict, "check every occurrence of the seed tile");
        cmd->callback([=, &run] {
            run = [=] { return run_upv_seeded(*tileset, *assembly, *seed, *anchor, *strict); };
        });
    }

    // upv-hier
    {
        auto* cmd = app.add_subcommand("upv-hier", "temperature-1 hierarchical unique production");
        auto tileset = std::make_shared<std::string>();
        auto assembly = std::make_shared<std::string>();
        auto strict = std::make_shared<bool>(false);
        cmd->add_option("--tileset", *tileset, "tile set file")->required();
        cmd->add_option("--assembly", *assembly, "assembly file")->required();
        cmd->add_flag("--strict-anchors", *strict, "anchor at every occurrence of each tile type");
        cmd->callback([=, &run] {
            run = [=] { return run_upv_hier(*tileset, *assembly, *strict); };
        });
    }

    // union-trees
    {
        auto* cmd = app.add_subcommand("union-trees",
                                       "merge witness trees of consistently overlapping assemblies");
        auto tileset = std::make_shared<std::string>();
        auto assembly_a = std::make_shared<std::string>();
        auto tree_a = std::make_shared<std::string>();
        auto assembly_b = std::make_shared<std::string>();
        auto tree_b = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto temperature = std::make_shared<int32_t>(0);
        cmd->add_option("--tileset", *tileset, "tile set file")->required();
        cmd->add_option("--assembly-a", *assembly_a, "first assembly")->required();
        cmd->add_option("--tree-a", *tree_a, "witness tree of the first assembly")->required();
        cmd->add_option("--assembly-b", *assembly_b, "second assembly")->required();
        cmd->add_option("--tree-b", *tree_b, "witness tree of the second assembly")->required();
        cmd->add_option("--out", *out, "output tree file (default: stdout)");
        auto* temp_opt = cmd->add_option("--temperature", *temperature, "override the file temperature");
        cmd->callback([=, &run] {
            run = [=] {
                return run_union_trees(*tileset, *assembly_a, *tree_a, *assembly_b, *tree_b, *out,
                                       temp_opt->count() ? std::optional<int32_t>(*temperature)
                                                         : std::nullopt);
            };
        });
    }

    // validate-tree
    {
        auto* cmd = app.add_subcommand("validate-tree", "validate a witness tree for an assembly");
        auto tileset = std::make_shared<std::string>();
        auto assembly = std::make_shared<std::string>();
        auto tree = std::make_shared<std::string>();
        auto temperature = std::make_shared<int32_t>(0);
        cmd->add_option("--tileset", *tileset, "tile set file")->required();
        cmd->add_option("--assembly", *assembly, "assembly file")->required();
        cmd->add_option("--tree", *tree, "tree file")->required();
        auto* temp_opt = cmd->add_option("--temperature", *temperature, "override the file temperature");
        cmd->callback([=, &run] {
            run = [=] {
                return run_validate_tree(*tileset, *assembly, *tree,
                                         temp_opt->count() ? std::optional<int32_t>(*temperature)
                                                           : std::nullopt);
            };
        });
    }

    // bench
    {
        auto* cmd = app.add_subcommand("bench", "benchmark the producibility deciders (CSV on stdout)");
        auto opts = std::make_shared<BenchOptions>();
        auto no_naive = std::make_shared<bool>(false);
        cmd->add_option("--family", opts->family, "square|line")->required();
        cmd->add_option("--min", opts->min_n, "smallest tile count")->required();
        cmd->add_option("--max", opts->max_n, "largest tile count")->required();
        cmd->add_option("--factor", opts->factor, "size multiplier between steps");
        cmd->add_option("--reps", opts->repetitions, "repetitions per size (median reported)");
        cmd->add_option("--naive-max", opts->naive_max_n, "largest size for the reference decider");
        cmd->add_option("--temperature", opts->temperature, "instance temperature");
        cmd->add_flag("--no-naive", *no_naive, "skip the reference decider");
        cmd->callback([=, &run] {
            run = [=] {
                BenchOptions o = *opts;
                o.run_naive = !*no_naive;
                run_bench(o, std::cout);
                return 0;
            };
        });
    }

    // gen
    {
        auto* cmd = app.add_subcommand("gen", "generate a tile system and assembly");
        auto family = std::make_shared<std::string>();
        auto n = std::make_shared<int64_t>(0);
        auto temperature = std::make_shared<int32_t>(2);
        auto rng_seed = std::make_shared<uint64_t>(0);
        auto out_tileset = std::make_shared<std::string>();
        auto out_assembly = std::make_shared<std::string>();
        cmd->add_option("--family", *family, "square|line|random")->required();
        cmd->add_option("--n", *n, "tile count")->required();
        cmd->add_option("--temperature", *temperature, "temperature (default 2)");
        cmd->add_option("--seed-rng", *rng_seed, "64-bit generator seed (random family)");
        cmd->add_option("--out-tileset", *out_tileset, "tile set output file")->required();
        cmd->add_option("--out-assembly", *out_assembly, "assembly output file")->required();
        cmd->callback([=, &run] {
            run = [=] {
                return run_gen(*family, *n, *temperature, *rng_seed, *out_tileset, *out_assembly);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help is code 0; usage errors are 2
    }

    try {
        return run();
    } catch (const tav::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
