#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the command-line tool: exit codes (0 affirmative,
// 1 negative, 2 input/usage error), stdout payloads, file outputs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "tav/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "tav_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out_file = work_dir() / "stdout.txt";
    const std::string cmd = std::string(TAV_CLI_PATH) + " " + args + " >" + out_file.string() +
                            " 2>" + (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    r.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return r;
}

std::string path_of(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    tav::write_file(p.string(), content);
    return p.string();
}

}  // namespace

TEST_CASE("check-producible") {
    const std::string ts = path_of("ring.tiles",
                                   "temperature 2\n"
                                   "tile SW N=w:1 E=s:1 S=- W=-\n"
                                   "tile SE N=e:1 E=- S=- W=s:1\n"
                                   "tile NW N=- E=n:1 S=w:1 W=-\n"
                                   "tile NE N=- E=- S=e:1 W=n:1\n");
    const std::string asmfile = path_of("ring.asm",
                                        "0 0 SW\n1 0 SE\n0 1 NW\n1 1 NE\n");

    RunResult at2 = run_cli("check-producible --tileset " + ts + " --assembly " + asmfile);
    CHECK(at2.exit_code == 1);
    CHECK(at2.out == "not-producible\n");

    const std::string witness = (work_dir() / "ring.tree").string();
    RunResult at1 = run_cli("check-producible --tileset " + ts + " --assembly " + asmfile +
                            " --temperature 1 --witness " + witness);
    CHECK(at1.exit_code == 0);
    CHECK(at1.out == "producible\n");

    RunResult naive = run_cli("check-producible --naive --tileset " + ts + " --assembly " +
                              asmfile + " --temperature 1");
    CHECK(naive.exit_code == 0);

    RunResult validate = run_cli("validate-tree --tileset " + ts + " --assembly " + asmfile +
                                 " --tree " + witness + " --temperature 1");
    CHECK(validate.exit_code == 0);
    CHECK(validate.out == "valid\n");

    RunResult wrong_temp = run_cli("validate-tree --tileset " + ts + " --assembly " + asmfile +
                                   " --tree " + witness);  // file temperature 2
    CHECK(wrong_temp.exit_code == 1);
    CHECK(wrong_temp.out == "invalid\n");
}

TEST_CASE("upv subcommands") {
    const std::string ts = path_of("upv.tiles",
                                   "temperature 1\n"
                                   "tile s N=- E=g:1 S=- W=-\n"
                                   "tile t N=- E=- S=- W=g:1\n");
    const std::string asmfile = path_of("upv.asm", "0 0 s\n1 0 t\n");

    CHECK(run_cli("upv-seeded --tileset " + ts + " --assembly " + asmfile + " --seed s").exit_code == 0);
    CHECK(run_cli("upv-seeded --tileset " + ts + " --assembly " + asmfile +
                  " --seed s --anchor 0,0").out == "unique\n");
    CHECK(run_cli("upv-hier --tileset " + ts + " --assembly " + asmfile).out == "unique\n");

    // A second tile matching the same glue breaks uniqueness.
    const std::string ts2 = path_of("upv2.tiles",
                                    "temperature 1\n"
                                    "tile s N=- E=g:1 S=- W=-\n"
                                    "tile t N=- E=- S=- W=g:1\n"
                                    "tile u N=- E=- S=- W=g:1\n");
    RunResult nu = run_cli("upv-hier --tileset " + ts2 + " --assembly " + asmfile);
    CHECK(nu.exit_code == 1);
    CHECK(nu.out == "not-unique\n");

    // Temperature must be 1.
    const std::string ts3 = path_of("upv3.tiles",
                                    "temperature 2\n"
                                    "tile s N=- E=g:1 S=- W=-\n"
                                    "tile t N=- E=- S=- W=g:1\n");
    CHECK(run_cli("upv-hier --tileset " + ts3 + " --assembly " + asmfile).exit_code == 2);

    // Strict anchors check every occurrence of the seed tile.
    const std::string ts4 = path_of("upv4.tiles",
                                    "temperature 1\n"
                                    "tile s N=- E=g:1 S=- W=h:1\n"
                                    "tile t N=- E=h:1 S=- W=g:1\n");
    const std::string sts = path_of("upv4.asm", "0 0 s\n1 0 t\n2 0 s\n");
    RunResult lax = run_cli("upv-seeded --tileset " + ts4 + " --assembly " + sts + " --seed s");
    RunResult strict = run_cli("upv-seeded --tileset " + ts4 + " --assembly " + sts +
                               " --seed s --strict-anchors");
    CHECK(lax.exit_code == strict.exit_code);
    CHECK(run_cli("upv-hier --tileset " + ts4 + " --assembly " + sts +
                  " --strict-anchors").exit_code == lax.exit_code);
}

TEST_CASE("union-trees") {
    const std::string ts = path_of("row.tiles",
                                   "temperature 2\n"
                                   "tile L N=- E=p:2 S=- W=-\n"
                                   "tile M N=- E=q:2 S=- W=p:2\n"
                                   "tile R N=- E=- S=- W=q:2\n");
    const std::string asm_a = path_of("row_a.asm", "0 0 L\n1 0 M\n");
    const std::string asm_b = path_of("row_b.asm", "1 0 M\n2 0 R\n");
    const std::string tree_a = (work_dir() / "row_a.tree").string();
    const std::string tree_b = (work_dir() / "row_b.tree").string();
    CHECK(run_cli("check-producible --tileset " + ts + " --assembly " + asm_a + " --witness " +
                  tree_a).exit_code == 0);
    CHECK(run_cli("check-producible --tileset " + ts + " --assembly " + asm_b + " --witness " +
                  tree_b).exit_code == 0);

    const std::string merged = (work_dir() / "row_union.tree").string();
    RunResult u = run_cli("union-trees --tileset " + ts + " --assembly-a " + asm_a + " --tree-a " +
                          tree_a + " --assembly-b " + asm_b + " --tree-b " + tree_b + " --out " +
                          merged);
    CHECK(u.exit_code == 0);

    const std::string asm_union = path_of("row_union.asm", "0 0 L\n1 0 M\n2 0 R\n");
    RunResult v = run_cli("validate-tree --tileset " + ts + " --assembly " + asm_union +
                          " --tree " + merged);
    CHECK(v.exit_code == 0);

    // Disjoint inputs are an input error.
    const std::string asm_far = path_of("row_far.asm", "10 0 L\n11 0 M\n");
    const std::string tree_far = (work_dir() / "row_far.tree").string();
    CHECK(run_cli("check-producible --tileset " + ts + " --assembly " + asm_far + " --witness " +
                  tree_far).exit_code == 0);
    CHECK(run_cli("union-trees --tileset " + ts + " --assembly-a " + asm_a + " --tree-a " + tree_a +
                  " --assembly-b " + asm_far + " --tree-b " + tree_far + " --out " +
                  merged).exit_code == 2);
}

TEST_CASE("gen and bench") {
    const std::string out_ts = (work_dir() / "gen.tiles").string();
    const std::string out_asm = (work_dir() / "gen.asm").string();
    CHECK(run_cli("gen --family square --n 9 --temperature 2 --out-tileset " + out_ts +
                  " --out-assembly " + out_asm).exit_code == 0);
    CHECK(run_cli("check-producible --tileset " + out_ts + " --assembly " + out_asm).exit_code == 0);

    CHECK(run_cli("gen --family random --n 12 --temperature 2 --seed-rng 99 --out-tileset " +
                  out_ts + " --out-assembly " + out_asm).exit_code == 0);

    RunResult bench = run_cli("bench --family line --min 32 --max 64 --factor 2 --reps 1");
    CHECK(bench.exit_code == 0);
    CHECK(bench.out.rfind("family,n,ns,pops,folds\n", 0) == 0);
    CHECK(bench.out.find("line,") != std::string::npos);
    CHECK(bench.out.find("line:naive,") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("check-producible").exit_code == 2);  // missing required options
    CHECK(run_cli("check-producible --tileset /nonexistent --assembly /nonexistent").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    const std::string bad = path_of("bad.tiles", "temperature 1\ntile A N=- E=g:1 S=- W=g:2\n");
    const std::string asmfile = path_of("bad.asm", "0 0 A\n");
    CHECK(run_cli("check-producible --tileset " + bad + " --assembly " + asmfile).exit_code == 2);
}
