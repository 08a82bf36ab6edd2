#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string bin = DSR_BIN;

fs::path work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "dsr_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string at(const std::string& name) { return (work_dir() / name).string(); }

void put(const std::string& name, const std::string& content) {
    std::ofstream out(at(name));
    REQUIRE(out.good());
    out << content;
}

std::string slurp(const std::string& name) {
    std::ifstream in(at(name));
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the binary with stdout/stderr captured into out.txt / err.txt.
int run(const std::string& args) {
    const std::string cmd = bin + " " + args + " > " + at("out.txt") + " 2> " + at("err.txt");
    const int st = std::system(cmd.c_str());
    REQUIRE(st != -1);
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

void write_ring_model(const std::string& name) {
    REQUIRE(run("gen-random --kind carc --preset ring --n 6 --seed 0 --out " + at(name)) == 0);
}

} // namespace

TEST_CASE("solver exit codes distinguish yes, no and bad input") {
    write_ring_model("ring.txt");
    put("d03.txt", "tokens: 0 3\n");
    put("d14.txt", "tokens: 1 4\n");
    put("bad.txt", "tokens: 0 1\n");

    CHECK(run("solve-carc " + at("ring.txt") + " " + at("d03.txt") + " " + at("d14.txt")) == 1);
    CHECK(slurp("out.txt") == "NO\n");
    CHECK(slurp("err.txt").find("short of") != std::string::npos);

    CHECK(run("solve-carc " + at("ring.txt") + " " + at("d03.txt") + " " + at("d03.txt")) == 0);
    CHECK(slurp("out.txt") == "YES\n");

    CHECK(run("solve-carc " + at("ring.txt") + " " + at("bad.txt") + " " + at("d03.txt")) == 2);
    CHECK(slurp("err.txt").find("dominate") != std::string::npos);

    put("broken.txt", "carc 12 2\n0 0 3\n1 x 9\n");
    CHECK(run("solve-carc " + at("broken.txt") + " " + at("d03.txt") + " " + at("d03.txt")) == 2);
    CHECK(slurp("err.txt").find("line 3") != std::string::npos);
}

TEST_CASE("witness mode writes a replayable sequence") {
    write_ring_model("ring.txt");
    put("d024.txt", "tokens: 0 2 4\n");
    put("d135.txt", "tokens: 1 3 5\n");
    CHECK(run("solve-carc " + at("ring.txt") + " " + at("d024.txt") + " " + at("d135.txt") +
              " --witness --out " + at("w.txt")) == 0);
    CHECK(slurp("out.txt") == "YES\n");
    CHECK(slurp("w.txt").rfind("start: 0 2 4", 0) == 0);
}

TEST_CASE("the oracle accepts several input formats and honours its cap") {
    write_ring_model("ring.txt");
    put("d03.txt", "tokens: 0 3\n");
    put("d14.txt", "tokens: 1 4\n");

    CHECK(run("oracle " + at("ring.txt") + " " + at("d03.txt") + " " + at("d03.txt")) == 0);
    CHECK(slurp("out.txt") == "YES 0\n");
    CHECK(run("oracle " + at("ring.txt") + " " + at("d03.txt") + " " + at("d14.txt")) == 1);
    CHECK(slurp("out.txt") == "NO\n");

    // 21 two-token states on six vertices exceed a cap of 3
    CHECK(run("oracle " + at("ring.txt") + " " + at("d03.txt") + " " + at("d14.txt") +
              " --cap 3") == 3);
    CHECK(slurp("err.txt").find("resource limit") != std::string::npos);

    put("p4.txt", "graph 4 3\n0 1\n1 2\n2 3\n");
    put("p02.txt", "tokens: 0 2\n");
    put("p13.txt", "tokens: 1 3\n");
    CHECK(run("oracle " + at("p4.txt") + " " + at("p02.txt") + " " + at("p13.txt")) == 0);
    CHECK(slurp("out.txt") == "YES 2\n");

    put("mystery.txt", "bogus 1 2\n");
    CHECK(run("oracle " + at("mystery.txt") + " " + at("p02.txt") + " " + at("p13.txt")) == 2);
    CHECK(slurp("err.txt").find("unknown header word") != std::string::npos);
}

TEST_CASE("argument errors exit with code 2 and help with 0") {
    CHECK(run("") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("solve-carc") == 2); // missing positionals
    CHECK(run("--help") == 0);
}

TEST_CASE("random generation is reproducible") {
    CHECK(run("gen-random --kind carc --n 7 --seed 5 --out " + at("g1.txt")) == 0);
    CHECK(run("gen-random --kind carc --n 7 --seed 5 --out " + at("g2.txt")) == 0);
    CHECK(slurp("g1.txt") == slurp("g2.txt"));
    CHECK(run("gen-random --kind carc --n 7 --seed 6 --out " + at("g3.txt")) == 0);
    CHECK(slurp("g1.txt") != slurp("g3.txt"));

    write_ring_model("ring.txt");
    CHECK(slurp("ring.txt").rfind("carc 12 6", 0) == 0);

    CHECK(run("gen-random --kind carc --n 5 --seed 1 --density 1 --out " + at("full.txt")) == 0);
    CHECK(slurp("full.txt").find(" full") != std::string::npos);

    CHECK(run("gen-random --kind intervals --n 5 --seed 2 --out " + at("iv.txt")) == 0);
    CHECK(slurp("iv.txt").rfind("intervals 5", 0) == 0);

    CHECK(run("gen-random --kind carc --n 6 --seed 0 --preset nonsense") == 2);
}

TEST_CASE("formula layouts build deterministically and replay flip lists") {
    put("f.cnf", "p cnf 2 4\n1 2 0\n1 -2 0\n1 2 0\n1 -2 0\n");
    put("as.txt", "11\n");
    put("at.txt", "10\n");

    const std::string d1 = at("layout1");
    const std::string d2 = at("layout2");
    CHECK(run("build-reduction " + at("f.cnf") + " " + at("as.txt") + " " + at("at.txt") +
              " --out " + d1) == 0);
    CHECK(slurp("out.txt").find("tokens 37") != std::string::npos);
    CHECK(run("build-reduction " + at("f.cnf") + " " + at("as.txt") + " " + at("at.txt") +
              " --out " + d2) == 0);
    for (const std::string name : {"chords.txt", "registry.txt", "params.txt", "ds.txt", "dt.txt"}) {
        std::ifstream a(d1 + "/" + name), b(d2 + "/" + name);
        REQUIRE(a.good());
        REQUIRE(b.good());
        std::ostringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
    }

    put("flips.txt", "2 0\n");
    CHECK(run("simulate-flips " + d1 + " " + at("flips.txt")) == 0);
    CHECK(slurp("out.txt") == "VALID 15\n");

    // x1 carries the only support of every clause, so it may not flip down
    put("badflip.txt", "1 0\n");
    CHECK(run("simulate-flips " + d1 + " " + at("badflip.txt")) == 2);
    CHECK(slurp("err.txt").find("flip #1") != std::string::npos);

    // a flip list must end at the recorded target assignment
    put("loop.txt", "2 0\n2 1\n");
    CHECK(run("simulate-flips " + d1 + " " + at("loop.txt")) == 2);
    CHECK(slurp("err.txt").find("different") != std::string::npos);

    // an unsatisfying start assignment is rejected when building
    put("as0.txt", "00\n");
    CHECK(run("build-reduction " + at("f.cnf") + " " + at("as0.txt") + " " + at("at.txt") +
              " --out " + at("layout3")) == 2);
    CHECK(slurp("err.txt").find("satisfy") != std::string::npos);
}
