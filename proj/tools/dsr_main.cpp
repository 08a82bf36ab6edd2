#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dsr/carc_solver.hpp"
#include "dsr/cnf.hpp"
#include "dsr/detail/parse.hpp"
#include "dsr/errors.hpp"
#include "dsr/generators.hpp"
#include "dsr/geometry.hpp"
#include "dsr/graph.hpp"
#include "dsr/oracle.hpp"
#include "dsr/reduction.hpp"

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dsr::invalid_input_error("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw dsr::invalid_input_error("cannot write " + path);
    return out;
}

dsr::TokenConfig load_config(const std::string& path) {
    std::ifstream in = open_input(path);
    return dsr::read_config(in);
}

// The first word of a model file names its format.
dsr::Graph load_graph_any(const std::string& path) {
    std::string kind;
    {
        std::ifstream in = open_input(path);
        in >> kind;
    }
    std::ifstream in = open_input(path);
    if (kind == "graph") return dsr::read_graph(in);
    if (kind == "carc") return dsr::read_carc_model(in).graph();
    if (kind == "intervals") return dsr::read_interval_model(in).graph();
    if (kind == "chords") return dsr::read_chord_model(in).build_graph();
    throw dsr::parse_error("line 1: unknown header word '" + kind +
                           "' (expected graph, carc, intervals or chords)");
}

struct Args {
    std::string model, ds, dt, out, cnf, as, at, dir, flips;
    std::string kind = "carc";
    std::string preset = "random";
    long long cap = 10'000'000;
    long long pending = -1;
    unsigned long long seed = 0;
    int n = 6;
    double density = 0.35;
    bool witness = false;
};

int run_solve(const Args& a) {
    std::ifstream min = open_input(a.model);
    const dsr::CircularArcModel model = dsr::read_carc_model(min);
    const dsr::TokenConfig ds = load_config(a.ds);
    const dsr::TokenConfig dt = load_config(a.dt);
    dsr::DecideOptions opts;
    opts.witness = a.witness;
    opts.oracle_state_cap = a.cap;
    const dsr::DecideResult res = dsr::decide_carc(model, ds, dt, opts);
    if (!res.note.empty()) std::cerr << res.note << '\n';
    std::cout << (res.reachable ? "YES" : "NO") << '\n';
    if (a.witness && res.reachable) {
        if (res.witness) {
            if (!a.out.empty()) {
                std::ofstream out = open_output(a.out);
                dsr::write_sequence(out, *res.witness);
            } else {
                dsr::write_sequence(std::cout, *res.witness);
            }
        } else {
            std::cerr << "witness unavailable\n";
        }
    }
    return res.reachable ? 0 : 1;
}

int run_build(const Args& a) {
    std::ifstream fin = open_input(a.cnf);
    const dsr::CnfFormula f = dsr::read_dimacs(fin);
    std::ifstream ain = open_input(a.as);
    const dsr::Assignment as = dsr::read_assignment(ain, f.variable_count);
    std::ifstream tin = open_input(a.at);
    const dsr::Assignment at = dsr::read_assignment(tin, f.variable_count);
    const dsr::SatrInstance inst = dsr::satr_to_dsr(f, as, at, a.pending);
    const dsr::StructureReport rep = verify_structure(inst.layout);
    if (!rep.all_ok()) {
        for (const auto& c : rep.checks)
            if (!c.ok) std::cerr << "structure check failed: " << c.name << ": " << c.detail << '\n';
        return 2;
    }
    std::filesystem::create_directories(a.dir);
    dsr::write_layout(inst.layout, a.dir);
    {
        std::ofstream out = open_output(a.dir + "/formula.cnf");
        dsr::write_dimacs(out, f);
    }
    {
        std::ofstream out = open_output(a.dir + "/as.txt");
        dsr::write_assignment(out, as);
    }
    {
        std::ofstream out = open_output(a.dir + "/at.txt");
        dsr::write_assignment(out, at);
    }
    {
        std::ofstream out = open_output(a.dir + "/ds.txt");
        dsr::write_config(out, inst.ds);
    }
    {
        std::ofstream out = open_output(a.dir + "/dt.txt");
        dsr::write_config(out, inst.dt);
    }
    std::cout << "vertices " << inst.layout.graph.vertex_count() << " tokens "
              << inst.layout.k_tokens << " pending " << inst.layout.pending_count << '\n';
    return 0;
}

int run_simulate(const Args& a) {
    std::ifstream fin = open_input(a.dir + "/formula.cnf");
    const dsr::CnfFormula f = dsr::read_dimacs(fin);
    std::ifstream ain = open_input(a.dir + "/as.txt");
    const dsr::Assignment as = dsr::read_assignment(ain, f.variable_count);
    std::ifstream tin = open_input(a.dir + "/at.txt");
    const dsr::Assignment at = dsr::read_assignment(tin, f.variable_count);
    long long pn = 0, pm = 0, pk = 0, pending = 0;
    {
        std::ifstream pin = open_input(a.dir + "/params.txt");
        if (!(pin >> pn >> pm >> pk >> pending))
            throw dsr::parse_error(a.dir + "/params.txt: malformed parameter line");
    }
    const dsr::SatrInstance inst = dsr::satr_to_dsr(f, as, at, pending);

    std::ifstream lin = open_input(a.flips);
    const std::vector<dsr::detail::Line> lines = dsr::detail::read_lines(lin);
    dsr::ReconfSequence seq;
    seq.start = inst.ds;
    dsr::Assignment cur = as;
    int index = 0;
    for (const auto& l : lines) {
        if (dsr::detail::is_blank(l.text)) continue;
        const auto parts = dsr::detail::split_ws(l.text);
        if (parts.size() != 2)
            throw dsr::parse_error("line " + std::to_string(l.number) +
                                   ": expected '<variable> <value>'");
        const int var = dsr::detail::parse_int(parts[0], l.number);
        const int val = dsr::detail::parse_int(parts[1], l.number);
        if (var < 1 || var > f.variable_count)
            throw dsr::invalid_input_error("line " + std::to_string(l.number) + ": variable " +
                                           std::to_string(var) + " out of range");
        if (val != 0 && val != 1)
            throw dsr::invalid_input_error("line " + std::to_string(l.number) +
                                           ": value must be 0 or 1");
        ++index;
        try {
            const auto moves = dsr::flip_sequence(inst.layout, cur, var - 1, val == 1);
            seq.moves.insert(seq.moves.end(), moves.begin(), moves.end());
        } catch (const dsr::error& e) {
            throw dsr::invalid_input_error("flip #" + std::to_string(index) + " (line " +
                                           std::to_string(l.number) + "): " + e.what());
        }
        cur.bits[static_cast<size_t>(var - 1)] = static_cast<unsigned char>(val);
    }
    if (!(cur == at)) {
        std::cerr << "flip path ends at an assignment different from at.txt\n";
        return 2;
    }
    const dsr::ValidationResult res =
        dsr::validate_sequence(inst.layout.graph, seq, inst.dt, true);
    if (!res.ok) {
        std::cout << "INVALID\n";
        std::cerr << "validation failed at step " << res.failure_index << ": " << res.message
                  << '\n';
        return 2;
    }
    std::cout << "VALID " << seq.length() << '\n';
    if (!a.out.empty()) {
        std::ofstream out = open_output(a.out);
        dsr::write_sequence(out, seq);
    }
    return 0;
}

int run_oracle(const Args& a) {
    const dsr::Graph g = load_graph_any(a.model);
    const dsr::TokenConfig ds = load_config(a.ds);
    const dsr::TokenConfig dt = load_config(a.dt);
    dsr::OracleOptions opts;
    opts.state_cap = a.cap;
    const auto res = dsr::reconfig_bfs(g, ds, dt, true, opts);
    if (!res) {
        std::cout << "NO\n";
        return 1;
    }
    std::cout << "YES " << res->length() << '\n';
    if (!a.out.empty()) {
        std::ofstream out = open_output(a.out);
        dsr::write_sequence(out, *res);
    }
    return 0;
}

int run_gen(const Args& a) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!a.out.empty()) {
        file = open_output(a.out);
        os = &file;
    }
    std::mt19937_64 rng = dsr::seeded_rng(a.seed);
    if (a.kind == "carc") {
        if (a.preset == "ring") {
            dsr::write_carc_model(*os, dsr::ring_model(a.n));
        } else if (a.preset == "random") {
            dsr::write_carc_model(*os, dsr::gen_random_carc(rng, a.n, a.density));
        } else {
            throw dsr::invalid_input_error("unknown preset '" + a.preset +
                                           "' (expected ring or random)");
        }
    } else if (a.kind == "intervals") {
        dsr::write_interval_model(*os, dsr::gen_random_intervals(rng, a.n));
    } else {
        throw dsr::invalid_input_error("unknown kind '" + a.kind +
                                       "' (expected carc or intervals)");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dominating-set reconfiguration toolkit"};
    app.require_subcommand(1);
    Args a;

    CLI::App* solve =
        app.add_subcommand("solve-carc", "decide token sliding on a circular-arc model");
    solve->add_option("model", a.model, "arc model file")->required();
    solve->add_option("ds", a.ds, "start configuration file")->required();
    solve->add_option("dt", a.dt, "target configuration file")->required();
    solve->add_flag("--witness", a.witness, "assemble and validate a slide sequence");
    solve->add_option("--out", a.out, "witness output file (stdout otherwise)");
    solve->add_option("--cap", a.cap, "state bound for witness subsearches");

    CLI::App* build = app.add_subcommand(
        "build-reduction", "compile a formula and two satisfying assignments into a chord layout");
    build->add_option("cnf", a.cnf, "DIMACS formula file")->required();
    build->add_option("as", a.as, "start assignment file")->required();
    build->add_option("at", a.at, "target assignment file")->required();
    build->add_option("--out", a.dir, "output directory")->required();
    build->add_option("--pending-count", a.pending,
                      "guard leaves per dead-end (default 6*m*n, must exceed the token count)");

    CLI::App* sim = app.add_subcommand(
        "simulate-flips", "replay a flip list over a built layout and validate the slides");
    sim->add_option("dir", a.dir, "directory written by build-reduction")->required();
    sim->add_option("flips", a.flips, "flip list: one '<variable> <value>' per line, 1-based")
        ->required();
    sim->add_option("--out", a.out, "slide sequence output file");

    CLI::App* orc =
        app.add_subcommand("oracle", "breadth-first reachability over dominating multisets");
    orc->add_option("input", a.model, "graph, carc, intervals or chords file")->required();
    orc->add_option("ds", a.ds, "start configuration file")->required();
    orc->add_option("dt", a.dt, "target configuration file")->required();
    orc->add_option("--cap", a.cap, "refuse searches whose state bound exceeds this");
    orc->add_option("--out", a.out, "shortest sequence output file");

    CLI::App* gen = app.add_subcommand("gen-random", "write a seeded random model");
    gen->add_option("--kind", a.kind, "carc or intervals");
    gen->add_option("--n", a.n, "number of arcs or intervals")->required();
    gen->add_option("--seed", a.seed, "generator seed")->required();
    gen->add_option("--density", a.density, "typical span fraction; 1 forces a full arc");
    gen->add_option("--preset", a.preset, "ring or random");
    gen->add_option("--out", a.out, "model output file (stdout otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return run_solve(a);
        if (build->parsed()) return run_build(a);
        if (sim->parsed()) return run_simulate(a);
        if (orc->parsed()) return run_oracle(a);
        if (gen->parsed()) return run_gen(a);
    } catch (const dsr::resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
