#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dsr/errors.hpp"
#include "dsr/generators.hpp"
#include "dsr/reduction.hpp"
#include "test_util.hpp"

using namespace dsr;

namespace {

Literal pos(int v) { return Literal{v, true}; }
Literal neg(int v) { return Literal{v, false}; }

Assignment bits(std::vector<unsigned char> b) { return Assignment(std::move(b)); }

// (x1 | x2) & (!x1 | !x2) & (x1) & (!x2 | x1): unique satisfying assignment 10
CnfFormula two_var_formula() {
    CnfFormula f;
    f.variable_count = 2;
    f.clauses = {{pos(0), pos(1)}, {neg(0), neg(1)}, {pos(0)}, {neg(1), pos(0)}};
    return f;
}

// (x1 | x2) & (x1 | !x2), twice: satisfied by 10 and 11, so x2 can flip
CnfFormula flip_formula() {
    CnfFormula f;
    f.variable_count = 2;
    f.clauses = {{pos(0), pos(1)}, {pos(0), neg(1)}, {pos(0), pos(1)}, {pos(0), neg(1)}};
    return f;
}

int count_role(const ReductionLayout& l, IntervalRole r) {
    int c = 0;
    for (const VertexInfo& v : l.vertices)
        if (v.role == r) ++c;
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("padding repeats the clause list until it divides four") {
    CnfFormula f;
    f.variable_count = 1;
    f.clauses = {{pos(0)}};
    CHECK(pad_clauses(f).clause_count() == 4);

    f.clauses = {{pos(0)}, {pos(0)}};
    CHECK(pad_clauses(f).clause_count() == 4);

    CnfFormula g;
    g.variable_count = 2;
    g.clauses = {{pos(0)}, {pos(1)}, {pos(0), pos(1)}};
    const CnfFormula padded = pad_clauses(g);
    REQUIRE(padded.clause_count() == 12);
    for (int j = 0; j < 12; ++j) CHECK(padded.clauses[static_cast<size_t>(j)] == g.clauses[static_cast<size_t>(j % 3)]);

    CHECK(pad_clauses(two_var_formula()).clause_count() == 4); // already divisible

    CnfFormula empty;
    empty.variable_count = 1;
    CHECK_THROWS_AS(static_cast<void>(pad_clauses(empty)), invalid_input_error);
}

TEST_CASE("layout construction rejects malformed inputs") {
    CnfFormula three;
    three.variable_count = 1;
    three.clauses = {{pos(0)}, {pos(0)}, {pos(0)}};
    CHECK_THROWS_AS(static_cast<void>(build_reduction(three)), invalid_input_error);

    CnfFormula unused;
    unused.variable_count = 2;
    unused.clauses = {{pos(0)}, {pos(0)}, {pos(0)}, {pos(0)}};
    CHECK_THROWS_AS(static_cast<void>(build_reduction(unused)), invalid_input_error);

    // an explicit pending count must exceed the token count (34 here)
    CHECK_THROWS_AS(static_cast<void>(build_reduction(two_var_formula(), 34)),
                    invalid_input_error);
    CHECK(build_reduction(two_var_formula(), 35).pending_count == 35);
}

TEST_CASE("the two-variable four-clause layout has the documented shape") {
    const ReductionLayout l = build_reduction(two_var_formula());
    CHECK(l.n == 2);
    CHECK(l.m == 4);
    REQUIRE(l.ell.size() == 2);
    CHECK(l.ell[0] == 4);
    CHECK(l.ell[1] == 3);
    CHECK(l.k_tokens == 34);
    CHECK(l.pending_count == 48);

    CHECK(count_role(l, IntervalRole::base) == 8);
    CHECK(count_role(l, IntervalRole::bridge_pos) + count_role(l, IntervalRole::bridge_neg) == 8);
    CHECK(count_role(l, IntervalRole::clause) == 4);
    CHECK(count_role(l, IntervalRole::clause_twin) == 4);
    int paths = 0;
    for (IntervalRole r : {IntervalRole::occ_t, IntervalRole::occ_u, IntervalRole::occ_v,
                           IntervalRole::occ_w, IntervalRole::occ_tb, IntervalRole::occ_ub,
                           IntervalRole::occ_vb, IntervalRole::occ_wb})
        paths += count_role(l, r);
    CHECK(paths == 28);
    CHECK(count_role(l, IntervalRole::dead_end) == 22);
    CHECK(count_role(l, IntervalRole::pending) == 22 * 48);
    CHECK(count_role(l, IntervalRole::junction) == 1);
    CHECK(l.graph.vertex_count() == 8 + 8 + 8 + 28 + 22 + 22 * 48 + 1);

    // the junction meets exactly one W per occurrence: 4 + 3 of them
    CHECK(l.graph.degree(l.junction_id) == 7);

    const StructureReport report = verify_structure(l);
    for (const StructureCheck& c : report.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.ok);
    }
    CHECK(report.all_ok());
}

TEST_CASE("structure checks hold for random padded formulas") {
    auto rng = seeded_rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        Assignment hidden;
        const int vars = 2 + static_cast<int>(rand_below(rng, 2));
        const int clauses = 2 + static_cast<int>(rand_below(rng, 3));
        const CnfFormula f = gen_random_formula(rng, vars, clauses, &hidden);
        const ReductionLayout l = build_reduction(pad_clauses(f));
        const StructureReport report = verify_structure(l);
        for (const StructureCheck& c : report.checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.ok);
        }
        // the canonical configuration of the hidden satisfying assignment
        // dominates, with or without its junction token
        const TokenConfig d = df_assignment(l, hidden);
        CHECK(d.size() == l.k_tokens);
        CHECK(is_dominating(l.graph, d));
        TokenConfig without = d;
        without.remove_one(l.junction_id);
        CHECK(is_dominating(l.graph, without));
    }
}

TEST_CASE("canonical configurations dominate exactly for satisfying assignments") {
    const ReductionLayout l = build_reduction(two_var_formula());
    const TokenConfig good = df_assignment(l, bits({1, 0}));
    CHECK(good.size() == 34);
    CHECK(good.contains(l.junction_id));
    CHECK(is_dominating(l.graph, good));

    // 00 misses the third clause, 11 the second: their clause vertices hang
    CHECK_FALSE(is_dominating(l.graph, df_assignment(l, bits({0, 0}))));
    CHECK_FALSE(is_dominating(l.graph, df_assignment(l, bits({1, 1}))));

    CHECK_THROWS_AS(static_cast<void>(df_assignment(l, bits({1}))), invalid_input_error);
}

TEST_CASE("flip sequences move exactly one variable between canonical configurations") {
    const ReductionLayout l = build_reduction(flip_formula());
    CHECK(l.k_tokens == 37);
    const Assignment a11 = bits({1, 1});
    const Assignment a10 = bits({1, 0});

    const std::vector<SlideMove> down = flip_sequence(l, a11, 1, false);
    CHECK(down.size() == 15);
    const ReconfSequence seq{df_assignment(l, a11), down};
    const ValidationResult vr = validate_sequence(l.graph, seq, df_assignment(l, a10), true);
    INFO(vr.message);
    CHECK(vr.ok);

    // flipping back retraces the same moves in reverse
    const std::vector<SlideMove> up = flip_sequence(l, a10, 1, true);
    REQUIRE(up.size() == down.size());
    for (size_t i = 0; i < up.size(); ++i) {
        CHECK(up[i].from == down[down.size() - 1 - i].to);
        CHECK(up[i].to == down[down.size() - 1 - i].from);
    }
}

TEST_CASE("flip sequences validate their inputs") {
    const ReductionLayout l = build_reduction(two_var_formula());
    // 10 is the only satisfying assignment of this formula
    CHECK_THROWS_AS(static_cast<void>(flip_sequence(l, bits({0, 0}), 0, true)),
                    invalid_input_error); // start does not satisfy
    CHECK_THROWS_AS(static_cast<void>(flip_sequence(l, bits({1, 0}), 0, true)),
                    invalid_input_error); // value unchanged
    CHECK_THROWS_WITH_AS(static_cast<void>(flip_sequence(l, bits({1, 0}), 0, false)),
                         doctest::Contains("clause 1"), illegal_flip_error);
    CHECK_THROWS_WITH_AS(static_cast<void>(flip_sequence(l, bits({1, 0}), 1, true)),
                         doctest::Contains("clause 2"), illegal_flip_error);
}

TEST_CASE("the moving variable is visible along a flip and nowhere else") {
    const ReductionLayout l = build_reduction(flip_formula());
    const Assignment a11 = bits({1, 1});
    const TokenConfig start = df_assignment(l, a11);
    CHECK(moving_variable(l, start) == std::nullopt);

    const std::vector<SlideMove> down = flip_sequence(l, a11, 1, false);
    TokenConfig cur = start;
    for (size_t i = 0; i < down.size(); ++i) {
        cur = apply_slide(l.graph, cur, down[i]);
        const auto mv = moving_variable(l, cur);
        if (i + 1 < down.size())
            CHECK(mv == 1);
        else
            CHECK(mv == std::nullopt);
    }

    TokenConfig wrong_size = start;
    wrong_size.add(l.junction_id);
    CHECK_THROWS_AS(static_cast<void>(moving_variable(l, wrong_size)), invalid_input_error);

    // taking a token from one variable and giving it to the other is not a
    // distribution any legal play can reach
    TokenConfig skew = start;
    skew.remove_one(l.bridge_pos_id[1][0]);
    skew.add(l.bridge_pos_id[0][0]);
    CHECK_THROWS_AS(static_cast<void>(moving_variable(l, skew)), invalid_input_error);
}

TEST_CASE("assignments survive the round trip through configurations") {
    const ReductionLayout l = build_reduction(flip_formula());
    for (const Assignment& a : {bits({1, 0}), bits({1, 1})})
        CHECK(extract_assignment(l, df_assignment(l, a)) == a);

    // along a flip every intermediate extraction satisfies the formula and
    // consecutive extractions differ in at most the flipped variable
    const Assignment a11 = bits({1, 1});
    const std::vector<SlideMove> down = flip_sequence(l, a11, 1, false);
    TokenConfig cur = df_assignment(l, a11);
    Assignment prev = extract_assignment(l, cur);
    CHECK(prev == a11);
    for (const SlideMove& mv : down) {
        cur = apply_slide(l.graph, cur, mv);
        const Assignment now = extract_assignment(l, cur);
        CHECK(satisfies(l.formula, now));
        int changed = 0;
        for (int i = 0; i < l.n; ++i)
            if (now.bits[static_cast<size_t>(i)] != prev.bits[static_cast<size_t>(i)]) {
                ++changed;
                CHECK(i == 1);
            }
        CHECK(changed <= 1);
        prev = now;
    }
    CHECK(prev == bits({1, 0}));
}

TEST_CASE("composing a formula and two assignments yields matching endpoints") {
    CnfFormula f;
    f.variable_count = 2;
    f.clauses = {{pos(0), pos(1)}};
    const SatrInstance inst = satr_to_dsr(f, bits({1, 0}), bits({0, 1}));
    CHECK(inst.layout.m == 4); // padded
    CHECK(inst.ds == df_assignment(inst.layout, bits({1, 0})));
    CHECK(inst.dt == df_assignment(inst.layout, bits({0, 1})));

    CHECK_THROWS_AS(static_cast<void>(satr_to_dsr(f, bits({1, 0}), bits({0, 0}))),
                    invalid_input_error);
    CHECK_THROWS_AS(static_cast<void>(satr_to_dsr(f, bits({0, 0}), bits({0, 1}))),
                    invalid_input_error);
}

TEST_CASE("layout files are deterministic and consistent with the registry") {
    namespace fs = std::filesystem;
    const ReductionLayout l = build_reduction(two_var_formula());
    const fs::path base = fs::temp_directory_path() / "dsr_layout_test";
    const fs::path d1 = base / "a";
    const fs::path d2 = base / "b";
    fs::create_directories(d1);
    fs::create_directories(d2);
    write_layout(l, d1.string());
    write_layout(l, d2.string());
    for (const char* name : {"chords.txt", "registry.txt", "params.txt"})
        CHECK(slurp((d1 / name).string()) == slurp((d2 / name).string()));

    const std::string params = slurp((d1 / "params.txt").string());
    CHECK(params.find("2 4 34 48") == 0);
    CHECK(params.find("ell 1 4") != std::string::npos);
    CHECK(params.find("ell 2 3") != std::string::npos);

    // every registry line is "label id" and agrees with the lookup table
    std::istringstream reg(slurp((d1 / "registry.txt").string()));
    std::string label;
    int id = 0, lines = 0;
    while (reg >> label >> id) {
        CHECK(l.id(label) == id);
        ++lines;
    }
    CHECK(lines == l.graph.vertex_count());
    CHECK(l.id("J") == l.junction_id);
    CHECK_THROWS_AS(static_cast<void>(l.id("nonsense")), invalid_input_error);

    fs::remove_all(base);
}
