#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "dsr/errors.hpp"
#include "dsr/generators.hpp"
#include "dsr/geometry.hpp"
#include "test_util.hpp"

using namespace dsr;
using testutil::cfg;

TEST_CASE("the six-arc ring is the six-cycle") {
    const CircularArcModel m = ring_model(6);
    CHECK(m.circumference() == 12);
    CHECK(m.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(m.span(i) == 3);
    const Graph expected = testutil::cycle_graph(6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(m.graph().has_edge(i, j) == expected.has_edge(i, j));
    CHECK(m.arc(5).l == 10);
    CHECK(m.arc(5).r == 1); // wraps
    CHECK(m.uncovered_point_doubled() == std::nullopt);
    CHECK(m.full_arc() == std::nullopt);
}

TEST_CASE("arc predicates match the pointwise definitions on random models") {
    auto rng = seeded_rng(20260814);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rand_below(rng, 6));
        const double density = 0.15 + 0.1 * static_cast<double>(rand_below(rng, 7));
        const CircularArcModel m = gen_random_carc(rng, n, density);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                CHECK(m.intersects(i, j) == testutil::arcs_intersect_brute(m, i, j));
                CHECK(m.subseteq(i, j) == testutil::arc_subseteq_brute(m, i, j));
                if (i != j)
                    CHECK(m.graph().has_edge(i, j) == testutil::arcs_intersect_brute(m, i, j));
                CHECK(m.strictly_inside(i, j) ==
                      (i != j && testutil::arc_subseteq_brute(m, i, j) &&
                       !testutil::arc_subseteq_brute(m, j, i)));
            }
            for (long long p = 0; p < m.circumference(); ++p)
                CHECK(m.contains_point(i, p) == m.contains_point_doubled(i, 2 * p));
        }
        const auto gap2 = m.uncovered_point_doubled();
        if (gap2) {
            for (int i = 0; i < n; ++i)
                CHECK_FALSE(testutil::arc_contains_doubled(m.circumference(), m.arc(i), *gap2));
        } else {
            for (long long p2 = 0; p2 < 2 * m.circumference(); ++p2) {
                bool covered = false;
                for (int i = 0; i < n && !covered; ++i)
                    covered = testutil::arc_contains_doubled(m.circumference(), m.arc(i), p2);
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("full arcs intersect everything and cover everything") {
    const CircularArcModel m(10, {Arc{0, 0, true}, Arc{2, 5, false}, Arc{7, 8, false}});
    CHECK(m.full_arc() == 0);
    CHECK(m.span(0) == 10);
    CHECK(m.intersects(0, 1));
    CHECK(m.intersects(0, 2));
    CHECK_FALSE(m.intersects(1, 2));
    CHECK(m.subseteq(1, 0));
    CHECK_FALSE(m.subseteq(0, 1));
    CHECK(m.uncovered_point_doubled() == std::nullopt);
    for (long long p = 0; p < 10; ++p) CHECK(m.contains_point(0, p));
}

TEST_CASE("wrapping arcs are closed at both ends") {
    const CircularArcModel m(8, {Arc{1, 2, false}, Arc{5, 4, false}});
    CHECK(m.span(1) == 7);
    CHECK(m.contains_point(1, 0));
    CHECK(m.contains_point(1, 5));
    CHECK(m.contains_point(1, 4));
    // every integer point is covered, yet the half-integer between 4 and 5 is not
    const auto gap2 = m.uncovered_point_doubled();
    REQUIRE(gap2.has_value());
    for (int i = 0; i < 2; ++i)
        CHECK_FALSE(testutil::arc_contains_doubled(8, m.arc(i), *gap2));
}

TEST_CASE("general position violations are rejected") {
    CHECK_THROWS_AS(CircularArcModel(10, {Arc{0, 3, false}, Arc{3, 6, false}}),
                    invalid_model_error);
    CHECK_THROWS_AS(CircularArcModel(10, {Arc{4, 4, false}}), invalid_model_error);
    CHECK_THROWS_AS(CircularArcModel(10, {Arc{0, 10, false}}), invalid_model_error);
    CHECK_THROWS_AS(CircularArcModel(0, {}), invalid_model_error);
    CHECK_NOTHROW(CircularArcModel(10, {Arc{0, 0, true}, Arc{0, 3, false}}));
}

TEST_CASE("interval intersection follows endpoint comparisons") {
    const IntervalModel m({Interval{0, 4}, Interval{4, 9}, Interval{5, 6},
                           Interval{IntervalModel::kNegUnbounded, 2},
                           Interval{7, IntervalModel::kPosUnbounded}});
    CHECK(m.intersects(0, 1)); // closed intervals share point 4
    CHECK_FALSE(m.intersects(0, 2));
    CHECK(m.intersects(1, 2));
    CHECK(m.subseteq(2, 1));
    CHECK_FALSE(m.subseteq(1, 2));
    CHECK(m.strictly_inside(2, 1));
    CHECK(m.intersects(3, 0));
    CHECK_FALSE(m.intersects(3, 4));
    CHECK(m.intersects(4, 1));
    CHECK(m.graph().has_edge(0, 3));
    CHECK_THROWS_AS(IntervalModel({Interval{3, 1}}), invalid_model_error);
}

TEST_CASE("chord adjacency is strict interleaving") {
    const ChordModel m({Chord{0, 4}, Chord{2, 6}, Chord{0, 4}, Chord{4, 8}, Chord{5, 7}});
    const Graph g = m.build_graph();
    CHECK(g.has_edge(0, 1));       // 0 < 2 < 4 < 6
    CHECK_FALSE(g.has_edge(0, 2)); // identical chords never cross
    CHECK_FALSE(g.has_edge(0, 3)); // shared endpoint only
    CHECK(g.has_edge(1, 4));       // 2 < 5 < 6 < 7
    CHECK_FALSE(g.has_edge(3, 4)); // nested
    CHECK_THROWS_AS(ChordModel({Chord{3, 3}}), invalid_model_error);
}

TEST_CASE("chord graph matches the quadratic interleaving check on random input") {
    auto rng = seeded_rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rand_below(rng, 10));
        std::vector<Chord> chords;
        for (int i = 0; i < n; ++i) {
            const long long a = rand_below(rng, 20);
            long long b = rand_below(rng, 20);
            if (a == b) b = a + 1;
            chords.push_back(Chord{std::min(a, b), std::max(a, b)});
        }
        const ChordModel m(chords);
        const Graph g = m.build_graph();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const Chord& x = m.chord(i);
                const Chord& y = m.chord(j);
                const bool cross = (x.l < y.l && y.l < x.r && x.r < y.r) ||
                                   (y.l < x.l && x.l < y.r && y.r < x.r);
                CHECK(g.has_edge(i, j) == cross);
            }
    }
}

TEST_CASE("intersection graph wrappers agree with the models") {
    auto rng = seeded_rng(11);
    const CircularArcModel cm = gen_random_carc(rng, 6, 0.3);
    const IntervalModel im = gen_random_intervals(rng, 6);
    const ChordModel dm({Chord{0, 2}, Chord{1, 3}});
    CHECK(arc_intersection_graph(cm).edge_count() == cm.graph().edge_count());
    CHECK(interval_intersection_graph(im).edge_count() == im.graph().edge_count());
    CHECK(chord_overlap_graph(dm).has_edge(0, 1));
}

TEST_CASE("symbolic lines order points by construction") {
    SymbolicLine line;
    const LineHandle a = line.append();
    const LineHandle b = line.append();
    const LineHandle c = line.insert_left(b);  // between a and b
    const LineHandle d = line.insert_right(a); // between a and c
    CHECK(line.precedes(a, d));
    CHECK(line.precedes(d, c));
    CHECK(line.precedes(c, b));
    const LineHandle e = line.insert_left(b); // closer to b than c
    CHECK(line.precedes(c, e));
    CHECK(line.precedes(e, b));
    line.finalize();
    CHECK(line.coordinate(a) == 0);
    CHECK(line.coordinate(d) == 1);
    CHECK(line.coordinate(c) == 2);
    CHECK(line.coordinate(e) == 3);
    CHECK(line.coordinate(b) == 4);
    CHECK(line.point_count() == 5);
}

TEST_CASE("frames bracket their points and nest when repeated") {
    SymbolicLine line;
    const LineHandle a = line.append();
    const LineHandle b = line.append();
    const auto [f1l, f1r] = line.frame({a, b});
    const auto [f2l, f2r] = line.frame({a, b});
    CHECK(line.precedes(f2l, a));
    CHECK(line.precedes(f1l, f2l)); // second frame nests inside the first
    CHECK(line.precedes(b, f2r));
    CHECK(line.precedes(f2r, f1r));
    const auto [p1l, p1r] = line.frame({a});
    const auto [p2l, p2r] = line.frame({a});
    CHECK(line.precedes(p1l, p2l));
    CHECK(line.precedes(p2l, a));
    CHECK(line.precedes(a, p2r));
    CHECK(line.precedes(p2r, p1r));
    CHECK_THROWS_AS(line.frame({}), invalid_input_error);
}

TEST_CASE("symbolic lines reject foreign handles and late mutation") {
    SymbolicLine line;
    const LineHandle a = line.append();
    SymbolicLine other;
    const LineHandle foreign = other.append();
    CHECK_THROWS_AS(line.insert_left(foreign), invalid_reference_error);
    CHECK_THROWS_AS(static_cast<void>(line.coordinate(a)), invalid_input_error);
    line.finalize();
    CHECK_THROWS_AS(line.append(), invalid_input_error);
    CHECK_THROWS_AS(line.insert_right(a), invalid_input_error);
    CHECK(line.coordinate(a) == 0);
}

TEST_CASE("arc maximality and token normalization") {
    // arc 3 sits strictly inside arc 0; arcs 0,1,2 are maximal
    const CircularArcModel m(12, {Arc{0, 5, false}, Arc{4, 9, false}, Arc{8, 1, false},
                                  Arc{2, 3, false}});
    CHECK(is_maximal_arc(m, 0));
    CHECK(is_maximal_arc(m, 1));
    CHECK(is_maximal_arc(m, 2));
    CHECK_FALSE(is_maximal_arc(m, 3));
    CHECK(maximal_arcs(m) == std::vector<int>{0, 1, 2});

    const auto norm = normalize_to_maximal(m, cfg({3, 1}));
    CHECK(norm.config == cfg({0, 1}));
    REQUIRE(norm.moves.size() == 1);
    CHECK(norm.moves[0] == SlideMove{3, 0});
    // moves are legal slides from the original configuration
    ReconfSequence seq;
    seq.start = cfg({3, 1});
    seq.moves = norm.moves;
    CHECK(validate_sequence(m.graph(), seq, norm.config, false).ok);

    const auto idem = normalize_to_maximal(m, norm.config);
    CHECK(idem.config == norm.config);
    CHECK(idem.moves.empty());
}

TEST_CASE("interval maximality") {
    const IntervalModel m({Interval{0, 10}, Interval{2, 5}, Interval{12, 15}});
    CHECK(is_maximal_interval(m, 0));
    CHECK_FALSE(is_maximal_interval(m, 1));
    CHECK(is_maximal_interval(m, 2));
    CHECK(maximal_intervals(m) == std::vector<int>{0, 2});
}

TEST_CASE("model files round-trip and report malformed lines") {
    const CircularArcModel m(10, {Arc{0, 0, true}, Arc{2, 5, false}});
    std::stringstream s;
    write_carc_model(s, m);
    const CircularArcModel back = read_carc_model(s);
    CHECK(back.circumference() == 10);
    CHECK(back.arc(0).full);
    CHECK(back.arc(1).l == 2);

    const IntervalModel im({Interval{IntervalModel::kNegUnbounded, 3}, Interval{1, 8}});
    std::stringstream is;
    write_interval_model(is, im);
    const IntervalModel iback = read_interval_model(is);
    CHECK(iback.interval(0).lo == IntervalModel::kNegUnbounded);
    CHECK(iback.interval(1).hi == 8);

    const ChordModel cm({Chord{0, 3}, Chord{1, 4}});
    std::stringstream cs;
    write_chord_model(cs, cm);
    const ChordModel cback = read_chord_model(cs);
    CHECK(cback.chord(1).r == 4);

    std::stringstream bad("carc 10 2\n0 0 3\n1 nope\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(read_carc_model(bad)),
                         "line 3: expected 'id l r' or 'id full'", parse_error);
}

TEST_CASE("generators are deterministic and honor their contracts") {
    auto r1 = seeded_rng(99);
    auto r2 = seeded_rng(99);
    const CircularArcModel a = gen_random_carc(r1, 7, 0.4);
    const CircularArcModel b = gen_random_carc(r2, 7, 0.4);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.arc(i).l == b.arc(i).l);
        CHECK(a.arc(i).r == b.arc(i).r);
    }
    CHECK(is_connected(a.graph()));

    auto r3 = seeded_rng(5);
    const CircularArcModel full = gen_random_carc(r3, 5, 1.0);
    CHECK(full.full_arc() == 0);

    auto r4 = seeded_rng(5);
    const IntervalModel iv = gen_random_intervals(r4, 8);
    CHECK(is_connected(iv.graph()));

    auto r5 = seeded_rng(5);
    const CircularArcModel cov = gen_covered_carc(r5, 4, 3);
    CHECK(cov.size() == 7);
    CHECK(cov.uncovered_point_doubled() == std::nullopt);
    CHECK(cov.full_arc() == std::nullopt);
    CHECK(is_connected(cov.graph()));

    auto r6 = seeded_rng(8);
    Assignment hidden;
    const CnfFormula f = gen_random_formula(r6, 4, 5, &hidden);
    CHECK(f.variable_count == 4);
    CHECK(f.clause_count() == 5);
    CHECK(satisfies(f, hidden));
    std::vector<char> used(4, 0);
    for (const auto& c : f.clauses)
        for (const auto& lit : c) used[static_cast<size_t>(lit.var)] = 1;
    for (char u : used) CHECK(u == 1);
}
