#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <climits>

#include "dsr/errors.hpp"
#include "dsr/generators.hpp"
#include "dsr/oracle.hpp"
#include "test_util.hpp"

using namespace dsr;
using testutil::cfg;

TEST_CASE("multiset state bounds") {
    CHECK(multiset_state_bound(4, 2) == 10);
    CHECK(multiset_state_bound(6, 3) == 56);
    CHECK(multiset_state_bound(1, 5) == 1);
    CHECK(multiset_state_bound(5, 1) == 5);
    CHECK(multiset_state_bound(1000, 500) == LLONG_MAX); // saturates instead of overflowing
}

TEST_CASE("shortest reconfiguration on the four-path") {
    const Graph g = testutil::path_graph(4);
    const auto r = reconfig_bfs(g, cfg({0, 2}), cfg({1, 3}), true);
    REQUIRE(r.has_value());
    CHECK(r->length() == 2);
    CHECK(validate_sequence(g, *r, cfg({1, 3}), true).ok);
}

TEST_CASE("the six-cycle rotation classes are mutually unreachable") {
    const Graph g = testutil::cycle_graph(6);
    CHECK(reconfig_bfs(g, cfg({0, 3}), cfg({1, 4}), true) == std::nullopt);
    CHECK(reconfig_bfs(g, cfg({0, 3}), cfg({2, 5}), true) == std::nullopt);
    const auto self = reconfig_bfs(g, cfg({0, 3}), cfg({0, 3}), true);
    REQUIRE(self.has_value());
    CHECK(self->length() == 0);
}

TEST_CASE("domination can be turned off") {
    const Graph g = testutil::path_graph(3);
    CHECK_THROWS_AS(static_cast<void>(reconfig_bfs(g, cfg({0}), cfg({2}), true)),
                    invalid_input_error);
    const auto r = reconfig_bfs(g, cfg({0}), cfg({2}), false);
    REQUIRE(r.has_value());
    CHECK(r->length() == 2);
}

TEST_CASE("size mismatches are rejected") {
    const Graph g = testutil::path_graph(4);
    CHECK_THROWS_AS(static_cast<void>(reconfig_bfs(g, cfg({0, 2}), cfg({1}), false)),
                    invalid_input_error);
}

TEST_CASE("search is deterministic and sequences replay") {
    auto rng = seeded_rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rand_below(rng, 5));
        const CircularArcModel m = gen_random_carc(rng, n, 0.35);
        const Graph& g = m.graph();
        const int k = 2 + static_cast<int>(rand_below(rng, 2));
        const auto all = enumerate_dominating(g, k);
        if (all.size() < 2) continue;
        const TokenConfig& a = all.front();
        const TokenConfig& b = all.back();
        const auto r1 = reconfig_bfs(g, a, b, true);
        const auto r2 = reconfig_bfs(g, a, b, true);
        REQUIRE(r1.has_value() == r2.has_value());
        if (r1) {
            CHECK(r1->moves == r2->moves);
            CHECK(validate_sequence(g, *r1, b, true).ok);
        }
    }
}

TEST_CASE("shortest means shortest") {
    // On the path, {0,2} -> {1,3} cannot be done in one move.
    const Graph g = testutil::path_graph(4);
    const auto r = reconfig_bfs(g, cfg({0, 2}), cfg({0, 2}), true);
    REQUIRE(r.has_value());
    CHECK(r->length() == 0);
    const auto s = reconfig_bfs(g, cfg({0, 2}), cfg({0, 3}), true);
    REQUIRE(s.has_value());
    CHECK(s->length() == 1);
}

TEST_CASE("state caps throw resource errors") {
    const Graph g = testutil::path_graph(12);
    OracleOptions tiny;
    tiny.state_cap = 10;
    CHECK_THROWS_AS(
        static_cast<void>(reconfig_bfs(g, cfg({1, 4, 7, 10}), cfg({1, 4, 7, 10}), true, tiny)),
        resource_limit_error);
}

TEST_CASE("dominating multiset enumeration on small graphs") {
    const Graph c6 = testutil::cycle_graph(6);
    const auto sets = enumerate_dominating(c6, 2);
    REQUIRE(sets.size() == 3);
    CHECK(sets[0] == cfg({0, 3}));
    CHECK(sets[1] == cfg({1, 4}));
    CHECK(sets[2] == cfg({2, 5}));

    const Graph p4 = testutil::path_graph(4);
    const auto psets = enumerate_dominating(p4, 2);
    REQUIRE(psets.size() == 4);
    CHECK(psets[0] == cfg({0, 2}));
    CHECK(psets[1] == cfg({0, 3}));
    CHECK(psets[2] == cfg({1, 2}));
    CHECK(psets[3] == cfg({1, 3}));

    CHECK_THROWS_AS(static_cast<void>(enumerate_dominating(p4, 0)), invalid_input_error);

    // duplicates count: on the triangle one token dominates, so {v,v} does too
    const Graph k3 = testutil::cycle_graph(3);
    const auto dsets = enumerate_dominating(k3, 2);
    CHECK(dsets.size() == 6); // all multisets of size 2 over 3 vertices
    CHECK(dsets.front() == cfg({0, 0}));
}

TEST_CASE("assignment flip search finds shortest flip paths") {
    CnfFormula f;
    f.variable_count = 2;
    f.clauses = {{Literal{0, true}, Literal{1, true}}};
    const Assignment a10(std::vector<unsigned char>{1, 0});
    const Assignment a01(std::vector<unsigned char>{0, 1});
    const auto path = satr_bfs(f, a10, a01);
    REQUIRE(path.has_value());
    REQUIRE(path->size() == 2);
    // via (1,1): flip variable 2 up, then variable 1 down
    CHECK((*path)[0] == 1);
    CHECK((*path)[1] == 0);

    const Assignment a00(std::vector<unsigned char>{0, 0});
    CHECK_THROWS_AS(static_cast<void>(satr_bfs(f, a10, a00)), invalid_input_error);
    CHECK(satr_bfs(f, a10, a10).has_value());
}

TEST_CASE("flip search reports unreachable targets") {
    // (x1 | x2) & (!x1 | !x2): exactly 10 and 01 satisfy, no single flip connects them
    CnfFormula f;
    f.variable_count = 2;
    f.clauses = {{Literal{0, true}, Literal{1, true}},
                 {Literal{0, false}, Literal{1, false}}};
    const Assignment a10(std::vector<unsigned char>{1, 0});
    const Assignment a01(std::vector<unsigned char>{0, 1});
    CHECK(satr_bfs(f, a10, a01) == std::nullopt);
}

TEST_CASE("flip search refuses oversized formulas") {
    CnfFormula f;
    f.variable_count = 25;
    std::vector<Literal> clause;
    for (int v = 0; v < 25; ++v) clause.push_back(Literal{v, true});
    f.clauses = {clause};
    const Assignment ones(std::vector<unsigned char>(25, 1));
    CHECK_THROWS_AS(static_cast<void>(satr_bfs(f, ones, ones)), resource_limit_error);
}
