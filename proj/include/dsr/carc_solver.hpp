#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsr/geometry.hpp"
#include "dsr/graph.hpp"
#include "dsr/interval_domination.hpp"
#include "dsr/oracle.hpp"

namespace dsr {

// Interval model obtained by cutting the circle at a maximal arc u: the
// survivors (arcs not strictly inside u) are clipped to the complement of u's
// interior and unrolled clockwise starting just after r(u); two unbounded end
// vertices take over u's coverage on either side, and each end carries
// private leaf intervals that force it into small dominating sets.
struct UnfoldedGraph {
    const CircularArcModel* base = nullptr;
    int pivot = -1;              // the cut arc u in the base model
    long long window = 0;        // unrolled length W = (l(u) - r(u)) mod M
    IntervalModel model;
    std::vector<int> image_of;   // base id -> unfolded id, -1 when absent
    std::vector<int> base_of;    // unfolded id -> base id, -1 for ends/leaves
    int end_right_ext = -1;      // ray (-inf, 0], sitting at circle point r(u)
    int end_left_ext = -1;       // ray [W, +inf), sitting at circle point l(u)
    std::vector<int> leaves;     // leaf ids, near-end block then far-end block
};

// Requires u inclusion-maximal and the model free of full-circle arcs.
UnfoldedGraph build_gu(const CircularArcModel& m, int u);

// Dominating multiset of the base model containing the pivot -> dominating
// multiset of the unfolded model of one more token: one pivot copy becomes
// the two ends, additional pivot copies move to the far end, other tokens map
// to their images (tokens on dropped arcs are rejected).
TokenConfig lift_config(const UnfoldedGraph& g, const TokenConfig& d);

// Dominating multiset of the unfolded model containing both ends and no leaf
// tokens -> dominating multiset of the base model: image tokens map back and
// all end copies collapse to a single pivot token.
TokenConfig project_config(const UnfoldedGraph& g, const TokenConfig& x);

// Vertices reachable by the token starting at `start` while the `fixed`
// tokens stay put and every intermediate configuration dominates. Sorted.
std::vector<int> single_token_reach(const Graph& g, const TokenConfig& fixed, int start);

// Shortest such walk from start to goal (absent when unreachable).
std::optional<std::vector<SlideMove>> single_token_walk(const Graph& g, const TokenConfig& fixed,
                                                        int start, int goal);

struct SlidingOptions {
    bool witness = false;
    long long oracle_state_cap = 10'000'000;
};

struct SlidingResult {
    int final_vertex = -1;
    TokenConfig final_config;
    ReconfSequence seq;       // moves from the input configuration (witness mode)
    bool witness_ok = false;
    std::string note;
};

// Greedy clockwise drive of the token starting at u1 toward target arc v:
// each round rebuilds the cut model at the current arc, parks the other
// tokens in the extremal dominating set that frees the clockwise flank, and
// slides the token as far clockwise as it can go without passing v. Stops at
// v, at a fixed point, or at the iteration cap (one round per vertex).
SlidingResult right_sliding(const CircularArcModel& m, const TokenConfig& ds, int u1, int v,
                            const SlidingOptions& opts = {});

// Mirror image: drives the token counterclockwise.
SlidingResult left_sliding(const CircularArcModel& m, const TokenConfig& ds, int u1, int v,
                           const SlidingOptions& opts = {});

struct DecideOptions {
    bool witness = false;
    long long oracle_state_cap = 10'000'000;
};

struct DecideResult {
    bool reachable = false;
    std::optional<ReconfSequence> witness; // present when assembled and validated
    std::string note;
};

// Decides token-sliding reachability between dominating multisets of a
// circular-arc model. Inputs must dominate and the model must be connected.
DecideResult decide_carc(const CircularArcModel& m, const TokenConfig& ds, const TokenConfig& dt,
                         const DecideOptions& opts = {});

// Explicit reconfiguration sequence for models containing a full-circle arc
// w: route one token to w, ferry the remaining mismatched tokens through w,
// and finish by parking the anchored token. Every intermediate configuration
// keeps a token on w, hence dominates.
ReconfSequence full_circle_witness(const CircularArcModel& m, const TokenConfig& ds,
                                   const TokenConfig& dt, int w);

} // namespace dsr
