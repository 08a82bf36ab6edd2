#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsr/cnf.hpp"
#include "dsr/geometry.hpp"
#include "dsr/graph.hpp"

namespace dsr {

enum class IntervalRole {
    base,        // B: one backbone interval per variable and clause
    bridge_pos,  // X: carries a true variable's tokens
    bridge_neg,  // XB: carries a false variable's tokens
    clause,      // C: dominated exactly when the clause is satisfied
    clause_twin, // CP: identical copy of C, never adjacent to it
    occ_t,       // T,U,V,W: path from a base to the clause for a positive literal
    occ_u,
    occ_v,
    occ_w,
    occ_tb,      // TB,UB,VB,WB: the same for a negative literal
    occ_ub,
    occ_vb,
    occ_wb,
    dead_end,    // DE: degree-1 guard hanging off bridges, U's and W's
    pending,     // P: leaves that pin a token on every dead-end
    junction     // J: meets every W and WB; holds the free token
};

struct VertexInfo {
    IntervalRole role{};
    int var = -1;    // zero-based variable for variable-owned intervals
    int clause = -1; // zero-based clause index where applicable
    int host = -1;   // owning vertex id for dead-ends and pendings
    std::string label;
};

// Chord layout encoding a formula: token-sliding between the canonical
// dominating multisets of two satisfying assignments is possible exactly when
// the assignments are connected by single-variable flips through satisfying
// assignments.
struct ReductionLayout {
    CnfFormula formula; // clause count divisible by four
    int n = 0;          // variables
    int m = 0;          // clauses
    std::vector<int> ell;        // clauses touching each variable
    long long k_tokens = 0;      // size of every reachable dominating multiset
    long long pending_count = 0; // pendings per dead-end

    ChordModel chords;
    Graph graph;
    std::vector<VertexInfo> vertices;
    std::map<std::string, int> registry;

    // Family ids; -1 where the occurrence does not exist.
    std::vector<std::vector<int>> base_id;       // [var][clause]
    std::vector<std::vector<int>> bridge_pos_id; // [var][0..m/2-1]
    std::vector<std::vector<int>> bridge_neg_id; // [var][0..m/2-1]
    std::vector<int> clause_id;                  // [clause]
    std::vector<int> clause_twin_id;             // [clause]
    std::vector<std::vector<int>> t_id, u_id, v_id, w_id;     // positive occurrences
    std::vector<std::vector<int>> tb_id, ub_id, vb_id, wb_id; // negative occurrences
    std::vector<std::vector<int>> t_bridge;      // bridge carrying T's inner endpoint
    std::vector<int> dead_end_ids;
    std::vector<std::vector<int>> pending_ids;   // aligned with dead_end_ids
    int junction_id = -1;

    int id(const std::string& label) const;
};

// Repeats the whole clause list until its length is divisible by four.
CnfFormula pad_clauses(const CnfFormula& f);

// Builds the layout for a formula whose clause count is divisible by four.
// Every variable must occur somewhere. pending_count -1 selects the default
// 6*m*n; an explicit value must still exceed the token count.
ReductionLayout build_reduction(const CnfFormula& f, long long pending_count = -1);

struct StructureCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct StructureReport {
    std::vector<StructureCheck> checks;
    bool all_ok() const;
};

// Re-derives the documented adjacency facts from the finished layout.
StructureReport verify_structure(const ReductionLayout& l);

// Canonical dominating multiset representing an assignment: the junction,
// every dead-end, and per variable its bridges of the matching sign plus one
// token per occurrence (W for satisfied literals, U/UB otherwise).
TokenConfig df_assignment(const ReductionLayout& l, const Assignment& a);

struct SatrInstance {
    ReductionLayout layout;
    TokenConfig ds;
    TokenConfig dt;
};

// Validates, pads, builds, and maps the endpoint assignments.
SatrInstance satr_to_dsr(const CnfFormula& f, const Assignment& as, const Assignment& at,
                         long long pending_count = -1);

// Token moves realizing one variable flip starting from the canonical
// configuration of `a`. Raises illegal_flip_error, naming a violated clause,
// when the flipped assignment no longer satisfies the formula.
std::vector<SlideMove> flip_sequence(const ReductionLayout& l, const Assignment& a, int var,
                                     bool to_value);

// The variable whose intervals hold one token more than their settled share,
// or nullopt when every variable is settled. Other distributions are
// rejected.
std::optional<int> moving_variable(const ReductionLayout& l, const TokenConfig& d);

// Assignment encoded by a configuration: settled variables read off their
// positive bridges; a moving variable counts as true exactly when one of its
// W tokens is the last support of an otherwise falsified clause.
Assignment extract_assignment(const ReductionLayout& l, const TokenConfig& d);

// Writes chords.txt, registry.txt and params.txt into an existing directory.
void write_layout(const ReductionLayout& l, const std::string& dir);

} // namespace dsr
