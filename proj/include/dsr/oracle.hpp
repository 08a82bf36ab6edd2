#pragma once

#include <optional>
#include <vector>

#include "dsr/cnf.hpp"
#include "dsr/graph.hpp"

namespace dsr {

struct OracleOptions {
    long long state_cap = 10'000'000; // refuse searches whose state bound exceeds this
};

// Number of size-k multisets over n vertices, saturating at LLONG_MAX.
long long multiset_state_bound(int n, int k);

// Breadth-first search over token configurations under single-token slides,
// returning a shortest reconfiguration sequence (absent when unreachable).
// With require_domination, every visited configuration must dominate the
// graph and both endpoints are validated. Expansion follows canonical move
// order (smallest source vertex, then smallest destination), so results are
// deterministic. Throws resource_limit_error when the multiset state bound
// exceeds the cap.
std::optional<ReconfSequence> reconfig_bfs(const Graph& g, const TokenConfig& ds,
                                           const TokenConfig& dt, bool require_domination,
                                           const OracleOptions& opts = {});

// All dominating multisets of k tokens, in lexicographic order of their
// canonical id lists.
std::vector<TokenConfig> enumerate_dominating(const Graph& g, int k);

// Breadth-first search over satisfying assignments under single-variable
// flips; returns the flipped variable indices along a shortest path, or
// absent when unreachable. Endpoints must satisfy the formula.
std::optional<std::vector<int>> satr_bfs(const CnfFormula& f, const Assignment& as,
                                         const Assignment& at);

} // namespace dsr
