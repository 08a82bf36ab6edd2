#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsr/geometry.hpp"
#include "dsr/graph.hpp"

namespace dsr {

struct ForcedDominationQuery {
    const IntervalModel* model = nullptr;
    std::vector<int> forced; // distinct vertex ids that must carry a token
    int budget = 0;          // maximum result size; at least forced.size()
};

// Minimum-cardinality dominating multiset containing every forced vertex,
// found by the left-to-right greedy sweep (cover the leftmost undominated
// interval with the neighbor reaching furthest right). Absent when the
// minimum exceeds the budget; otherwise padded up to the budget with
// duplicate tokens on the smallest forced vertex (or the first greedy pick
// when nothing is forced).
std::optional<TokenConfig> min_dominating_with_forced(const ForcedDominationQuery& q);

enum class Side { left, right };

// Among dominating multisets of size exactly `budget` containing the two
// unbounded end vertices, returns one whose first vertex strictly to `side`
// of `anchor` has extremal left extremity (minimal for side=right, maximal
// for side=left). Candidate first vertices range over inclusion-maximal
// non-end vertices; when no candidate yields a feasible set but the ends
// alone do, the end-only set is returned. Absent when nothing is feasible.
std::optional<TokenConfig> extremal_dominating(const IntervalModel& model, int budget,
                                               int anchor, Side side);

// Token-sliding reachability between dominating sets of an interval model:
// true iff the intersection graph is connected and the sizes agree.
// Disconnected models yield false with an explanation in `diagnostic`.
bool interval_ts_reachable(const IntervalModel& model, const TokenConfig& ds,
                           const TokenConfig& dt, std::string* diagnostic = nullptr);

} // namespace dsr
