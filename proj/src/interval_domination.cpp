#include "dsr/interval_domination.hpp"

#include <algorithm>

#include "dsr/errors.hpp"

namespace dsr {

namespace {

// Marks v and its neighbors as dominated.
void mark_dominated(const Graph& g, int v, std::vector<char>& dominated) {
    dominated[v] = 1;
    for (int w : g.neighbors(v)) dominated[w] = 1;
}

} // namespace

std::optional<TokenConfig> min_dominating_with_forced(const ForcedDominationQuery& q) {
    if (q.model == nullptr) throw invalid_input_error("domination query has no model");
    const IntervalModel& m = *q.model;
    const Graph& g = m.graph();
    const int n = m.size();

    std::vector<char> is_forced(n, 0);
    for (int f : q.forced) {
        if (f < 0 || f >= n)
            throw invalid_input_error("forced vertex " + std::to_string(f) + " out of range");
        if (is_forced[f])
            throw invalid_input_error("forced vertex " + std::to_string(f) + " repeated");
        is_forced[f] = 1;
    }
    if (q.budget < static_cast<int>(q.forced.size()))
        throw invalid_input_error("budget " + std::to_string(q.budget) +
                                  " smaller than forced set of size " +
                                  std::to_string(q.forced.size()));

    std::vector<char> dominated(n, 0);
    for (int f : q.forced) mark_dominated(g, f, dominated);

    std::vector<int> chosen;
    for (;;) {
        // Leftmost undominated interval, measured by right endpoint.
        int v = -1;
        for (int i = 0; i < n; ++i) {
            if (dominated[i]) continue;
            if (v == -1 || m.interval(i).hi < m.interval(v).hi) v = i;
        }
        if (v == -1) break;
        // Its neighbor reaching furthest right (ties: smaller lo, then id).
        int w = v;
        auto better = [&](int cand, int cur) {
            const Interval& a = m.interval(cand);
            const Interval& b = m.interval(cur);
            if (a.hi != b.hi) return a.hi > b.hi;
            if (a.lo != b.lo) return a.lo < b.lo;
            return cand < cur;
        };
        for (int x : g.neighbors(v))
            if (better(x, w)) w = x;
        chosen.push_back(w);
        mark_dominated(g, w, dominated);
    }

    const int minimum = static_cast<int>(q.forced.size() + chosen.size());
    if (minimum > q.budget) return std::nullopt;

    std::vector<int> ids(q.forced);
    ids.insert(ids.end(), chosen.begin(), chosen.end());
    int pad_vertex = -1;
    if (!q.forced.empty())
        pad_vertex = *std::min_element(q.forced.begin(), q.forced.end());
    else if (!chosen.empty())
        pad_vertex = chosen.front();
    if (pad_vertex >= 0)
        for (int c = minimum; c < q.budget; ++c) ids.push_back(pad_vertex);
    return TokenConfig(std::move(ids));
}

std::optional<TokenConfig> extremal_dominating(const IntervalModel& m, int budget, int anchor,
                                               Side side) {
    const int n = m.size();
    if (anchor < 0 || anchor >= n)
        throw invalid_input_error("anchor vertex " + std::to_string(anchor) + " out of range");
    if (budget < 2) throw invalid_input_error("budget must allow both end vertices");

    int left_ray = -1;  // lo unbounded
    int right_ray = -1; // hi unbounded
    for (int i = 0; i < n; ++i) {
        const Interval& iv = m.interval(i);
        const bool neg = iv.lo == IntervalModel::kNegUnbounded;
        const bool pos = iv.hi == IntervalModel::kPosUnbounded;
        if (neg && pos) throw invalid_input_error("interval covering the whole line");
        if (neg) {
            if (left_ray != -1) throw invalid_input_error("two left-unbounded intervals");
            left_ray = i;
        }
        if (pos) {
            if (right_ray != -1) throw invalid_input_error("two right-unbounded intervals");
            right_ray = i;
        }
    }
    if (left_ray == -1 || right_ray == -1)
        throw invalid_input_error("model lacks the two unbounded end vertices");

    const long long anchor_lo = m.interval(anchor).lo;
    std::vector<int> candidates;
    for (int i = 0; i < n; ++i) {
        if (i == left_ray || i == right_ray) continue;
        if (!is_maximal_interval(m, i)) continue;
        const long long lo = m.interval(i).lo;
        if (side == Side::right ? lo > anchor_lo : lo < anchor_lo) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        const long long la = m.interval(a).lo;
        const long long lb = m.interval(b).lo;
        if (la != lb) return side == Side::right ? la < lb : la > lb;
        return a < b;
    });

    for (int c : candidates) {
        ForcedDominationQuery q{&m, {left_ray, right_ray, c}, budget};
        if (auto r = min_dominating_with_forced(q)) return r;
    }
    ForcedDominationQuery ends_only{&m, {left_ray, right_ray}, budget};
    return min_dominating_with_forced(ends_only);
}

bool interval_ts_reachable(const IntervalModel& model, const TokenConfig& ds,
                           const TokenConfig& dt, std::string* diagnostic) {
    const Graph& g = model.graph();
    if (!is_dominating(g, ds) || !is_dominating(g, dt))
        throw invalid_input_error("reachability requires dominating endpoint configurations");
    if (ds.size() != dt.size()) {
        if (diagnostic)
            *diagnostic = "configuration sizes differ (" + std::to_string(ds.size()) + " vs " +
                          std::to_string(dt.size()) + ")";
        return false;
    }
    if (!is_connected(g)) {
        if (diagnostic)
            *diagnostic = "interval graph is disconnected; equal-size dominating sets of a "
                          "connected interval graph are always reachable, but no such guarantee "
                          "holds here";
        return false;
    }
    return true;
}

} // namespace dsr
