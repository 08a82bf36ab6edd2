#include "dsr/oracle.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <queue>

#include "dsr/errors.hpp"

namespace dsr {

long long multiset_state_bound(int n, int k) {
    if (n <= 0) return k == 0 ? 1 : 0;
    // C(n+k-1, k) with overflow saturation.
    unsigned long long result = 1;
    for (int i = 1; i <= k; ++i) {
        const unsigned long long factor = static_cast<unsigned long long>(n - 1 + i);
        if (result > static_cast<unsigned long long>(LLONG_MAX) / factor) return LLONG_MAX;
        result = result * factor / i; // exact: product of i consecutive terms divides by i!
    }
    return result > static_cast<unsigned long long>(LLONG_MAX)
               ? LLONG_MAX
               : static_cast<long long>(result);
}

std::optional<ReconfSequence> reconfig_bfs(const Graph& g, const TokenConfig& ds,
                                           const TokenConfig& dt, bool require_domination,
                                           const OracleOptions& opts) {
    if (ds.size() != dt.size())
        throw invalid_input_error("configuration sizes differ (" + std::to_string(ds.size()) +
                                  " vs " + std::to_string(dt.size()) + ")");
    for (int v : ds.ids()) g.check_vertex(v, "token");
    for (int v : dt.ids()) g.check_vertex(v, "token");
    if (require_domination) {
        if (!is_dominating(g, ds)) throw invalid_input_error("start configuration not dominating");
        if (!is_dominating(g, dt)) throw invalid_input_error("target configuration not dominating");
    }
    const long long bound = multiset_state_bound(g.vertex_count(), ds.size());
    if (bound > opts.state_cap)
        throw resource_limit_error("state bound " + std::to_string(bound) + " exceeds cap " +
                                   std::to_string(opts.state_cap));

    std::vector<std::vector<int>> states;
    std::map<std::vector<int>, int> index_of;
    std::vector<int> parent, parent_move_from, parent_move_to;
    auto intern = [&](const std::vector<int>& ids) {
        auto [it, fresh] = index_of.try_emplace(ids, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(ids);
            parent.push_back(-1);
            parent_move_from.push_back(-1);
            parent_move_to.push_back(-1);
        }
        return std::pair<int, bool>(it->second, fresh);
    };

    const std::vector<int> start = ds.ids();
    const std::vector<int> goal = dt.ids();
    intern(start);
    std::queue<int> frontier;
    frontier.push(0);
    int goal_index = start == goal ? 0 : -1;

    while (goal_index == -1 && !frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop();
        const std::vector<int> ids = states[cur]; // copy: states may reallocate
        for (size_t i = 0; i < ids.size() && goal_index == -1; ++i) {
            if (i > 0 && ids[i] == ids[i - 1]) continue; // same source vertex
            const int from = ids[i];
            for (int to : g.neighbors(from)) {
                std::vector<int> next = ids;
                next[i] = to;
                std::sort(next.begin(), next.end());
                if (require_domination && !is_dominating(g, TokenConfig(next))) continue;
                auto [idx, fresh] = intern(next);
                if (!fresh) continue;
                parent[idx] = cur;
                parent_move_from[idx] = from;
                parent_move_to[idx] = to;
                if (next == goal) {
                    goal_index = idx;
                    break;
                }
                frontier.push(idx);
            }
        }
    }
    if (goal_index == -1) return std::nullopt;

    std::vector<SlideMove> moves;
    for (int at = goal_index; parent[at] != -1; at = parent[at])
        moves.push_back(SlideMove{parent_move_from[at], parent_move_to[at]});
    std::reverse(moves.begin(), moves.end());
    return ReconfSequence{ds, std::move(moves)};
}

std::vector<TokenConfig> enumerate_dominating(const Graph& g, int k) {
    if (k < 1) throw invalid_input_error("token count must be positive");
    std::vector<TokenConfig> result;
    const int n = g.vertex_count();
    if (n == 0) return result;
    std::vector<int> ids(k, 0); // non-decreasing id lists in lexicographic order
    for (;;) {
        TokenConfig c(ids);
        if (is_dominating(g, c)) result.push_back(std::move(c));
        int pos = k - 1;
        while (pos >= 0 && ids[pos] == n - 1) --pos;
        if (pos < 0) break;
        const int next = ids[pos] + 1;
        for (int i = pos; i < k; ++i) ids[i] = next;
    }
    return result;
}

std::optional<std::vector<int>> satr_bfs(const CnfFormula& f, const Assignment& as,
                                         const Assignment& at) {
    validate_formula(f);
    const int n = f.variable_count;
    if (n > 24) throw resource_limit_error("assignment search limited to 24 variables");
    if (!satisfies(f, as)) throw invalid_input_error("start assignment does not satisfy formula");
    if (!satisfies(f, at)) throw invalid_input_error("target assignment does not satisfy formula");

    auto pack = [n](const Assignment& a) {
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i)
            if (a.value(i)) mask |= 1u << i;
        return mask;
    };
    auto sat_mask = [&](std::uint32_t mask) {
        Assignment a;
        a.bits.resize(n);
        for (int i = 0; i < n; ++i) a.bits[i] = (mask >> i) & 1u;
        return satisfies(f, a);
    };

    const std::uint32_t start = pack(as);
    const std::uint32_t goal = pack(at);
    std::vector<int> parent_var(1u << n, -2); // -2 unvisited, -1 root
    parent_var[start] = -1;
    std::queue<std::uint32_t> frontier;
    frontier.push(start);
    while (!frontier.empty() && parent_var[goal] == -2) {
        const std::uint32_t cur = frontier.front();
        frontier.pop();
        for (int i = 0; i < n; ++i) {
            const std::uint32_t next = cur ^ (1u << i);
            if (parent_var[next] != -2 || !sat_mask(next)) continue;
            parent_var[next] = i;
            frontier.push(next);
        }
    }
    if (parent_var[goal] == -2) return std::nullopt;
    std::vector<int> flips;
    for (std::uint32_t at_mask = goal; parent_var[at_mask] != -1;
         at_mask ^= 1u << parent_var[at_mask])
        flips.push_back(parent_var[at_mask]);
    std::reverse(flips.begin(), flips.end());
    return flips;
}

} // namespace dsr
