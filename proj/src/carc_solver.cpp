#include "dsr/carc_solver.hpp"

#include <algorithm>
#include <queue>

#include "dsr/errors.hpp"

namespace dsr {

namespace {

long long pos_mod(long long a, long long m) { return ((a % m) + m) % m; }

std::vector<SlideMove> reversed_moves(const std::vector<SlideMove>& moves) {
    std::vector<SlideMove> out;
    out.reserve(moves.size());
    for (auto it = moves.rbegin(); it != moves.rend(); ++it)
        out.push_back(SlideMove{it->to, it->from});
    return out;
}

void append_moves(std::vector<SlideMove>& dst, const std::vector<SlideMove>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

// Rewrites a cut-model sequence as base-model moves: leaf tokens fold onto
// their end vertex first (a leaf's closed neighborhood lies inside its
// end's), then each end maps to the pivot arc and each image to its base
// arc. Moves that become x -> x vanish.
std::vector<SlideMove> fold_to_base(const UnfoldedGraph& gu, ReconfSequence seq) {
    const Graph& ug = gu.model.graph();
    const int near_count = static_cast<int>(gu.leaves.size()) / 2;
    for (size_t i = 0; i < gu.leaves.size(); ++i) {
        const int host = static_cast<int>(i) < near_count ? gu.end_right_ext : gu.end_left_ext;
        seq = substitute_vertex(ug, seq, gu.leaves[i], host);
    }
    auto to_base = [&](int x) {
        if (x == gu.end_right_ext || x == gu.end_left_ext) return gu.pivot;
        const int b = gu.base_of[x];
        if (b < 0) throw error("internal: leaf token survived folding");
        return b;
    };
    std::vector<SlideMove> out;
    for (const SlideMove& mv : seq.moves) {
        const int f = to_base(mv.from);
        const int t = to_base(mv.to);
        if (f != t) out.push_back(SlideMove{f, t});
    }
    return out;
}

// Folds a cut-model configuration back onto the base model keeping the size:
// image tokens return to their arcs and the end copies become pivot copies,
// one fewer than their count.
TokenConfig collapse_to_base(const UnfoldedGraph& gu, const TokenConfig& e) {
    if (!e.contains(gu.end_right_ext) || !e.contains(gu.end_left_ext))
        throw error("internal: cut-model configuration misses an end vertex");
    std::vector<int> ids;
    int end_copies = 0;
    for (int t : e.ids()) {
        if (t == gu.end_right_ext || t == gu.end_left_ext) {
            ++end_copies;
            continue;
        }
        const int b = gu.base_of[t];
        if (b < 0) throw error("internal: cut-model configuration has a leaf token");
        ids.push_back(b);
    }
    for (int c = 1; c < end_copies; ++c) ids.push_back(gu.pivot);
    return TokenConfig(std::move(ids));
}

struct TokenBfs {
    std::vector<int> parent; // -2 unreachable, -1 the start vertex
};

// Breadth-first search of the moving token's legal positions: a vertex is
// legal when it closes over every vertex the fixed tokens leave undominated.
TokenBfs token_bfs(const Graph& g, const TokenConfig& fixed, int start) {
    g.check_vertex(start, "token");
    for (int v : fixed.ids()) g.check_vertex(v, "token");
    const int n = g.vertex_count();
    std::vector<char> covered(n, 0);
    for (int v : fixed.ids()) {
        covered[v] = 1;
        for (int w : g.neighbors(v)) covered[w] = 1;
    }
    std::vector<int> uncovered;
    for (int v = 0; v < n; ++v)
        if (!covered[v]) uncovered.push_back(v);
    auto legal_at = [&](int x) {
        for (int v : uncovered)
            if (v != x && !g.has_edge(x, v)) return false;
        return true;
    };
    if (!legal_at(start))
        throw invalid_input_error("fixed tokens plus the moving token must dominate");
    TokenBfs out;
    out.parent.assign(n, -2);
    out.parent[start] = -1;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
        const int cur = q.front();
        q.pop();
        for (int w : g.neighbors(cur)) {
            if (out.parent[w] != -2 || !legal_at(w)) continue;
            out.parent[w] = cur;
            q.push(w);
        }
    }
    return out;
}

} // namespace

UnfoldedGraph build_gu(const CircularArcModel& m, int u) {
    if (u < 0 || u >= m.size()) throw invalid_input_error("cut arc out of range");
    if (m.full_arc())
        throw invalid_input_error("cutting requires a model without full-circle arcs");
    if (!is_maximal_arc(m, u)) throw invalid_input_error("cut arc must be inclusion-maximal");

    const long long M = m.circumference();
    const Arc& au = m.arc(u);
    const long long W = pos_mod(au.l - au.r, M);
    auto x = [&](long long p) { return pos_mod(p - au.r, M); };

    UnfoldedGraph g;
    g.base = &m;
    g.pivot = u;
    g.window = W;
    g.image_of.assign(m.size(), -1);

    std::vector<Interval> ivs;
    for (int v = 0; v < m.size(); ++v) {
        if (v == u || m.subseteq(v, u)) continue;
        const Arc& av = m.arc(v);
        const long long xs = m.contains_point(v, au.r) ? 0 : x(av.l);
        const long long xe = m.contains_point(v, au.l) ? W : x(av.r);
        g.image_of[v] = static_cast<int>(ivs.size());
        g.base_of.push_back(v);
        ivs.push_back(Interval{xs, xe});
    }
    g.end_right_ext = static_cast<int>(ivs.size());
    g.base_of.push_back(-1);
    ivs.push_back(Interval{IntervalModel::kNegUnbounded, 0});
    g.end_left_ext = static_cast<int>(ivs.size());
    g.base_of.push_back(-1);
    ivs.push_back(Interval{W, IntervalModel::kPosUnbounded});
    const int leaf_pairs = m.size() + 2; // enough to pin both ends in small dominating sets
    for (int i = 0; i < leaf_pairs; ++i) {
        g.leaves.push_back(static_cast<int>(ivs.size()));
        g.base_of.push_back(-1);
        ivs.push_back(Interval{-2LL * i - 2, -2LL * i - 1});
    }
    for (int i = 0; i < leaf_pairs; ++i) {
        g.leaves.push_back(static_cast<int>(ivs.size()));
        g.base_of.push_back(-1);
        ivs.push_back(Interval{W + 2LL * i + 1, W + 2LL * i + 2});
    }
    g.model = IntervalModel(std::move(ivs));
    return g;
}

TokenConfig lift_config(const UnfoldedGraph& g, const TokenConfig& d) {
    if (g.base == nullptr) throw invalid_input_error("cut model not initialised");
    if (!d.contains(g.pivot))
        throw invalid_input_error("configuration must contain the cut arc");
    if (!is_dominating(g.base->graph(), d))
        throw invalid_input_error("configuration must dominate the base model");
    std::vector<int> ids{g.end_right_ext, g.end_left_ext};
    bool first_pivot = true;
    for (int t : d.ids()) {
        if (t == g.pivot) {
            if (first_pivot) {
                first_pivot = false; // this copy became the two ends
                continue;
            }
            ids.push_back(g.end_left_ext); // extra copies park on the far end
            continue;
        }
        const int img = g.image_of[t];
        if (img < 0)
            throw invalid_input_error("token on arc " + std::to_string(t) +
                                      " which the cut drops");
        ids.push_back(img);
    }
    return TokenConfig(std::move(ids));
}

TokenConfig project_config(const UnfoldedGraph& g, const TokenConfig& x) {
    if (g.base == nullptr) throw invalid_input_error("cut model not initialised");
    if (!is_dominating(g.model.graph(), x))
        throw invalid_input_error("configuration must dominate the cut model");
    if (!x.contains(g.end_right_ext) || !x.contains(g.end_left_ext))
        throw invalid_input_error("configuration must contain both end vertices");
    std::vector<int> ids;
    for (int t : x.ids()) {
        if (t == g.end_right_ext || t == g.end_left_ext) continue;
        const int b = g.base_of[t];
        if (b < 0) throw invalid_input_error("configuration has a token on a leaf");
        ids.push_back(b);
    }
    ids.push_back(g.pivot);
    return TokenConfig(std::move(ids));
}

std::vector<int> single_token_reach(const Graph& g, const TokenConfig& fixed, int start) {
    const TokenBfs b = token_bfs(g, fixed, start);
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (b.parent[v] != -2) out.push_back(v);
    return out;
}

std::optional<std::vector<SlideMove>> single_token_walk(const Graph& g, const TokenConfig& fixed,
                                                        int start, int goal) {
    g.check_vertex(goal, "token");
    const TokenBfs b = token_bfs(g, fixed, start);
    if (b.parent[goal] == -2) return std::nullopt;
    std::vector<SlideMove> moves;
    for (int at = goal; b.parent[at] != -1; at = b.parent[at])
        moves.push_back(SlideMove{b.parent[at], at});
    std::reverse(moves.begin(), moves.end());
    return moves;
}

namespace {

SlidingResult run_sliding(const CircularArcModel& m, const TokenConfig& ds, int u1, int v,
                          bool clockwise, const SlidingOptions& opts) {
    const Graph& g = m.graph();
    if (u1 < 0 || u1 >= m.size()) throw invalid_input_error("start arc out of range");
    if (v < 0 || v >= m.size()) throw invalid_input_error("target arc out of range");
    if (!ds.contains(u1))
        throw invalid_input_error("moving token must start inside the configuration");
    if (!is_dominating(g, ds)) throw invalid_input_error("configuration must dominate");
    if (m.full_arc())
        throw invalid_input_error("sliding requires a model without full-circle arcs");
    for (int t : ds.ids())
        if (!is_maximal_arc(m, t))
            throw invalid_input_error("sliding requires every token on an inclusion-maximal arc");
    if (!is_maximal_arc(m, v)) throw invalid_input_error("target arc must be inclusion-maximal");

    const long long M = m.circumference();
    // Distance from `from` to `w` in the driving direction, by left endpoint.
    auto rank = [&](int from, int w) {
        const long long d = clockwise ? m.arc(w).l - m.arc(from).l : m.arc(from).l - m.arc(w).l;
        return pos_mod(d, M);
    };

    SlidingResult res;
    res.seq.start = ds;
    res.witness_ok = opts.witness;
    auto fail_witness = [&](const std::string& why) {
        if (res.witness_ok) {
            res.witness_ok = false;
            res.note = why;
        }
    };

    const int k = ds.size();
    int token = u1;
    TokenConfig current = ds;
    bool capped = true;
    for (int round = 0; round < m.size(); ++round) {
        if (token == v) {
            capped = false;
            break;
        }
        UnfoldedGraph gu = build_gu(m, token);
        // Park the other tokens so the flank in the driving direction opens up:
        // the extremal set pulls the first vertex on the cut-arc side of the
        // anchor end as far toward that end as a dominating set allows.
        const int anchor = clockwise ? gu.end_left_ext : gu.end_right_ext;
        const Side side = clockwise ? Side::left : Side::right;
        std::optional<TokenConfig> parked = extremal_dominating(gu.model, k + 1, anchor, side);
        if (!parked)
            throw error("internal: no parked dominating set although the lifted configuration "
                        "certifies one");
        if (res.witness_ok) {
            try {
                const TokenConfig lifted = lift_config(gu, current);
                auto path = reconfig_bfs(gu.model.graph(), lifted, *parked, true,
                                         OracleOptions{opts.oracle_state_cap});
                if (path)
                    append_moves(res.seq.moves, fold_to_base(gu, *path));
                else
                    fail_witness("cut-model search found no path between dominating sets");
            } catch (const resource_limit_error& e) {
                fail_witness(std::string("witness search hit its state cap: ") + e.what());
            }
        }
        const NormalizationResult norm = normalize_to_maximal(m, collapse_to_base(gu, *parked));
        if (res.witness_ok) append_moves(res.seq.moves, norm.moves);
        current = norm.config;

        TokenConfig fixed = current;
        fixed.remove_one(token);
        const std::vector<int> reach = single_token_reach(g, fixed, token);
        int next = token;
        if (std::find(reach.begin(), reach.end(), v) != reach.end()) {
            next = v;
        } else {
            const long long limit = rank(token, v);
            long long best = 0;
            for (int w : reach) {
                if (w == token || !is_maximal_arc(m, w)) continue;
                const long long rw = rank(token, w);
                if (rw <= 0 || rw >= limit) continue;
                if (rw > best) {
                    best = rw;
                    next = w;
                }
            }
        }
        if (next == token) {
            res.note = res.note.empty() ? "no further progress from arc " + std::to_string(token)
                                        : res.note;
            capped = false;
            break;
        }
        if (res.witness_ok) {
            auto walk = single_token_walk(g, fixed, token, next);
            if (!walk) throw error("internal: chosen arc left the reachable set");
            append_moves(res.seq.moves, *walk);
        }
        current = fixed;
        current.add(next);
        token = next;
    }
    if (capped && token != v && res.note.empty())
        res.note = "iteration cap reached before settling";
    res.final_vertex = token;
    res.final_config = current;
    if (!res.witness_ok) res.seq.moves.clear();
    return res;
}

// Appends the witness segments for a successful drive: normalization of the
// start, the drive itself, a final rearrangement inside the cut model at the
// meeting arc, and the reversed normalization of the target.
void assemble_witness(DecideResult& res, const CircularArcModel& m, const TokenConfig& ds,
                      const TokenConfig& dt, const NormalizationResult& ns,
                      const NormalizationResult& nt, const SlidingResult& drive, int meet,
                      const DecideOptions& opts) {
    if (!drive.witness_ok) {
        res.note = drive.note.empty() ? "witness incomplete" : drive.note;
        return;
    }
    std::vector<SlideMove> moves = ns.moves;
    append_moves(moves, drive.seq.moves);
    if (drive.final_config != nt.config) {
        const UnfoldedGraph gv = build_gu(m, meet);
        const TokenConfig a = lift_config(gv, drive.final_config);
        const TokenConfig b = lift_config(gv, nt.config);
        try {
            auto path =
                reconfig_bfs(gv.model.graph(), a, b, true, OracleOptions{opts.oracle_state_cap});
            if (!path) {
                res.note = "final cut-model search found no path";
                return;
            }
            append_moves(moves, fold_to_base(gv, *path));
        } catch (const resource_limit_error& e) {
            res.note = std::string("witness search hit its state cap: ") + e.what();
            return;
        }
    }
    append_moves(moves, reversed_moves(nt.moves));
    ReconfSequence seq{ds, std::move(moves)};
    const ValidationResult vr = validate_sequence(m.graph(), seq, dt, true);
    if (vr.ok)
        res.witness = std::move(seq);
    else
        res.note = "assembled witness failed validation: " + vr.message;
}

} // namespace

SlidingResult right_sliding(const CircularArcModel& m, const TokenConfig& ds, int u1, int v,
                            const SlidingOptions& opts) {
    return run_sliding(m, ds, u1, v, true, opts);
}

SlidingResult left_sliding(const CircularArcModel& m, const TokenConfig& ds, int u1, int v,
                           const SlidingOptions& opts) {
    return run_sliding(m, ds, u1, v, false, opts);
}

ReconfSequence full_circle_witness(const CircularArcModel& m, const TokenConfig& ds,
                                   const TokenConfig& dt, int w) {
    if (w < 0 || w >= m.size()) throw invalid_input_error("anchor arc out of range");
    if (!m.arc(w).full) throw invalid_input_error("anchor arc must cover the whole circle");
    if (ds.size() != dt.size()) throw invalid_input_error("configuration sizes differ");
    const Graph& g = m.graph();
    if (!is_dominating(g, ds) || !is_dominating(g, dt))
        throw invalid_input_error("both configurations must dominate the model");

    ReconfSequence seq;
    seq.start = ds;
    if (ds == dt) return seq;

    TokenConfig cur = ds;
    if (!cur.contains(w)) {
        const int x0 = cur.ids().front();
        seq.moves.push_back(SlideMove{x0, w});
        cur.remove_one(x0);
        cur.add(w);
    }
    // One token stays anchored on w until the very end, so every intermediate
    // configuration dominates. The rest ferry through w pairwise.
    const int y_last = dt.contains(w) ? w : dt.ids().front();
    TokenConfig rest_cur = cur;
    rest_cur.remove_one(w);
    TokenConfig rest_dt = dt;
    rest_dt.remove_one(y_last);
    const TokenConfig surplus = multiset_difference(rest_cur, rest_dt);
    const TokenConfig need = multiset_difference(rest_dt, rest_cur);
    for (int i = 0; i < surplus.size(); ++i) {
        const int x = surplus.ids()[i];
        const int y = need.ids()[i];
        if (x != w) seq.moves.push_back(SlideMove{x, w});
        if (y != w) seq.moves.push_back(SlideMove{w, y});
    }
    if (y_last != w) seq.moves.push_back(SlideMove{w, y_last});
    return seq;
}

DecideResult decide_carc(const CircularArcModel& m, const TokenConfig& ds, const TokenConfig& dt,
                         const DecideOptions& opts) {
    const Graph& g = m.graph();
    if (!is_dominating(g, ds) || !is_dominating(g, dt))
        throw invalid_input_error("both configurations must dominate the model");
    DecideResult res;
    if (ds.size() != dt.size()) {
        res.note = "configuration sizes differ";
        return res;
    }
    if (!is_connected(g))
        throw invalid_input_error("the model's intersection graph is disconnected");

    if (const auto full = m.full_arc()) {
        res.reachable = true;
        ReconfSequence w = full_circle_witness(m, ds, dt, *full);
        const ValidationResult vr = validate_sequence(g, w, dt, true);
        if (vr.ok)
            res.witness = std::move(w);
        else
            res.note = "witness construction failed validation: " + vr.message;
        return res;
    }

    if (const auto cut = m.uncovered_point_doubled()) {
        // Cut the circle at an uncovered point; arcs become plain intervals
        // with the same intersection graph.
        const long long m2 = 2 * m.circumference();
        std::vector<Interval> ivs;
        ivs.reserve(m.size());
        for (int i = 0; i < m.size(); ++i) {
            const Arc& a = m.arc(i);
            ivs.push_back(Interval{pos_mod(2 * a.l - *cut, m2), pos_mod(2 * a.r - *cut, m2)});
        }
        const IntervalModel im(std::move(ivs));
        std::string diag;
        res.reachable = interval_ts_reachable(im, ds, dt, &diag);
        if (!res.reachable) {
            res.note = diag;
        } else if (opts.witness) {
            try {
                auto w = reconfig_bfs(g, ds, dt, true, OracleOptions{opts.oracle_state_cap});
                if (w)
                    res.witness = std::move(*w);
                else
                    res.note = "no witness found despite reachability guarantee";
            } catch (const resource_limit_error& e) {
                res.note = std::string("witness search skipped: ") + e.what();
            }
        }
        return res;
    }

    const NormalizationResult ns = normalize_to_maximal(m, ds);
    const NormalizationResult nt = normalize_to_maximal(m, dt);
    if (ns.config == nt.config) {
        res.reachable = true;
        if (opts.witness) {
            std::vector<SlideMove> moves = ns.moves;
            append_moves(moves, reversed_moves(nt.moves));
            ReconfSequence seq{ds, std::move(moves)};
            const ValidationResult vr = validate_sequence(g, seq, dt, true);
            if (vr.ok)
                res.witness = std::move(seq);
            else
                res.note = "assembled witness failed validation: " + vr.message;
        }
        return res;
    }

    const long long M = m.circumference();
    int u1 = -1;
    {
        int prev = -1;
        for (int t : ns.config.ids()) {
            if (t == prev) continue;
            prev = t;
            if (u1 == -1 || m.arc(t).l < m.arc(u1).l) u1 = t;
        }
    }
    int v_cw = -1, v_ccw = -1;
    long long best_cw = 0, best_ccw = 0;
    {
        int prev = -1;
        for (int t : nt.config.ids()) {
            if (t == prev) continue;
            prev = t;
            const long long cw = pos_mod(m.arc(t).l - m.arc(u1).l, M);
            const long long ccw = pos_mod(m.arc(u1).l - m.arc(t).l, M);
            if (v_cw == -1 || cw < best_cw) {
                v_cw = t;
                best_cw = cw;
            }
            if (v_ccw == -1 || ccw < best_ccw) {
                v_ccw = t;
                best_ccw = ccw;
            }
        }
    }

    const SlidingOptions sopts{opts.witness, opts.oracle_state_cap};
    const SlidingResult right = right_sliding(m, ns.config, u1, v_cw, sopts);
    if (right.final_vertex == v_cw) {
        res.reachable = true;
        if (opts.witness) assemble_witness(res, m, ds, dt, ns, nt, right, v_cw, opts);
        return res;
    }
    const SlidingResult left = left_sliding(m, ns.config, u1, v_ccw, sopts);
    if (left.final_vertex == v_ccw) {
        res.reachable = true;
        if (opts.witness) assemble_witness(res, m, ds, dt, ns, nt, left, v_ccw, opts);
        return res;
    }
    res.reachable = false;
    res.note = "clockwise drive parked at arc " + std::to_string(right.final_vertex) +
               " short of arc " + std::to_string(v_cw) + "; counterclockwise drive parked at arc " +
               std::to_string(left.final_vertex) + " short of arc " + std::to_string(v_ccw);
    return res;
}

} // namespace dsr
