#include "dsr/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <queue>

#include "dsr/errors.hpp"

namespace dsr {

namespace {

std::string num(long long x) { return std::to_string(x); }

// Sign of variable `var` in clause j: 1 positive, -1 negative, 0 absent.
int occurrence_sign(const CnfFormula& f, int var, int j) {
    for (const Literal& lit : f.clauses[j])
        if (lit.var == var) return lit.positive ? 1 : -1;
    return 0;
}

bool is_gadget_role(IntervalRole r) {
    switch (r) {
    case IntervalRole::base:
    case IntervalRole::bridge_pos:
    case IntervalRole::bridge_neg:
    case IntervalRole::occ_t:
    case IntervalRole::occ_u:
    case IntervalRole::occ_v:
    case IntervalRole::occ_w:
    case IntervalRole::occ_tb:
    case IntervalRole::occ_ub:
    case IntervalRole::occ_vb:
    case IntervalRole::occ_wb:
        return true;
    default:
        return false;
    }
}

struct LayoutBuilder {
    SymbolicLine line;
    std::vector<std::pair<LineHandle, LineHandle>> pts;
    std::vector<VertexInfo> infos;

    int add(LineHandle a, LineHandle b, VertexInfo info) {
        const int id = static_cast<int>(pts.size());
        pts.emplace_back(a, b);
        infos.push_back(std::move(info));
        return id;
    }
};

} // namespace

int ReductionLayout::id(const std::string& label) const {
    const auto it = registry.find(label);
    if (it == registry.end())
        throw invalid_input_error("unknown interval label '" + label + "'");
    return it->second;
}

bool StructureReport::all_ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

CnfFormula pad_clauses(const CnfFormula& f) {
    validate_formula(f);
    CnfFormula out = f;
    const int copies = 4 / std::gcd(f.clause_count(), 4);
    for (int c = 1; c < copies; ++c)
        out.clauses.insert(out.clauses.end(), f.clauses.begin(), f.clauses.end());
    return out;
}

ReductionLayout build_reduction(const CnfFormula& f, long long pending_count) {
    validate_formula(f);
    const int n = f.variable_count;
    const int m = f.clause_count();
    if (m % 4 != 0)
        throw invalid_input_error("clause count must be divisible by four (pad the formula first)");

    ReductionLayout l;
    l.formula = f;
    l.n = n;
    l.m = m;
    l.ell.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (occurrence_sign(f, i, j) != 0) ++l.ell[i];
    for (int i = 0; i < n; ++i)
        if (l.ell[i] == 0)
            throw invalid_input_error("variable " + num(i + 1) +
                                      " occurs in no clause; its gadget would be disconnected");
    long long sum_ell = 0;
    for (int e : l.ell) sum_ell += e;
    l.k_tokens = 3LL * m * n / 2 + 3 * sum_ell + 1;
    const long long default_pending = 6LL * m * n;
    l.pending_count = pending_count < 0 ? default_pending : pending_count;
    if (l.pending_count <= l.k_tokens)
        throw invalid_input_error("pending count must exceed the token count " +
                                  num(l.k_tokens));
    if (pending_count >= 0 && l.pending_count != default_pending)
        std::cerr << "warning: pending count " << l.pending_count << " overrides the default "
                  << default_pending << "; the guard arguments assume a large value\n";

    LayoutBuilder b;
    const int q = m / 4;

    // Backbone bases: one block of m disjoint segments per variable, then the
    // clause segments; everything else is placed relative to these.
    std::vector<std::vector<LineHandle>> bl(n), br(n);
    l.base_id.assign(n, std::vector<int>(m, -1));
    for (int i = 0; i < n; ++i) {
        bl[i].resize(m);
        br[i].resize(m);
        for (int j = 0; j < m; ++j) {
            bl[i][j] = b.line.append();
            br[i][j] = b.line.append();
            l.base_id[i][j] = b.add(
                bl[i][j], br[i][j],
                VertexInfo{IntervalRole::base, i, j, -1, "B_" + num(i + 1) + "_" + num(j + 1)});
        }
    }

    // Bridges. Negative ones hug the left ends of their two bases, positive
    // ones the right ends; each base hosts exactly one endpoint of each sign.
    std::vector<std::vector<LineHandle>> pos_pt(n), neg_pt(n);
    std::vector<std::vector<int>> pos_pt_bridge(n), neg_pt_bridge(n);
    l.bridge_pos_id.assign(n, std::vector<int>(m / 2, -1));
    l.bridge_neg_id.assign(n, std::vector<int>(m / 2, -1));
    for (int i = 0; i < n; ++i) {
        pos_pt[i].resize(m);
        neg_pt[i].resize(m);
        pos_pt_bridge[i].assign(m, -1);
        neg_pt_bridge[i].assign(m, -1);
        auto set_neg = [&](int base, LineHandle h, int bridge) {
            neg_pt[i][base] = h;
            neg_pt_bridge[i][base] = bridge;
        };
        auto set_pos = [&](int base, LineHandle h, int bridge) {
            pos_pt[i][base] = h;
            pos_pt_bridge[i][base] = bridge;
        };
        for (int r = 0; r < q; ++r) {
            const LineHandle a1 = b.line.insert_right(bl[i][4 * r]);
            const LineHandle b1 = b.line.insert_right(bl[i][4 * r + 2]);
            const int x1 = b.add(a1, b1,
                                 VertexInfo{IntervalRole::bridge_neg, i, -1, -1,
                                            "XB_" + num(i + 1) + "_" + num(2 * r + 1)});
            l.bridge_neg_id[i][2 * r] = x1;
            set_neg(4 * r, a1, x1);
            set_neg(4 * r + 2, b1, x1);
            const LineHandle a2 = b.line.insert_right(bl[i][4 * r + 1]);
            const LineHandle b2 = b.line.insert_right(bl[i][4 * r + 3]);
            const int x2 = b.add(a2, b2,
                                 VertexInfo{IntervalRole::bridge_neg, i, -1, -1,
                                            "XB_" + num(i + 1) + "_" + num(2 * r + 2)});
            l.bridge_neg_id[i][2 * r + 1] = x2;
            set_neg(4 * r + 1, a2, x2);
            set_neg(4 * r + 3, b2, x2);
        }
        {
            const LineHandle a = b.line.insert_left(br[i][0]);
            const LineHandle c = b.line.insert_left(br[i][1]);
            const int x = b.add(
                a, c, VertexInfo{IntervalRole::bridge_pos, i, -1, -1, "X_" + num(i + 1) + "_1"});
            l.bridge_pos_id[i][0] = x;
            set_pos(0, a, x);
            set_pos(1, c, x);
        }
        for (int r = 1; r < q; ++r) {
            const LineHandle a = b.line.insert_left(br[i][4 * r - 2]);
            const LineHandle c = b.line.insert_left(br[i][4 * r]);
            const int x = b.add(a, c,
                                VertexInfo{IntervalRole::bridge_pos, i, -1, -1,
                                           "X_" + num(i + 1) + "_" + num(2 * r)});
            l.bridge_pos_id[i][2 * r - 1] = x;
            set_pos(4 * r - 2, a, x);
            set_pos(4 * r, c, x);
            const LineHandle a2 = b.line.insert_left(br[i][4 * r - 1]);
            const LineHandle c2 = b.line.insert_left(br[i][4 * r + 1]);
            const int x2 = b.add(a2, c2,
                                 VertexInfo{IntervalRole::bridge_pos, i, -1, -1,
                                            "X_" + num(i + 1) + "_" + num(2 * r + 1)});
            l.bridge_pos_id[i][2 * r] = x2;
            set_pos(4 * r - 1, a2, x2);
            set_pos(4 * r + 1, c2, x2);
        }
        {
            const LineHandle a = b.line.insert_left(br[i][m - 2]);
            const LineHandle c = b.line.insert_left(br[i][m - 1]);
            const int x = b.add(a, c,
                                VertexInfo{IntervalRole::bridge_pos, i, -1, -1,
                                           "X_" + num(i + 1) + "_" + num(m / 2)});
            l.bridge_pos_id[i][m / 2 - 1] = x;
            set_pos(m - 2, a, x);
            set_pos(m - 1, c, x);
        }
    }

    // Clause segments, to the right of every variable block. Each clause has
    // an identical twin (identical chords never cross) and a single shared
    // anchor point that every W of the clause ends on.
    std::vector<LineHandle> cl(m), ca(m), cr(m);
    l.clause_id.assign(m, -1);
    l.clause_twin_id.assign(m, -1);
    for (int j = 0; j < m; ++j) {
        cl[j] = b.line.append();
        ca[j] = b.line.append();
        cr[j] = b.line.append();
        l.clause_id[j] =
            b.add(cl[j], cr[j], VertexInfo{IntervalRole::clause, -1, j, -1, "C_" + num(j + 1)});
        l.clause_twin_id[j] = b.add(
            cl[j], cr[j], VertexInfo{IntervalRole::clause_twin, -1, j, -1, "CP_" + num(j + 1)});
    }

    // Occurrence paths B-T-U-V-W-C. T clips onto its base around the matching
    // bridge endpoint, U runs from T into the gap after the variable block
    // (later clauses reach further), V frames U's end, and W runs from just
    // before V's end to the clause anchor.
    auto init_ids = [&](std::vector<std::vector<int>>& v) {
        v.assign(n, std::vector<int>(m, -1));
    };
    init_ids(l.t_id);
    init_ids(l.u_id);
    init_ids(l.v_id);
    init_ids(l.w_id);
    init_ids(l.tb_id);
    init_ids(l.ub_id);
    init_ids(l.vb_id);
    init_ids(l.wb_id);
    init_ids(l.t_bridge);
    for (int i = 0; i < n; ++i) {
        auto gap = [&]() { return b.line.insert_left(i + 1 < n ? bl[i + 1][0] : cl[0]); };
        for (int j = 0; j < m; ++j) {
            const int sign = occurrence_sign(f, i, j);
            if (sign == 0) continue;
            const std::string suffix = "_" + num(i + 1) + "_" + num(j + 1);
            if (sign > 0) {
                const auto [tl, tr] = b.line.frame({pos_pt[i][j], br[i][j]});
                l.t_id[i][j] =
                    b.add(tl, tr, VertexInfo{IntervalRole::occ_t, i, j, -1, "T" + suffix});
                l.t_bridge[i][j] = pos_pt_bridge[i][j];
                const LineHandle ul = b.line.insert_left(tr);
                const LineHandle ur = gap();
                l.u_id[i][j] =
                    b.add(ul, ur, VertexInfo{IntervalRole::occ_u, i, j, -1, "U" + suffix});
                const auto [vl, vr] = b.line.frame({ur});
                l.v_id[i][j] =
                    b.add(vl, vr, VertexInfo{IntervalRole::occ_v, i, j, -1, "V" + suffix});
                const LineHandle wl = b.line.insert_left(vr);
                l.w_id[i][j] =
                    b.add(wl, ca[j], VertexInfo{IntervalRole::occ_w, i, j, -1, "W" + suffix});
            } else {
                const auto [tl, tr] = b.line.frame({bl[i][j], neg_pt[i][j]});
                l.tb_id[i][j] =
                    b.add(tl, tr, VertexInfo{IntervalRole::occ_tb, i, j, -1, "TB" + suffix});
                l.t_bridge[i][j] = neg_pt_bridge[i][j];
                const LineHandle ul = b.line.insert_right(tl);
                const LineHandle ur = gap();
                l.ub_id[i][j] =
                    b.add(ul, ur, VertexInfo{IntervalRole::occ_ub, i, j, -1, "UB" + suffix});
                const auto [vl, vr] = b.line.frame({ur});
                l.vb_id[i][j] =
                    b.add(vl, vr, VertexInfo{IntervalRole::occ_vb, i, j, -1, "VB" + suffix});
                const LineHandle wl = b.line.insert_left(vr);
                l.wb_id[i][j] =
                    b.add(wl, ca[j], VertexInfo{IntervalRole::occ_wb, i, j, -1, "WB" + suffix});
            }
        }
    }

    // Dead-ends: a tight frame around the left endpoint of every bridge and
    // every U and W, crossing only its host.
    for (int i = 0; i < n; ++i) {
        auto host_dead_end = [&](int host) {
            const LineHandle host_l = b.pts[host].first;
            const auto [dl, dr] = b.line.frame({host_l});
            const int de = b.add(dl, dr,
                                 VertexInfo{IntervalRole::dead_end, b.infos[host].var,
                                            b.infos[host].clause, host,
                                            "DE_" + b.infos[host].label});
            l.dead_end_ids.push_back(de);
        };
        for (int jj = 0; jj < m / 2; ++jj) host_dead_end(l.bridge_neg_id[i][jj]);
        for (int jj = 0; jj < m / 2; ++jj) host_dead_end(l.bridge_pos_id[i][jj]);
        for (int j = 0; j < m; ++j) {
            const int sign = occurrence_sign(f, i, j);
            if (sign == 0) continue;
            if (sign > 0) {
                host_dead_end(l.u_id[i][j]);
                host_dead_end(l.w_id[i][j]);
            } else {
                host_dead_end(l.ub_id[i][j]);
                host_dead_end(l.wb_id[i][j]);
            }
        }
    }

    // Pendings: nested frames around each dead-end's left endpoint; every one
    // crosses its dead-end and nothing else, pinning a token there.
    for (const int de : l.dead_end_ids) {
        const LineHandle de_l = b.pts[de].first;
        std::vector<int> ps;
        ps.reserve(static_cast<size_t>(l.pending_count));
        const std::string host_label = b.infos[b.infos[de].host].label;
        for (long long t = 1; t <= l.pending_count; ++t) {
            const auto [pl, pr] = b.line.frame({de_l});
            ps.push_back(b.add(pl, pr,
                               VertexInfo{IntervalRole::pending, b.infos[de].var,
                                          b.infos[de].clause, de,
                                          "P_" + host_label + "_" + num(t)}));
        }
        l.pending_ids.push_back(std::move(ps));
    }

    // The junction spans all clause segments and crosses exactly the W's.
    {
        const auto [jl, jr] = b.line.frame({cl[0], cr[m - 1]});
        l.junction_id = b.add(jl, jr, VertexInfo{IntervalRole::junction, -1, -1, -1, "J"});
    }

    b.line.finalize();
    std::vector<Chord> chords;
    chords.reserve(b.pts.size());
    for (const auto& [a, c] : b.pts) {
        long long x = b.line.coordinate(a);
        long long y = b.line.coordinate(c);
        if (x > y) std::swap(x, y);
        chords.push_back(Chord{x, y});
    }
    l.chords = ChordModel(std::move(chords));
    l.graph = l.chords.build_graph();
    l.vertices = std::move(b.infos);
    for (int id = 0; id < static_cast<int>(l.vertices.size()); ++id)
        if (!l.registry.emplace(l.vertices[id].label, id).second)
            throw error("internal: duplicate interval label " + l.vertices[id].label);
    return l;
}

StructureReport verify_structure(const ReductionLayout& l) {
    StructureReport rep;
    const Graph& g = l.graph;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        rep.checks.push_back(StructureCheck{name, ok, ok ? "" : detail});
    };
    long long sum_ell = 0;
    for (int e : l.ell) sum_ell += e;

    {
        long long bases = 0, bpos = 0, bneg = 0, cls = 0, twins = 0, occ = 0, des = 0, pend = 0,
                  junc = 0;
        for (const auto& info : l.vertices) {
            switch (info.role) {
            case IntervalRole::base: ++bases; break;
            case IntervalRole::bridge_pos: ++bpos; break;
            case IntervalRole::bridge_neg: ++bneg; break;
            case IntervalRole::clause: ++cls; break;
            case IntervalRole::clause_twin: ++twins; break;
            case IntervalRole::dead_end: ++des; break;
            case IntervalRole::pending: ++pend; break;
            case IntervalRole::junction: ++junc; break;
            default: ++occ; break;
            }
        }
        const long long want_des = 1LL * l.n * l.m + 2 * sum_ell;
        const bool ok = bases == 1LL * l.n * l.m && bpos == 1LL * l.n * l.m / 2 &&
                        bneg == 1LL * l.n * l.m / 2 && cls == l.m && twins == l.m &&
                        occ == 4 * sum_ell && des == want_des &&
                        pend == want_des * l.pending_count && junc == 1;
        add("family-counts", ok,
            "bases " + num(bases) + ", bridges " + num(bpos) + "+" + num(bneg) + ", clauses " +
                num(cls) + "+" + num(twins) + ", paths " + num(occ) + ", dead-ends " + num(des) +
                ", pendings " + num(pend) + ", junctions " + num(junc));
    }

    {
        bool ok = true;
        std::string detail;
        std::vector<int> all_bases;
        for (const auto& row : l.base_id)
            for (int id : row) all_bases.push_back(id);
        for (size_t a = 0; a < all_bases.size() && ok; ++a)
            for (size_t c = a + 1; c < all_bases.size() && ok; ++c)
                if (g.has_edge(all_bases[a], all_bases[c])) {
                    ok = false;
                    detail = l.vertices[all_bases[a]].label + " crosses " +
                             l.vertices[all_bases[c]].label;
                }
        add("base-pairwise-nonadjacent", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < l.n && ok; ++i) {
            for (int j = 0; j < l.m && ok; ++j) {
                int pos = 0, neg = 0;
                for (int w : g.neighbors(l.base_id[i][j])) {
                    if (l.vertices[w].role == IntervalRole::bridge_pos) ++pos;
                    if (l.vertices[w].role == IntervalRole::bridge_neg) ++neg;
                }
                if (pos != 1 || neg != 1) {
                    ok = false;
                    detail = l.vertices[l.base_id[i][j]].label + " touches " + num(pos) +
                             " positive and " + num(neg) + " negative bridges";
                }
            }
            for (int jj = 0; jj < l.m / 2 && ok; ++jj) {
                for (int bridge : {l.bridge_pos_id[i][jj], l.bridge_neg_id[i][jj]}) {
                    int bases = 0;
                    for (int w : g.neighbors(bridge))
                        if (l.vertices[w].role == IntervalRole::base) ++bases;
                    if (bases != 2) {
                        ok = false;
                        detail = l.vertices[bridge].label + " crosses " + num(bases) + " bases";
                    }
                }
            }
        }
        add("base-bridge-incidence", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < l.n && ok; ++i)
            for (int jj = 0; jj + 1 < l.m / 2 && ok; ++jj)
                if (!g.has_edge(l.bridge_pos_id[i][jj], l.bridge_neg_id[i][jj + 1])) {
                    ok = false;
                    detail = l.vertices[l.bridge_pos_id[i][jj]].label + " misses " +
                             l.vertices[l.bridge_neg_id[i][jj + 1]].label;
                }
        add("bridge-chain", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < l.n && ok; ++i) {
            for (int j = 0; j < l.m && ok; ++j) {
                const int sign = occurrence_sign(l.formula, i, j);
                if (sign == 0) continue;
                const int bb = l.base_id[i][j];
                const int t = sign > 0 ? l.t_id[i][j] : l.tb_id[i][j];
                const int u = sign > 0 ? l.u_id[i][j] : l.ub_id[i][j];
                const int v = sign > 0 ? l.v_id[i][j] : l.vb_id[i][j];
                const int w = sign > 0 ? l.w_id[i][j] : l.wb_id[i][j];
                const int c = l.clause_id[j];
                const int path[6] = {bb, t, u, v, w, c};
                for (int a = 0; a < 6 && ok; ++a)
                    for (int d = a + 1; d < 6 && ok; ++d) {
                        const bool want = d == a + 1;
                        if (g.has_edge(path[a], path[d]) != want) {
                            ok = false;
                            detail = l.vertices[path[a]].label + (want ? " misses " : " crosses ") +
                                     l.vertices[path[d]].label;
                        }
                    }
            }
        }
        add("occurrence-paths", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < l.n && ok; ++i)
            for (int j = 0; j < l.m && ok; ++j) {
                const int sign = occurrence_sign(l.formula, i, j);
                if (sign == 0) continue;
                const int v = sign > 0 ? l.v_id[i][j] : l.vb_id[i][j];
                const int u = sign > 0 ? l.u_id[i][j] : l.ub_id[i][j];
                const int w = sign > 0 ? l.w_id[i][j] : l.wb_id[i][j];
                std::vector<int> want{u, w};
                std::sort(want.begin(), want.end());
                if (g.neighbors(v) != want) {
                    ok = false;
                    detail = l.vertices[v].label + " has " + num(g.degree(v)) + " neighbors";
                }
            }
        add("v-neighborhood", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < l.n && ok; ++i)
            for (int j = 0; j < l.m && ok; ++j) {
                const int sign = occurrence_sign(l.formula, i, j);
                if (sign == 0) continue;
                const int t = sign > 0 ? l.t_id[i][j] : l.tb_id[i][j];
                const int u = sign > 0 ? l.u_id[i][j] : l.ub_id[i][j];
                std::vector<int> want{l.base_id[i][j], u, l.t_bridge[i][j]};
                std::sort(want.begin(), want.end());
                std::vector<int> have;
                for (int x : g.neighbors(t))
                    if (l.vertices[x].role != IntervalRole::dead_end &&
                        l.vertices[x].role != IntervalRole::pending)
                        have.push_back(x);
                if (have != want) {
                    ok = false;
                    detail = l.vertices[t].label + " has unexpected neighbors";
                }
            }
        add("t-neighborhood", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (int j = 0; j < l.m && ok; ++j) {
            std::vector<int> want;
            for (int i = 0; i < l.n; ++i) {
                if (l.w_id[i][j] != -1) want.push_back(l.w_id[i][j]);
                if (l.wb_id[i][j] != -1) want.push_back(l.wb_id[i][j]);
            }
            std::sort(want.begin(), want.end());
            for (int c : {l.clause_id[j], l.clause_twin_id[j]})
                if (g.neighbors(c) != want) {
                    ok = false;
                    detail = l.vertices[c].label + " neighborhood differs from its W set";
                }
        }
        add("clause-neighborhood", ok, detail);
    }

    {
        std::vector<int> want;
        for (int i = 0; i < l.n; ++i)
            for (int j = 0; j < l.m; ++j) {
                if (l.w_id[i][j] != -1) want.push_back(l.w_id[i][j]);
                if (l.wb_id[i][j] != -1) want.push_back(l.wb_id[i][j]);
            }
        std::sort(want.begin(), want.end());
        const bool ok = g.neighbors(l.junction_id) == want;
        add("junction-neighborhood", ok,
            "junction degree " + num(g.degree(l.junction_id)) + ", expected " +
                num(static_cast<long long>(want.size())));
    }

    {
        bool ok = true;
        std::string detail;
        for (size_t idx = 0; idx < l.dead_end_ids.size() && ok; ++idx) {
            const int de = l.dead_end_ids[idx];
            std::vector<int> want = l.pending_ids[idx];
            want.push_back(l.vertices[de].host);
            std::sort(want.begin(), want.end());
            if (g.neighbors(de) != want) {
                ok = false;
                detail = l.vertices[de].label + " neighborhood differs (degree " +
                         num(g.degree(de)) + ", expected " +
                         num(static_cast<long long>(want.size())) + ")";
            }
        }
        add("dead-end-neighborhood", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (size_t idx = 0; idx < l.pending_ids.size() && ok; ++idx)
            for (const int p : l.pending_ids[idx]) {
                const auto& nb = g.neighbors(p);
                if (nb.size() != 1 || nb[0] != l.dead_end_ids[idx]) {
                    ok = false;
                    detail = l.vertices[p].label + " is not a leaf on its dead-end";
                    break;
                }
            }
        add("pending-leaves", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        std::vector<int> scoped; // variable-owned intervals that must stay inside their block
        for (int id = 0; id < static_cast<int>(l.vertices.size()); ++id) {
            const IntervalRole r = l.vertices[id].role;
            if (r == IntervalRole::base || r == IntervalRole::bridge_pos ||
                r == IntervalRole::bridge_neg || r == IntervalRole::occ_t ||
                r == IntervalRole::occ_u || r == IntervalRole::occ_v ||
                r == IntervalRole::occ_tb || r == IntervalRole::occ_ub ||
                r == IntervalRole::occ_vb)
                scoped.push_back(id);
        }
        for (size_t a = 0; a < scoped.size() && ok; ++a)
            for (size_t c = a + 1; c < scoped.size() && ok; ++c) {
                if (l.vertices[scoped[a]].var == l.vertices[scoped[c]].var) continue;
                if (g.has_edge(scoped[a], scoped[c])) {
                    ok = false;
                    detail = l.vertices[scoped[a]].label + " crosses " +
                             l.vertices[scoped[c]].label;
                }
            }
        add("cross-variable-isolation", ok, detail);
    }

    add("connected", is_connected(g), "layout graph splits into several components");
    return rep;
}

TokenConfig df_assignment(const ReductionLayout& l, const Assignment& a) {
    if (a.size() != l.n)
        throw invalid_input_error("assignment length " + num(a.size()) +
                                  " does not match variable count " + num(l.n));
    std::vector<int> ids;
    ids.reserve(static_cast<size_t>(l.k_tokens));
    ids.push_back(l.junction_id);
    for (int de : l.dead_end_ids) ids.push_back(de);
    for (int i = 0; i < l.n; ++i) {
        const auto& bridges = a.value(i) ? l.bridge_pos_id[i] : l.bridge_neg_id[i];
        for (int x : bridges) ids.push_back(x);
        for (int j = 0; j < l.m; ++j) {
            const int sign = occurrence_sign(l.formula, i, j);
            if (sign == 0) continue;
            if (sign > 0)
                ids.push_back(a.value(i) ? l.w_id[i][j] : l.u_id[i][j]);
            else
                ids.push_back(a.value(i) ? l.ub_id[i][j] : l.wb_id[i][j]);
        }
    }
    return TokenConfig(std::move(ids));
}

SatrInstance satr_to_dsr(const CnfFormula& f, const Assignment& as, const Assignment& at,
                         long long pending_count) {
    validate_formula(f);
    if (!satisfies(f, as))
        throw invalid_input_error("start assignment does not satisfy the formula");
    if (!satisfies(f, at))
        throw invalid_input_error("target assignment does not satisfy the formula");
    SatrInstance inst;
    inst.layout = build_reduction(pad_clauses(f), pending_count);
    inst.ds = df_assignment(inst.layout, as);
    inst.dt = df_assignment(inst.layout, at);
    return inst;
}

namespace {

// Shortest slide path between two intervals of one variable's gadget (plus
// the junction); staying inside the gadget keeps the other variables' token
// counts settled mid-flip.
std::vector<SlideMove> gadget_path(const ReductionLayout& l, int var, int s, int t) {
    const Graph& g = l.graph;
    std::vector<char> allowed(g.vertex_count(), 0);
    for (int id = 0; id < g.vertex_count(); ++id)
        if (is_gadget_role(l.vertices[id].role) && l.vertices[id].var == var) allowed[id] = 1;
    allowed[l.junction_id] = 1;
    std::vector<int> parent(g.vertex_count(), -2);
    parent[s] = -1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && parent[t] == -2) {
        const int cur = q.front();
        q.pop();
        for (int w : g.neighbors(cur)) {
            if (!allowed[w] || parent[w] != -2) continue;
            parent[w] = cur;
            q.push(w);
        }
    }
    if (parent[t] == -2)
        throw error("internal: no path between " + l.vertices[s].label + " and " +
                    l.vertices[t].label + " inside the gadget");
    std::vector<SlideMove> moves;
    for (int at = t; parent[at] != -1; at = parent[at])
        moves.push_back(SlideMove{parent[at], at});
    std::reverse(moves.begin(), moves.end());
    return moves;
}

// Move list taking the canonical configuration of any satisfying assignment
// with `var` true to the one with `var` false: the junction token rides down
// to the first negative bridge, W tokens retreat to U, bridge tokens shift
// one slot onto the negative side, UB tokens advance to WB, and the last
// positive bridge token rides back up to the junction.
std::vector<SlideMove> flip_down_moves(const ReductionLayout& l, int var) {
    std::vector<SlideMove> moves = gadget_path(l, var, l.junction_id, l.bridge_neg_id[var][0]);
    for (int j = 0; j < l.m; ++j) {
        if (occurrence_sign(l.formula, var, j) <= 0) continue;
        moves.push_back(SlideMove{l.w_id[var][j], l.v_id[var][j]});
        moves.push_back(SlideMove{l.v_id[var][j], l.u_id[var][j]});
    }
    for (int jj = 0; jj + 1 < l.m / 2; ++jj)
        moves.push_back(SlideMove{l.bridge_pos_id[var][jj], l.bridge_neg_id[var][jj + 1]});
    for (int j = 0; j < l.m; ++j) {
        if (occurrence_sign(l.formula, var, j) >= 0) continue;
        moves.push_back(SlideMove{l.ub_id[var][j], l.vb_id[var][j]});
        moves.push_back(SlideMove{l.vb_id[var][j], l.wb_id[var][j]});
    }
    const auto back = gadget_path(l, var, l.bridge_pos_id[var][l.m / 2 - 1], l.junction_id);
    moves.insert(moves.end(), back.begin(), back.end());
    return moves;
}

} // namespace

std::vector<SlideMove> flip_sequence(const ReductionLayout& l, const Assignment& a, int var,
                                     bool to_value) {
    if (a.size() != l.n)
        throw invalid_input_error("assignment length " + num(a.size()) +
                                  " does not match variable count " + num(l.n));
    if (var < 0 || var >= l.n) throw invalid_input_error("variable index out of range");
    if (!satisfies(l.formula, a))
        throw invalid_input_error("assignment must satisfy the formula");
    if (a.value(var) == to_value)
        throw invalid_input_error("flip must change the variable's value");
    Assignment flipped = a;
    flipped.bits[var] = to_value ? 1 : 0;
    for (int j = 0; j < l.m; ++j)
        if (!clause_satisfied(l.formula.clauses[j], flipped))
            throw illegal_flip_error("flipping variable " + num(var + 1) + " falsifies clause " +
                                     num(j + 1));
    if (!to_value) return flip_down_moves(l, var);
    const std::vector<SlideMove> down = flip_down_moves(l, var);
    std::vector<SlideMove> up;
    up.reserve(down.size());
    for (auto it = down.rbegin(); it != down.rend(); ++it)
        up.push_back(SlideMove{it->to, it->from});
    return up;
}

std::optional<int> moving_variable(const ReductionLayout& l, const TokenConfig& d) {
    if (d.size() != l.k_tokens)
        throw invalid_input_error("configuration has " + num(d.size()) + " tokens, expected " +
                                  num(l.k_tokens));
    std::vector<long long> count(l.n, 0);
    for (int t : d.ids()) {
        l.graph.check_vertex(t, "token");
        const VertexInfo& info = l.vertices[t];
        if (is_gadget_role(info.role)) ++count[info.var];
    }
    int moving = -1;
    for (int i = 0; i < l.n; ++i) {
        const long long settled = l.ell[i] + l.m / 2;
        if (count[i] == settled) continue;
        if (count[i] == settled + 1 && moving == -1) {
            moving = i;
            continue;
        }
        throw invalid_input_error("variable " + num(i + 1) + " holds " + num(count[i]) +
                                  " tokens while its settled share is " + num(settled));
    }
    if (moving == -1) return std::nullopt;
    return moving;
}

Assignment extract_assignment(const ReductionLayout& l, const TokenConfig& d) {
    const std::optional<int> mv = moving_variable(l, d);
    Assignment a;
    a.bits.assign(l.n, 0);
    for (int i = 0; i < l.n; ++i) {
        if (mv && *mv == i) continue;
        bool all_pos = true;
        for (int x : l.bridge_pos_id[i])
            if (!d.contains(x)) {
                all_pos = false;
                break;
            }
        a.bits[i] = all_pos ? 1 : 0;
    }
    if (mv) {
        const int k = *mv;
        bool value = false;
        for (int j = 0; j < l.m && !value; ++j) {
            if (occurrence_sign(l.formula, k, j) <= 0) continue;
            if (l.w_id[k][j] == -1 || !d.contains(l.w_id[k][j])) continue;
            bool others_false = true;
            for (const Literal& lit : l.formula.clauses[j]) {
                if (lit.var == k) continue;
                if (literal_satisfied(lit, a)) {
                    others_false = false;
                    break;
                }
            }
            if (others_false) value = true;
        }
        a.bits[k] = value ? 1 : 0;
    }
    return a;
}

void write_layout(const ReductionLayout& l, const std::string& dir) {
    {
        std::ofstream out(dir + "/chords.txt");
        if (!out) throw invalid_input_error("cannot write " + dir + "/chords.txt");
        write_chord_model(out, l.chords);
    }
    {
        std::ofstream out(dir + "/registry.txt");
        if (!out) throw invalid_input_error("cannot write " + dir + "/registry.txt");
        for (int id = 0; id < static_cast<int>(l.vertices.size()); ++id)
            out << l.vertices[id].label << ' ' << id << '\n';
    }
    {
        std::ofstream out(dir + "/params.txt");
        if (!out) throw invalid_input_error("cannot write " + dir + "/params.txt");
        out << l.n << ' ' << l.m << ' ' << l.k_tokens << ' ' << l.pending_count << '\n';
        for (int i = 0; i < l.n; ++i) out << "ell " << i + 1 << ' ' << l.ell[i] << '\n';
    }
}

} // namespace dsr
