#include "dsr/graph.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

#include "dsr/detail/parse.hpp"

namespace dsr {

Graph::Graph(int n) {
    if (n < 0) throw invalid_input_error("graph size must be nonnegative, got " + std::to_string(n));
    adj_.resize(n);
}

void Graph::check_vertex(int v, const char* what) const {
    if (v < 0 || v >= vertex_count())
        throw invalid_input_error(std::string(what) + " vertex " + std::to_string(v) +
                                  " out of range [0, " + std::to_string(vertex_count()) + ")");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u, "edge");
    check_vertex(v, "edge");
    if (u == v) throw invalid_input_error("self-loop at vertex " + std::to_string(u));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return; // already present
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u, "edge");
    check_vertex(v, "edge");
    const auto& au = adj_[u];
    return std::binary_search(au.begin(), au.end(), v);
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_vertex(v, "query");
    return adj_[v];
}

bool Graph::closed_neighborhood_subseteq(int u, int v) const {
    check_vertex(u, "query");
    check_vertex(v, "query");
    if (u == v) return true;
    if (!has_edge(u, v)) return false; // u in N[u] must land in N[v]
    for (int w : adj_[u]) {
        if (w == v) continue;
        if (w != u && !has_edge(w, v)) return false;
    }
    return true;
}

TokenConfig::TokenConfig(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
}

int TokenConfig::count(int v) const {
    auto [lo, hi] = std::equal_range(ids_.begin(), ids_.end(), v);
    return static_cast<int>(hi - lo);
}

void TokenConfig::add(int v) {
    ids_.insert(std::lower_bound(ids_.begin(), ids_.end(), v), v);
}

void TokenConfig::remove_one(int v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v)
        throw no_token_error("no token on vertex " + std::to_string(v));
    ids_.erase(it);
}

TokenConfig multiset_difference(const TokenConfig& a, const TokenConfig& b) {
    std::vector<int> out;
    std::set_difference(a.ids().begin(), a.ids().end(), b.ids().begin(), b.ids().end(),
                        std::back_inserter(out));
    return TokenConfig(std::move(out));
}

TokenConfig multiset_intersection(const TokenConfig& a, const TokenConfig& b) {
    std::vector<int> out;
    std::set_intersection(a.ids().begin(), a.ids().end(), b.ids().begin(), b.ids().end(),
                          std::back_inserter(out));
    return TokenConfig(std::move(out));
}

bool is_dominating(const Graph& g, const TokenConfig& c) {
    const int n = g.vertex_count();
    std::vector<char> covered(n, 0);
    for (int t : c.ids()) {
        g.check_vertex(t, "token");
        covered[t] = 1;
        for (int w : g.neighbors(t)) covered[w] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (!covered[v]) return false;
    return true;
}

TokenConfig apply_slide(const Graph& g, const TokenConfig& c, const SlideMove& m) {
    g.check_vertex(m.from, "slide");
    g.check_vertex(m.to, "slide");
    if (!c.contains(m.from))
        throw no_token_error("no token on vertex " + std::to_string(m.from));
    if (!g.has_edge(m.from, m.to))
        throw illegal_move_error("slide " + std::to_string(m.from) + " -> " + std::to_string(m.to) +
                                 " is not along an edge");
    TokenConfig next = c;
    next.remove_one(m.from);
    next.add(m.to);
    return next;
}

namespace {

// Incremental domination bookkeeping: cov[v] counts tokens in N[v].
struct CoverState {
    const Graph& g;
    std::vector<int> cov;
    int uncovered;

    explicit CoverState(const Graph& g_, const TokenConfig& c) : g(g_), cov(g_.vertex_count(), 0) {
        for (int t : c.ids()) place(t);
        uncovered = 0;
        for (int x : cov)
            if (x == 0) ++uncovered;
    }
    void place(int t) {
        ++cov[t];
        for (int w : g.neighbors(t)) ++cov[w];
    }
    void move(int from, int to) {
        auto dec = [&](int v) { if (--cov[v] == 0) ++uncovered; };
        auto inc = [&](int v) { if (cov[v]++ == 0) --uncovered; };
        dec(from);
        for (int w : g.neighbors(from)) dec(w);
        inc(to);
        for (int w : g.neighbors(to)) inc(w);
    }
};

} // namespace

ValidationResult validate_sequence(const Graph& g, const ReconfSequence& seq,
                                   const std::optional<TokenConfig>& expected_end,
                                   bool require_domination) {
    for (int t : seq.start.ids()) g.check_vertex(t, "token");
    CoverState cover(g, seq.start);
    if (require_domination && cover.uncovered > 0)
        return {false, -1, "start configuration is not dominating"};

    TokenConfig cur = seq.start;
    for (int i = 0; i < seq.length(); ++i) {
        const SlideMove& m = seq.moves[i];
        if (m.from < 0 || m.from >= g.vertex_count() || m.to < 0 || m.to >= g.vertex_count())
            return {false, i, "move " + std::to_string(i) + ": vertex out of range"};
        if (!cur.contains(m.from))
            return {false, i, "move " + std::to_string(i) + ": no token on vertex " + std::to_string(m.from)};
        if (!g.has_edge(m.from, m.to))
            return {false, i, "move " + std::to_string(i) + ": " + std::to_string(m.from) + " -> " +
                                  std::to_string(m.to) + " is not an edge"};
        cur.remove_one(m.from);
        cur.add(m.to);
        cover.move(m.from, m.to);
        if (require_domination && cover.uncovered > 0)
            return {false, i, "move " + std::to_string(i) + ": configuration after the move is not dominating"};
    }
    if (expected_end && !(cur == *expected_end))
        return {false, seq.length(), "final configuration differs from the expected one"};
    return {};
}

ReconfSequence substitute_vertex(const Graph& g, const ReconfSequence& seq, int u, int v) {
    g.check_vertex(u, "substitute");
    g.check_vertex(v, "substitute");
    if (!g.closed_neighborhood_subseteq(u, v))
        throw invalid_input_error("cannot substitute " + std::to_string(u) + " by " + std::to_string(v) +
                                  ": closed neighborhood is not contained");
    auto map = [&](int x) { return x == u ? v : x; };
    ReconfSequence out;
    std::vector<int> ids;
    ids.reserve(seq.start.size());
    for (int t : seq.start.ids()) ids.push_back(map(t));
    out.start = TokenConfig(std::move(ids));
    for (const SlideMove& m : seq.moves) {
        SlideMove mm{map(m.from), map(m.to)};
        if (mm.from != mm.to) out.moves.push_back(mm);
    }
    return out;
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int w : g.neighbors(x)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push_back(w);
            }
        }
    }
    return reached == n;
}

namespace {

using detail::Line;

std::vector<Line> nonblank_lines(std::istream& in) {
    std::vector<Line> all = detail::read_lines(in);
    std::vector<Line> out;
    for (auto& l : all)
        if (!detail::is_blank(l.text)) out.push_back(std::move(l));
    return out;
}

TokenConfig parse_config_line(const Line& l) {
    auto parts = detail::split_ws(l.text);
    if (parts.empty() || parts[0] != "tokens:")
        throw parse_error("line " + std::to_string(l.number) + ": expected 'tokens:' directive");
    std::vector<int> ids;
    for (size_t i = 1; i < parts.size(); ++i) ids.push_back(detail::parse_int(parts[i], l.number));
    return TokenConfig(std::move(ids));
}

} // namespace

TokenConfig read_config(std::istream& in) {
    auto lines = nonblank_lines(in);
    if (lines.empty()) throw parse_error("line 1: expected 'tokens:' directive, got end of input");
    if (lines.size() > 1)
        throw parse_error("line " + std::to_string(lines[1].number) + ": unexpected extra content");
    return parse_config_line(lines[0]);
}

void write_config(std::ostream& out, const TokenConfig& c) {
    out << "tokens:";
    for (int t : c.ids()) out << ' ' << t;
    out << '\n';
}

ReconfSequence read_sequence(std::istream& in) {
    auto lines = nonblank_lines(in);
    if (lines.empty()) throw parse_error("line 1: expected 'start:' directive, got end of input");
    auto head = detail::split_ws(lines[0].text);
    if (head.empty() || head[0] != "start:")
        throw parse_error("line " + std::to_string(lines[0].number) + ": expected 'start:' directive");
    ReconfSequence seq;
    std::vector<int> ids;
    for (size_t i = 1; i < head.size(); ++i) ids.push_back(detail::parse_int(head[i], lines[0].number));
    seq.start = TokenConfig(std::move(ids));
    for (size_t li = 1; li < lines.size(); ++li) {
        auto parts = detail::split_ws(lines[li].text);
        if (parts.size() != 3 || parts[0] != "slide")
            throw parse_error("line " + std::to_string(lines[li].number) + ": expected 'slide FROM TO'");
        seq.moves.push_back({detail::parse_int(parts[1], lines[li].number),
                             detail::parse_int(parts[2], lines[li].number)});
    }
    return seq;
}

void write_sequence(std::ostream& out, const ReconfSequence& seq) {
    out << "start:";
    for (int t : seq.start.ids()) out << ' ' << t;
    out << '\n';
    for (const SlideMove& m : seq.moves) out << "slide " << m.from << ' ' << m.to << '\n';
}

Graph read_graph(std::istream& in) {
    auto lines = nonblank_lines(in);
    if (lines.empty()) throw parse_error("line 1: expected 'graph N M' header, got end of input");
    auto head = detail::split_ws(lines[0].text);
    if (head.size() != 3 || head[0] != "graph")
        throw parse_error("line " + std::to_string(lines[0].number) + ": expected 'graph N M' header");
    int n = detail::parse_int(head[1], lines[0].number);
    int m = detail::parse_int(head[2], lines[0].number);
    if (n < 0 || m < 0)
        throw parse_error("line " + std::to_string(lines[0].number) + ": negative graph dimensions");
    if (static_cast<int>(lines.size()) - 1 != m)
        throw parse_error("line " + std::to_string(lines[0].number) + ": expected " + std::to_string(m) +
                          " edge lines, found " + std::to_string(lines.size() - 1));
    Graph g(n);
    for (int i = 1; i <= m; ++i) {
        auto parts = detail::split_ws(lines[i].text);
        if (parts.size() != 2)
            throw parse_error("line " + std::to_string(lines[i].number) + ": expected 'u v'");
        int u = detail::parse_int(parts[0], lines[i].number);
        int v = detail::parse_int(parts[1], lines[i].number);
        try {
            g.add_edge(u, v);
        } catch (const invalid_input_error& e) {
            throw parse_error("line " + std::to_string(lines[i].number) + ": " + e.what());
        }
    }
    return g;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
}

} // namespace dsr
