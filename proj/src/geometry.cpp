#include "dsr/geometry.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "dsr/detail/parse.hpp"

namespace dsr {

namespace {

long long pos_mod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

} // namespace

CircularArcModel::CircularArcModel(long long circumference, std::vector<Arc> arcs)
    : m_(circumference), arcs_(std::move(arcs)) {
    if (m_ < 1) throw invalid_model_error("circumference must be positive, got " + std::to_string(m_));
    std::set<long long> endpoints;
    for (int i = 0; i < size(); ++i) {
        const Arc& a = arcs_[i];
        if (a.full) continue;
        if (a.l < 0 || a.l >= m_ || a.r < 0 || a.r >= m_)
            throw invalid_model_error("arc " + std::to_string(i) + " endpoint outside [0, " +
                                      std::to_string(m_) + ")");
        if (!endpoints.insert(a.l).second)
            throw invalid_model_error("endpoint " + std::to_string(a.l) +
                                      " occurs twice; arcs must be in general position");
        if (!endpoints.insert(a.r).second)
            throw invalid_model_error("endpoint " + std::to_string(a.r) +
                                      " occurs twice; arcs must be in general position");
    }
    graph_ = Graph(size());
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (intersects(i, j)) graph_.add_edge(i, j);
}

const Arc& CircularArcModel::arc(int i) const {
    if (i < 0 || i >= size()) throw invalid_input_error("arc index " + std::to_string(i) + " out of range");
    return arcs_[i];
}

long long CircularArcModel::span(int i) const {
    const Arc& a = arc(i);
    if (a.full) return m_;
    return pos_mod(a.r - a.l, m_);
}

bool CircularArcModel::contains_point(int i, long long p) const {
    const Arc& a = arc(i);
    if (a.full) return true;
    return pos_mod(p - a.l, m_) <= span(i);
}

bool CircularArcModel::contains_point_doubled(int i, long long p2) const {
    const Arc& a = arc(i);
    if (a.full) return true;
    return pos_mod(p2 - 2 * a.l, 2 * m_) <= 2 * span(i);
}

bool CircularArcModel::intersects(int i, int j) const {
    const Arc& a = arc(i);
    const Arc& b = arc(j);
    if (a.full || b.full) return true;
    return contains_point(i, b.l) || contains_point(j, a.l);
}

bool CircularArcModel::subseteq(int i, int j) const {
    const Arc& a = arc(i);
    const Arc& b = arc(j);
    if (b.full) return true;
    if (a.full) return false;
    return pos_mod(a.l - b.l, m_) + span(i) <= span(j);
}

bool CircularArcModel::strictly_inside(int i, int j) const {
    if (i == j) return false;
    return subseteq(i, j) && !subseteq(j, i);
}

std::optional<long long> CircularArcModel::uncovered_point_doubled() const {
    if (full_arc()) return std::nullopt;
    std::vector<long long> pts;
    for (const Arc& a : arcs_) {
        pts.push_back(2 * a.l);
        pts.push_back(2 * a.r);
    }
    if (pts.empty()) return 0;
    std::sort(pts.begin(), pts.end());
    const long long twoM = 2 * m_;
    for (size_t k = 0; k < pts.size(); ++k) {
        long long cur = pts[k];
        long long next = (k + 1 < pts.size()) ? pts[k + 1] : pts[0] + twoM;
        long long mid = pos_mod(cur + (next - cur) / 2, twoM);
        bool covered = false;
        for (int i = 0; i < size() && !covered; ++i) covered = contains_point_doubled(i, mid);
        if (!covered) return mid;
    }
    return std::nullopt;
}

std::optional<int> CircularArcModel::full_arc() const {
    for (int i = 0; i < size(); ++i)
        if (arcs_[i].full) return i;
    return std::nullopt;
}

IntervalModel::IntervalModel(std::vector<Interval> intervals) : ivs_(std::move(intervals)) {
    for (int i = 0; i < size(); ++i)
        if (ivs_[i].lo > ivs_[i].hi)
            throw invalid_model_error("interval " + std::to_string(i) + " has lo > hi");
    graph_ = Graph(size());
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (intersects(i, j)) graph_.add_edge(i, j);
}

const Interval& IntervalModel::interval(int i) const {
    if (i < 0 || i >= size())
        throw invalid_input_error("interval index " + std::to_string(i) + " out of range");
    return ivs_[i];
}

bool IntervalModel::intersects(int i, int j) const {
    const Interval& a = interval(i);
    const Interval& b = interval(j);
    return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi);
}

bool IntervalModel::subseteq(int i, int j) const {
    const Interval& a = interval(i);
    const Interval& b = interval(j);
    return b.lo <= a.lo && a.hi <= b.hi;
}

bool IntervalModel::strictly_inside(int i, int j) const {
    if (i == j) return false;
    return subseteq(i, j) && !subseteq(j, i);
}

ChordModel::ChordModel(std::vector<Chord> chords) : chords_(std::move(chords)) {
    for (int i = 0; i < size(); ++i)
        if (chords_[i].l >= chords_[i].r)
            throw invalid_model_error("chord " + std::to_string(i) + " must have l < r");
}

const Chord& ChordModel::chord(int i) const {
    if (i < 0 || i >= size()) throw invalid_input_error("chord index " + std::to_string(i) + " out of range");
    return chords_[i];
}

Graph ChordModel::build_graph() const {
    const int n = size();
    Graph g(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (chords_[a].l != chords_[b].l) return chords_[a].l < chords_[b].l;
        if (chords_[a].r != chords_[b].r) return chords_[a].r < chords_[b].r;
        return a < b;
    });
    // Strict interleaving l_i < l_j < r_i < r_j; scan right neighbors whose
    // left endpoint falls inside chord i.
    for (int oi = 0; oi < n; ++oi) {
        int i = order[oi];
        for (int oj = oi + 1; oj < n; ++oj) {
            int j = order[oj];
            if (chords_[j].l >= chords_[i].r) break;
            if (chords_[j].l > chords_[i].l && chords_[j].r > chords_[i].r) g.add_edge(i, j);
        }
    }
    return g;
}

SymbolicLine::SymbolicLine() {
    static int counter = 0;
    line_id_ = ++counter;
}

void SymbolicLine::check(LineHandle p) const {
    if (p.line != line_id_ || p.idx < 0 || p.idx >= point_count())
        throw invalid_reference_error("handle does not belong to this line");
}

void SymbolicLine::require_mutable() const {
    if (finalized_) throw invalid_input_error("symbolic line is finalized; no further points allowed");
}

LineHandle SymbolicLine::append() {
    require_mutable();
    int idx = point_count();
    order_.push_back(idx);
    where_.push_back(std::prev(order_.end()));
    dirty_ = true;
    return {line_id_, idx};
}

LineHandle SymbolicLine::insert_left(LineHandle p) {
    require_mutable();
    check(p);
    int idx = point_count();
    where_.push_back(order_.insert(where_[p.idx], idx));
    dirty_ = true;
    return {line_id_, idx};
}

LineHandle SymbolicLine::insert_right(LineHandle p) {
    require_mutable();
    check(p);
    int idx = point_count();
    where_.push_back(order_.insert(std::next(where_[p.idx]), idx));
    dirty_ = true;
    return {line_id_, idx};
}

void SymbolicLine::refresh_positions() {
    if (!dirty_) return;
    pos_.assign(point_count(), 0);
    long long k = 0;
    for (int idx : order_) pos_[idx] = k++;
    dirty_ = false;
}

bool SymbolicLine::precedes(LineHandle a, LineHandle b) {
    check(a);
    check(b);
    refresh_positions();
    return pos_[a.idx] < pos_[b.idx];
}

std::pair<LineHandle, LineHandle> SymbolicLine::frame(const std::vector<LineHandle>& pts) {
    if (pts.empty()) throw invalid_input_error("frame requires at least one point");
    for (LineHandle p : pts) check(p);
    LineHandle lo = pts[0], hi = pts[0];
    if (pts.size() > 1) { // single-point frames need no ordering information
        refresh_positions();
        for (LineHandle p : pts) {
            if (pos_[p.idx] < pos_[lo.idx]) lo = p;
            if (pos_[p.idx] > pos_[hi.idx]) hi = p;
        }
    }
    LineHandle l = insert_left(lo);
    LineHandle r = insert_right(hi);
    return {l, r};
}

void SymbolicLine::finalize() {
    require_mutable();
    refresh_positions();
    finalized_ = true;
}

long long SymbolicLine::coordinate(LineHandle p) const {
    check(p);
    if (!finalized_) throw invalid_input_error("coordinates are only available after finalize()");
    return pos_[p.idx];
}

Graph arc_intersection_graph(const CircularArcModel& m) { return m.graph(); }

Graph interval_intersection_graph(const IntervalModel& m) { return m.graph(); }

Graph chord_overlap_graph(const ChordModel& m) { return m.build_graph(); }

bool is_maximal_arc(const CircularArcModel& m, int i) {
    for (int j = 0; j < m.size(); ++j)
        if (m.strictly_inside(i, j)) return false;
    return true;
}

std::vector<int> maximal_arcs(const CircularArcModel& m) {
    std::vector<int> out;
    for (int i = 0; i < m.size(); ++i)
        if (is_maximal_arc(m, i)) out.push_back(i);
    return out;
}

bool is_maximal_interval(const IntervalModel& m, int i) {
    for (int j = 0; j < m.size(); ++j)
        if (m.strictly_inside(i, j)) return false;
    return true;
}

std::vector<int> maximal_intervals(const IntervalModel& m) {
    std::vector<int> out;
    for (int i = 0; i < m.size(); ++i)
        if (is_maximal_interval(m, i)) out.push_back(i);
    return out;
}

NormalizationResult normalize_to_maximal(const CircularArcModel& m, const TokenConfig& c) {
    NormalizationResult res;
    res.config = c;
    for (int t : c.ids()) {
        if (t < 0 || t >= m.size())
            throw invalid_input_error("token on unknown arc " + std::to_string(t));
        if (is_maximal_arc(m, t)) continue;
        int best = -1;
        for (int j = 0; j < m.size(); ++j) {
            if (!m.subseteq(t, j) || !is_maximal_arc(m, j)) continue;
            if (best == -1) {
                best = j;
                continue;
            }
            long long sj = m.span(j), sb = m.span(best);
            if (sj != sb) {
                if (sj > sb) best = j;
                continue;
            }
            long long lj = m.arc(j).full ? 0 : m.arc(j).l;
            long long lb = m.arc(best).full ? 0 : m.arc(best).l;
            if (lj != lb) {
                if (lj < lb) best = j;
                continue;
            }
            if (j < best) best = j;
        }
        // Any arc sits inside some maximal arc, so a target always exists.
        res.moves.push_back({t, best});
        res.config.remove_one(t);
        res.config.add(best);
    }
    return res;
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

struct Header {
    long long a = 0;
    long long b = 0;
    int line = 0;
};

Header parse_header(const std::vector<Line>& lines, const std::string& word, int fields) {
    if (lines.empty())
        throw parse_error("line 1: expected '" + word + "' header, got end of input");
    auto parts = detail::split_ws(lines[0].text);
    if (static_cast<int>(parts.size()) != fields + 1 || parts[0] != word)
        throw parse_error("line " + std::to_string(lines[0].number) + ": expected '" + word + "' header");
    Header h;
    h.line = lines[0].number;
    h.a = detail::parse_ll(parts[1], lines[0].number);
    if (fields == 2) h.b = detail::parse_ll(parts[2], lines[0].number);
    return h;
}

void check_body_size(const std::vector<Line>& lines, long long n, int header_line) {
    if (static_cast<long long>(lines.size()) - 1 != n)
        throw parse_error("line " + std::to_string(header_line) + ": expected " + std::to_string(n) +
                          " entry lines, found " + std::to_string(lines.size() - 1));
}

} // namespace

CircularArcModel read_carc_model(std::istream& in) {
    auto lines = nonblank_lines(in);
    Header h = parse_header(lines, "carc", 2);
    long long M = h.a;
    long long n = h.b;
    if (n < 0) throw parse_error("line " + std::to_string(h.line) + ": negative arc count");
    check_body_size(lines, n, h.line);
    std::vector<Arc> arcs(n);
    std::vector<char> seen(n, 0);
    for (long long i = 1; i <= n; ++i) {
        const Line& l = lines[i];
        auto parts = detail::split_ws(l.text);
        if (parts.size() != 2 && parts.size() != 3)
            throw parse_error("line " + std::to_string(l.number) + ": expected 'id l r' or 'id full'");
        int id = detail::parse_int(parts[0], l.number);
        if (id < 0 || id >= n || seen[id])
            throw parse_error("line " + std::to_string(l.number) + ": bad or repeated arc id " +
                              std::to_string(id));
        seen[id] = 1;
        if (parts.size() == 2) {
            if (parts[1] != "full")
                throw parse_error("line " + std::to_string(l.number) + ": expected 'id l r' or 'id full'");
            arcs[id] = Arc{0, 0, true};
        } else {
            arcs[id] = Arc{detail::parse_ll(parts[1], l.number), detail::parse_ll(parts[2], l.number), false};
        }
    }
    try {
        return CircularArcModel(M, std::move(arcs));
    } catch (const invalid_model_error& e) {
        throw parse_error("line " + std::to_string(h.line) + ": " + e.what());
    }
}

void write_carc_model(std::ostream& out, const CircularArcModel& m) {
    out << "carc " << m.circumference() << ' ' << m.size() << '\n';
    for (int i = 0; i < m.size(); ++i) {
        const Arc& a = m.arc(i);
        if (a.full)
            out << i << " full\n";
        else
            out << i << ' ' << a.l << ' ' << a.r << '\n';
    }
}

IntervalModel read_interval_model(std::istream& in) {
    auto lines = nonblank_lines(in);
    Header h = parse_header(lines, "intervals", 1);
    long long n = h.a;
    if (n < 0) throw parse_error("line " + std::to_string(h.line) + ": negative interval count");
    check_body_size(lines, n, h.line);
    std::vector<Interval> ivs(n);
    std::vector<char> seen(n, 0);
    for (long long i = 1; i <= n; ++i) {
        const Line& l = lines[i];
        auto parts = detail::split_ws(l.text);
        if (parts.size() != 3)
            throw parse_error("line " + std::to_string(l.number) + ": expected 'id lo hi'");
        int id = detail::parse_int(parts[0], l.number);
        if (id < 0 || id >= n || seen[id])
            throw parse_error("line " + std::to_string(l.number) + ": bad or repeated interval id " +
                              std::to_string(id));
        seen[id] = 1;
        ivs[id] = Interval{detail::parse_ll(parts[1], l.number), detail::parse_ll(parts[2], l.number)};
    }
    try {
        return IntervalModel(std::move(ivs));
    } catch (const invalid_model_error& e) {
        throw parse_error("line " + std::to_string(h.line) + ": " + e.what());
    }
}

void write_interval_model(std::ostream& out, const IntervalModel& m) {
    out << "intervals " << m.size() << '\n';
    for (int i = 0; i < m.size(); ++i)
        out << i << ' ' << m.interval(i).lo << ' ' << m.interval(i).hi << '\n';
}

ChordModel read_chord_model(std::istream& in) {
    auto lines = nonblank_lines(in);
    Header h = parse_header(lines, "chords", 1);
    long long n = h.a;
    if (n < 0) throw parse_error("line " + std::to_string(h.line) + ": negative chord count");
    check_body_size(lines, n, h.line);
    std::vector<Chord> chords(n);
    std::vector<char> seen(n, 0);
    for (long long i = 1; i <= n; ++i) {
        const Line& l = lines[i];
        auto parts = detail::split_ws(l.text);
        if (parts.size() != 3)
            throw parse_error("line " + std::to_string(l.number) + ": expected 'id l r'");
        int id = detail::parse_int(parts[0], l.number);
        if (id < 0 || id >= n || seen[id])
            throw parse_error("line " + std::to_string(l.number) + ": bad or repeated chord id " +
                              std::to_string(id));
        seen[id] = 1;
        chords[id] = Chord{detail::parse_ll(parts[1], l.number), detail::parse_ll(parts[2], l.number)};
    }
    try {
        return ChordModel(std::move(chords));
    } catch (const invalid_model_error& e) {
        throw parse_error("line " + std::to_string(h.line) + ": " + e.what());
    }
}

void write_chord_model(std::ostream& out, const ChordModel& m) {
    out << "chords " << m.size() << '\n';
    for (int i = 0; i < m.size(); ++i)
        out << i << ' ' << m.chord(i).l << ' ' << m.chord(i).r << '\n';
}

} // namespace dsr
