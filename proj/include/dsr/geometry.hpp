#pragma once

#include <iosfwd>
#include <list>
#include <optional>
#include <utility>
#include <vector>

#include "dsr/errors.hpp"
#include "dsr/graph.hpp"

namespace dsr {

// Closed arc on a circle of integer circumference, clockwise from l to r.
// A `full` arc covers the whole circle and has no endpoints of its own.
struct Arc {
    long long l = 0;
    long long r = 0;
    bool full = false;
};

// Arc family in general position: every endpoint of every non-full arc is
// distinct. The intersection graph is built once at construction.
class CircularArcModel {
public:
    CircularArcModel(long long circumference, std::vector<Arc> arcs);

    long long circumference() const { return m_; }
    int size() const { return static_cast<int>(arcs_.size()); }
    const Arc& arc(int i) const;
    const std::vector<Arc>& arcs() const { return arcs_; }

    // Clockwise extent; a full arc spans the whole circumference.
    long long span(int i) const;
    bool contains_point(int i, long long p) const;
    // Same query in doubled coordinates, so half-integer points are exact.
    bool contains_point_doubled(int i, long long p2) const;
    bool intersects(int i, int j) const;
    bool subseteq(int i, int j) const;
    bool strictly_inside(int i, int j) const;

    const Graph& graph() const { return graph_; }

    // A point missed by every arc, as a doubled coordinate; nullopt when the
    // arcs cover the whole circle.
    std::optional<long long> uncovered_point_doubled() const;
    // Smallest index of a full arc, if any.
    std::optional<int> full_arc() const;

private:
    long long m_ = 1;
    std::vector<Arc> arcs_;
    Graph graph_;
};

// Closed interval on a line. The two sentinel bounds below mark rays that are
// unbounded on one side; ordinary coordinate comparisons keep working for them.
struct Interval {
    long long lo = 0;
    long long hi = 0;
};

class IntervalModel {
public:
    static constexpr long long kNegUnbounded = -(1LL << 60);
    static constexpr long long kPosUnbounded = (1LL << 60);

    IntervalModel() = default;
    explicit IntervalModel(std::vector<Interval> intervals);

    int size() const { return static_cast<int>(ivs_.size()); }
    const Interval& interval(int i) const;
    const std::vector<Interval>& intervals() const { return ivs_; }

    bool intersects(int i, int j) const;
    bool subseteq(int i, int j) const;
    bool strictly_inside(int i, int j) const;

    const Graph& graph() const { return graph_; }

private:
    std::vector<Interval> ivs_;
    Graph graph_;
};

// Chord of a line drawing: two distinct endpoints l < r. Distinct chords may
// share endpoints or coincide; two chords are adjacent exactly when their
// endpoints strictly interleave.
struct Chord {
    long long l = 0;
    long long r = 0;
};

class ChordModel {
public:
    ChordModel() = default;
    explicit ChordModel(std::vector<Chord> chords);

    int size() const { return static_cast<int>(chords_.size()); }
    const Chord& chord(int i) const;
    const std::vector<Chord>& chords() const { return chords_; }

    Graph build_graph() const;

private:
    std::vector<Chord> chords_;
};

// Handle to a point of a SymbolicLine; only valid with the line that made it.
struct LineHandle {
    int line = -1;
    int idx = -1;
    bool operator==(const LineHandle&) const = default;
};

// An ordered set of points on a line, built by relative placement. Repeated
// insertions next to the same point land progressively closer to it, so
// frames taken around the same point nest strictly inside one another.
// finalize() assigns consecutive integer coordinates and locks the line.
class SymbolicLine {
public:
    SymbolicLine();

    // New rightmost point.
    LineHandle append();
    // New point immediately to the left / right of p, closer to p than every
    // existing point on that side.
    LineHandle insert_left(LineHandle p);
    LineHandle insert_right(LineHandle p);

    // True iff a lies strictly left of b.
    bool precedes(LineHandle a, LineHandle b);

    // Pair (insert_left(leftmost of pts), insert_right(rightmost of pts)).
    std::pair<LineHandle, LineHandle> frame(const std::vector<LineHandle>& pts);

    void finalize();
    bool finalized() const { return finalized_; }
    int point_count() const { return static_cast<int>(where_.size()); }
    long long coordinate(LineHandle p) const;

private:
    void check(LineHandle p) const;
    void require_mutable() const;
    void refresh_positions();

    int line_id_ = 0;
    bool finalized_ = false;
    bool dirty_ = true;
    std::list<int> order_;
    std::vector<std::list<int>::iterator> where_;
    std::vector<long long> pos_;
};

// Intersection / overlap graphs of the three geometric models.
Graph arc_intersection_graph(const CircularArcModel& m);
Graph interval_intersection_graph(const IntervalModel& m);
Graph chord_overlap_graph(const ChordModel& m);

bool is_maximal_arc(const CircularArcModel& m, int i);
std::vector<int> maximal_arcs(const CircularArcModel& m);
bool is_maximal_interval(const IntervalModel& m, int i);
std::vector<int> maximal_intervals(const IntervalModel& m);

struct NormalizationResult {
    TokenConfig config;
    std::vector<SlideMove> moves;
};

// Slides every token onto an inclusion-maximal arc containing its current
// arc (largest span, then smallest left endpoint, then smallest id). Each
// slide keeps the configuration dominating.
NormalizationResult normalize_to_maximal(const CircularArcModel& m, const TokenConfig& c);

// Text formats.
//   circular-arc model:  "carc M n", then per arc "id l r" or "id full"
//   interval model:      "intervals n", then per interval "id lo hi"
//   chord model:         "chords n", then per chord "id l r"
CircularArcModel read_carc_model(std::istream& in);
void write_carc_model(std::ostream& out, const CircularArcModel& m);
IntervalModel read_interval_model(std::istream& in);
void write_interval_model(std::ostream& out, const IntervalModel& m);
ChordModel read_chord_model(std::istream& in);
void write_chord_model(std::ostream& out, const ChordModel& m);

} // namespace dsr
