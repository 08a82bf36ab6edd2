#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsr/errors.hpp"

namespace dsr {

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return edge_count_; }

    // Self-loops and out-of-range endpoints are rejected; duplicates are ignored.
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;

    // Neighbors in ascending order.
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    // True iff every vertex of N[u] lies in N[v] (closed neighborhoods).
    bool closed_neighborhood_subseteq(int u, int v) const;

    void check_vertex(int v, const char* what) const;

private:
    std::vector<std::vector<int>> adj_;
    int edge_count_ = 0;
};

// A placement of indistinguishable tokens on vertices; several tokens may share
// a vertex. Canonical form is the ascending id list.
class TokenConfig {
public:
    TokenConfig() = default;
    explicit TokenConfig(std::vector<int> ids);

    const std::vector<int>& ids() const { return ids_; }
    int size() const { return static_cast<int>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    int count(int v) const;
    bool contains(int v) const { return count(v) > 0; }

    void add(int v);
    // Removes one token from v; raises no_token_error if none is there.
    void remove_one(int v);

    bool operator==(const TokenConfig&) const = default;
    auto operator<=>(const TokenConfig&) const = default;

private:
    std::vector<int> ids_; // sorted ascending
};

TokenConfig multiset_difference(const TokenConfig& a, const TokenConfig& b);
TokenConfig multiset_intersection(const TokenConfig& a, const TokenConfig& b);

struct SlideMove {
    int from = 0;
    int to = 0;
    bool operator==(const SlideMove&) const = default;
};

struct ReconfSequence {
    TokenConfig start;
    std::vector<SlideMove> moves;

    int length() const { return static_cast<int>(moves.size()); }
};

struct ValidationResult {
    bool ok = true;
    // -1: the start configuration is invalid; i >= 0: move i is the first failure
    // (or leaves an undominated vertex); moves.size(): the final configuration
    // differs from the expected one.
    int failure_index = -2;
    std::string message;
};

// True iff every vertex has a token in its closed neighborhood.
bool is_dominating(const Graph& g, const TokenConfig& c);

// Moves one token across an edge. Raises no_token_error when `from` is empty
// and illegal_move_error when from->to is not an edge.
TokenConfig apply_slide(const Graph& g, const TokenConfig& c, const SlideMove& m);

// Replays the whole sequence. When require_domination is set, the start and
// every intermediate configuration must dominate the graph. When expected_end
// is given, the final configuration must equal it.
ValidationResult validate_sequence(const Graph& g, const ReconfSequence& seq,
                                   const std::optional<TokenConfig>& expected_end = std::nullopt,
                                   bool require_domination = true);

// Rewrites a sequence after replacing vertex u by v everywhere; requires
// N[u] subseteq N[v] so legality and domination carry over. Moves that become
// x -> x are dropped.
ReconfSequence substitute_vertex(const Graph& g, const ReconfSequence& seq, int u, int v);

bool is_connected(const Graph& g);

// Text formats.
//   configuration:  "tokens: 0 2 2 5"
//   sequence:       "start: 0 2", then one "slide FROM TO" line per move
TokenConfig read_config(std::istream& in);
void write_config(std::ostream& out, const TokenConfig& c);
ReconfSequence read_sequence(std::istream& in);
void write_sequence(std::ostream& out, const ReconfSequence& seq);

// Plain graph text format: "graph N M" then M lines "u v".
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

} // namespace dsr
