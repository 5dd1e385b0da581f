#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace scss {

/// 1-based vertex id.
using Vertex = int;

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed instance carrier: vertices 1..n, simple arc list, terminal set and budget.
///
/// The constructor rejects self-loops, parallel arcs, out-of-range endpoints and
/// out-of-range terminals (ErrorKind::InvalidGraph / RangeError). Terminals are
/// stored sorted and deduplicated.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, std::vector<Arc> arcs, std::vector<Vertex> terminals = {}, int budget = 0);

    /// Same graph with T = V.
    static Digraph spanning(int n, std::vector<Arc> arcs, int budget = 0);

    int vertex_count() const noexcept { return n_; }
    int arc_count() const noexcept { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    const Arc& arc(int index) const { return arcs_.at(static_cast<std::size_t>(index)); }
    const std::vector<Vertex>& terminals() const noexcept { return terminals_; }
    int budget() const noexcept { return budget_; }

    bool is_terminal(Vertex v) const;
    bool all_terminals() const noexcept { return static_cast<int>(terminals_.size()) == n_; }

    /// Arc indices leaving / entering v.
    const std::vector<int>& out_arcs(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& in_arcs(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }

    std::optional<int> find_arc(Vertex tail, Vertex head) const;

    Digraph with_budget(int budget) const;
    Digraph with_terminals(std::vector<Vertex> terminals) const;

    /// Underlying simple undirected edge list (u < v), sorted.
    std::vector<Edge> underlying_edges() const;

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_ && a.terminals_ == b.terminals_ && a.budget_ == b.budget_;
    }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<Vertex> terminals_;
    int budget_ = 0;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<bool> terminal_mask_;
};

/// Simple undirected graph on 1..n (2-ECSS inputs, vertex cover).
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    UndirectedGraph(int n, std::vector<Edge> edges, int budget = 0);

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    int budget() const noexcept { return budget_; }
    const std::vector<int>& incident(Vertex v) const { return incident_[static_cast<std::size_t>(v)]; }
    Vertex other_end(int edge, Vertex v) const;

    friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.budget_ == b.budget_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    int budget_ = 0;
    std::vector<std::vector<int>> incident_;
};

/// Subset of a digraph's arcs, stored as sorted distinct arc indices.
class ArcSet {
public:
    ArcSet() = default;
    /// Throws RangeError on duplicates or negative indices; range against a graph
    /// is checked by valid_for().
    explicit ArcSet(std::vector<int> indices);

    static ArcSet all(const Digraph& d);
    static ArcSet from_arcs(const Digraph& d, std::span<const Arc> arcs);

    const std::vector<int>& indices() const noexcept { return indices_; }
    int size() const noexcept { return static_cast<int>(indices_.size()); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(int index) const;
    bool valid_for(const Digraph& d) const;
    std::vector<Arc> arcs(const Digraph& d) const;

    friend bool operator==(const ArcSet&, const ArcSet&) = default;

private:
    std::vector<int> indices_;
};

struct Condensation {
    /// component[v] for v in 1..n (index 0 unused); ids are in topological order
    /// of the quotient DAG (every quotient arc goes from a lower to a higher id).
    std::vector<int> component;
    int component_count = 0;
    /// Distinct quotient arcs (component ids), sorted.
    std::vector<std::pair<int, int>> quotient_arcs;
    /// For each quotient arc, the lexicographically smallest original arc realising it.
    std::vector<int> witness;
};

bool terminals_mutually_reachable(const Digraph& d, const ArcSet& x, std::span<const Vertex> terminals);
bool strongly_connected(const Digraph& d, const ArcSet& x);
bool strongly_connected(const Digraph& d);

/// Vertices reachable from `source` using arcs in x (bitmask-free; size n+1).
std::vector<bool> reachable_from(const Digraph& d, const ArcSet& x, Vertex source, bool reverse = false);

/// reach[u][v] (1-based) over arcs in x; reach[u][u] is always true.
std::vector<std::vector<bool>> reachability_matrix(const Digraph& d, const ArcSet& x);

Condensation condensation(const Digraph& d);

/// Unique minimum arc subset of an acyclic digraph with the same reachability.
/// Throws CyclicInput when d has a directed cycle.
ArcSet transitive_reduction_dag(const Digraph& d);

/// Induced subdigraph on `vertices` (sorted, 1-based), renumbered 1..k in that
/// order. Terminals of the result are all of its vertices; `arc_map` receives the
/// original index of each new arc.
Digraph induced_spanning_subdigraph(const Digraph& d, std::span<const Vertex> vertices,
                                    std::vector<int>* arc_map = nullptr);

bool connected(const UndirectedGraph& g, std::span<const int> edge_subset);
std::vector<int> bridges(const UndirectedGraph& g, std::span<const int> edge_subset);
bool two_edge_connected(const UndirectedGraph& g, std::span<const int> edge_subset);
bool two_edge_connected(const UndirectedGraph& g);

}  // namespace scss
