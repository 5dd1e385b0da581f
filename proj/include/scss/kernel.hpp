#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scss/graph.hpp"

namespace scss {

inline constexpr int kDefaultCoverExactLimit = 20;

struct VertexCoverResult {
    std::vector<Vertex> cover;  // sorted
    /// True when `cover` is a minimum cover; false for the matching-based fallback.
    bool exact = false;
};

/// Minimum vertex cover by bounded search when its size is at most exact_limit,
/// otherwise the endpoints of a greedy maximal matching (at most twice optimal).
VertexCoverResult vertex_cover(const UndirectedGraph& g, int exact_limit = kDefaultCoverExactLimit);

/// Bipartite graph with left vertices 0..left-1 and right vertices 0..right-1.
struct BipartiteGraph {
    int left = 0;
    int right = 0;
    std::vector<std::vector<int>> adj;  // left -> sorted right neighbors

    std::vector<std::vector<int>> right_adjacency() const;
};

struct ExpansionResult {
    std::vector<int> a1;                         // sorted left vertices
    std::vector<int> b1;                         // sorted right vertices
    std::vector<std::pair<int, int>> matching;   // (left, right), saturating a1 into b1
};

/// Maximum matching by augmenting paths; mate[left] is the partner or -1.
std::vector<int> maximum_matching(const BipartiteGraph& g);

/// A1, B1 and M with: M saturates A1 into B1, N(B1) is inside A1, and
/// |B \ B1| <= |A \ A1|. Built by alternating reachability from the unmatched
/// right vertices. The properties are re-checked before returning and a failure
/// throws InternalInconsistency.
ExpansionResult expansion(const BipartiteGraph& g);

/// Empty string when all three properties hold, otherwise a description of the
/// first violated one.
std::string check_expansion(const BipartiteGraph& g, const ExpansionResult& r);

/// Left side: ordered pairs (u, w) over the cover that have at least one witness
/// v in the independent side with arcs (u, v) and (v, w). Pairs are sorted, so the
/// first neighbor of a right vertex is its lexicographically smallest pair.
struct PairBipartite {
    std::vector<Vertex> cover;
    std::vector<Vertex> independent;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    BipartiteGraph graph;  // left = pairs, right = independent
};

/// Throws InvalidGraph if `cover` leaves an arc uncovered.
PairBipartite build_pair_bipartite(const Digraph& d, std::vector<Vertex> cover);

struct KernelTrace {
    int original_vertices = 0;
    int original_budget = 0;
    VertexCoverResult cover;
    PairBipartite bipartite;
    ExpansionResult expansion;
    /// Reduction rule triggered (|I| > |S|^2).
    bool applied = false;
    /// Input recognized as NO (not strongly connected, an independent vertex with
    /// no pair neighbor, or a negative reduced budget); the output is the canonical
    /// NO instance.
    bool trivial_no = false;
    std::vector<Vertex> removed;                          // R, sorted
    std::vector<std::pair<Vertex, Vertex>> lift_pairs;    // per removed vertex
    int budget_delta = 0;                                 // 2|R|
    /// kept[i] is the original id of reduced vertex i + 1.
    std::vector<Vertex> kept;
};

struct KernelResult {
    Digraph reduced;
    KernelTrace trace;
};

/// Two isolated vertices, both terminals, budget 0.
Digraph canonical_no_instance();

/// Vertex-cover kernel for the spanning variant (T = V). Throws BadParams when
/// the terminal set is not all of V.
KernelResult kernelize(const Digraph& d, int cover_exact_limit = kDefaultCoverExactLimit);

/// Adds (u, v) and (v, w) for every removed v and its recorded pair. Throws
/// InvalidReducedSolution unless the reduced solution is a strongly connected
/// spanning arc set of the reduced instance within its budget.
ArcSet lift_solution(const Digraph& original, const ArcSet& reduced_solution, const KernelTrace& trace);

std::string trace_to_json(const KernelTrace& trace);
KernelTrace trace_from_json(const std::string& text);

}  // namespace scss
