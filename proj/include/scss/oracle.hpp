#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "scss/cutcount.hpp"
#include "scss/graph.hpp"

namespace scss {

struct SetCoverInstance;

inline constexpr int kBruteArcLimit = 22;
inline constexpr int kCensusVertexLimit = 5;

struct BruteResult {
    std::optional<int> optimum;  // nullopt: no feasible arc set
    ArcSet witness;
};

/// Smallest arc set making the terminals mutually reachable, by enumerating arc
/// subsets in order of size. Sizes above `limit` are not explored. Throws TooLarge
/// when |A| > 22.
BruteResult brute_scss(const Digraph& d, std::optional<int> limit = std::nullopt);

/// Candidate pair of relaxed branchings rooted at r: every vertex of the span
/// other than r has exactly one out-arc in `in_arcs` and one in-arc in `out_arcs`.
struct RelaxedPair {
    std::vector<int> in_arcs;
    std::vector<int> out_arcs;
    std::uint32_t span = 0;  // bit v-1 set for v in the span
};

/// Checks the degree rules, the common span, T ⊆ span and r ∈ span.
bool valid_relaxed_pair(const Digraph& d, const RelaxedPair& p, Vertex r);

/// Weakly connected components of (span, arcs).
int component_count(const Digraph& d, const std::vector<int>& arcs, std::uint32_t span);

/// Number of (in-cut, out-cut) pairs consistent with the two branchings and with r
/// on side 0 of both, found by trying every assignment of sides.
std::uint64_t count_consistent_cut_pairs(const Digraph& d, const RelaxedPair& p, Vertex r);

/// Every relaxed pair of d rooted at r (n <= 5, TooLarge otherwise).
std::vector<RelaxedPair> list_relaxed_pairs(const Digraph& d, Vertex r);

struct RelaxedCounts {
    std::uint64_t candidates = 0;  // relaxed pairs
    std::uint64_t solutions = 0;   // pairs whose branchings are both weakly connected
    std::uint64_t with_cuts = 0;   // pairs extended by consistent cuts

    friend bool operator==(const RelaxedCounts&, const RelaxedCounts&) = default;
};

/// Counts keyed by (union arc count, weight).
using RelaxedCensus = std::map<std::pair<int, int>, RelaxedCounts>;

RelaxedCensus census_relaxed_pairs(const Digraph& d, Vertex r, const WeightAssignment& w);

/// Counts of weight exactly W summed over all arc counts <= max_arcs.
RelaxedCounts enumerate_relaxed_pairs(const Digraph& d, Vertex r, const WeightAssignment& w, int W,
                                      int max_arcs = 1 << 30);

/// Minimum number of sets covering the universe (m <= 20); nullopt if impossible.
std::optional<int> brute_set_cover(const SetCoverInstance& sc);

/// Minimum 2-edge-connected spanning edge set (|E| <= 20); nullopt if none.
std::optional<int> brute_2ecss(const UndirectedGraph& g);

/// Minimum arc subset with the same reachability relation (|A| <= 22).
BruteResult brute_meg(const Digraph& d);

}  // namespace scss
