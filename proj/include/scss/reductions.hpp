#pragma once

#include <optional>
#include <vector>

#include "scss/exact.hpp"
#include "scss/graph.hpp"

namespace scss {

/// Universe {1..universe}, sets S_1..S_m, budget k.
struct SetCoverInstance {
    int universe = 0;
    std::vector<std::vector<int>> sets;
    int budget = 0;

    friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;
};

/// Both orientations of every edge; T = V, same budget. Arcs 2i and 2i+1 are
/// (u, v) and (v, u) for edge i = {u, v}.
Digraph ecss_to_scsps(const UndirectedGraph& g);

/// Strongly connected orientation of a bridgeless connected edge subset (DFS
/// tree edges downward, back edges upward), as arc indices of ecss_to_scsps(g).
ArcSet robbins_orientation(const UndirectedGraph& g, const std::vector<int>& edges);

/// Turns a strongly connected spanning arc set of ecss_to_scsps(g) into a
/// 2-edge-connected spanning edge set with at most as many edges as arcs, by
/// repeatedly trading one orientation of a bridge for an edge across its cut.
/// Throws InvalidGraph if g is not 2-edge-connected and InvalidReducedSolution if
/// the arc set is not strongly connected and spanning.
std::vector<int> lift_scsps_to_ecss(const UndirectedGraph& g, const ArcSet& solution);

struct EcssResult {
    std::optional<int> optimum;        // nullopt when g is not 2-edge-connected
    std::optional<std::vector<int>> edges;
};

/// 2-ECSS optimum through the SCSpS image and the exact engine.
EcssResult solve_ecss(const UndirectedGraph& g, int exact_cap = kDefaultExactCap);

enum class MegEngine { Auto, Exact, Brute };

struct MegResult {
    int optimum = 0;
    ArcSet arcs;
};

/// Minimum equivalent graph: an optimal spanning subgraph per strongly connected
/// component plus, for each arc of the transitive reduction of the condensation,
/// the lexicographically smallest original arc realizing it.
MegResult solve_meg(const Digraph& d, MegEngine engine = MegEngine::Auto, int exact_cap = kDefaultExactCap);

/// Vertices s = 1, t = 2, u_j = 2 + j (j in 1..n), v_i = 2 + n + i (i in 1..m).
/// Arcs (s, v_i), (v_i, u_j) for j in S_i, (u_j, t), (t, s). Terminals: all u_j.
/// Budget k + 2n + 1.
Digraph setcover_to_scss(const SetCoverInstance& sc);

}  // namespace scss
