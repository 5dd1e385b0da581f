#pragma once

// Small independent reference computations shared by the unit tests. They use
// plain adjacency matrices and Floyd-Warshall closures, deliberately unrelated to
// the library's BFS-based code paths.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "scss/error.hpp"
#include "scss/graph.hpp"
#include "scss/rng.hpp"

namespace scss::testing {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix closure(int n, const std::vector<Arc>& arcs) {
    Matrix r(static_cast<std::size_t>(n) + 1, std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
    for (int v = 1; v <= n; ++v) r[v][v] = true;
    for (const Arc& a : arcs) r[a.tail][a.head] = true;
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            if (r[i][k])
                for (int j = 1; j <= n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

inline std::vector<Arc> pick(const Digraph& d, std::uint64_t mask) {
    std::vector<Arc> out;
    for (int i = 0; i < d.arc_count(); ++i)
        if (mask >> i & 1) out.push_back(d.arc(i));
    return out;
}

inline bool mutually_reachable(int n, const std::vector<Arc>& arcs, const std::vector<Vertex>& terminals) {
    const Matrix r = closure(n, arcs);
    for (Vertex a : terminals)
        for (Vertex b : terminals)
            if (!r[a][b]) return false;
    return true;
}

/// Minimum number of arcs among subsets whose terminals are mutually reachable,
/// or -1. Plain ascending loop over all 2^m masks.
inline int min_terminal_subgraph(const Digraph& d) {
    int best = -1;
    const std::uint64_t total = std::uint64_t{1} << d.arc_count();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const int size = __builtin_popcountll(mask);
        if (best >= 0 && size >= best) continue;
        if (mutually_reachable(d.vertex_count(), pick(d, mask), d.terminals())) best = size;
    }
    return best;
}

/// Kind of the scss::Error thrown by fn, or nullopt when it returns normally.
template <typename Fn>
std::optional<ErrorKind> error_kind(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline int scc_count(int n, const std::vector<Arc>& arcs) {
    const Matrix r = closure(n, arcs);
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    int count = 0;
    for (int v = 1; v <= n; ++v) {
        if (seen[v]) continue;
        ++count;
        for (int u = 1; u <= n; ++u)
            if (r[v][u] && r[u][v]) seen[u] = true;
    }
    return count;
}

// A strongly connected digraph whose vertices 1..core form a cycle and the rest
// hang off it as independent vertices, each with at least one arc in and out.
inline Digraph small_core(int n, int core, double extra, std::uint64_t seed) {
    Rng rng(seed);
    std::set<Arc> arcs;
    if (core >= 2)
        for (int v = 1; v <= core; ++v) arcs.insert({v, v % core + 1});
    for (int v = core + 1; v <= n; ++v) {
        arcs.insert({static_cast<Vertex>(rng.uniform(1, core)), v});
        arcs.insert({v, static_cast<Vertex>(rng.uniform(1, core))});
        for (int c = 1; c <= core; ++c) {
            if (rng.bernoulli(extra)) arcs.insert({c, v});
            if (rng.bernoulli(extra)) arcs.insert({v, c});
        }
    }
    return Digraph::spanning(n, {arcs.begin(), arcs.end()});
}

}  // namespace scss::testing
