#pragma once

#include <cstdint>

#include "scss/graph.hpp"
#include "scss/reductions.hpp"
#include "scss/treedecomp.hpp"

namespace scss {

/// Each ordered pair (u, v), u != v, becomes an arc with probability p.
/// `terminals` random distinct terminals (all vertices when <= 0 or >= n).
Digraph random_digraph(int n, double p, int terminals, int budget, std::uint64_t seed);

/// A random Hamiltonian cycle plus each remaining ordered pair with probability p; T = V.
Digraph random_strongly_connected(int n, double p, int budget, std::uint64_t seed);

UndirectedGraph random_undirected(int n, double p, int budget, std::uint64_t seed);

struct KTreeInstance {
    Digraph digraph;
    TreeDecomposition td;
};

/// Random partial k-tree: each k-tree edge survives with probability `keep` and is
/// then oriented both ways with probability `both`, otherwise one random way. The
/// decomposition has width min(k, n-1).
KTreeInstance random_ktree(int n, int k, double keep, double both, int terminals, int budget, std::uint64_t seed);

/// Each element joins each set with probability p; every set is forced nonempty and
/// every element is placed in at least one set.
SetCoverInstance random_set_cover(int n, int m, double p, int budget, std::uint64_t seed);

}  // namespace scss
