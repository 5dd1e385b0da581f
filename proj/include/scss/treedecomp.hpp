#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "scss/graph.hpp"

namespace scss {

/// Unrooted tree decomposition; bags are sorted vertex lists, edges join bag indices (0-based).
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> edges;

    int width() const;

    friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

enum class ViolationKind { NotATree, VertexCoverage, EdgeCoverage, Connectivity, VertexRange };

struct Violation {
    ViolationKind kind;
    std::string detail;
};

/// Checks the decomposition against the underlying undirected graph of d.
/// Empty result iff valid.
std::vector<Violation> validate(const TreeDecomposition& td, const Digraph& d);

/// Min-fill elimination ordering on the underlying graph (ties: min degree, then smallest id).
TreeDecomposition heuristic_td(const Digraph& d);

enum class NodeKind { Leaf, IntroduceVertex, IntroduceArc, Forget, Join };

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    std::vector<Vertex> bag;  // sorted
    Vertex vertex = 0;        // IntroduceVertex / Forget
    int arc = -1;             // IntroduceArc: index into Digraph::arcs()
    std::array<int, 2> children{-1, -1};
};

/// Rooted binary decomposition with typed nodes. Nodes are stored children-first:
/// every child index is smaller than its parent's, and the root is the last node.
class NiceTreeDecomposition {
public:
    NiceTreeDecomposition() = default;
    explicit NiceTreeDecomposition(std::vector<NiceNode> nodes) : nodes_(std::move(nodes)) {}

    const std::vector<NiceNode>& nodes() const noexcept { return nodes_; }
    const NiceNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    int size() const noexcept { return static_cast<int>(nodes_.size()); }
    int root() const noexcept { return size() - 1; }
    int width() const;
    std::size_t count(NodeKind kind) const;

private:
    std::vector<NiceNode> nodes_;
};

/// Throws InvalidDecomposition when td is not valid for d. Width is preserved.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, const Digraph& d);

/// Structural audit of every nice-decomposition invariant; empty iff all hold.
std::vector<std::string> validate_nice(const NiceTreeDecomposition& ntd, const Digraph& d);

}  // namespace scss
