#include "scss/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

#include "scss/error.hpp"

namespace scss {

namespace {

std::string arc_text(const Arc& a) {
    return std::to_string(a.tail) + "->" + std::to_string(a.head);
}

}  // namespace

Digraph::Digraph(int n, std::vector<Arc> arcs, std::vector<Vertex> terminals, int budget)
    : n_(n), arcs_(std::move(arcs)), terminals_(std::move(terminals)), budget_(budget) {
    if (n_ < 0) throw Error(ErrorKind::RangeError, "negative vertex count");
    if (budget_ < 0) throw Error(ErrorKind::RangeError, "negative budget");
    out_.assign(static_cast<std::size_t>(n_) + 1, {});
    in_.assign(static_cast<std::size_t>(n_) + 1, {});
    std::vector<Arc> sorted = arcs_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::InvalidGraph, "parallel arc " + arc_text(*std::adjacent_find(sorted.begin(), sorted.end())));
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& a = arcs_[i];
        if (a.tail < 1 || a.tail > n_ || a.head < 1 || a.head > n_)
            throw Error(ErrorKind::RangeError, "arc " + arc_text(a) + " outside 1.." + std::to_string(n_));
        if (a.tail == a.head) throw Error(ErrorKind::InvalidGraph, "self-loop at " + std::to_string(a.tail));
        out_[static_cast<std::size_t>(a.tail)].push_back(static_cast<int>(i));
        in_[static_cast<std::size_t>(a.head)].push_back(static_cast<int>(i));
    }
    std::sort(terminals_.begin(), terminals_.end());
    terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
    terminal_mask_.assign(static_cast<std::size_t>(n_) + 1, false);
    for (Vertex t : terminals_) {
        if (t < 1 || t > n_) throw Error(ErrorKind::RangeError, "terminal " + std::to_string(t) + " out of range");
        terminal_mask_[static_cast<std::size_t>(t)] = true;
    }
}

Digraph Digraph::spanning(int n, std::vector<Arc> arcs, int budget) {
    std::vector<Vertex> all(static_cast<std::size_t>(std::max(n, 0)));
    for (int v = 1; v <= n; ++v) all[static_cast<std::size_t>(v - 1)] = v;
    return Digraph(n, std::move(arcs), std::move(all), budget);
}

bool Digraph::is_terminal(Vertex v) const {
    return v >= 1 && v <= n_ && terminal_mask_[static_cast<std::size_t>(v)];
}

std::optional<int> Digraph::find_arc(Vertex tail, Vertex head) const {
    if (tail < 1 || tail > n_) return std::nullopt;
    for (int idx : out_[static_cast<std::size_t>(tail)])
        if (arcs_[static_cast<std::size_t>(idx)].head == head) return idx;
    return std::nullopt;
}

Digraph Digraph::with_budget(int budget) const { return Digraph(n_, arcs_, terminals_, budget); }

Digraph Digraph::with_terminals(std::vector<Vertex> terminals) const {
    return Digraph(n_, arcs_, std::move(terminals), budget_);
}

std::vector<Edge> Digraph::underlying_edges() const {
    std::vector<Edge> edges;
    edges.reserve(arcs_.size());
    for (const Arc& a : arcs_) edges.push_back({std::min(a.tail, a.head), std::max(a.tail, a.head)});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

UndirectedGraph::UndirectedGraph(int n, std::vector<Edge> edges, int budget)
    : n_(n), edges_(std::move(edges)), budget_(budget) {
    if (n_ < 0) throw Error(ErrorKind::RangeError, "negative vertex count");
    if (budget_ < 0) throw Error(ErrorKind::RangeError, "negative budget");
    incident_.assign(static_cast<std::size_t>(n_) + 1, {});
    std::vector<Edge> normalized;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_)
            throw Error(ErrorKind::RangeError, "edge outside 1.." + std::to_string(n_));
        if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loop at " + std::to_string(e.u));
        normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
        incident_[static_cast<std::size_t>(e.u)].push_back(static_cast<int>(i));
        incident_[static_cast<std::size_t>(e.v)].push_back(static_cast<int>(i));
    }
    std::sort(normalized.begin(), normalized.end());
    if (std::adjacent_find(normalized.begin(), normalized.end()) != normalized.end())
        throw Error(ErrorKind::InvalidGraph, "parallel edge");
}

Vertex UndirectedGraph::other_end(int edge, Vertex v) const {
    const Edge& e = edges_.at(static_cast<std::size_t>(edge));
    return e.u == v ? e.v : e.u;
}

ArcSet::ArcSet(std::vector<int> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw Error(ErrorKind::RangeError, "duplicate arc index in arc set");
    if (!indices_.empty() && indices_.front() < 0) throw Error(ErrorKind::RangeError, "negative arc index");
}

ArcSet ArcSet::all(const Digraph& d) {
    std::vector<int> idx(static_cast<std::size_t>(d.arc_count()));
    for (int i = 0; i < d.arc_count(); ++i) idx[static_cast<std::size_t>(i)] = i;
    return ArcSet(std::move(idx));
}

ArcSet ArcSet::from_arcs(const Digraph& d, std::span<const Arc> arcs) {
    std::vector<int> idx;
    for (const Arc& a : arcs) {
        auto found = d.find_arc(a.tail, a.head);
        if (!found) throw Error(ErrorKind::RangeError, "arc " + arc_text(a) + " not in graph");
        idx.push_back(*found);
    }
    return ArcSet(std::move(idx));
}

bool ArcSet::contains(int index) const { return std::binary_search(indices_.begin(), indices_.end(), index); }

bool ArcSet::valid_for(const Digraph& d) const {
    return indices_.empty() || (indices_.front() >= 0 && indices_.back() < d.arc_count());
}

std::vector<Arc> ArcSet::arcs(const Digraph& d) const {
    std::vector<Arc> out;
    out.reserve(indices_.size());
    for (int i : indices_) out.push_back(d.arc(i));
    return out;
}

std::vector<bool> reachable_from(const Digraph& d, const ArcSet& x, Vertex source, bool reverse) {
    const auto n = static_cast<std::size_t>(d.vertex_count());
    std::vector<std::vector<Vertex>> adj(n + 1);
    for (int idx : x.indices()) {
        const Arc& a = d.arc(idx);
        if (reverse)
            adj[static_cast<std::size_t>(a.head)].push_back(a.tail);
        else
            adj[static_cast<std::size_t>(a.tail)].push_back(a.head);
    }
    std::vector<bool> seen(n + 1, false);
    std::vector<Vertex> stack{source};
    seen[static_cast<std::size_t>(source)] = true;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

bool terminals_mutually_reachable(const Digraph& d, const ArcSet& x, std::span<const Vertex> terminals) {
    if (terminals.size() <= 1) return true;
    // Mutual reachability of T is equivalent to every terminal reaching and
    // being reached from one fixed terminal.
    Vertex hub = terminals.front();
    auto fwd = reachable_from(d, x, hub, false);
    auto bwd = reachable_from(d, x, hub, true);
    return std::all_of(terminals.begin(), terminals.end(), [&](Vertex t) {
        return fwd[static_cast<std::size_t>(t)] && bwd[static_cast<std::size_t>(t)];
    });
}

bool strongly_connected(const Digraph& d, const ArcSet& x) {
    std::vector<Vertex> all(static_cast<std::size_t>(d.vertex_count()));
    for (int v = 1; v <= d.vertex_count(); ++v) all[static_cast<std::size_t>(v - 1)] = v;
    return terminals_mutually_reachable(d, x, all);
}

bool strongly_connected(const Digraph& d) { return strongly_connected(d, ArcSet::all(d)); }

std::vector<std::vector<bool>> reachability_matrix(const Digraph& d, const ArcSet& x) {
    const int n = d.vertex_count();
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) reach[static_cast<std::size_t>(v)] = reachable_from(d, x, v);
    return reach;
}

Condensation condensation(const Digraph& d) {
    const int n = d.vertex_count();
    const auto sz = static_cast<std::size_t>(n) + 1;
    // Iterative Tarjan.
    std::vector<int> index(sz, -1), low(sz, 0), comp(sz, -1);
    std::vector<bool> on_stack(sz, false);
    std::vector<Vertex> stack;
    std::vector<std::pair<Vertex, std::size_t>> call;
    int counter = 0;
    int found = 0;
    for (Vertex root = 1; root <= n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, next] = call.back();
            const auto vi = static_cast<std::size_t>(v);
            if (next == 0 && index[vi] == -1) {
                index[vi] = low[vi] = counter++;
                stack.push_back(v);
                on_stack[vi] = true;
            }
            const auto& out = d.out_arcs(v);
            if (next < out.size()) {
                Vertex w = d.arc(out[next]).head;
                ++next;
                const auto wi = static_cast<std::size_t>(w);
                if (index[wi] == -1) {
                    call.push_back({w, 0});
                } else if (on_stack[wi]) {
                    low[vi] = std::min(low[vi], index[wi]);
                }
                continue;
            }
            if (low[vi] == index[vi]) {
                while (true) {
                    Vertex w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    comp[static_cast<std::size_t>(w)] = found;
                    if (w == v) break;
                }
                ++found;
            }
            Vertex done = v;
            call.pop_back();
            if (!call.empty()) {
                const auto pi = static_cast<std::size_t>(call.back().first);
                low[pi] = std::min(low[pi], low[static_cast<std::size_t>(done)]);
            }
        }
    }
    Condensation c;
    c.component_count = found;
    c.component.assign(sz, -1);
    // Tarjan emits components in reverse topological order.
    for (int v = 1; v <= n; ++v)
        c.component[static_cast<std::size_t>(v)] = found - 1 - comp[static_cast<std::size_t>(v)];
    std::map<std::pair<int, int>, int> best;
    for (int i = 0; i < d.arc_count(); ++i) {
        const Arc& a = d.arc(i);
        int cu = c.component[static_cast<std::size_t>(a.tail)];
        int cv = c.component[static_cast<std::size_t>(a.head)];
        if (cu == cv) continue;
        auto [it, inserted] = best.try_emplace({cu, cv}, i);
        if (!inserted && a < d.arc(it->second)) it->second = i;
    }
    for (const auto& [q, w] : best) {
        c.quotient_arcs.push_back(q);
        c.witness.push_back(w);
    }
    return c;
}

ArcSet transitive_reduction_dag(const Digraph& d) {
    const int n = d.vertex_count();
    // Kahn order; a leftover vertex means a cycle.
    std::vector<int> indeg(static_cast<std::size_t>(n) + 1, 0);
    for (const Arc& a : d.arcs()) ++indeg[static_cast<std::size_t>(a.head)];
    std::vector<Vertex> order;
    for (Vertex v = 1; v <= n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (int idx : d.out_arcs(order[i])) {
            Vertex w = d.arc(idx).head;
            if (--indeg[static_cast<std::size_t>(w)] == 0) order.push_back(w);
        }
    }
    if (static_cast<int>(order.size()) != n) throw Error(ErrorKind::CyclicInput, "transitive reduction needs an acyclic digraph");

    const std::size_t words = (static_cast<std::size_t>(n) + 64) / 64;
    std::vector<std::vector<std::uint64_t>> reach(static_cast<std::size_t>(n) + 1, std::vector<std::uint64_t>(words, 0));
    auto set_bit = [](std::vector<std::uint64_t>& row, Vertex v) {
        row[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (static_cast<unsigned>(v) % 64);
    };
    auto has_bit = [](const std::vector<std::uint64_t>& row, Vertex v) {
        return (row[static_cast<std::size_t>(v) / 64] >> (static_cast<unsigned>(v) % 64)) & 1U;
    };
    // reach[v] = vertices reachable from v by a path of length >= 1.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto& row = reach[static_cast<std::size_t>(*it)];
        for (int idx : d.out_arcs(*it)) {
            Vertex w = d.arc(idx).head;
            set_bit(row, w);
            const auto& sub = reach[static_cast<std::size_t>(w)];
            for (std::size_t k = 0; k < words; ++k) row[k] |= sub[k];
        }
    }
    std::vector<int> keep;
    for (int i = 0; i < d.arc_count(); ++i) {
        const Arc& a = d.arc(i);
        bool redundant = false;
        for (int idx : d.out_arcs(a.tail)) {
            Vertex w = d.arc(idx).head;
            if (w != a.head && has_bit(reach[static_cast<std::size_t>(w)], a.head)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) keep.push_back(i);
    }
    return ArcSet(std::move(keep));
}

Digraph induced_spanning_subdigraph(const Digraph& d, std::span<const Vertex> vertices, std::vector<int>* arc_map) {
    std::vector<int> local(static_cast<std::size_t>(d.vertex_count()) + 1, 0);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i) + 1;
    std::vector<Arc> arcs;
    if (arc_map) arc_map->clear();
    for (int i = 0; i < d.arc_count(); ++i) {
        const Arc& a = d.arc(i);
        int lu = local[static_cast<std::size_t>(a.tail)];
        int lv = local[static_cast<std::size_t>(a.head)];
        if (lu && lv) {
            arcs.push_back({lu, lv});
            if (arc_map) arc_map->push_back(i);
        }
    }
    return Digraph::spanning(static_cast<int>(vertices.size()), std::move(arcs));
}

namespace {

// Low-link bridge search restricted to an edge subset; returns bridge edge ids.
std::vector<int> find_bridges(const UndirectedGraph& g, std::span<const int> subset, int* components) {
    const int n = g.vertex_count();
    const auto sz = static_cast<std::size_t>(n) + 1;
    std::vector<std::vector<std::pair<Vertex, int>>> adj(sz);
    for (int e : subset) {
        const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
        adj[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
        adj[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
    }
    std::vector<int> disc(sz, -1), low(sz, 0);
    std::vector<int> result;
    int timer = 0;
    int comps = 0;
    struct Frame {
        Vertex v;
        int parent_edge;
        std::size_t next;
    };
    std::vector<Frame> st;
    for (Vertex s = 1; s <= n; ++s) {
        if (disc[static_cast<std::size_t>(s)] != -1) continue;
        ++comps;
        st.push_back({s, -1, 0});
        disc[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = timer++;
        while (!st.empty()) {
            Frame& f = st.back();
            const auto vi = static_cast<std::size_t>(f.v);
            if (f.next < adj[vi].size()) {
                auto [w, e] = adj[vi][f.next++];
                if (e == f.parent_edge) continue;
                const auto wi = static_cast<std::size_t>(w);
                if (disc[wi] == -1) {
                    disc[wi] = low[wi] = timer++;
                    st.push_back({w, e, 0});
                } else {
                    low[vi] = std::min(low[vi], disc[wi]);
                }
                continue;
            }
            Frame done = f;
            st.pop_back();
            if (!st.empty()) {
                const auto pi = static_cast<std::size_t>(st.back().v);
                const auto di = static_cast<std::size_t>(done.v);
                low[pi] = std::min(low[pi], low[di]);
                if (low[di] > disc[pi]) result.push_back(done.parent_edge);
            }
        }
    }
    if (components) *components = comps;
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace

bool connected(const UndirectedGraph& g, std::span<const int> edge_subset) {
    int comps = 0;
    find_bridges(g, edge_subset, &comps);
    return comps <= 1;
}

std::vector<int> bridges(const UndirectedGraph& g, std::span<const int> edge_subset) {
    return find_bridges(g, edge_subset, nullptr);
}

bool two_edge_connected(const UndirectedGraph& g, std::span<const int> edge_subset) {
    int comps = 0;
    auto b = find_bridges(g, edge_subset, &comps);
    return comps <= 1 && b.empty();
}

bool two_edge_connected(const UndirectedGraph& g) {
    std::vector<int> all(static_cast<std::size_t>(g.edge_count()));
    for (int i = 0; i < g.edge_count(); ++i) all[static_cast<std::size_t>(i)] = i;
    return two_edge_connected(g, all);
}

}  // namespace scss
