#include "scss/reductions.hpp"

#include <algorithm>
#include <string>

#include "scss/error.hpp"
#include "scss/oracle.hpp"

namespace scss {

Digraph ecss_to_scsps(const UndirectedGraph& g) {
    std::vector<Arc> arcs;
    arcs.reserve(2 * g.edges().size());
    for (const Edge& e : g.edges()) {
        arcs.push_back({e.u, e.v});
        arcs.push_back({e.v, e.u});
    }
    return Digraph::spanning(g.vertex_count(), std::move(arcs), g.budget());
}

ArcSet robbins_orientation(const UndirectedGraph& g, const std::vector<int>& edges) {
    if (!two_edge_connected(g, edges)) throw Error(ErrorKind::InvalidGraph, "edge set is not 2-edge-connected");
    const int n = g.vertex_count();
    std::vector<std::vector<std::pair<Vertex, int>>> adj(static_cast<std::size_t>(n) + 1);
    for (int e : edges) {
        const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
        adj[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
        adj[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
    }
    std::vector<int> depth(static_cast<std::size_t>(n) + 1, -1);
    std::vector<bool> used(g.edges().size(), false);
    std::vector<int> arcs;
    // Orient each edge in the direction it is first traversed by the DFS.
    auto orient = [&](int e, Vertex from) {
        const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
        arcs.push_back(2 * e + (from == ed.u ? 0 : 1));
    };
    for (Vertex root = 1; root <= n; ++root) {
        if (depth[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<std::pair<Vertex, std::size_t>> st{{root, 0}};
        depth[static_cast<std::size_t>(root)] = 0;
        while (!st.empty()) {
            auto& [v, next] = st.back();
            const auto& nb = adj[static_cast<std::size_t>(v)];
            if (next == nb.size()) {
                st.pop_back();
                continue;
            }
            const auto [w, e] = nb[next++];
            if (used[static_cast<std::size_t>(e)]) continue;
            used[static_cast<std::size_t>(e)] = true;
            const Vertex from = v;
            orient(e, from);
            if (depth[static_cast<std::size_t>(w)] == -1) {
                depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(from)] + 1;
                st.push_back({w, 0});
            }
        }
    }
    return ArcSet(std::move(arcs));
}

std::vector<int> lift_scsps_to_ecss(const UndirectedGraph& g, const ArcSet& solution) {
    const Digraph image = ecss_to_scsps(g);
    if (!solution.valid_for(image)) throw Error(ErrorKind::InvalidReducedSolution, "arc index out of range");
    if (!strongly_connected(image, solution))
        throw Error(ErrorKind::InvalidReducedSolution, "arc set does not strongly connect every vertex");
    if (g.vertex_count() > 1 && !two_edge_connected(g)) throw Error(ErrorKind::InvalidGraph, "graph is not 2-edge-connected");

    // arcs[e] bit 0: (u, v) used; bit 1: (v, u) used.
    std::vector<int> use(g.edges().size(), 0);
    for (int a : solution.indices()) use[static_cast<std::size_t>(a / 2)] |= 1 << (a % 2);
    auto edge_list = [&] {
        std::vector<int> out;
        for (std::size_t e = 0; e < use.size(); ++e)
            if (use[e]) out.push_back(static_cast<int>(e));
        return out;
    };
    while (true) {
        const auto current = edge_list();
        const auto bridge_list = bridges(g, current);
        if (bridge_list.empty()) return current;
        const int b = bridge_list.front();
        const Edge& be = g.edges()[static_cast<std::size_t>(b)];
        // Side of be.u once the bridge is removed.
        std::vector<int> rest;
        for (int e : current)
            if (e != b) rest.push_back(e);
        std::vector<bool> side(static_cast<std::size_t>(g.vertex_count()) + 1, false);
        std::vector<Vertex> stack{be.u};
        side[static_cast<std::size_t>(be.u)] = true;
        std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(g.vertex_count()) + 1);
        for (int e : rest) {
            const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
            adj[static_cast<std::size_t>(ed.u)].push_back(ed.v);
            adj[static_cast<std::size_t>(ed.v)].push_back(ed.u);
        }
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : adj[static_cast<std::size_t>(v)])
                if (!side[static_cast<std::size_t>(w)]) {
                    side[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
        }
        int swap_edge = -1;
        for (int e = 0; e < g.edge_count() && swap_edge < 0; ++e) {
            if (e == b) continue;
            const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
            if (side[static_cast<std::size_t>(ed.u)] != side[static_cast<std::size_t>(ed.v)]) swap_edge = e;
        }
        if (swap_edge < 0) throw Error(ErrorKind::InternalInconsistency, "no edge crosses a bridge cut");
        if (use[static_cast<std::size_t>(b)] != 3) throw Error(ErrorKind::InternalInconsistency, "bridge used in one direction only");
        // Both sides are strongly connected on their own; keep u -> v across the
        // bridge and replace v -> u by the crossing edge oriented toward u's side.
        use[static_cast<std::size_t>(b)] = 1;
        const Edge& se = g.edges()[static_cast<std::size_t>(swap_edge)];
        use[static_cast<std::size_t>(swap_edge)] |= side[static_cast<std::size_t>(se.u)] ? 2 : 1;
    }
}

EcssResult solve_ecss(const UndirectedGraph& g, int exact_cap) {
    EcssResult result;
    if (g.vertex_count() <= 1) {
        result.optimum = 0;
        result.edges = std::vector<int>{};
        return result;
    }
    if (!two_edge_connected(g)) return result;
    const Digraph image = ecss_to_scsps(g);
    ExactOptions opts;
    opts.cap = exact_cap;
    const ExactResult exact = solve_exact(image, opts);
    if (!exact.optimum || !exact.solution) throw Error(ErrorKind::InternalInconsistency, "2-edge-connected graph without strongly connected orientation");
    auto edges = lift_scsps_to_ecss(g, *exact.solution);
    if (static_cast<int>(edges.size()) != *exact.optimum)
        throw Error(ErrorKind::InternalInconsistency, "lifted edge set size differs from the optimum");
    result.optimum = *exact.optimum;
    result.edges = std::move(edges);
    return result;
}

MegResult solve_meg(const Digraph& d, MegEngine engine, int exact_cap) {
    const Condensation c = condensation(d);
    MegResult result;
    std::vector<int> chosen;
    std::vector<std::vector<Vertex>> members(static_cast<std::size_t>(c.component_count));
    for (Vertex v = 1; v <= d.vertex_count(); ++v) members[static_cast<std::size_t>(c.component[static_cast<std::size_t>(v)])].push_back(v);
    for (const auto& comp : members) {
        if (comp.size() <= 1) continue;
        std::vector<int> arc_map;
        const Digraph sub = induced_spanning_subdigraph(d, comp, &arc_map);
        const bool use_exact = engine == MegEngine::Exact ||
                               (engine == MegEngine::Auto && sub.vertex_count() <= std::min(exact_cap, kMaxUniverse));
        ArcSet local;
        if (use_exact) {
            ExactOptions opts;
            opts.cap = exact_cap;
            const ExactResult r = solve_exact(sub, opts);
            if (!r.solution) throw Error(ErrorKind::InternalInconsistency, "strong component without spanning subgraph");
            local = *r.solution;
        } else if (engine == MegEngine::Brute || sub.arc_count() <= kBruteArcLimit) {
            const BruteResult r = brute_scss(sub);
            if (!r.optimum) throw Error(ErrorKind::InternalInconsistency, "strong component without spanning subgraph");
            local = r.witness;
        } else {
            throw Error(ErrorKind::NoApplicableEngine, "component with " + std::to_string(sub.vertex_count()) + " vertices exceeds every engine");
        }
        for (int a : local.indices()) chosen.push_back(arc_map[static_cast<std::size_t>(a)]);
    }
    std::vector<Arc> qarcs;
    for (auto [a, b] : c.quotient_arcs) qarcs.push_back({a + 1, b + 1});
    const Digraph quotient = Digraph::spanning(c.component_count, qarcs);
    const ArcSet kept = transitive_reduction_dag(quotient);
    for (int qi : kept.indices()) chosen.push_back(c.witness[static_cast<std::size_t>(qi)]);
    result.arcs = ArcSet(std::move(chosen));
    result.optimum = result.arcs.size();
    return result;
}

Digraph setcover_to_scss(const SetCoverInstance& sc) {
    const int n = sc.universe;
    const int m = static_cast<int>(sc.sets.size());
    if (n < 0 || sc.budget < 0) throw Error(ErrorKind::BadParams, "negative set cover parameters");
    const Vertex s = 1, t = 2;
    auto u = [&](int j) { return 2 + j; };
    auto v = [&](int i) { return 2 + n + i; };
    std::vector<Arc> arcs;
    for (int i = 1; i <= m; ++i) {
        const auto& set = sc.sets[static_cast<std::size_t>(i - 1)];
        if (set.empty()) throw Error(ErrorKind::BadParams, "empty set in family");
        arcs.push_back({s, v(i)});
        std::vector<int> elems = set;
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        for (int j : elems) {
            if (j < 1 || j > n) throw Error(ErrorKind::RangeError, "set element " + std::to_string(j) + " outside universe");
            arcs.push_back({v(i), u(j)});
        }
    }
    for (int j = 1; j <= n; ++j) arcs.push_back({u(j), t});
    arcs.push_back({t, s});
    std::vector<Vertex> terminals;
    for (int j = 1; j <= n; ++j) terminals.push_back(u(j));
    return Digraph(m + n + 2, std::move(arcs), std::move(terminals), sc.budget + 2 * n + 1);
}

}  // namespace scss
