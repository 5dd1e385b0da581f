#include "scss/generators.hpp"

#include <algorithm>
#include <numeric>

#include "scss/error.hpp"
#include "scss/rng.hpp"

namespace scss {

namespace {

void check(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::BadParams, what);
}

std::vector<Vertex> shuffled_vertices(int n, Rng& rng) {
    std::vector<Vertex> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    for (int i = n - 1; i > 0; --i) std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(rng.uniform(0, i))]);
    return v;
}

std::vector<Vertex> pick_terminals(int n, int count, Rng& rng) {
    if (count <= 0 || count >= n) {
        std::vector<Vertex> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 1);
        return all;
    }
    auto perm = shuffled_vertices(n, rng);
    perm.resize(static_cast<std::size_t>(count));
    std::sort(perm.begin(), perm.end());
    return perm;
}

}  // namespace

Digraph random_digraph(int n, double p, int terminals, int budget, std::uint64_t seed) {
    check(n >= 0 && p >= 0 && p <= 1 && budget >= 0, "random digraph needs n >= 0, p in [0,1], t >= 0");
    Rng rng(seed);
    std::vector<Arc> arcs;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = 1; v <= n; ++v)
            if (u != v && rng.bernoulli(p)) arcs.push_back({u, v});
    auto t = pick_terminals(n, terminals, rng);
    return Digraph(n, std::move(arcs), std::move(t), budget);
}

Digraph random_strongly_connected(int n, double p, int budget, std::uint64_t seed) {
    check(n >= 1 && p >= 0 && p <= 1 && budget >= 0, "strongly connected generator needs n >= 1, p in [0,1]");
    Rng rng(seed);
    const auto order = shuffled_vertices(n, rng);
    std::vector<std::vector<bool>> has(static_cast<std::size_t>(n) + 1, std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
    if (n >= 2)
        for (int i = 0; i < n; ++i) {
            const Vertex a = order[static_cast<std::size_t>(i)];
            const Vertex b = order[static_cast<std::size_t>((i + 1) % n)];
            has[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
        }
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = 1; v <= n; ++v)
            if (u != v && rng.bernoulli(p)) has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
    std::vector<Arc> arcs;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = 1; v <= n; ++v)
            if (has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) arcs.push_back({u, v});
    return Digraph::spanning(n, std::move(arcs), budget);
}

UndirectedGraph random_undirected(int n, double p, int budget, std::uint64_t seed) {
    check(n >= 0 && p >= 0 && p <= 1 && budget >= 0, "random graph needs n >= 0, p in [0,1], t >= 0");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            if (rng.bernoulli(p)) edges.push_back({u, v});
    return UndirectedGraph(n, std::move(edges), budget);
}

KTreeInstance random_ktree(int n, int k, double keep, double both, int terminals, int budget, std::uint64_t seed) {
    check(n >= 1 && k >= 1 && keep >= 0 && keep <= 1 && both >= 0 && both <= 1 && budget >= 0,
          "k-tree generator needs n >= 1, k >= 1, probabilities in [0,1]");
    Rng rng(seed);
    const auto label = shuffled_vertices(n, rng);
    const int base = std::min(n, k + 1);
    std::vector<Edge> edges;
    KTreeInstance out;
    std::vector<Vertex> first(label.begin(), label.begin() + base);
    for (int i = 0; i < base; ++i)
        for (int j = i + 1; j < base; ++j) edges.push_back({first[static_cast<std::size_t>(i)], first[static_cast<std::size_t>(j)]});
    std::sort(first.begin(), first.end());
    out.td.bags.push_back(first);

    struct Clique {
        std::vector<Vertex> members;
        int bag;
    };
    std::vector<Clique> cliques;
    if (n > base)
        for (int drop = 0; drop < base; ++drop) {
            Clique c{{}, 0};
            for (int i = 0; i < base; ++i)
                if (i != drop) c.members.push_back(first[static_cast<std::size_t>(i)]);
            cliques.push_back(std::move(c));
        }
    for (int idx = base; idx < n; ++idx) {
        const Vertex v = label[static_cast<std::size_t>(idx)];
        const Clique host = cliques[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cliques.size()) - 1))];
        for (Vertex w : host.members) edges.push_back({std::min(v, w), std::max(v, w)});
        std::vector<Vertex> bag = host.members;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        const int bag_index = static_cast<int>(out.td.bags.size());
        out.td.bags.push_back(bag);
        out.td.edges.push_back({host.bag, bag_index});
        for (std::size_t drop = 0; drop < host.members.size(); ++drop) {
            Clique c{{}, bag_index};
            for (std::size_t i = 0; i < host.members.size(); ++i)
                if (i != drop) c.members.push_back(host.members[i]);
            c.members.push_back(v);
            cliques.push_back(std::move(c));
        }
    }
    std::sort(edges.begin(), edges.end());
    std::vector<Arc> arcs;
    for (const Edge& e : edges) {
        if (!rng.bernoulli(keep)) continue;
        if (rng.bernoulli(both)) {
            arcs.push_back({e.u, e.v});
            arcs.push_back({e.v, e.u});
        } else if (rng.bernoulli(0.5)) {
            arcs.push_back({e.u, e.v});
        } else {
            arcs.push_back({e.v, e.u});
        }
    }
    auto t = pick_terminals(n, terminals, rng);
    out.digraph = Digraph(n, std::move(arcs), std::move(t), budget);
    return out;
}

SetCoverInstance random_set_cover(int n, int m, double p, int budget, std::uint64_t seed) {
    check(n >= 1 && m >= 1 && p >= 0 && p <= 1 && budget >= 0, "set cover generator needs n, m >= 1, p in [0,1]");
    Rng rng(seed);
    SetCoverInstance sc;
    sc.universe = n;
    sc.budget = budget;
    sc.sets.assign(static_cast<std::size_t>(m), {});
    for (int i = 0; i < m; ++i)
        for (int j = 1; j <= n; ++j)
            if (rng.bernoulli(p)) sc.sets[static_cast<std::size_t>(i)].push_back(j);
    for (int j = 1; j <= n; ++j) {
        bool covered = false;
        for (const auto& s : sc.sets) covered |= std::find(s.begin(), s.end(), j) != s.end();
        if (!covered) {
            auto& s = sc.sets[static_cast<std::size_t>(rng.uniform(0, m - 1))];
            s.insert(std::upper_bound(s.begin(), s.end(), j), j);
        }
    }
    for (auto& s : sc.sets)
        if (s.empty()) s.push_back(static_cast<int>(rng.uniform(1, n)));
    return sc;
}

}  // namespace scss
