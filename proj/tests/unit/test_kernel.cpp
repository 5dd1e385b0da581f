#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "scss/exact.hpp"
#include "scss/generators.hpp"
#include "scss/kernel.hpp"
#include "scss/oracle.hpp"
#include "scss/rng.hpp"

using namespace scss;
using scss::testing::error_kind;

namespace {

Digraph bidirected_star(int leaves, int budget) {
    std::vector<Arc> arcs;
    for (int v = 2; v <= leaves + 1; ++v) {
        arcs.push_back({1, v});
        arcs.push_back({v, 1});
    }
    return Digraph::spanning(leaves + 1, arcs, budget);
}

bool is_cover(const UndirectedGraph& g, std::uint32_t mask) {
    for (const Edge& e : g.edges())
        if (!(mask >> (e.u - 1) & 1) && !(mask >> (e.v - 1) & 1)) return false;
    return true;
}

int brute_cover_size(const UndirectedGraph& g) {
    int best = g.vertex_count();
    for (std::uint32_t m = 0; m < (1u << g.vertex_count()); ++m)
        if (__builtin_popcount(m) < best && is_cover(g, m)) best = __builtin_popcount(m);
    return best;
}

// The three expansion properties, checked from the definitions.
void audit_expansion(const BipartiteGraph& g, const ExpansionResult& r) {
    const std::set<int> a1(r.a1.begin(), r.a1.end()), b1(r.b1.begin(), r.b1.end());
    std::set<int> lefts, rights;
    for (auto [a, b] : r.matching) {
        CHECK(a1.count(a) == 1);
        CHECK(b1.count(b) == 1);
        const auto& nb = g.adj[static_cast<std::size_t>(a)];
        CHECK(std::find(nb.begin(), nb.end(), b) != nb.end());
        lefts.insert(a);
        rights.insert(b);
    }
    CHECK(lefts.size() == r.matching.size());
    CHECK(rights.size() == r.matching.size());
    CHECK(lefts == a1);
    for (int a = 0; a < g.left; ++a)
        for (int b : g.adj[static_cast<std::size_t>(a)])
            if (b1.count(b)) CHECK(a1.count(a) == 1);
    CHECK(g.right - b1.size() <= g.left - a1.size());
}

std::optional<int> optimum(const Digraph& d) {
    if (d.arc_count() <= kBruteArcLimit) return brute_scss(d).optimum;
    return solve_exact(d, {kDefaultExactCap, false}).optimum;
}

}  // namespace

TEST_CASE("vertex cover examples") {
    const UndirectedGraph star(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
    const VertexCoverResult s = vertex_cover(star);
    CHECK(s.exact);
    CHECK(s.cover == std::vector<Vertex>{1});
    const UndirectedGraph c4(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    CHECK(vertex_cover(c4).cover.size() == 2);
    CHECK(vertex_cover(UndirectedGraph(3, {})).cover.empty());
}

TEST_CASE("vertex cover against enumeration on twelve vertices") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const UndirectedGraph g = random_undirected(12, 0.25, 0, 7000 + s);
        const int truth = brute_cover_size(g);
        const VertexCoverResult exact = vertex_cover(g);
        const VertexCoverResult greedy = vertex_cover(g, 0);
        CHECK(exact.exact);
        CHECK_FALSE(greedy.exact);
        std::uint32_t em = 0, gm = 0;
        for (Vertex v : exact.cover) em |= 1u << (v - 1);
        for (Vertex v : greedy.cover) gm |= 1u << (v - 1);
        CHECK(is_cover(g, em));
        CHECK(is_cover(g, gm));
        CHECK(static_cast<int>(exact.cover.size()) == truth);
        CHECK(exact.cover.size() <= greedy.cover.size());
        CHECK(greedy.cover.size() <= 2 * exact.cover.size());
    }
}

TEST_CASE("expansion examples") {
    const BipartiteGraph none{2, 0, {{}, {}}};
    const ExpansionResult e = expansion(none);
    CHECK(e.a1.empty());
    CHECK(e.b1.empty());

    const BipartiteGraph fan{1, 3, {{0, 1, 2}}};
    const ExpansionResult f = expansion(fan);
    CHECK(f.a1 == std::vector<int>{0});
    CHECK(f.b1 == std::vector<int>{0, 1, 2});
    CHECK(f.matching.size() == 1);
    CHECK(check_expansion(fan, f).empty());
    audit_expansion(fan, f);

    ExpansionResult broken = f;
    broken.b1 = {0};
    CHECK_FALSE(check_expansion(fan, broken).empty());
}

TEST_CASE("expansion properties on random bipartite graphs") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        BipartiteGraph g;
        g.left = static_cast<int>(rng.uniform(0, 8));
        g.right = static_cast<int>(rng.uniform(0, 14));
        g.adj.resize(static_cast<std::size_t>(g.left));
        const double p = rng.unit() * 0.6;
        for (int a = 0; a < g.left; ++a)
            for (int b = 0; b < g.right; ++b)
                if (rng.bernoulli(p)) g.adj[static_cast<std::size_t>(a)].push_back(b);
        const ExpansionResult r = expansion(g);
        audit_expansion(g, r);
        const auto mate = maximum_matching(g);
        std::set<int> used;
        for (int a = 0; a < g.left; ++a)
            if (mate[static_cast<std::size_t>(a)] >= 0) CHECK(used.insert(mate[static_cast<std::size_t>(a)]).second);
    }
}

TEST_CASE("pair bipartite graph") {
    const Digraph d = bidirected_star(3, 6);
    const PairBipartite pb = build_pair_bipartite(d, {1});
    CHECK(pb.pairs == std::vector<std::pair<Vertex, Vertex>>{{1, 1}});
    CHECK(pb.independent == std::vector<Vertex>{2, 3, 4});
    CHECK(pb.graph.adj[0] == std::vector<int>{0, 1, 2});
    CHECK(error_kind([&] { build_pair_bipartite(d, {2}); }) == ErrorKind::InvalidGraph);

    for (std::uint64_t s = 0; s < 30; ++s) {
        const Digraph g = scss::testing::small_core(8, 2, 0.4, 7100 + s);
        const auto cover = vertex_cover(UndirectedGraph(8, g.underlying_edges())).cover;
        const PairBipartite b = build_pair_bipartite(g, cover);
        for (std::size_t l = 0; l < b.pairs.size(); ++l) {
            const auto [u, w] = b.pairs[l];
            for (std::size_t r = 0; r < b.independent.size(); ++r) {
                const Vertex v = b.independent[r];
                const bool want = g.find_arc(u, v) && g.find_arc(v, w);
                const auto& nb = b.graph.adj[l];
                CHECK((std::find(nb.begin(), nb.end(), static_cast<int>(r)) != nb.end()) == want);
            }
        }
    }
}

TEST_CASE("star kernel") {
    const Digraph d = bidirected_star(5, 10);
    const KernelResult k = kernelize(d);
    CHECK(k.trace.applied);
    CHECK(k.trace.cover.cover == std::vector<Vertex>{1});
    CHECK(k.trace.removed.size() == 4);
    CHECK(k.reduced.vertex_count() == 2);
    CHECK(k.reduced.budget() == 2);
    CHECK(brute_scss(k.reduced).optimum == 2);
    CHECK(brute_scss(d).optimum == 10);

    const ArcSet lifted = lift_solution(d, ArcSet::all(k.reduced), k.trace);
    CHECK(lifted.size() == 10);
    CHECK(strongly_connected(d, lifted));

    const KernelTrace back = trace_from_json(trace_to_json(k.trace));
    CHECK(lift_solution(d, ArcSet::all(k.reduced), back) == lifted);
}

TEST_CASE("kernel leaves small instances alone") {
    const Digraph c4 = Digraph::spanning(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}, 4);
    const KernelResult k = kernelize(c4);
    CHECK_FALSE(k.trace.applied);
    CHECK(k.trace.removed.empty());
    CHECK(k.reduced == c4);
    CHECK(lift_solution(c4, ArcSet::all(c4), k.trace) == ArcSet::all(c4));
}

TEST_CASE("kernel recognizes no-instances") {
    const Digraph path = Digraph::spanning(3, {{1, 2}, {2, 3}}, 5);
    const KernelResult k = kernelize(path);
    CHECK(k.trace.trivial_no);
    CHECK(k.reduced == canonical_no_instance());
    CHECK_FALSE(brute_scss(k.reduced).optimum.has_value());
    CHECK(error_kind([&] { lift_solution(path, ArcSet(), k.trace); }) == ErrorKind::InvalidReducedSolution);

    const KernelResult tight = kernelize(bidirected_star(5, 7));
    CHECK(tight.trace.trivial_no);

    CHECK(error_kind([] { kernelize(Digraph(3, {{1, 2}, {2, 1}}, {1, 2}, 2)); }) == ErrorKind::BadParams);
    const Digraph single = Digraph::spanning(1, {});
    CHECK(kernelize(single).reduced == single);
}

TEST_CASE("lifting rejects bad reduced solutions") {
    const Digraph d = bidirected_star(5, 10);
    const KernelResult k = kernelize(d);
    CHECK(error_kind([&] { lift_solution(d, ArcSet({0}), k.trace); }) == ErrorKind::InvalidReducedSolution);
    const KernelResult tight = kernelize(bidirected_star(5, 8));
    REQUIRE(tight.reduced.budget() == 0);
    CHECK(error_kind([&] { lift_solution(bidirected_star(5, 8), ArcSet::all(tight.reduced), tight.trace); }) ==
          ErrorKind::InvalidReducedSolution);
}

TEST_CASE("kernel preserves verdicts and lifts solutions on random instances") {
    int applied = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int n = 4 + static_cast<int>(s % 7);
        const Digraph base = s % 3 == 0 ? random_strongly_connected(n, 0.15, 0, 7200 + s)
                                        : scss::testing::small_core(n, 1 + static_cast<int>(s % 2), 0.2, 7200 + s);
        const auto opt = optimum(base);
        REQUIRE(opt.has_value());
        const Digraph d = base.with_budget(*opt - static_cast<int>(s % 2));
        const bool yes = *opt <= d.budget();

        const KernelResult k = kernelize(d);
        const int cover = static_cast<int>(k.trace.cover.cover.size());
        CHECK(k.reduced.vertex_count() <= cover + cover * cover);
        applied += k.trace.applied;
        const auto reduced_opt = optimum(k.reduced);
        const bool reduced_yes = reduced_opt && *reduced_opt <= k.reduced.budget();
        CHECK(reduced_yes == yes);

        if (reduced_yes) {
            const ExactResult sol = solve_exact(k.reduced);
            REQUIRE(sol.solution.has_value());
            const ArcSet lifted = lift_solution(d, *sol.solution, trace_from_json(trace_to_json(k.trace)));
            CHECK(strongly_connected(d, lifted));
            CHECK(lifted.size() <= d.budget());
            CHECK(lifted.size() == sol.solution->size() + 2 * static_cast<int>(k.trace.removed.size()));
        }
    }
    CHECK(applied >= 30);
}
