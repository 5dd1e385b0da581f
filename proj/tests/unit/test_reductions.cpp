#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "scss/exact.hpp"
#include "scss/generators.hpp"
#include "scss/oracle.hpp"
#include "scss/reductions.hpp"

using namespace scss;
using scss::testing::closure;
using scss::testing::error_kind;

namespace {

UndirectedGraph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= n; ++v) edges.push_back({std::min(v, v % n + 1), std::max(v, v % n + 1)});
    return UndirectedGraph(n, edges);
}

UndirectedGraph k4() { return UndirectedGraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

// Smallest arc subset with the transitive closure of d, by plain enumeration.
int min_equivalent(const Digraph& d) {
    const auto want = closure(d.vertex_count(), d.arcs());
    int best = d.arc_count();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << d.arc_count()); ++m) {
        const int size = __builtin_popcountll(m);
        if (size >= best) continue;
        if (closure(d.vertex_count(), scss::testing::pick(d, m)) == want) best = size;
    }
    return best;
}

bool is_dag(const Digraph& d) { return scss::testing::scc_count(d.vertex_count(), d.arcs()) == d.vertex_count(); }

}  // namespace

TEST_CASE("spanning image of the four-cycle") {
    const UndirectedGraph c4 = cycle_graph(4);
    const Digraph img = ecss_to_scsps(c4);
    CHECK(img.arc_count() == 8);
    CHECK(img.all_terminals());
    CHECK(img.arc(0) == Arc{1, 2});
    CHECK(img.arc(1) == Arc{2, 1});
    CHECK(solve_exact(img).optimum == 4);
    CHECK(brute_2ecss(c4) == 4);
    CHECK(solve_ecss(c4).optimum == 4);
}

TEST_CASE("graphs with a bridge have no 2-edge-connected subgraph") {
    const UndirectedGraph g(6, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}}, 10);
    CHECK_FALSE(two_edge_connected(g));
    const EcssResult r = solve_ecss(g);
    CHECK_FALSE(r.optimum.has_value());
    CHECK_FALSE(brute_2ecss(g).has_value());
    CHECK(error_kind([&] { lift_scsps_to_ecss(g, ArcSet::all(ecss_to_scsps(g))); }) == ErrorKind::InvalidGraph);
}

TEST_CASE("K4 through the spanning image") {
    const EcssResult r = solve_ecss(k4());
    CHECK(r.optimum == 4);
    CHECK(brute_2ecss(k4()) == 4);
    REQUIRE(r.edges.has_value());
    CHECK(r.edges->size() == 4);
    CHECK(two_edge_connected(k4(), *r.edges));
}

TEST_CASE("cycles") {
    for (int n = 3; n <= 7; ++n) {
        CHECK(solve_ecss(cycle_graph(n)).optimum == n);
        CHECK(brute_2ecss(cycle_graph(n)) == n);
    }
}

TEST_CASE("2-ECSS via the image matches brute force") {
    int checked = 0;
    for (std::uint64_t s = 0; s < 80; ++s) {
        const UndirectedGraph g = random_undirected(3 + static_cast<int>(s % 5), 0.6, 0, 9000 + s);
        if (g.edge_count() > 20) continue;
        ++checked;
        const EcssResult r = solve_ecss(g);
        CHECK(r.optimum == brute_2ecss(g));
        if (r.optimum) {
            REQUIRE(r.edges.has_value());
            CHECK(static_cast<int>(r.edges->size()) == *r.optimum);
            CHECK(two_edge_connected(g, *r.edges));
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("orienting and lifting between the two problems") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const UndirectedGraph g = random_undirected(4 + static_cast<int>(s % 4), 0.7, 0, 9100 + s);
        if (!two_edge_connected(g)) continue;
        const Digraph img = ecss_to_scsps(g);
        std::vector<int> all(static_cast<std::size_t>(g.edge_count()));
        for (int i = 0; i < g.edge_count(); ++i) all[static_cast<std::size_t>(i)] = i;
        const ArcSet oriented = robbins_orientation(g, all);
        CHECK(oriented.size() == g.edge_count());
        CHECK(strongly_connected(img, oriented));

        const ExactResult sol = solve_exact(img);
        REQUIRE(sol.solution.has_value());
        const std::vector<int> edges = lift_scsps_to_ecss(g, *sol.solution);
        CHECK(two_edge_connected(g, edges));
        CHECK(static_cast<int>(edges.size()) <= sol.solution->size());

        const std::vector<int> from_all = lift_scsps_to_ecss(g, ArcSet::all(img));
        CHECK(two_edge_connected(g, from_all));
    }
}

TEST_CASE("minimum equivalent graph of a DAG is its transitive reduction") {
    const Digraph d = Digraph::spanning(3, {{1, 2}, {2, 3}, {1, 3}});
    const MegResult r = solve_meg(d);
    CHECK(r.optimum == 2);
    CHECK(r.arcs == transitive_reduction_dag(d));
    for (std::uint64_t s = 0; s < 40; ++s) {
        const Digraph g = random_digraph(3 + static_cast<int>(s % 5), 0.3, 0, 0, 9200 + s);
        std::vector<Arc> forward;
        for (const Arc& a : g.arcs())
            if (a.tail < a.head) forward.push_back(a);
        const Digraph dag = Digraph::spanning(g.vertex_count(), forward);
        REQUIRE(is_dag(dag));
        const MegResult m = solve_meg(dag);
        CHECK(m.arcs == transitive_reduction_dag(dag));
        CHECK(m.optimum == min_equivalent(dag));
    }
}

TEST_CASE("minimum equivalent graph of a strongly connected digraph") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Digraph d = random_strongly_connected(3 + static_cast<int>(s % 4), 0.3, 0, 9300 + s);
        CHECK(solve_meg(d).optimum == solve_exact(d).optimum);
    }
}

TEST_CASE("minimum equivalent graph against enumeration") {
    int checked = 0;
    for (std::uint64_t s = 0; s < 120; ++s) {
        const Digraph d = random_digraph(2 + static_cast<int>(s % 6), 0.35, 0, 0, 9400 + s);
        if (d.arc_count() > 14) continue;
        ++checked;
        const int want = min_equivalent(d);
        for (MegEngine e : {MegEngine::Auto, MegEngine::Exact, MegEngine::Brute}) {
            const MegResult r = solve_meg(d, e);
            CHECK(r.optimum == want);
            CHECK(r.arcs.size() == want);
            CHECK(closure(d.vertex_count(), r.arcs.arcs(d)) == closure(d.vertex_count(), d.arcs()));
        }
        CHECK(brute_meg(d).optimum == want);
    }
    CHECK(checked >= 60);
}

TEST_CASE("set cover gadget structure") {
    const SetCoverInstance tiny{1, {{1}}, 1};
    const Digraph g = setcover_to_scss(tiny);
    CHECK(g.vertex_count() == 4);
    CHECK(g.arc_count() == 4);
    CHECK(g.terminals() == std::vector<Vertex>{3});
    CHECK(g.budget() == 1 + 2 + 1);

    for (std::uint64_t s = 0; s < 60; ++s) {
        const int n = 1 + static_cast<int>(s % 5), m = 1 + static_cast<int>(s % 4);
        const SetCoverInstance sc = random_set_cover(n, m, 0.4, 1, 9500 + s);
        const Digraph d = setcover_to_scss(sc);
        CHECK(d.vertex_count() == m + n + 2);
        CHECK(d.budget() == sc.budget + 2 * n + 1);
        std::vector<Vertex> us;
        for (int j = 1; j <= n; ++j) us.push_back(2 + j);
        CHECK(d.terminals() == us);
        // Every arc into u_j leaves some v_i, and every arc into v_i leaves s.
        for (const Arc& a : d.arcs()) {
            if (a.head >= 3 && a.head <= 2 + n) CHECK(a.tail > 2 + n);
            if (a.head > 2 + n) CHECK(a.tail == 1);
        }
        // Vertex cover {s} and V_U.
        for (const Arc& a : d.arcs()) {
            const bool covered = a.tail == 1 || a.head == 1 || (a.tail >= 3 && a.tail <= 2 + n) || (a.head >= 3 && a.head <= 2 + n);
            CHECK(covered);
        }
    }
}

TEST_CASE("set cover optimum shifts by 2n + 1") {
    int checked = 0;
    for (std::uint64_t s = 0; checked < 50; ++s) {
        const int n = 2 + static_cast<int>(s % 3), m = 1 + static_cast<int>(s % 4);
        const SetCoverInstance sc = random_set_cover(n, m, 0.45, 1, 9600 + s);
        const Digraph d = setcover_to_scss(sc);
        if (d.arc_count() > kBruteArcLimit) continue;
        ++checked;
        const auto k = brute_set_cover(sc);
        REQUIRE(k.has_value());
        CHECK(brute_scss(d).optimum == *k + 2 * n + 1);
        CHECK(solve_exact(d).optimum == *k + 2 * n + 1);
    }
}
