#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "scss/exact.hpp"
#include "scss/generators.hpp"
#include "scss/oracle.hpp"

using namespace scss;
using scss::testing::error_kind;

namespace {

Digraph cycle(int n) {
    std::vector<Arc> arcs;
    for (int v = 1; v <= n; ++v) arcs.push_back({v, v % n + 1});
    return Digraph::spanning(n, arcs);
}

Digraph bidirected_star(int n) {
    std::vector<Arc> arcs;
    for (int v = 2; v <= n; ++v) {
        arcs.push_back({1, v});
        arcs.push_back({v, 1});
    }
    return Digraph::spanning(n, arcs);
}

std::uint32_t bit(Vertex v) { return std::uint32_t{1} << (v - 1); }

// Interior sets of all simple s->t paths (s != t) and simple cycles through s,
// found by depth-first search over the adjacency matrix.
std::vector<std::vector<bool>> enumerate_paths(const Digraph& d) {
    const int n = d.vertex_count();
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n * n), std::vector<bool>(subsets, false));
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n) + 1, std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
    for (const Arc& a : d.arcs()) adj[a.tail][a.head] = true;
    for (Vertex s = 1; s <= n; ++s) {
        std::function<void(Vertex, std::uint32_t)> walk = [&](Vertex at, std::uint32_t interior) {
            for (Vertex nxt = 1; nxt <= n; ++nxt) {
                if (!adj[at][nxt] || (interior & bit(nxt))) continue;
                seen[static_cast<std::size_t>((s - 1) * n + (nxt - 1))][interior] = true;
                if (nxt == s) continue;
                walk(nxt, interior | bit(nxt));
            }
        };
        walk(s, 0);
    }
    return seen;
}

// Fewest arcs of a strongly connected subgraph with vertex set exactly x, or -1.
int min_spanning_on(const Digraph& d, std::uint32_t x) {
    std::vector<Arc> inside;
    for (const Arc& a : d.arcs())
        if ((x & bit(a.tail)) && (x & bit(a.head))) inside.push_back(a);
    std::vector<Vertex> members;
    for (Vertex v = 1; v <= d.vertex_count(); ++v)
        if (x & bit(v)) members.push_back(v);
    if (members.size() <= 1) return -1;
    int best = -1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inside.size()); ++mask) {
        const int size = __builtin_popcountll(mask);
        if (best >= 0 && size >= best) continue;
        std::vector<Arc> chosen;
        for (std::size_t i = 0; i < inside.size(); ++i)
            if (mask >> i & 1) chosen.push_back(inside[i]);
        if (scss::testing::mutually_reachable(d.vertex_count(), chosen, members)) best = size;
    }
    return best;
}

}  // namespace

TEST_CASE("path tables: empty interior means an arc") {
    for (int s = 0; s < 20; ++s) {
        const Digraph d = random_digraph(2 + s % 6, 0.4, 0, 0, 6000 + s);
        const PathTables f = build_path_tables(d);
        for (Vertex a = 1; a <= d.vertex_count(); ++a)
            for (Vertex b = 1; b <= d.vertex_count(); ++b)
                if (a != b) CHECK(f.finite(a, b, 0) == d.find_arc(a, b).has_value());
    }
}

TEST_CASE("path tables of the triangle") {
    const Digraph d = cycle(3);
    const PathTables f = build_path_tables(d);
    CHECK(f.value(1, 1, bit(2) | bit(3)) == 3);
    CHECK(f.value(1, 3, bit(2)) == 2);
    CHECK_FALSE(f.finite(1, 3, 0));
    CHECK_FALSE(f.finite(1, 1, bit(2)));
}

TEST_CASE("path tables match depth-first enumeration") {
    for (int s = 0; s < 40; ++s) {
        const Digraph d = random_digraph(2 + s % 5, 0.45, 0, 0, 6100 + s);
        const int n = d.vertex_count();
        const PathTables f = build_path_tables(d);
        const auto seen = enumerate_paths(d);
        for (Vertex a = 1; a <= n; ++a)
            for (Vertex b = 1; b <= n; ++b)
                for (std::uint32_t x = 0; x < (1u << n); ++x) {
                    const bool want = seen[static_cast<std::size_t>((a - 1) * n + (b - 1))][x];
                    REQUIRE(f.finite(a, b, x) == want);
                    if (want) CHECK(f.value(a, b, x) == __builtin_popcount(x) + 1);
                }
    }
}

TEST_CASE("path tables refuse large graphs") {
    CHECK(error_kind([] { build_path_tables(cycle(9), 8); }) == ErrorKind::TooManyVertices);
    CHECK(error_kind([] { solve_exact(cycle(9), {8, true}); }) == ErrorKind::TooManyVertices);
}

TEST_CASE("infinite ear tables stay infinite") {
    const Digraph d = Digraph::spanning(4, {{1, 2}, {2, 3}, {3, 4}});
    const PathTables f = build_path_tables(d);
    const SetFunctionMinPlus t1 = first_ear_table(f);
    for (std::uint32_t x = 0; x < t1.size(); ++x) CHECK_FALSE(t1.finite(x));
    const SetFunctionMinPlus t2 = ear_step(t1, f);
    for (std::uint32_t x = 0; x < t2.size(); ++x) CHECK_FALSE(t2.finite(x));
}

TEST_CASE("bidirected star with two leaves needs two ears") {
    const Digraph d = bidirected_star(3);
    const PathTables f = build_path_tables(d);
    const SetFunctionMinPlus t1 = first_ear_table(f);
    const std::uint32_t all = bit(1) | bit(2) | bit(3);
    CHECK_FALSE(t1.finite(all));
    CHECK(t1.get(bit(1) | bit(2)) == 2);
    const SetFunctionMinPlus t2 = ear_step(t1, f);
    CHECK(t2.get(all) == 4);
}

TEST_CASE("ear tables match the strongly connected subgraph count") {
    // An ear decomposition with q ears of a digraph on X has |X| + q - 1 arcs; a
    // trivial ear may repeat an arc, so T_q[X] is finite exactly when some strongly
    // connected subgraph on X has at most |X| + q - 1 arcs.
    for (int s = 0; s < 25; ++s) {
        const Digraph d = random_digraph(3 + s % 3, 0.5, 0, 0, 6200 + s);
        if (d.arc_count() > 14) continue;
        const int n = d.vertex_count();
        const PathTables f = build_path_tables(d);
        std::vector<int> best(std::size_t{1} << n);
        for (std::uint32_t x = 0; x < best.size(); ++x) best[x] = min_spanning_on(d, x);
        SetFunctionMinPlus t = first_ear_table(f);
        const EarStepper stepper(f);
        for (int q = 1; q <= n - 1; ++q) {
            if (q > 1) {
                const SetFunctionMinPlus fast = stepper.step(t);
                const SetFunctionMinPlus slow = ear_step(t, f);
                CHECK(fast == slow);
                CHECK(ear_step_reference(t, f) == slow);
                t = fast;
            }
            for (std::uint32_t x = 0; x < t.size(); ++x) {
                const int k = __builtin_popcount(x);
                const bool want = best[x] >= 0 && best[x] - k + 1 <= q;
                REQUIRE(t.finite(x) == want);
                if (want) CHECK(t.get(x) == k + q - 1);
            }
        }
    }
}

TEST_CASE("exact optimum examples") {
    const Digraph one(3, {{1, 2}}, {2}, 0);
    CHECK(solve_exact(one).optimum == 0);
    CHECK(solve_exact(Digraph(2, {}, {}, 0)).optimum == 0);
    for (int n = 2; n <= 8; ++n) CHECK(solve_exact(cycle(n)).optimum == n);
    for (int n = 2; n <= 8; ++n) CHECK(solve_exact(bidirected_star(n)).optimum == 2 * (n - 1));
    CHECK_FALSE(solve_exact(Digraph::spanning(2, {{1, 2}})).optimum.has_value());
}

TEST_CASE("reconstruction") {
    const Digraph tri = cycle(3);
    const ExactResult r = solve_exact(tri);
    REQUIRE(r.solution.has_value());
    CHECK(*r.solution == ArcSet::all(tri));

    const Digraph star = bidirected_star(3);
    const ExactResult s = solve_exact(star);
    REQUIRE(s.solution.has_value());
    CHECK(s.solution->size() == 4);
    CHECK(strongly_connected(star, *s.solution));
}

TEST_CASE("exact engine agrees with brute force and reconstructions verify") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int n = 3 + static_cast<int>(s % 6);
        const Digraph d = random_digraph(n, 0.35, 2 + static_cast<int>(s % (n - 1)), 0, 6300 + s);
        if (d.arc_count() > 16) continue;
        const ExactResult r = solve_exact(d);
        const BruteResult b = brute_scss(d);
        CHECK(r.optimum == b.optimum);
        if (r.optimum) {
            REQUIRE(r.solution.has_value());
            CHECK(r.solution->size() == *r.optimum);
            CHECK(terminals_mutually_reachable(d, *r.solution, d.terminals()));
            CHECK(*r.optimum >= static_cast<int>(d.terminals().size()));
        }
    }
}

TEST_CASE("adding an arc never increases the optimum") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const Digraph d = random_digraph(6, 0.3, 3, 0, 6400 + s);
        std::vector<Arc> more = d.arcs();
        for (Vertex u = 1; u <= 6 && more.size() == d.arcs().size(); ++u)
            for (Vertex v = 1; v <= 6; ++v)
                if (u != v && !d.find_arc(u, v)) {
                    more.push_back({u, v});
                    break;
                }
        const Digraph e(6, more, d.terminals(), 0);
        const auto a = solve_exact(d, {kDefaultExactCap, false}).optimum;
        const auto b = solve_exact(e, {kDefaultExactCap, false}).optimum;
        if (a) {
            REQUIRE(b.has_value());
            CHECK(*b <= *a);
        }
    }
}
