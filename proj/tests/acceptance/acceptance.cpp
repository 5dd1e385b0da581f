// Acceptance run: one PASS/FAIL line per criterion, details on the following
// indented lines. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "scss/algebra.hpp"
#include "scss/bench.hpp"
#include "scss/cutcount.hpp"
#include "scss/exact.hpp"
#include "scss/generators.hpp"
#include "scss/kernel.hpp"
#include "scss/oracle.hpp"
#include "scss/reductions.hpp"
#include "scss/rng.hpp"
#include "scss/treedecomp.hpp"

using namespace scss;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail << "first failure: " << why << "\n";
        pass = false;
    }
};

// ---------------------------------------------------------------------------

void criterion_1(Outcome& o) {
    const auto t0 = clock_type::now();
    int yes = 0, no = 0, false_neg = 0, false_pos = 0, run = 0;
    for (std::uint64_t s = 0; run < 200; ++s) {
        const int n = 4 + static_cast<int>(s % 4);
        const int k = 1 + static_cast<int>(s % 3);
        const int terms = 2 + static_cast<int>(s % (n - 1));
        const KTreeInstance kt = random_ktree(n, k, 0.9, 0.7, terms, 0, 10000 + s);
        if (kt.digraph.arc_count() > kBruteArcLimit) continue;
        ++run;
        const BruteResult truth = brute_scss(kt.digraph);
        int budget;
        if (truth.optimum)
            budget = std::min(8, *truth.optimum - static_cast<int>(s % 2));
        else
            budget = static_cast<int>(s % 9);
        budget = std::max(0, budget);
        const Digraph d = kt.digraph.with_budget(budget);
        const bool expect = truth.optimum && *truth.optimum <= budget;
        const bool got = decide(d, make_nice(kt.td, d), 30, 500 + s).yes;
        (expect ? yes : no)++;
        if (expect && !got) {
            ++false_neg;
            o.fail("missed yes-instance seed " + std::to_string(10000 + s));
        }
        if (!expect && got) {
            ++false_pos;
            o.fail("yes on a no-instance seed " + std::to_string(10000 + s));
        }
    }
    const double secs = seconds_since(t0);
    if (secs > 1800) o.fail("runtime above 30 minutes");
    o.detail << "200 instances (" << yes << " yes, " << no << " no), n <= 7, width <= 3, t <= 8, 30 trials; "
             << false_neg << " missed yes, " << false_pos << " false yes; " << secs << " s\n";
}

void criterion_2(Outcome& o) {
    int graphs = 0;
    long long checks = 0;
    for (std::uint64_t s = 0; graphs < 50; ++s) {
        const int n = 2 + static_cast<int>(s % 4);
        const Digraph base = random_digraph(n, 0.45, 1 + static_cast<int>(s % n), 0, 11000 + s);
        if (base.arc_count() == 0 || base.arc_count() > 8) continue;
        ++graphs;
        const Digraph d = base.with_budget(base.arc_count() - static_cast<int>(s % 2));
        const WeightAssignment w = sample_weights(d, default_weight_range(d), 42 + s);
        const ParityTable root = run_dp(make_nice(heuristic_td(d), d), d, w);
        const std::vector<bool> parity = root_parities(root);
        const Vertex r = d.terminals().front();
        for (int W = 0; W <= root.max_weight(); ++W) {
            const RelaxedCounts c = enumerate_relaxed_pairs(d, r, w, W, root.max_arcs());
            ++checks;
            if (parity[static_cast<std::size_t>(W)] != static_cast<bool>(c.with_cuts & 1))
                o.fail("dp parity differs at W=" + std::to_string(W) + " graph seed " + std::to_string(11000 + s));
            if ((c.with_cuts & 1) != (c.solutions & 1)) o.fail("cut-extended count parity differs from solution parity");
        }
    }
    o.detail << graphs << " digraphs with n <= 5, " << checks << " weights W <= 2tN compared\n";
}

void criterion_3(Outcome& o) {
    int pairs = 0;
    std::map<std::pair<int, int>, int> shapes;
    for (std::uint64_t s = 0; pairs < 500 && s < 200; ++s) {
        const int n = 2 + static_cast<int>(s % 4);
        const Digraph d = random_digraph(n, 0.5, 1 + static_cast<int>(s % n), 0, 12000 + s);
        const Vertex r = d.terminals().front();
        for (const RelaxedPair& p : list_relaxed_pairs(d, r)) {
            // Components counted by a closure over the undirected arcs.
            std::vector<Arc> in_und, out_und;
            for (int i : p.in_arcs) in_und.push_back(d.arc(i)), in_und.push_back({d.arc(i).head, d.arc(i).tail});
            for (int i : p.out_arcs) out_und.push_back(d.arc(i)), out_und.push_back({d.arc(i).head, d.arc(i).tail});
            const int span_size = __builtin_popcount(p.span);
            const int outside = d.vertex_count() - span_size;
            const int a = scss::testing::scc_count(d.vertex_count(), in_und) - outside;
            const int b = scss::testing::scc_count(d.vertex_count(), out_und) - outside;
            const std::uint64_t got = count_consistent_cut_pairs(d, p, r);
            if (got != std::uint64_t{1} << ((a - 1) + (b - 1))) o.fail("cut count differs from the closed form");
            ++shapes[{a, b}];
            ++pairs;
        }
    }
    if (pairs < 50) o.fail("fewer than 50 relaxed pairs enumerated");
    o.detail << pairs << " relaxed pairs; (cc_in, cc_out) shapes:";
    for (auto [k, v] : shapes) o.detail << " (" << k.first << "," << k.second << ")x" << v;
    o.detail << "\n";
}

ParityTable random_table(int q, Rng& rng) {
    std::vector<Vertex> bag;
    for (int v = 1; v <= q; ++v) bag.push_back(v);
    ParityTable t(bag, 4, 16);
    const int entries = 1 + static_cast<int>(rng.uniform(0, 400));
    for (int e = 0; e < entries; ++e) {
        StateKey key = 0;
        for (int p = 0; p < q; ++p) key = with_code(key, p, static_cast<int>(rng.uniform(0, kStateAlphabet - 1)));
        t.toggle(static_cast<int>(rng.uniform(0, 4)), static_cast<int>(rng.uniform(0, 16)), key);
    }
    t.normalize();
    return t;
}

void criterion_4(Outcome& o) {
    Rng rng(13000);
    std::size_t entries = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int q = 1 + trial % 3;
        const ParityTable a = random_table(q, rng), b = random_table(q, rng);
        const ParityTable want = join_tables_naive(a, b);
        entries += want.size();
        if (join_tables(a, b, JoinStrategy::Convolution) != want) o.fail("convolution join differs, trial " + std::to_string(trial));
        if (join_tables(a, b, JoinStrategy::Auto) != want) o.fail("auto join differs, trial " + std::to_string(trial));
    }
    o.detail << "100 table pairs on bags of size 1..3, " << entries << " output entries compared\n";
}

void criterion_5(Outcome& o) {
    Rng rng(14000);
    for (int trial = 0; trial < 100; ++trial) {
        const int u = trial % 11;
        SetFunctionGF2 f(u), g(u);
        for (std::uint32_t s = 0; s < f.size(); ++s) {
            f.set(s, rng.bernoulli(0.5));
            g.set(s, rng.bernoulli(0.5));
        }
        if (subset_convolution_gf2(f, g) != subset_convolution_gf2_naive(f, g)) o.fail("GF(2) trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < 100; ++trial) {
        const int u = trial % 11;
        SetFunctionMinPlus f(u, 20), g(u, 20);
        for (std::uint32_t s = 0; s < f.size(); ++s) {
            if (rng.bernoulli(0.7)) f.set(s, static_cast<int>(rng.uniform(0, 20)));
            if (rng.bernoulli(0.7)) g.set(s, static_cast<int>(rng.uniform(0, 20)));
        }
        if (minplus_subset_convolution(f, g, 20) != minplus_subset_convolution_naive(f, g))
            o.fail("min-plus trial " + std::to_string(trial));
    }
    o.detail << "100 GF(2) and 100 min-plus convolutions, u = 0..10\n";
}

void criterion_6(Outcome& o) {
    int compared = 0, feasible = 0;
    for (std::uint64_t s = 0; compared < 200; ++s) {
        const int n = 3 + static_cast<int>(s % 6);
        const int terms = 2 + static_cast<int>(s % (n - 1));
        Digraph d = random_digraph(n, 0.3, terms, 0, 15000 + s);
        if (s % 2 == 1) {
            // Odd seeds: strongly connected base, random terminal subset.
            const Digraph sc = random_strongly_connected(n, 0.12, 0, 15000 + s);
            d = sc.with_terminals(random_digraph(n, 0.0, terms, 0, 15500 + s).terminals());
        }
        if (d.arc_count() > 16) continue;
        ++compared;
        const ExactResult r = solve_exact(d);
        const BruteResult b = brute_scss(d);
        if (r.optimum != b.optimum) o.fail("optimum differs, seed " + std::to_string(15000 + s));
        if (r.optimum) {
            ++feasible;
            if (!r.solution || r.solution->size() != *r.optimum || !terminals_mutually_reachable(d, *r.solution, d.terminals()))
                o.fail("reconstruction does not verify, seed " + std::to_string(15000 + s));
        }
    }
    o.detail << compared << " instances with n <= 8, |A| <= 16 (" << feasible << " feasible)\n";

    Digraph big;
    for (std::uint64_t s = 0;; ++s) {
        big = random_strongly_connected(13, 0.19, 0, 16000 + s).with_terminals(random_digraph(13, 0.0, 7, 0, 16000 + s).terminals());
        if (big.arc_count() >= 38 && big.arc_count() <= 42) break;
    }
    const auto t0 = clock_type::now();
    const ExactResult r = solve_exact(big);
    const double secs = seconds_since(t0);
    if (secs >= 600) o.fail("n = 13 run took " + std::to_string(secs) + " s");
    if (r.optimum && (!r.solution || !terminals_mutually_reachable(big, *r.solution, big.terminals())))
        o.fail("n = 13 reconstruction does not verify");
    o.detail << "n = 13, |A| = " << big.arc_count() << ", |T| = " << big.terminals().size() << ": optimum "
             << (r.optimum ? std::to_string(*r.optimum) : std::string("none")) << " in " << secs << " s\n";
}

void criterion_7(Outcome& o) {
    int applied = 0, lifted = 0, yes = 0;
    for (std::uint64_t s = 0; s < 120; ++s) {
        const int n = 4 + static_cast<int>(s % 7);
        const Digraph base = s % 3 == 0 ? random_strongly_connected(n, 0.2, 0, 17000 + s)
                                        : scss::testing::small_core(n, 1 + static_cast<int>(s % 2), 0.25, 17000 + s);
        const auto opt = solve_exact(base, {kDefaultExactCap, false}).optimum;
        if (!opt) {
            o.fail("generator produced a non-strongly-connected digraph");
            continue;
        }
        const Digraph d = base.with_budget(*opt - static_cast<int>(s % 2));
        const bool expect = *opt <= d.budget();
        yes += expect;
        const KernelResult k = kernelize(d);
        const int cover = static_cast<int>(k.trace.cover.cover.size());
        if (k.reduced.vertex_count() > cover + cover * cover) o.fail("kernel too large, seed " + std::to_string(17000 + s));
        applied += k.trace.applied;
        const ExactResult red = solve_exact(k.reduced);
        const bool got = red.optimum && *red.optimum <= k.reduced.budget();
        if (got != expect) o.fail("verdict changed, seed " + std::to_string(17000 + s));
        if (got) {
            const ArcSet sol = lift_solution(d, *red.solution, trace_from_json(trace_to_json(k.trace)));
            if (!strongly_connected(d, sol) || sol.size() > d.budget()) o.fail("lifted solution invalid");
            ++lifted;
        }
    }
    o.detail << "120 strongly connected instances, n <= 10 (" << yes << " yes); rule applied on " << applied
             << "; " << lifted << " lifted solutions verified\n";
}

void criterion_8(Outcome& o) {
    int ecss = 0;
    for (int n = 3; n <= 7; ++n) {
        std::vector<Edge> edges;
        for (Vertex v = 1; v <= n; ++v) edges.push_back({std::min(v, v % n + 1), std::max(v, v % n + 1)});
        if (solve_ecss(UndirectedGraph(n, edges)).optimum != n) o.fail("C_" + std::to_string(n));
    }
    const UndirectedGraph k4(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    if (solve_ecss(k4).optimum != 4 || brute_2ecss(k4) != 4) o.fail("K_4");
    for (std::uint64_t s = 0; s < 200 && ecss < 60; ++s) {
        const UndirectedGraph g = random_undirected(3 + static_cast<int>(s % 5), 0.6, 0, 18000 + s);
        if (g.edge_count() > 20) continue;
        ++ecss;
        if (solve_ecss(g).optimum != brute_2ecss(g)) o.fail("2-ECSS differs, seed " + std::to_string(18000 + s));
    }

    int meg = 0, dags = 0;
    for (std::uint64_t s = 0; s < 200 && meg < 60; ++s) {
        const Digraph d = random_digraph(2 + static_cast<int>(s % 6), 0.35, 0, 0, 19000 + s);
        if (d.arc_count() > 16) continue;
        ++meg;
        const MegResult r = solve_meg(d);
        const BruteResult b = brute_meg(d);
        if (!b.optimum || r.optimum != *b.optimum) o.fail("meg differs, seed " + std::to_string(19000 + s));
        if (scss::testing::closure(d.vertex_count(), r.arcs.arcs(d)) != scss::testing::closure(d.vertex_count(), d.arcs()))
            o.fail("meg output changes reachability");
        std::vector<Arc> forward;
        for (const Arc& a : d.arcs())
            if (a.tail < a.head) forward.push_back(a);
        const Digraph dag = Digraph::spanning(d.vertex_count(), forward);
        ++dags;
        if (solve_meg(dag).arcs != transitive_reduction_dag(dag)) o.fail("meg on a DAG is not the transitive reduction");
    }

    int sc = 0;
    for (std::uint64_t s = 0; sc < 60; ++s) {
        const int n = 2 + static_cast<int>(s % 3), m = 1 + static_cast<int>(s % 4);
        const SetCoverInstance inst = random_set_cover(n, m, 0.45, 1, 20000 + s);
        const Digraph d = setcover_to_scss(inst);
        if (d.arc_count() > kBruteArcLimit) continue;
        ++sc;
        if (d.vertex_count() != m + n + 2) o.fail("gadget vertex count");
        const auto k = brute_set_cover(inst);
        if (!k || brute_scss(d).optimum != *k + 2 * n + 1) o.fail("set cover relation, seed " + std::to_string(20000 + s));
    }
    o.detail << "2-ECSS: C_3..C_7, K_4 and " << ecss << " random graphs; MEG: " << meg << " digraphs and " << dags
             << " DAGs; set cover: " << sc << " gadgets with n >= 2\n";
}

void criterion_9(Outcome& o) {
    const std::vector<JoinTiming> t = bench_joins({2, 3, 4, 5}, 21000, 0.5);
    for (std::size_t i = 0; i < t.size(); ++i) {
        o.detail << "width " << t[i].width << ": " << t[i].states << " states, " << t[i].seconds << " s per join";
        if (i > 0) {
            const double ratio = std::log(t[i].seconds / t[i - 1].seconds);
            o.detail << ", log-ratio " << ratio;
            if (ratio < 2.0 || ratio > 4.2) o.fail("log-ratio outside [2.0, 4.2] at width " + std::to_string(t[i].width));
        }
        o.detail << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"Cut&Count agrees with brute force", criterion_1},
        {"root parity equals relaxed-pair enumeration", criterion_2},
        {"cut-pair counts follow the closed form", criterion_3},
        {"join equals the naive join", criterion_4},
        {"subset convolutions equal naive references", criterion_5},
        {"exact engine equals brute force", criterion_6},
        {"kernel preserves verdicts and lifts solutions", criterion_7},
        {"reductions match their oracles", criterion_8},
        {"join cost scaling", criterion_9},
    };
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        const auto t0 = clock_type::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first << " ("
                  << seconds_since(t0) << " s)\n";
        std::istringstream lines(o.detail.str());
        for (std::string line; std::getline(lines, line);) std::cout << "    " << line << "\n";
        std::cout.flush();
    }
    return failed == 0 ? 0 : 1;
}
