#include "scss/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "scss/cutcount.hpp"
#include "scss/error.hpp"
#include "scss/oracle.hpp"
#include "scss/reductions.hpp"

namespace scss {

std::string_view to_string(Engine e) {
    switch (e) {
    case Engine::Auto: return "auto";
    case Engine::CutCount: return "cutcount";
    case Engine::Exact: return "exact";
    case Engine::Brute: return "brute";
    }
    return "auto";
}

std::optional<Engine> parse_engine(std::string_view name) {
    for (Engine e : {Engine::Auto, Engine::CutCount, Engine::Exact, Engine::Brute})
        if (to_string(e) == name) return e;
    return std::nullopt;
}

namespace {

Verdict verdict_of(const std::optional<int>& optimum, int budget) {
    return optimum && *optimum <= budget ? Verdict::Yes : Verdict::No;
}

void solve_directed(const Digraph& d, const SolveConfig& cfg, SolveOutcome& out) {
    ResultRecord& r = out.record;
    Engine engine = cfg.engine;
    std::optional<TreeDecomposition> td = cfg.td;
    if (engine == Engine::Auto) {
        if (d.vertex_count() <= std::min(kAutoExactVertexLimit, cfg.exact_cap)) {
            engine = Engine::Exact;
        } else {
            if (!td) {
                td = heuristic_td(d);
                out.heuristic_td = true;
            }
            if (td->width() <= cfg.width_cap)
                engine = Engine::CutCount;
            else if (d.arc_count() <= kBruteArcLimit)
                engine = Engine::Brute;
            else
                throw Error(ErrorKind::NoApplicableEngine, "n = " + std::to_string(d.vertex_count()) + ", width " +
                                                               std::to_string(td->width()) + ", |A| = " + std::to_string(d.arc_count()) +
                                                               " exceed every engine's limits");
        }
    }
    r.engine = std::string(to_string(engine));

    switch (engine) {
    case Engine::Exact: {
        ExactOptions opt;
        opt.cap = cfg.exact_cap;
        opt.reconstruct = cfg.emit_solution;
        const ExactResult e = solve_exact(d, opt);
        if (e.optimum) r.optimum = *e.optimum;
        r.verdict = verdict_of(e.optimum, d.budget());
        if (cfg.emit_solution && e.solution) r.solution = e.solution->arcs(d);
        break;
    }
    case Engine::Brute: {
        const BruteResult b = brute_scss(d);
        if (b.optimum) r.optimum = *b.optimum;
        r.verdict = verdict_of(b.optimum, d.budget());
        if (cfg.emit_solution && b.optimum) r.solution = b.witness.arcs(d);
        break;
    }
    case Engine::CutCount: {
        if (!td) {
            td = heuristic_td(d);
            out.heuristic_td = true;
        }
        out.td_width = td->width();
        CutCountOptions opt;
        opt.width_cap = cfg.width_cap;
        const CutCountVerdict v = decide(d, make_nice(*td, d), cfg.trials, cfg.seed, opt);
        r.verdict = v.yes ? Verdict::Yes : Verdict::No;
        r.trials = cfg.trials;
        r.seed = cfg.seed;
        r.error_bound = v.yes ? 0.0 : std::ldexp(1.0, -cfg.trials);
        break;
    }
    case Engine::Auto: break;
    }
    if (out.td_width < 0 && td) out.td_width = td->width();
}

}  // namespace

SolveOutcome solve_instance(const Instance& inst, const SolveConfig& cfg) {
    if (cfg.trials < 1) throw Error(ErrorKind::BadParams, "trials must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    ResultRecord& r = out.record;
    switch (inst.problem) {
    case Problem::Scss:
    case Problem::Scsps:
        solve_directed(inst.digraph, cfg, out);
        break;
    case Problem::Meg: {
        MegEngine me = MegEngine::Auto;
        if (cfg.engine == Engine::Exact) me = MegEngine::Exact;
        else if (cfg.engine == Engine::Brute) me = MegEngine::Brute;
        else if (cfg.engine == Engine::CutCount) throw Error(ErrorKind::NoApplicableEngine, "cutcount does not solve meg instances");
        const MegResult m = solve_meg(inst.digraph, me, cfg.exact_cap);
        r.engine = cfg.engine == Engine::Brute ? "brute" : "exact";
        r.optimum = m.optimum;
        r.verdict = m.optimum <= inst.digraph.budget() ? Verdict::Yes : Verdict::No;
        if (cfg.emit_solution) r.solution = m.arcs.arcs(inst.digraph);
        break;
    }
    case Problem::TwoEcss: {
        const UndirectedGraph& g = inst.graph;
        if (cfg.engine == Engine::CutCount) throw Error(ErrorKind::NoApplicableEngine, "cutcount does not solve 2ecss instances");
        std::optional<int> optimum;
        std::optional<std::vector<int>> edges;
        if (cfg.engine == Engine::Brute) {
            optimum = brute_2ecss(g);
            r.engine = "brute";
        } else {
            EcssResult e = solve_ecss(g, cfg.exact_cap);
            optimum = e.optimum;
            edges = std::move(e.edges);
            r.engine = "exact";
        }
        if (optimum) r.optimum = *optimum;
        r.verdict = verdict_of(optimum, g.budget());
        if (cfg.emit_solution && edges) {
            std::vector<Arc> sol;
            for (int e : *edges) sol.push_back({g.edges()[static_cast<std::size_t>(e)].u, g.edges()[static_cast<std::size_t>(e)].v});
            r.solution = sol;
        }
        break;
    }
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::string format_outcome(const SolveOutcome& out) {
    const ResultRecord& r = out.record;
    std::ostringstream os;
    os << "verdict: " << to_string(r.verdict);
    if (r.verdict == Verdict::No && r.error_bound && *r.error_bound > 0.0 && r.trials)
        os << " (one-sided, error <= 2^-" << *r.trials << ")";
    os << "\n";
    os << "optimum: " << (r.optimum ? std::to_string(*r.optimum) : std::string("-")) << "\n";
    os << "engine: " << r.engine << "\n";
    if (r.trials) os << "trials: " << *r.trials << "\nseed: " << *r.seed << "\n";
    if (out.td_width >= 0) os << "decomposition: width " << out.td_width << (out.heuristic_td ? " (heuristic min-fill, none supplied)" : "") << "\n";
    if (r.solution) {
        os << "solution: " << r.solution->size() << " arcs\n";
        for (const Arc& a : *r.solution) os << "  " << a.tail << " " << a.head << "\n";
    }
    return os.str();
}

}  // namespace scss
