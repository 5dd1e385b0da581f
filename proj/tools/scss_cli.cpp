#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scss/bench.hpp"
#include "scss/cutcount.hpp"
#include "scss/error.hpp"
#include "scss/exact.hpp"
#include "scss/generators.hpp"
#include "scss/io.hpp"
#include "scss/kernel.hpp"
#include "scss/oracle.hpp"
#include "scss/reductions.hpp"
#include "scss/solver.hpp"
#include "scss/treedecomp.hpp"

namespace fs = std::filesystem;
using namespace scss;

namespace {

struct Options {
    std::string input;
    std::string td;
    std::string engine = "auto";
    int trials = 30;
    std::uint64_t seed = 0;
    bool emit_solution = false;
    bool json = false;
    int width_cap = 7;
    int exact_cap = kDefaultExactCap;
    std::vector<std::string> args;
};

Instance load_instance(const std::string& path) {
    if (path.empty()) throw Error(ErrorKind::BadParams, "--input is required");
    return parse_instance(read_file(path));
}

SolveConfig make_config(const Options& o) {
    SolveConfig cfg;
    auto e = parse_engine(o.engine);
    if (!e) throw Error(ErrorKind::BadParams, "unknown engine '" + o.engine + "' (auto, cutcount, exact, brute)");
    cfg.engine = *e;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.emit_solution = o.emit_solution;
    cfg.width_cap = o.width_cap;
    cfg.exact_cap = o.exact_cap;
    return cfg;
}

int cmd_solve(const Options& o) {
    const Instance inst = load_instance(o.input);
    SolveConfig cfg = make_config(o);
    if (!o.td.empty()) {
        if (inst.problem == Problem::TwoEcss || inst.problem == Problem::Meg)
            throw Error(ErrorKind::BadParams, "--td applies to scss and scsps instances only");
        cfg.td = parse_td(read_file(o.td), inst.digraph);
    }
    const SolveOutcome out = solve_instance(inst, cfg);
    std::cout << (o.json ? emit_result(out.record) + "\n" : format_outcome(out));
    return 0;
}

std::string stem_of(const std::string& path) {
    fs::path p(path);
    return (p.parent_path() / p.stem()).string();
}

int cmd_kernelize(const Options& o) {
    const Instance inst = load_instance(o.input);
    if (inst.problem != Problem::Scsps && !(inst.problem == Problem::Scss && inst.digraph.all_terminals()))
        throw Error(ErrorKind::BadParams, "kernelize needs a spanning instance (scsps)");
    const std::string prefix = o.args.empty() ? stem_of(o.input) + ".kernel" : o.args.front();
    const KernelResult k = kernelize(inst.digraph);
    Instance reduced{Problem::Scsps, k.reduced, {}};
    write_file(prefix + ".scss", emit_instance(reduced));
    write_file(prefix + ".trace.json", trace_to_json(k.trace));
    const auto& tr = k.trace;
    if (o.json) {
        nlohmann::ordered_json j;
        j["instance"] = prefix + ".scss";
        j["trace"] = prefix + ".trace.json";
        j["vertices"] = k.reduced.vertex_count();
        j["budget"] = k.reduced.budget();
        j["cover_size"] = tr.cover.cover.size();
        j["cover_exact"] = tr.cover.exact;
        j["applied"] = tr.applied;
        j["trivial_no"] = tr.trivial_no;
        j["removed"] = tr.removed.size();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "reduced instance: " << prefix << ".scss (" << k.reduced.vertex_count() << " vertices, " << k.reduced.arc_count()
                  << " arcs, budget " << k.reduced.budget() << ")\n";
        std::cout << "trace: " << prefix << ".trace.json\n";
        std::cout << "vertex cover: " << tr.cover.cover.size() << (tr.cover.exact ? " (minimum)" : " (greedy 2-approximation)") << "\n";
        if (tr.trivial_no)
            std::cout << "input recognized as a no-instance; emitted the canonical no-instance\n";
        else
            std::cout << "rule " << (tr.applied ? "applied" : "not triggered") << ", removed " << tr.removed.size() << " vertices\n";
    }
    return 0;
}

int cmd_reduce(const Options& o) {
    const Instance inst = load_instance(o.input);
    switch (inst.problem) {
    case Problem::TwoEcss:
        std::cout << "c spanning image of the 2ecss instance: arcs 2i-1, 2i orient edge i\n"
                  << emit_instance(Instance{Problem::Scsps, ecss_to_scsps(inst.graph), {}});
        return 0;
    case Problem::Meg: {
        const Digraph& d = inst.digraph;
        const Condensation c = condensation(d);
        std::vector<std::vector<Vertex>> members(static_cast<std::size_t>(c.component_count));
        for (Vertex v = 1; v <= d.vertex_count(); ++v) members[static_cast<std::size_t>(c.component[static_cast<std::size_t>(v)])].push_back(v);
        std::cout << "c meg instance: " << c.component_count << " strongly connected components, " << c.quotient_arcs.size()
                  << " quotient arcs\n";
        for (int i = 0; i < c.component_count; ++i) {
            const auto& vs = members[static_cast<std::size_t>(i)];
            if (vs.size() < 2) continue;
            std::cout << "c component " << i << " vertices";
            for (Vertex v : vs) std::cout << " " << v;
            std::cout << "\n" << emit_instance(Instance{Problem::Scsps, induced_spanning_subdigraph(d, vs).with_budget(d.budget()), {}});
        }
        return 0;
    }
    default:
        throw Error(ErrorKind::BadParams, "reduce takes 2ecss or meg instances");
    }
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& args, std::size_t from) {
    std::map<std::string, std::string> out;
    for (std::size_t i = from; i < args.size(); ++i) {
        const auto eq = args[i].find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::BadParams, "expected key=value, got '" + args[i] + "'");
        out[args[i].substr(0, eq)] = args[i].substr(eq + 1);
    }
    return out;
}

int cmd_gen(const Options& o) {
    if (o.args.empty()) throw Error(ErrorKind::BadParams, "gen needs a kind: random, ktree or setcover");
    const std::string kind = o.args.front();
    auto params = parse_params(o.args, 1);
    auto take_int = [&](const std::string& key, int def) {
        auto it = params.find(key);
        if (it == params.end()) return def;
        try {
            std::size_t used = 0;
            const int v = std::stoi(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument(key);
            params.erase(it);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorKind::BadParams, "parameter " + key + " must be an integer");
        }
    };
    auto take_real = [&](const std::string& key, double def) {
        auto it = params.find(key);
        if (it == params.end()) return def;
        try {
            const double v = std::stod(it->second);
            params.erase(it);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorKind::BadParams, "parameter " + key + " must be a number");
        }
    };
    std::string out;
    if (auto it = params.find("out"); it != params.end()) {
        out = it->second;
        params.erase(it);
    }
    std::string problem = "scss";
    if (auto it = params.find("problem"); it != params.end()) {
        problem = it->second;
        params.erase(it);
    }

    Instance inst;
    std::optional<std::string> td_text;
    if (kind == "random") {
        const int n = take_int("n", 6);
        const double p = take_real("p", 0.4);
        const int t = take_int("t", n);
        auto pr = parse_problem(problem);
        if (!pr) throw Error(ErrorKind::BadParams, "unknown problem '" + problem + "'");
        inst.problem = *pr;
        if (*pr == Problem::TwoEcss) {
            inst.graph = random_undirected(n, p, t, o.seed);
        } else {
            const int terminals = *pr == Problem::Scss ? take_int("terminals", std::max(1, n / 2)) : n;
            inst.digraph = random_digraph(n, p, terminals, t, o.seed);
        }
    } else if (kind == "ktree") {
        const int n = take_int("n", 10), k = take_int("k", 2);
        const double keep = take_real("keep", 0.7), both = take_real("both", 0.5);
        const int terminals = take_int("terminals", std::max(1, n / 2));
        const int t = take_int("t", n);
        if (out.empty()) throw Error(ErrorKind::BadParams, "gen ktree writes two files and needs out=PREFIX");
        const KTreeInstance kt = random_ktree(n, k, keep, both, terminals, t, o.seed);
        inst.problem = kt.digraph.all_terminals() ? Problem::Scsps : Problem::Scss;
        inst.digraph = kt.digraph;
        td_text = emit_td(kt.td, n);
    } else if (kind == "setcover") {
        const int n = take_int("n", 3), m = take_int("m", 3);
        const double p = take_real("p", 0.4);
        const int k = take_int("k", 2);
        inst.problem = Problem::Scss;
        inst.digraph = setcover_to_scss(random_set_cover(n, m, p, k, o.seed));
    } else {
        throw Error(ErrorKind::BadParams, "unknown gen kind '" + kind + "'");
    }
    if (!params.empty()) throw Error(ErrorKind::BadParams, "unused parameter '" + params.begin()->first + "'");

    const std::string text = emit_instance(inst);
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    write_file(out + ".scss", text);
    if (td_text) write_file(out + ".td", *td_text);
    if (o.json) {
        nlohmann::ordered_json j;
        j["instance"] = out + ".scss";
        j["td"] = td_text ? nlohmann::ordered_json(out + ".td") : nlohmann::ordered_json(nullptr);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "wrote " << out << ".scss" << (td_text ? " and " + out + ".td" : std::string()) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
    std::string name;
    std::string path;
    bool ok = true;
    std::string detail;
};

class Verifier {
public:
    Verifier(const Options& o) : o_(o) {}

    void run(const std::string& path) {
        Instance inst;
        try {
            inst = load_instance(path);
        } catch (const Error& e) {
            add("parse", path, false, e.what());
            return;
        }
        switch (inst.problem) {
        case Problem::Scss:
        case Problem::Scsps: directed(path, inst.digraph, inst.problem == Problem::Scsps || inst.digraph.all_terminals()); break;
        case Problem::Meg: meg(path, inst.digraph); break;
        case Problem::TwoEcss: ecss(path, inst.graph); break;
        }
        solution_file(path, inst);
    }

    const std::vector<Check>& checks() const { return checks_; }

private:
    void add(std::string name, const std::string& path, bool ok, std::string detail = {}) {
        checks_.push_back({std::move(name), path, ok, std::move(detail)});
        if (!ok) dump_counterexample(path);
    }

    void dump_counterexample(const std::string& path) {
        if (o_.json) return;
        try {
            std::cerr << "counterexample " << path << ":\n" << read_file(path);
        } catch (const Error&) {
        }
    }

    void directed(const std::string& path, const Digraph& d, bool spanning) {
        std::optional<int> truth;
        bool have_truth = false;
        if (d.arc_count() <= kBruteArcLimit) {
            truth = brute_scss(d).optimum;
            have_truth = true;
        }
        if (d.vertex_count() <= o_.exact_cap) {
            ExactOptions opt;
            opt.cap = o_.exact_cap;
            const ExactResult e = solve_exact(d, opt);
            if (have_truth)
                add("exact_vs_brute", path, e.optimum == truth,
                    "exact " + (e.optimum ? std::to_string(*e.optimum) : "none") + ", brute " + (truth ? std::to_string(*truth) : "none"));
            else {
                truth = e.optimum;
                have_truth = true;
            }
            if (e.optimum && e.solution) {
                const bool ok = e.solution->size() == *e.optimum && terminals_mutually_reachable(d, *e.solution, d.terminals());
                add("exact_solution", path, ok, "reconstructed " + std::to_string(e.solution->size()) + " arcs");
            }
        }
        if (!have_truth) {
            add("oracle_available", path, false, "instance too large for brute force and the exact engine");
            return;
        }

        std::optional<TreeDecomposition> td;
        const std::string td_path = stem_of(path) + ".td";
        if (fs::exists(td_path)) {
            try {
                td = parse_td(read_file(td_path), d);
            } catch (const Error& e) {
                add("td_parse", td_path, false, e.what());
            }
        }
        if (!td) td = heuristic_td(d);
        if (td->width() <= o_.width_cap) {
            CutCountOptions opt;
            opt.width_cap = o_.width_cap;
            const bool expected = truth && *truth <= d.budget();
            const bool got = decide(d, make_nice(*td, d), o_.trials, o_.seed, opt).yes;
            add("cutcount_vs_oracle", path, got == expected,
                std::string("cutcount ") + (got ? "yes" : "no") + ", oracle " + (expected ? "yes" : "no"));
        }

        if (spanning) kernel_audit(path, d, truth);
    }

    void kernel_audit(const std::string& path, const Digraph& d, const std::optional<int>& truth) {
        const KernelResult k = kernelize(d);
        const KernelTrace trace = trace_from_json(trace_to_json(k.trace));
        const bool yes = truth && *truth <= d.budget();
        const auto s = k.trace.cover.cover.size();
        const bool small = k.trace.trivial_no || static_cast<std::size_t>(k.reduced.vertex_count()) <= s + s * s;
        add("kernel_size", path, small, std::to_string(k.reduced.vertex_count()) + " vertices, cover " + std::to_string(s));
        if (k.trace.trivial_no) {
            add("kernel_verdict", path, !yes, "canonical no-instance for a yes-instance");
            return;
        }
        if (k.reduced.vertex_count() > o_.exact_cap) return;
        ExactOptions opt;
        opt.cap = o_.exact_cap;
        const ExactResult r = solve_exact(k.reduced, opt);
        const bool reduced_yes = r.optimum && *r.optimum <= k.reduced.budget();
        add("kernel_verdict", path, reduced_yes == yes,
            std::string("original ") + (yes ? "yes" : "no") + ", reduced " + (reduced_yes ? "yes" : "no"));
        if (reduced_yes && r.solution) {
            try {
                const ArcSet lifted = lift_solution(d, *r.solution, trace);
                add("kernel_lift", path, strongly_connected(d, lifted) && lifted.size() <= d.budget(),
                    "lifted " + std::to_string(lifted.size()) + " arcs, budget " + std::to_string(d.budget()));
            } catch (const Error& e) {
                add("kernel_lift", path, false, e.what());
            }
        }
    }

    void meg(const std::string& path, const Digraph& d) {
        const MegResult m = solve_meg(d, MegEngine::Auto, o_.exact_cap);
        const bool same_reach = reachability_matrix(d, m.arcs) == reachability_matrix(d, ArcSet::all(d));
        add("meg_reachability", path, same_reach && m.arcs.size() == m.optimum);
        if (d.arc_count() <= kBruteArcLimit) {
            const BruteResult b = brute_meg(d);
            add("meg_vs_brute", path, b.optimum && *b.optimum == m.optimum,
                "solver " + std::to_string(m.optimum) + ", brute " + (b.optimum ? std::to_string(*b.optimum) : "none"));
        }
    }

    void ecss(const std::string& path, const UndirectedGraph& g) {
        const EcssResult e = solve_ecss(g, o_.exact_cap);
        if (e.edges) add("ecss_solution", path, two_edge_connected(g, *e.edges) && static_cast<int>(e.edges->size()) == *e.optimum);
        if (g.edge_count() <= 20) {
            const auto b = brute_2ecss(g);
            add("ecss_vs_brute", path, b == e.optimum,
                "solver " + (e.optimum ? std::to_string(*e.optimum) : "none") + ", brute " + (b ? std::to_string(*b) : "none"));
        }
    }

    void solution_file(const std::string& path, const Instance& inst) {
        const std::string sol_path = stem_of(path) + ".sol.json";
        if (!fs::exists(sol_path)) return;
        ResultRecord r;
        try {
            r = parse_result(read_file(sol_path));
        } catch (const Error& e) {
            add("solution_parse", sol_path, false, e.what());
            return;
        }
        if (!r.solution) {
            add("solution_present", sol_path, false, "record carries no solution");
            return;
        }
        if (inst.problem == Problem::TwoEcss) {
            std::vector<int> edges;
            bool exists = true;
            for (const Arc& a : *r.solution) {
                const Edge want{std::min(a.tail, a.head), std::max(a.tail, a.head)};
                auto it = std::find(inst.graph.edges().begin(), inst.graph.edges().end(), want);
                if (it == inst.graph.edges().end()) exists = false;
                else edges.push_back(static_cast<int>(it - inst.graph.edges().begin()));
            }
            add("solution_arcs_exist", sol_path, exists);
            if (!exists) return;
            add("solution_feasible", sol_path, two_edge_connected(inst.graph, edges));
            add("solution_budget", sol_path, static_cast<int>(edges.size()) <= inst.graph.budget());
            return;
        }
        const Digraph& d = inst.digraph;
        std::vector<int> idx;
        bool exists = true;
        for (const Arc& a : *r.solution) {
            auto i = d.find_arc(a.tail, a.head);
            if (!i) exists = false;
            else idx.push_back(*i);
        }
        std::sort(idx.begin(), idx.end());
        const bool distinct = std::adjacent_find(idx.begin(), idx.end()) == idx.end();
        add("solution_arcs_exist", sol_path, exists && distinct, exists ? "repeated arc" : "arc missing from the instance");
        if (!exists || !distinct) return;
        const ArcSet x(idx);
        bool feasible;
        if (inst.problem == Problem::Meg)
            feasible = reachability_matrix(d, x) == reachability_matrix(d, ArcSet::all(d));
        else
            feasible = terminals_mutually_reachable(d, x, d.terminals());
        add("solution_feasible", sol_path, feasible);
        add("solution_budget", sol_path, x.size() <= d.budget(), std::to_string(x.size()) + " arcs, budget " + std::to_string(d.budget()));
        if (r.optimum) add("solution_optimum", sol_path, x.size() == *r.optimum, "size " + std::to_string(x.size()) + ", claimed " + std::to_string(*r.optimum));
    }

    const Options& o_;
    std::vector<Check> checks_;
};

int cmd_verify(const Options& o) {
    std::vector<std::string> paths;
    auto collect = [&](const std::string& p) {
        if (fs::is_directory(p)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(p))
                if (e.path().extension() == ".scss") found.push_back(e.path().string());
            std::sort(found.begin(), found.end());
            paths.insert(paths.end(), found.begin(), found.end());
        } else {
            paths.push_back(p);
        }
    };
    if (!o.input.empty()) collect(o.input);
    for (const auto& a : o.args) collect(a);
    if (paths.empty()) throw Error(ErrorKind::BadParams, "verify needs --input or instance paths");

    Verifier v(o);
    for (const auto& p : paths) v.run(p);
    int failed = 0;
    for (const auto& c : v.checks()) failed += !c.ok;
    if (o.json) {
        nlohmann::ordered_json j;
        j["instances"] = paths.size();
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : v.checks()) j["checks"].push_back({{"name", c.name}, {"path", c.path}, {"ok", c.ok}, {"detail", c.detail}});
        j["failed"] = failed;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& c : v.checks()) {
            std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << " " << c.path;
            if (!c.ok && !c.detail.empty()) std::cout << ": " << c.detail;
            std::cout << "\n";
        }
        std::cout << "summary: " << v.checks().size() - static_cast<std::size_t>(failed) << " passed, " << failed << " failed over "
                  << paths.size() << " instances\n";
        if (failed == 0) std::cout << "all checks passed\n";
    }
    return 0;
}

int cmd_bench(const Options& o) {
    std::vector<int> widths;
    for (const auto& a : o.args) {
        try {
            widths.push_back(std::stoi(a));
        } catch (const std::exception&) {
            throw Error(ErrorKind::BadParams, "bench widths must be integers");
        }
    }
    if (widths.empty()) widths = {2, 3, 4, 5};
    for (int w : widths)
        if (w < 0 || w + 1 > kMaxBagSize) throw Error(ErrorKind::BadParams, "width out of range");
    const auto timings = bench_joins(widths, o.seed);
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < timings.size(); ++i) {
        const auto& t = timings[i];
        std::optional<double> ratio;
        if (i > 0) ratio = std::log(t.seconds / timings[i - 1].seconds) / (t.width - timings[i - 1].width);
        if (o.json) {
            j.push_back({{"width", t.width},
                         {"states", t.states},
                         {"join_seconds", t.seconds},
                         {"repeats", t.repeats},
                         {"log_ratio", ratio ? nlohmann::ordered_json(*ratio) : nlohmann::ordered_json(nullptr)}});
        } else {
            std::cout << "width " << t.width << ": " << t.states << " states per table, " << t.seconds * 1e3 << " ms per join";
            if (ratio) std::cout << ", log-ratio " << *ratio << (*ratio >= 2.0 && *ratio <= 4.2 ? " (within [2.0, 4.2])" : " (outside [2.0, 4.2])");
            std::cout << "\n";
        }
    }
    if (o.json) std::cout << j.dump() << "\n";
    else std::cout << "reference: log 17 = " << std::log(17.0) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strongly connected Steiner subgraph solvers"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "instance file");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_option("args", o.args, "positional arguments");
    };
    auto engines = [&](CLI::App* sub) {
        sub->add_option("--td", o.td, "tree decomposition (.td)");
        sub->add_option("--engine", o.engine, "auto, cutcount, exact or brute");
        sub->add_option("--trials", o.trials, "Cut&Count trials")->check(CLI::PositiveNumber);
        sub->add_flag("--emit-solution", o.emit_solution, "print an optimal arc set when available");
        sub->add_option("--width-cap", o.width_cap, "largest width Cut&Count accepts");
        sub->add_option("--exact-cap", o.exact_cap, "largest n the exact engine accepts");
    };

    auto* solve = app.add_subcommand("solve", "solve an instance");
    common(solve);
    engines(solve);
    auto* kern = app.add_subcommand("kernelize", "vertex-cover kernel; writes PREFIX.scss and PREFIX.trace.json");
    common(kern);
    auto* reduce = app.add_subcommand("reduce", "2ecss to scsps, or meg to per-component scsps instances");
    common(reduce);
    auto* gen = app.add_subcommand("gen", "generate: gen random|ktree|setcover [key=value ...] [out=PREFIX]");
    common(gen);
    auto* verify = app.add_subcommand("verify", "differential checks against the oracles");
    common(verify);
    engines(verify);
    auto* bench = app.add_subcommand("bench", "join timings per width: bench [width ...]");
    common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*solve) return cmd_solve(o);
        if (*kern) return cmd_kernelize(o);
        if (*reduce) return cmd_reduce(o);
        if (*gen) return cmd_gen(o);
        if (*verify) return cmd_verify(o);
        if (*bench) return cmd_bench(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
