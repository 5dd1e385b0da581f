#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "scss/algebra.hpp"
#include "scss/cutcount.hpp"
#include "scss/error.hpp"
#include "scss/exact.hpp"
#include "scss/io.hpp"
#include "scss/kernel.hpp"
#include "scss/oracle.hpp"
#include "scss/reductions.hpp"
#include "scss/solver.hpp"
#include "scss/treedecomp.hpp"

namespace py = pybind11;
using namespace scss;

namespace {

using ArcList = std::vector<std::pair<int, int>>;

std::vector<Arc> to_arcs(const ArcList& arcs) {
    std::vector<Arc> out;
    out.reserve(arcs.size());
    for (auto [u, v] : arcs) out.push_back({u, v});
    return out;
}

ArcList from_arcs(const std::vector<Arc>& arcs) {
    ArcList out;
    out.reserve(arcs.size());
    for (const Arc& a : arcs) out.emplace_back(a.tail, a.head);
    return out;
}

ArcSet arc_set(const Digraph& d, const ArcList& arcs) {
    const auto list = to_arcs(arcs);
    return ArcSet::from_arcs(d, list);
}

py::object optional_int(const std::optional<int>& v) { return v ? py::object(py::int_(*v)) : py::object(py::none()); }

SetFunctionGF2 gf2_from(const std::vector<int>& values) {
    const int u = static_cast<int>(std::log2(static_cast<double>(std::max<std::size_t>(values.size(), 1))));
    if (values.size() != (std::size_t{1} << u)) throw Error(ErrorKind::BadParams, "table length must be a power of two");
    SetFunctionGF2 f(u);
    for (std::size_t s = 0; s < values.size(); ++s) f.set(static_cast<std::uint32_t>(s), values[s] & 1);
    return f;
}

SetFunctionMinPlus minplus_from(const std::vector<std::optional<int>>& values, int bound) {
    const int u = static_cast<int>(std::log2(static_cast<double>(std::max<std::size_t>(values.size(), 1))));
    if (values.size() != (std::size_t{1} << u)) throw Error(ErrorKind::BadParams, "table length must be a power of two");
    SetFunctionMinPlus f(u, bound);
    for (std::size_t s = 0; s < values.size(); ++s)
        if (values[s]) f.set(static_cast<std::uint32_t>(s), *values[s]);
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Strongly connected Steiner subgraph solvers";

    py::register_exception<Error>(m, "ScssError");

    py::class_<Digraph>(m, "Digraph")
        .def(py::init([](int n, const ArcList& arcs, std::optional<std::vector<int>> terminals, int budget) {
                 if (!terminals) return Digraph::spanning(n, to_arcs(arcs), budget);
                 return Digraph(n, to_arcs(arcs), *terminals, budget);
             }),
             py::arg("n"), py::arg("arcs"), py::arg("terminals") = py::none(), py::arg("budget") = 0,
             "Vertices 1..n; terminals default to all vertices.")
        .def_property_readonly("n", &Digraph::vertex_count)
        .def_property_readonly("arcs", [](const Digraph& d) { return from_arcs(d.arcs()); })
        .def_property_readonly("terminals", &Digraph::terminals)
        .def_property_readonly("budget", &Digraph::budget)
        .def("with_budget", &Digraph::with_budget)
        .def("__eq__", [](const Digraph& a, const Digraph& b) { return a == b; })
        .def("__repr__", [](const Digraph& d) {
            return "Digraph(n=" + std::to_string(d.vertex_count()) + ", arcs=" + std::to_string(d.arc_count()) +
                   ", terminals=" + std::to_string(d.terminals().size()) + ", budget=" + std::to_string(d.budget()) + ")";
        });

    m.def("parse_instance", [](const std::string& text) {
        const Instance inst = parse_instance(text);
        py::dict out;
        out["problem"] = std::string(to_string(inst.problem));
        out["n"] = inst.vertex_count();
        out["budget"] = inst.budget();
        if (inst.problem == Problem::TwoEcss) {
            ArcList edges;
            for (const Edge& e : inst.graph.edges()) edges.emplace_back(e.u, e.v);
            out["edges"] = edges;
        } else {
            out["digraph"] = inst.digraph;
        }
        return out;
    });

    m.def("solve_text",
          [](const std::string& instance, const std::string& engine, std::optional<std::string> td, int trials, std::uint64_t seed,
             bool emit_solution, int width_cap, int exact_cap) {
              const Instance inst = parse_instance(instance);
              SolveConfig cfg;
              auto e = parse_engine(engine);
              if (!e) throw Error(ErrorKind::BadParams, "unknown engine '" + engine + "'");
              cfg.engine = *e;
              if (td) cfg.td = parse_td(*td, inst.digraph);
              cfg.trials = trials;
              cfg.seed = seed;
              cfg.emit_solution = emit_solution;
              cfg.width_cap = width_cap;
              cfg.exact_cap = exact_cap;
              return emit_result(solve_instance(inst, cfg).record);
          },
          py::arg("instance"), py::arg("engine") = "auto", py::arg("td") = py::none(), py::arg("trials") = 30, py::arg("seed") = 0,
          py::arg("emit_solution") = false, py::arg("width_cap") = 7, py::arg("exact_cap") = kDefaultExactCap,
          "Solve an instance given in the text format; returns the JSON result record.");

    m.def("solve_exact",
          [](const Digraph& d, int cap) {
              ExactOptions opt;
              opt.cap = cap;
              const ExactResult r = solve_exact(d, opt);
              return py::make_tuple(optional_int(r.optimum), r.solution ? py::object(py::cast(from_arcs(r.solution->arcs(d)))) : py::object(py::none()));
          },
          py::arg("d"), py::arg("cap") = kDefaultExactCap, "(optimum or None, arcs or None)");

    m.def("brute_scss", [](const Digraph& d) {
        const BruteResult r = brute_scss(d);
        return py::make_tuple(optional_int(r.optimum), r.optimum ? py::object(py::cast(from_arcs(r.witness.arcs(d)))) : py::object(py::none()));
    });

    m.def("decide",
          [](const Digraph& d, std::optional<std::string> td, int trials, std::uint64_t seed, int width_cap) {
              const TreeDecomposition t = td ? parse_td(*td, d) : heuristic_td(d);
              CutCountOptions opt;
              opt.width_cap = width_cap;
              return decide(d, make_nice(t, d), trials, seed, opt).yes;
          },
          py::arg("d"), py::arg("td") = py::none(), py::arg("trials") = 30, py::arg("seed") = 0, py::arg("width_cap") = 7,
          "Cut&Count decision for budget d.budget; a False answer is wrong with probability at most 2^-trials.");

    m.def("heuristic_td", [](const Digraph& d) { return emit_td(heuristic_td(d), d.vertex_count()); });

    m.def("kernelize", [](const Digraph& d) {
        const KernelResult k = kernelize(d);
        return py::make_tuple(k.reduced, trace_to_json(k.trace));
    });
    m.def("lift_solution", [](const Digraph& original, const Digraph& reduced, const ArcList& solution, const std::string& trace) {
        const ArcSet lifted = lift_solution(original, arc_set(reduced, solution), trace_from_json(trace));
        return from_arcs(lifted.arcs(original));
    });

    m.def("solve_meg", [](const Digraph& d) {
        const MegResult r = solve_meg(d);
        return py::make_tuple(r.optimum, from_arcs(r.arcs.arcs(d)));
    });
    m.def("solve_ecss", [](int n, const ArcList& edges) {
        std::vector<Edge> es;
        for (auto [u, v] : edges) es.push_back({u, v});
        const UndirectedGraph g(n, es);
        const EcssResult r = solve_ecss(g);
        ArcList chosen;
        if (r.edges)
            for (int e : *r.edges) chosen.emplace_back(g.edges()[static_cast<std::size_t>(e)].u, g.edges()[static_cast<std::size_t>(e)].v);
        return py::make_tuple(optional_int(r.optimum), chosen);
    });
    m.def("setcover_to_scss", [](int universe, const std::vector<std::vector<int>>& sets, int budget) {
        return setcover_to_scss(SetCoverInstance{universe, sets, budget});
    });

    m.def("subset_convolution_gf2", [](const std::vector<int>& f, const std::vector<int>& g) {
        const SetFunctionGF2 h = subset_convolution_gf2(gf2_from(f), gf2_from(g));
        std::vector<int> out(h.size());
        for (std::size_t s = 0; s < h.size(); ++s) out[s] = h.get(static_cast<std::uint32_t>(s));
        return out;
    });
    m.def("minplus_subset_convolution",
          [](const std::vector<std::optional<int>>& f, const std::vector<std::optional<int>>& g, int bound) {
              const SetFunctionMinPlus h = minplus_subset_convolution(minplus_from(f, bound), minplus_from(g, bound), bound);
              std::vector<std::optional<int>> out(h.size());
              for (std::size_t s = 0; s < h.size(); ++s)
                  if (h.finite(static_cast<std::uint32_t>(s))) out[s] = h.get(static_cast<std::uint32_t>(s));
              return out;
          },
          py::arg("f"), py::arg("g"), py::arg("bound"), "None stands for infinity.");
}
