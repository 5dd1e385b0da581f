#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scss/graph.hpp"
#include "scss/treedecomp.hpp"

namespace scss {

enum class Problem { Scss, Scsps, Meg, TwoEcss };

std::string_view to_string(Problem p);
std::optional<Problem> parse_problem(std::string_view tag);

/// A parsed instance file. Directed problems live in `digraph`; for 2ecss the
/// edges live in `graph` and `digraph` is left empty apart from n/T/t.
struct Instance {
    Problem problem = Problem::Scss;
    Digraph digraph;
    UndirectedGraph graph;

    int vertex_count() const { return problem == Problem::TwoEcss ? graph.vertex_count() : digraph.vertex_count(); }
    int budget() const { return problem == Problem::TwoEcss ? graph.budget() : digraph.budget(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Instance grammar:
///   c <comment>
///   p scss <n> <m> <|T|> <t>      |  p scsps|meg|2ecss <n> <m> <t>
///   t <v>        (scss only, |T| lines)
///   a <u> <v>    (directed kinds, m lines)
///   e <u> <v>    (2ecss, m lines)
/// Throws SyntaxError (with line), CountMismatch, RangeError.
Instance parse_instance(std::string_view text);
std::string emit_instance(const Instance& inst);

/// PACE 2017 .td text, validated against d's underlying graph. Throws
/// SyntaxError, CountMismatch, NotATree, CoverageViolation, ConnectivityViolation.
TreeDecomposition parse_td(std::string_view text, const Digraph& d);
std::string emit_td(const TreeDecomposition& td, int vertex_count);

enum class Verdict { Yes, No, Unknown };

std::string_view to_string(Verdict v);

struct ResultRecord {
    Verdict verdict = Verdict::Unknown;
    std::optional<long long> optimum;
    std::optional<std::vector<Arc>> solution;
    std::string engine;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> error_bound;
    double elapsed_ms = 0.0;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// One-line JSON with keys in the fixed order
/// verdict, optimum, solution, engine, trials, seed, error_bound, elapsed_ms.
std::string emit_result(const ResultRecord& r);
ResultRecord parse_result(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace scss
