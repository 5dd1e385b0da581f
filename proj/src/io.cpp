#include "scss/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scss/error.hpp"

namespace scss {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_int(std::string_view tok, int line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw SyntaxError(line, "expected integer, got '" + std::string(tok) + "'");
    return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto toks = tokens(text.substr(start, end - start));
        if (!toks.empty() && toks.front() != "c") fn(number, toks);
        if (end == text.size()) break;
        start = end + 1;
    }
}

Vertex vertex_token(std::string_view tok, int line, int n) {
    long long v = to_int(tok, line);
    if (v < 1 || v > n)
        throw Error(ErrorKind::RangeError, "line " + std::to_string(line) + ": vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
    return static_cast<Vertex>(v);
}

}  // namespace

std::string_view to_string(Problem p) {
    switch (p) {
    case Problem::Scss: return "scss";
    case Problem::Scsps: return "scsps";
    case Problem::Meg: return "meg";
    case Problem::TwoEcss: return "2ecss";
    }
    return "scss";
}

std::optional<Problem> parse_problem(std::string_view tag) {
    if (tag == "scss") return Problem::Scss;
    if (tag == "scsps") return Problem::Scsps;
    if (tag == "meg") return Problem::Meg;
    if (tag == "2ecss") return Problem::TwoEcss;
    return std::nullopt;
}

Instance parse_instance(std::string_view text) {
    std::optional<Problem> problem;
    long long n = 0, m = 0, nt = 0, budget = 0;
    std::vector<Vertex> terminals;
    std::vector<Arc> arcs;
    std::vector<Edge> edges;
    std::vector<std::pair<Arc, int>> seen_arcs;
    for_each_line(text, [&](int line, const std::vector<std::string_view>& t) {
        const auto head = t.front();
        if (head == "p") {
            if (problem) throw SyntaxError(line, "second header");
            if (t.size() < 2) throw SyntaxError(line, "header without problem tag");
            problem = parse_problem(t[1]);
            if (!problem) throw SyntaxError(line, "unknown problem tag '" + std::string(t[1]) + "'");
            const std::size_t expected = *problem == Problem::Scss ? 6 : 5;
            if (t.size() != expected) throw SyntaxError(line, "header expects " + std::to_string(expected - 2) + " numbers");
            n = to_int(t[2], line);
            m = to_int(t[3], line);
            if (*problem == Problem::Scss) {
                nt = to_int(t[4], line);
                budget = to_int(t[5], line);
            } else {
                budget = to_int(t[4], line);
            }
            if (n < 0 || m < 0 || nt < 0 || budget < 0) throw Error(ErrorKind::RangeError, "line " + std::to_string(line) + ": negative header field");
            if (n > 1'000'000) throw Error(ErrorKind::RangeError, "line " + std::to_string(line) + ": vertex count too large");
            return;
        }
        if (!problem) throw SyntaxError(line, "data before header");
        const int nn = static_cast<int>(n);
        if (head == "t") {
            if (*problem != Problem::Scss) throw SyntaxError(line, "terminal line in " + std::string(to_string(*problem)) + " instance");
            if (t.size() != 2) throw SyntaxError(line, "terminal line expects one vertex");
            Vertex v = vertex_token(t[1], line, nn);
            if (std::find(terminals.begin(), terminals.end(), v) != terminals.end()) throw SyntaxError(line, "duplicate terminal");
            terminals.push_back(v);
        } else if (head == "a" || head == "e") {
            const bool undirected = *problem == Problem::TwoEcss;
            if (undirected != (head == "e")) throw SyntaxError(line, std::string(head) + " line in " + std::string(to_string(*problem)) + " instance");
            if (t.size() != 3) throw SyntaxError(line, "expects two vertices");
            Vertex u = vertex_token(t[1], line, nn);
            Vertex v = vertex_token(t[2], line, nn);
            if (u == v) throw SyntaxError(line, "self-loop");
            Arc key = undirected ? Arc{std::min(u, v), std::max(u, v)} : Arc{u, v};
            seen_arcs.push_back({key, line});
            if (undirected)
                edges.push_back({u, v});
            else
                arcs.push_back({u, v});
        } else {
            throw SyntaxError(line, "unknown line type '" + std::string(head) + "'");
        }
    });
    if (!problem) throw SyntaxError(1, "missing header");
    std::sort(seen_arcs.begin(), seen_arcs.end());
    for (std::size_t i = 1; i < seen_arcs.size(); ++i)
        if (seen_arcs[i].first == seen_arcs[i - 1].first) throw SyntaxError(seen_arcs[i].second, "parallel arc/edge");
    const long long got = *problem == Problem::TwoEcss ? static_cast<long long>(edges.size()) : static_cast<long long>(arcs.size());
    if (got != m) throw Error(ErrorKind::CountMismatch, "header declares " + std::to_string(m) + " arcs/edges, found " + std::to_string(got));
    if (*problem == Problem::Scss && static_cast<long long>(terminals.size()) != nt)
        throw Error(ErrorKind::CountMismatch, "header declares " + std::to_string(nt) + " terminals, found " + std::to_string(terminals.size()));

    Instance inst;
    inst.problem = *problem;
    const int nn = static_cast<int>(n);
    const int t = static_cast<int>(budget);
    switch (*problem) {
    case Problem::Scss: inst.digraph = Digraph(nn, std::move(arcs), std::move(terminals), t); break;
    case Problem::Scsps:
    case Problem::Meg: inst.digraph = Digraph::spanning(nn, std::move(arcs), t); break;
    case Problem::TwoEcss:
        inst.graph = UndirectedGraph(nn, std::move(edges), t);
        inst.digraph = Digraph::spanning(nn, {}, t);
        break;
    }
    return inst;
}

std::string emit_instance(const Instance& inst) {
    std::ostringstream out;
    out << "p " << to_string(inst.problem) << ' ' << inst.vertex_count() << ' ';
    if (inst.problem == Problem::TwoEcss) {
        out << inst.graph.edge_count() << ' ' << inst.graph.budget() << '\n';
        for (const Edge& e : inst.graph.edges()) out << "e " << e.u << ' ' << e.v << '\n';
        return out.str();
    }
    const Digraph& d = inst.digraph;
    out << d.arc_count() << ' ';
    if (inst.problem == Problem::Scss) out << d.terminals().size() << ' ';
    out << d.budget() << '\n';
    if (inst.problem == Problem::Scss)
        for (Vertex t : d.terminals()) out << "t " << t << '\n';
    for (const Arc& a : d.arcs()) out << "a " << a.tail << ' ' << a.head << '\n';
    return out.str();
}

TreeDecomposition parse_td(std::string_view text, const Digraph& d) {
    bool have_header = false;
    long long bag_count = 0, max_bag = 0, n = 0;
    std::vector<std::optional<std::vector<Vertex>>> bags;
    TreeDecomposition td;
    for_each_line(text, [&](int line, const std::vector<std::string_view>& t) {
        if (t.front() == "s") {
            if (have_header) throw SyntaxError(line, "second header");
            if (t.size() != 5 || t[1] != "td") throw SyntaxError(line, "expected 's td <bags> <maxbag> <n>'");
            bag_count = to_int(t[2], line);
            max_bag = to_int(t[3], line);
            n = to_int(t[4], line);
            if (bag_count < 0 || max_bag < 0 || n < 0 || bag_count > 10'000'000) throw SyntaxError(line, "bad header values");
            bags.assign(static_cast<std::size_t>(bag_count), std::nullopt);
            have_header = true;
            return;
        }
        if (!have_header) throw SyntaxError(line, "data before header");
        if (t.front() == "b") {
            if (t.size() < 2) throw SyntaxError(line, "bag line without id");
            long long id = to_int(t[1], line);
            if (id < 1 || id > bag_count) throw SyntaxError(line, "bag id out of range");
            auto& slot = bags[static_cast<std::size_t>(id - 1)];
            if (slot) throw SyntaxError(line, "duplicate bag id");
            std::vector<Vertex> bag;
            for (std::size_t i = 2; i < t.size(); ++i) {
                long long v = to_int(t[i], line);
                if (v < 1 || v > n) throw Error(ErrorKind::RangeError, "line " + std::to_string(line) + ": vertex out of range");
                bag.push_back(static_cast<Vertex>(v));
            }
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) throw SyntaxError(line, "repeated vertex in bag");
            slot = std::move(bag);
            return;
        }
        if (t.size() != 2) throw SyntaxError(line, "expected tree edge '<i> <j>'");
        long long a = to_int(t[0], line);
        long long b = to_int(t[1], line);
        if (a < 1 || b < 1 || a > bag_count || b > bag_count) throw SyntaxError(line, "tree edge names unknown bag");
        td.edges.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1)});
    });
    if (!have_header) throw SyntaxError(1, "missing 's td' header");
    if (n != d.vertex_count())
        throw Error(ErrorKind::CountMismatch, ".td declares " + std::to_string(n) + " vertices, graph has " + std::to_string(d.vertex_count()));
    std::size_t biggest = 0;
    for (std::size_t i = 0; i < bags.size(); ++i) {
        if (!bags[i]) throw Error(ErrorKind::CountMismatch, "bag " + std::to_string(i + 1) + " declared but missing");
        biggest = std::max(biggest, bags[i]->size());
        td.bags.push_back(std::move(*bags[i]));
    }
    if (static_cast<long long>(biggest) != max_bag)
        throw Error(ErrorKind::CountMismatch, "declared max bag size " + std::to_string(max_bag) + ", actual " + std::to_string(biggest));
    for (const Violation& v : validate(td, d)) {
        switch (v.kind) {
        case ViolationKind::NotATree: throw Error(ErrorKind::NotATree, v.detail);
        case ViolationKind::VertexCoverage:
        case ViolationKind::EdgeCoverage: throw Error(ErrorKind::CoverageViolation, v.detail);
        case ViolationKind::Connectivity: throw Error(ErrorKind::ConnectivityViolation, v.detail);
        case ViolationKind::VertexRange: throw Error(ErrorKind::RangeError, v.detail);
        }
    }
    return td;
}

std::string emit_td(const TreeDecomposition& td, int vertex_count) {
    std::ostringstream out;
    std::size_t biggest = 0;
    for (const auto& b : td.bags) biggest = std::max(biggest, b.size());
    out << "s td " << td.bags.size() << ' ' << biggest << ' ' << vertex_count << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) out << ' ' << v;
        out << '\n';
    }
    for (auto [a, b] : td.edges) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

std::string emit_result(const ResultRecord& r) {
    if (r.solution && r.verdict != Verdict::Yes) throw Error(ErrorKind::BadParams, "solution attached to a non-yes verdict");
    nlohmann::ordered_json j;
    j["verdict"] = std::string(to_string(r.verdict));
    j["optimum"] = r.optimum ? nlohmann::ordered_json(*r.optimum) : nlohmann::ordered_json(nullptr);
    if (r.solution) {
        auto arr = nlohmann::ordered_json::array();
        for (const Arc& a : *r.solution) arr.push_back({a.tail, a.head});
        j["solution"] = std::move(arr);
    } else {
        j["solution"] = nullptr;
    }
    j["engine"] = r.engine;
    j["trials"] = r.trials ? nlohmann::ordered_json(*r.trials) : nlohmann::ordered_json(nullptr);
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    j["error_bound"] = r.error_bound ? nlohmann::ordered_json(*r.error_bound) : nlohmann::ordered_json(nullptr);
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump();
}

ResultRecord parse_result(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(1, e.what());
    }
    ResultRecord r;
    try {
        const std::string verdict = j.at("verdict").get<std::string>();
        if (verdict == "yes") r.verdict = Verdict::Yes;
        else if (verdict == "no") r.verdict = Verdict::No;
        else if (verdict == "unknown") r.verdict = Verdict::Unknown;
        else throw SyntaxError(1, "unknown verdict '" + verdict + "'");
        if (!j.at("optimum").is_null()) r.optimum = j.at("optimum").get<long long>();
        if (!j.at("solution").is_null()) {
            std::vector<Arc> arcs;
            for (const auto& pair : j.at("solution")) arcs.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
            r.solution = std::move(arcs);
        }
        r.engine = j.at("engine").get<std::string>();
        if (!j.at("trials").is_null()) r.trials = j.at("trials").get<int>();
        if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
        if (!j.at("error_bound").is_null()) r.error_bound = j.at("error_bound").get<double>();
        r.elapsed_ms = j.at("elapsed_ms").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(1, e.what());
    }
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::BadParams, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::BadParams, "cannot write " + path);
    out << content;
}

}  // namespace scss
