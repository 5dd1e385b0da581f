#include "scss/kernel.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "scss/error.hpp"

namespace scss {

namespace {

class CoverSearch {
public:
    explicit CoverSearch(const UndirectedGraph& g) : n_(g.vertex_count()) {
        adj_.resize(static_cast<std::size_t>(n_) + 1);
        for (const Edge& e : g.edges()) {
            adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
            adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        deg_.resize(adj_.size());
        for (std::size_t v = 0; v < adj_.size(); ++v) deg_[v] = static_cast<int>(adj_[v].size());
        taken_.assign(adj_.size(), false);
        edges_ = g.edge_count();
    }

    bool run(int k) { return search(k); }

    std::vector<Vertex> cover() const {
        std::vector<Vertex> out;
        for (Vertex v = 1; v <= n_; ++v)
            if (taken_[static_cast<std::size_t>(v)]) out.push_back(v);
        return out;
    }

private:
    void take(Vertex x) {
        taken_[static_cast<std::size_t>(x)] = true;
        edges_ -= deg_[static_cast<std::size_t>(x)];
        for (Vertex y : adj_[static_cast<std::size_t>(x)])
            if (!taken_[static_cast<std::size_t>(y)]) --deg_[static_cast<std::size_t>(y)];
    }
    void untake(Vertex x) {
        for (Vertex y : adj_[static_cast<std::size_t>(x)])
            if (!taken_[static_cast<std::size_t>(y)]) ++deg_[static_cast<std::size_t>(y)];
        edges_ += deg_[static_cast<std::size_t>(x)];
        taken_[static_cast<std::size_t>(x)] = false;
    }

    bool search(int k) {
        if (edges_ == 0) return true;
        if (k == 0) return false;
        Vertex best = 0;
        for (Vertex v = 1; v <= n_; ++v)
            if (!taken_[static_cast<std::size_t>(v)] && deg_[static_cast<std::size_t>(v)] > deg_[static_cast<std::size_t>(best)]) best = v;
        const int dmax = deg_[static_cast<std::size_t>(best)];
        if (edges_ > k * dmax) return false;

        take(best);
        if (search(k - 1)) return true;
        untake(best);

        if (dmax > k) return false;
        std::vector<Vertex> nbrs;
        for (Vertex y : adj_[static_cast<std::size_t>(best)])
            if (!taken_[static_cast<std::size_t>(y)]) nbrs.push_back(y);
        for (Vertex y : nbrs) take(y);
        if (search(k - static_cast<int>(nbrs.size()))) return true;
        for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) untake(*it);
        return false;
    }

    int n_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<int> deg_;
    std::vector<bool> taken_;
    int edges_ = 0;
};

Digraph reduced_instance(const Digraph& d, const std::vector<Vertex>& kept, int budget, std::vector<int>* arc_map = nullptr) {
    return induced_spanning_subdigraph(d, kept, arc_map).with_budget(budget);
}

}  // namespace

VertexCoverResult vertex_cover(const UndirectedGraph& g, int exact_limit) {
    VertexCoverResult r;
    for (int k = 0; k <= exact_limit; ++k) {
        CoverSearch s(g);
        if (s.run(k)) {
            r.cover = s.cover();
            r.exact = true;
            return r;
        }
    }
    std::vector<bool> used(static_cast<std::size_t>(g.vertex_count()) + 1, false);
    for (const Edge& e : g.edges())
        if (!used[static_cast<std::size_t>(e.u)] && !used[static_cast<std::size_t>(e.v)])
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = true;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        if (used[static_cast<std::size_t>(v)]) r.cover.push_back(v);
    return r;
}

std::vector<std::vector<int>> BipartiteGraph::right_adjacency() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(right));
    for (int a = 0; a < left; ++a)
        for (int b : adj[static_cast<std::size_t>(a)]) out[static_cast<std::size_t>(b)].push_back(a);
    return out;
}

std::vector<int> maximum_matching(const BipartiteGraph& g) {
    std::vector<int> mate_left(static_cast<std::size_t>(g.left), -1);
    std::vector<int> mate_right(static_cast<std::size_t>(g.right), -1);
    std::vector<int> seen(static_cast<std::size_t>(g.right), -1);
    std::function<bool(int, int)> augment = [&](int a, int stamp) {
        for (int b : g.adj[static_cast<std::size_t>(a)]) {
            if (seen[static_cast<std::size_t>(b)] == stamp) continue;
            seen[static_cast<std::size_t>(b)] = stamp;
            const int other = mate_right[static_cast<std::size_t>(b)];
            if (other < 0 || augment(other, stamp)) {
                mate_left[static_cast<std::size_t>(a)] = b;
                mate_right[static_cast<std::size_t>(b)] = a;
                return true;
            }
        }
        return false;
    };
    for (int a = 0; a < g.left; ++a) augment(a, a);
    return mate_left;
}

std::string check_expansion(const BipartiteGraph& g, const ExpansionResult& r) {
    std::vector<bool> in_a1(static_cast<std::size_t>(g.left), false), in_b1(static_cast<std::size_t>(g.right), false);
    for (int a : r.a1) in_a1[static_cast<std::size_t>(a)] = true;
    for (int b : r.b1) in_b1[static_cast<std::size_t>(b)] = true;

    std::vector<int> left_deg(static_cast<std::size_t>(g.left), 0), right_deg(static_cast<std::size_t>(g.right), 0);
    for (auto [a, b] : r.matching) {
        if (a < 0 || a >= g.left || b < 0 || b >= g.right) return "matching pair out of range";
        const auto& nb = g.adj[static_cast<std::size_t>(a)];
        if (!std::binary_search(nb.begin(), nb.end(), b)) return "matching uses a non-edge";
        if (++left_deg[static_cast<std::size_t>(a)] > 1 || ++right_deg[static_cast<std::size_t>(b)] > 1) return "matching is not a matching";
        if (!in_a1[static_cast<std::size_t>(a)] || !in_b1[static_cast<std::size_t>(b)]) return "matching leaves A1 x B1";
    }
    for (int a : r.a1)
        if (left_deg[static_cast<std::size_t>(a)] != 1) return "matching does not saturate A1";
    for (int a = 0; a < g.left; ++a)
        for (int b : g.adj[static_cast<std::size_t>(a)])
            if (in_b1[static_cast<std::size_t>(b)] && !in_a1[static_cast<std::size_t>(a)]) return "N(B1) is not inside A1";
    const auto outside_b = static_cast<std::size_t>(g.right) - r.b1.size();
    const auto outside_a = static_cast<std::size_t>(g.left) - r.a1.size();
    if (outside_b > outside_a) return "|B \\ B1| > |A \\ A1|";
    return {};
}

ExpansionResult expansion(const BipartiteGraph& g) {
    const std::vector<int> mate_left = maximum_matching(g);
    std::vector<int> mate_right(static_cast<std::size_t>(g.right), -1);
    for (int a = 0; a < g.left; ++a)
        if (mate_left[static_cast<std::size_t>(a)] >= 0) mate_right[static_cast<std::size_t>(mate_left[static_cast<std::size_t>(a)])] = a;
    const auto radj = g.right_adjacency();

    std::vector<bool> reach_left(static_cast<std::size_t>(g.left), false), reach_right(static_cast<std::size_t>(g.right), false);
    std::vector<int> queue;
    for (int b = 0; b < g.right; ++b)
        if (mate_right[static_cast<std::size_t>(b)] < 0) {
            reach_right[static_cast<std::size_t>(b)] = true;
            queue.push_back(b);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int b = queue[head];
        for (int a : radj[static_cast<std::size_t>(b)]) {
            if (reach_left[static_cast<std::size_t>(a)] || mate_right[static_cast<std::size_t>(b)] == a) continue;
            reach_left[static_cast<std::size_t>(a)] = true;
            const int partner = mate_left[static_cast<std::size_t>(a)];
            if (partner >= 0 && !reach_right[static_cast<std::size_t>(partner)]) {
                reach_right[static_cast<std::size_t>(partner)] = true;
                queue.push_back(partner);
            }
        }
    }

    ExpansionResult r;
    for (int a = 0; a < g.left; ++a)
        if (reach_left[static_cast<std::size_t>(a)]) {
            r.a1.push_back(a);
            r.matching.emplace_back(a, mate_left[static_cast<std::size_t>(a)]);
        }
    for (int b = 0; b < g.right; ++b)
        if (reach_right[static_cast<std::size_t>(b)]) r.b1.push_back(b);
    if (auto why = check_expansion(g, r); !why.empty()) throw Error(ErrorKind::InternalInconsistency, "expansion: " + why);
    return r;
}

PairBipartite build_pair_bipartite(const Digraph& d, std::vector<Vertex> cover) {
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    std::vector<bool> in_cover(static_cast<std::size_t>(d.vertex_count()) + 1, false);
    for (Vertex v : cover) {
        if (v < 1 || v > d.vertex_count()) throw Error(ErrorKind::RangeError, "cover vertex out of range");
        in_cover[static_cast<std::size_t>(v)] = true;
    }
    for (const Arc& a : d.arcs())
        if (!in_cover[static_cast<std::size_t>(a.tail)] && !in_cover[static_cast<std::size_t>(a.head)])
            throw Error(ErrorKind::InvalidGraph, "vertex set does not cover every arc");

    PairBipartite pb;
    pb.cover = cover;
    for (Vertex v = 1; v <= d.vertex_count(); ++v)
        if (!in_cover[static_cast<std::size_t>(v)]) pb.independent.push_back(v);

    std::vector<std::vector<std::pair<Vertex, Vertex>>> witness_pairs(pb.independent.size());
    for (std::size_t j = 0; j < pb.independent.size(); ++j) {
        const Vertex v = pb.independent[j];
        for (int ai : d.in_arcs(v))
            for (int ao : d.out_arcs(v)) witness_pairs[j].emplace_back(d.arc(ai).tail, d.arc(ao).head);
        pb.pairs.insert(pb.pairs.end(), witness_pairs[j].begin(), witness_pairs[j].end());
    }
    std::sort(pb.pairs.begin(), pb.pairs.end());
    pb.pairs.erase(std::unique(pb.pairs.begin(), pb.pairs.end()), pb.pairs.end());

    pb.graph.left = static_cast<int>(pb.pairs.size());
    pb.graph.right = static_cast<int>(pb.independent.size());
    pb.graph.adj.assign(pb.pairs.size(), {});
    for (std::size_t j = 0; j < pb.independent.size(); ++j)
        for (const auto& p : witness_pairs[j]) {
            const auto idx = static_cast<std::size_t>(std::lower_bound(pb.pairs.begin(), pb.pairs.end(), p) - pb.pairs.begin());
            pb.graph.adj[idx].push_back(static_cast<int>(j));
        }
    for (auto& nb : pb.graph.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return pb;
}

Digraph canonical_no_instance() { return Digraph(2, {}, {1, 2}, 0); }

KernelResult kernelize(const Digraph& d, int cover_exact_limit) {
    if (!d.all_terminals()) throw Error(ErrorKind::BadParams, "kernelize expects a spanning instance (T = V)");
    KernelResult out;
    KernelTrace& tr = out.trace;
    tr.original_vertices = d.vertex_count();
    tr.original_budget = d.budget();
    auto no = [&] {
        tr.trivial_no = true;
        tr.applied = false;
        tr.removed.clear();
        tr.lift_pairs.clear();
        tr.budget_delta = 0;
        tr.kept.clear();
        out.reduced = canonical_no_instance();
        return out;
    };
    auto unchanged = [&] {
        for (Vertex v = 1; v <= d.vertex_count(); ++v) tr.kept.push_back(v);
        out.reduced = d;
        return out;
    };

    // A single vertex is strongly connected with no arcs at all.
    if (d.vertex_count() <= 1) return unchanged();
    if (!strongly_connected(d)) return no();

    tr.cover = vertex_cover(UndirectedGraph(d.vertex_count(), d.underlying_edges()), cover_exact_limit);
    tr.bipartite = build_pair_bipartite(d, tr.cover.cover);
    const auto radj = tr.bipartite.graph.right_adjacency();
    for (const auto& nb : radj)
        if (nb.empty()) return no();

    const auto s = static_cast<long long>(tr.bipartite.cover.size());
    if (static_cast<long long>(tr.bipartite.independent.size()) <= s * s) return unchanged();

    tr.applied = true;
    tr.expansion = expansion(tr.bipartite.graph);
    std::vector<bool> matched(tr.bipartite.independent.size(), false);
    for (auto [a, b] : tr.expansion.matching) matched[static_cast<std::size_t>(b)] = true;
    std::vector<bool> drop(static_cast<std::size_t>(d.vertex_count()) + 1, false);
    for (int b : tr.expansion.b1) {
        if (matched[static_cast<std::size_t>(b)]) continue;
        const Vertex v = tr.bipartite.independent[static_cast<std::size_t>(b)];
        tr.removed.push_back(v);
        tr.lift_pairs.push_back(tr.bipartite.pairs[static_cast<std::size_t>(radj[static_cast<std::size_t>(b)].front())]);
        drop[static_cast<std::size_t>(v)] = true;
    }
    tr.budget_delta = 2 * static_cast<int>(tr.removed.size());
    if (d.budget() - tr.budget_delta < 0) return no();
    for (Vertex v = 1; v <= d.vertex_count(); ++v)
        if (!drop[static_cast<std::size_t>(v)]) tr.kept.push_back(v);
    out.reduced = reduced_instance(d, tr.kept, d.budget() - tr.budget_delta);
    return out;
}

ArcSet lift_solution(const Digraph& original, const ArcSet& reduced_solution, const KernelTrace& trace) {
    if (trace.trivial_no) throw Error(ErrorKind::InvalidReducedSolution, "the reduced instance is the canonical NO instance");
    if (original.vertex_count() != trace.original_vertices)
        throw Error(ErrorKind::InvalidReducedSolution, "trace does not belong to this instance");
    std::vector<int> arc_map;
    const Digraph reduced = reduced_instance(original, trace.kept, std::max(0, original.budget() - trace.budget_delta), &arc_map);
    if (!reduced_solution.valid_for(reduced) || !strongly_connected(reduced, reduced_solution))
        throw Error(ErrorKind::InvalidReducedSolution, "solution does not strongly connect the reduced instance");
    if (reduced_solution.size() > reduced.budget())
        throw Error(ErrorKind::InvalidReducedSolution, "solution exceeds the reduced budget");

    std::vector<int> indices;
    for (int i : reduced_solution.indices()) indices.push_back(arc_map[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < trace.removed.size(); ++k) {
        const Vertex v = trace.removed[k];
        const auto [u, w] = trace.lift_pairs[k];
        const auto in = original.find_arc(u, v), out = original.find_arc(v, w);
        if (!in || !out) throw Error(ErrorKind::InvalidReducedSolution, "recorded pair is not a neighbor of a removed vertex");
        indices.push_back(*in);
        indices.push_back(*out);
    }
    ArcSet lifted(std::move(indices));
    if (!strongly_connected(original, lifted)) throw Error(ErrorKind::InternalInconsistency, "lifted solution is not strongly connected");
    return lifted;
}

std::string trace_to_json(const KernelTrace& tr) {
    nlohmann::ordered_json j;
    j["original_vertices"] = tr.original_vertices;
    j["original_budget"] = tr.original_budget;
    j["cover"] = tr.cover.cover;
    j["cover_exact"] = tr.cover.exact;
    j["applied"] = tr.applied;
    j["trivial_no"] = tr.trivial_no;
    j["pairs"] = tr.bipartite.pairs;
    j["independent"] = tr.bipartite.independent;
    j["a1"] = tr.expansion.a1;
    j["b1"] = tr.expansion.b1;
    j["matching"] = tr.expansion.matching;
    j["removed"] = tr.removed;
    j["lift_pairs"] = tr.lift_pairs;
    j["budget_delta"] = tr.budget_delta;
    j["kept"] = tr.kept;
    return j.dump(2) + "\n";
}

KernelTrace trace_from_json(const std::string& text) {
    KernelTrace tr;
    try {
        const auto j = nlohmann::json::parse(text);
        tr.original_vertices = j.at("original_vertices").get<int>();
        tr.original_budget = j.at("original_budget").get<int>();
        tr.cover.cover = j.at("cover").get<std::vector<Vertex>>();
        tr.cover.exact = j.at("cover_exact").get<bool>();
        tr.applied = j.at("applied").get<bool>();
        tr.trivial_no = j.at("trivial_no").get<bool>();
        tr.bipartite.cover = tr.cover.cover;
        tr.bipartite.pairs = j.at("pairs").get<std::vector<std::pair<Vertex, Vertex>>>();
        tr.bipartite.independent = j.at("independent").get<std::vector<Vertex>>();
        tr.expansion.a1 = j.at("a1").get<std::vector<int>>();
        tr.expansion.b1 = j.at("b1").get<std::vector<int>>();
        tr.expansion.matching = j.at("matching").get<std::vector<std::pair<int, int>>>();
        tr.removed = j.at("removed").get<std::vector<Vertex>>();
        tr.lift_pairs = j.at("lift_pairs").get<std::vector<std::pair<Vertex, Vertex>>>();
        tr.budget_delta = j.at("budget_delta").get<int>();
        tr.kept = j.at("kept").get<std::vector<Vertex>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SyntaxError, std::string("kernel trace: ") + e.what());
    }
    if (tr.removed.size() != tr.lift_pairs.size()) throw Error(ErrorKind::CountMismatch, "kernel trace: removed and lift_pairs differ in length");
    return tr;
}

}  // namespace scss
