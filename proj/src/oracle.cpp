#include "scss/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "scss/error.hpp"
#include "scss/reductions.hpp"

namespace scss {

namespace {

using Mask = std::uint64_t;

Mask bit_of(Vertex v) { return Mask{1} << (v - 1); }

// Closure of `from` under the adjacency masks.
Mask closure(Mask from, const std::vector<Mask>& adj) {
    Mask seen = from, frontier = from;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen;
}

// Next subset of the same cardinality (Gosper).
std::uint32_t next_combination(std::uint32_t x) {
    const std::uint32_t c = x & -x;
    const std::uint32_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

template <typename Fn>
void for_each_subset_by_size(int m, int max_size, Fn&& fn) {
    for (int k = 0; k <= std::min(m, max_size); ++k) {
        if (k == 0) {
            if (fn(0u)) return;
            continue;
        }
        const std::uint32_t last = k == 32 ? ~0u : ((1u << k) - 1) << (m - k);
        for (std::uint32_t x = (1u << k) - 1;; x = next_combination(x)) {
            if (fn(x)) return;
            if (x == last) break;
        }
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        return a;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

std::vector<int> subset_indices(std::uint32_t x) {
    std::vector<int> out;
    for (; x; x &= x - 1) out.push_back(std::countr_zero(x));
    return out;
}

// Number of side assignments of the span with r on side 0 such that no arc crosses.
std::uint64_t consistent_cuts(const Digraph& d, const std::vector<int>& arcs, std::uint32_t span, Vertex r) {
    std::vector<Vertex> vs;
    for (std::uint32_t s = span; s; s &= s - 1) vs.push_back(std::countr_zero(s) + 1);
    std::uint64_t count = 0;
    const std::uint32_t total = 1u << vs.size();
    for (std::uint32_t assign = 0; assign < total; ++assign) {
        auto side = [&](Vertex v) {
            const auto pos = std::find(vs.begin(), vs.end(), v) - vs.begin();
            return assign >> pos & 1;
        };
        if (side(r) != 0) continue;
        bool ok = true;
        for (int a : arcs)
            if (side(d.arc(a).tail) != side(d.arc(a).head)) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

void require_census_size(const Digraph& d) {
    if (d.vertex_count() > kCensusVertexLimit)
        throw Error(ErrorKind::TooLarge, "relaxed pair enumeration needs n <= " + std::to_string(kCensusVertexLimit));
}

// Visits every relaxed pair: span ⊇ T ∪ {r}; each non-root span vertex picks one
// out-arc inside the span (in-branching) and one in-arc inside the span (out-branching).
template <typename Fn>
void for_each_relaxed_pair(const Digraph& d, Vertex r, Fn&& fn) {
    require_census_size(d);
    const int n = d.vertex_count();
    std::uint32_t required = r >= 1 ? 1u << (r - 1) : 0;
    for (Vertex t : d.terminals()) required |= 1u << (t - 1);
    for (std::uint32_t span = 0; span < (1u << n); ++span) {
        if ((span & required) != required) continue;
        if (!(span >> (r - 1) & 1)) continue;
        std::vector<std::vector<int>> out_choice, in_choice;
        bool feasible = true;
        for (std::uint32_t s = span; s; s &= s - 1) {
            const Vertex v = std::countr_zero(s) + 1;
            if (v == r) continue;
            std::vector<int> oc, ic;
            for (int a : d.out_arcs(v))
                if (span >> (d.arc(a).head - 1) & 1) oc.push_back(a);
            for (int a : d.in_arcs(v))
                if (span >> (d.arc(a).tail - 1) & 1) ic.push_back(a);
            if (oc.empty() || ic.empty()) feasible = false;
            out_choice.push_back(std::move(oc));
            in_choice.push_back(std::move(ic));
        }
        if (!feasible) continue;
        const std::size_t k = out_choice.size();
        std::vector<std::size_t> oi(k, 0);
        RelaxedPair p;
        p.span = span;
        while (true) {
            p.in_arcs.clear();
            for (std::size_t j = 0; j < k; ++j) p.in_arcs.push_back(out_choice[j][oi[j]]);
            std::vector<std::size_t> ii(k, 0);
            while (true) {
                p.out_arcs.clear();
                for (std::size_t j = 0; j < k; ++j) p.out_arcs.push_back(in_choice[j][ii[j]]);
                fn(p);
                std::size_t j = 0;
                while (j < k && ++ii[j] == in_choice[j].size()) ii[j++] = 0;
                if (j == k) break;
            }
            std::size_t j = 0;
            while (j < k && ++oi[j] == out_choice[j].size()) oi[j++] = 0;
            if (j == k) break;
        }
    }
}

}  // namespace

BruteResult brute_scss(const Digraph& d, std::optional<int> limit) {
    const int m = d.arc_count();
    if (m > kBruteArcLimit) throw Error(ErrorKind::TooLarge, "brute force needs |A| <= " + std::to_string(kBruteArcLimit));
    if (d.vertex_count() > 64) throw Error(ErrorKind::TooLarge, "brute force needs n <= 64");
    BruteResult result;
    const auto& terms = d.terminals();
    if (terms.size() <= 1) {
        result.optimum = 0;
        return result;
    }
    Mask tmask = 0;
    for (Vertex t : terms) tmask |= bit_of(t);
    const Vertex hub = terms.front();
    const std::size_t n = static_cast<std::size_t>(d.vertex_count());
    std::vector<Mask> fwd(n), bwd(n);
    for_each_subset_by_size(m, limit.value_or(m), [&](std::uint32_t x) {
        std::fill(fwd.begin(), fwd.end(), 0);
        std::fill(bwd.begin(), bwd.end(), 0);
        for (std::uint32_t s = x; s; s &= s - 1) {
            const Arc& a = d.arc(std::countr_zero(s));
            fwd[static_cast<std::size_t>(a.tail - 1)] |= bit_of(a.head);
            bwd[static_cast<std::size_t>(a.head - 1)] |= bit_of(a.tail);
        }
        if ((closure(bit_of(hub), fwd) & tmask) != tmask) return false;
        if ((closure(bit_of(hub), bwd) & tmask) != tmask) return false;
        result.optimum = std::popcount(x);
        result.witness = ArcSet(subset_indices(x));
        return true;
    });
    return result;
}

bool valid_relaxed_pair(const Digraph& d, const RelaxedPair& p, Vertex r) {
    const int n = d.vertex_count();
    if (r < 1 || r > n || !(p.span >> (r - 1) & 1)) return false;
    if (n < 32 && (p.span >> n) != 0) return false;
    for (Vertex t : d.terminals())
        if (!(p.span >> (t - 1) & 1)) return false;
    auto check = [&](const std::vector<int>& arcs, bool inward) {
        std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
        std::vector<int> sorted = arcs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        for (int a : arcs) {
            if (a < 0 || a >= d.arc_count()) return false;
            const Arc& arc = d.arc(a);
            if (!(p.span >> (arc.tail - 1) & 1) || !(p.span >> (arc.head - 1) & 1)) return false;
            ++deg[static_cast<std::size_t>(inward ? arc.tail : arc.head)];
        }
        for (Vertex v = 1; v <= n; ++v) {
            const bool in_span = p.span >> (v - 1) & 1;
            const int want = in_span && v != r ? 1 : 0;
            if (deg[static_cast<std::size_t>(v)] != want) return false;
        }
        return true;
    };
    return check(p.in_arcs, true) && check(p.out_arcs, false);
}

int component_count(const Digraph& d, const std::vector<int>& arcs, std::uint32_t span) {
    UnionFind uf(d.vertex_count() + 1);
    for (int a : arcs) uf.unite(d.arc(a).tail, d.arc(a).head);
    int count = 0;
    for (std::uint32_t s = span; s; s &= s - 1) {
        const int v = std::countr_zero(s) + 1;
        if (uf.find(v) == v) ++count;
    }
    return count;
}

std::uint64_t count_consistent_cut_pairs(const Digraph& d, const RelaxedPair& p, Vertex r) {
    // Joint enumeration: every (in-side, out-side) assignment is tested as a pair.
    std::vector<Vertex> vs;
    for (std::uint32_t s = p.span; s; s &= s - 1) vs.push_back(std::countr_zero(s) + 1);
    const std::size_t k = vs.size();
    if (2 * k > 40) throw Error(ErrorKind::TooLarge, "span too large for joint cut enumeration");
    auto pos = [&](Vertex v) { return static_cast<int>(std::find(vs.begin(), vs.end(), v) - vs.begin()); };
    const int rp = pos(r);
    std::uint64_t count = 0;
    for (std::uint64_t joint = 0; joint < (std::uint64_t{1} << (2 * k)); ++joint) {
        const std::uint64_t in_side = joint & ((std::uint64_t{1} << k) - 1);
        const std::uint64_t out_side = joint >> k;
        if ((in_side >> rp & 1) || (out_side >> rp & 1)) continue;
        bool ok = true;
        for (int a : p.in_arcs)
            if ((in_side >> pos(d.arc(a).tail) & 1) != (in_side >> pos(d.arc(a).head) & 1)) ok = false;
        for (int a : p.out_arcs)
            if ((out_side >> pos(d.arc(a).tail) & 1) != (out_side >> pos(d.arc(a).head) & 1)) ok = false;
        if (ok) ++count;
    }
    return count;
}

std::vector<RelaxedPair> list_relaxed_pairs(const Digraph& d, Vertex r) {
    std::vector<RelaxedPair> out;
    for_each_relaxed_pair(d, r, [&](const RelaxedPair& p) { out.push_back(p); });
    return out;
}

RelaxedCensus census_relaxed_pairs(const Digraph& d, Vertex r, const WeightAssignment& w) {
    RelaxedCensus census;
    for_each_relaxed_pair(d, r, [&](const RelaxedPair& p) {
        int weight = 0;
        for (int a : p.in_arcs) weight += w.in[static_cast<std::size_t>(a)];
        for (int a : p.out_arcs) weight += w.out[static_cast<std::size_t>(a)];
        std::vector<int> both = p.in_arcs;
        both.insert(both.end(), p.out_arcs.begin(), p.out_arcs.end());
        std::sort(both.begin(), both.end());
        both.erase(std::unique(both.begin(), both.end()), both.end());
        RelaxedCounts& c = census[{static_cast<int>(both.size()), weight}];
        ++c.candidates;
        if (component_count(d, p.in_arcs, p.span) == 1 && component_count(d, p.out_arcs, p.span) == 1) ++c.solutions;
        c.with_cuts += consistent_cuts(d, p.in_arcs, p.span, r) * consistent_cuts(d, p.out_arcs, p.span, r);
    });
    return census;
}

RelaxedCounts enumerate_relaxed_pairs(const Digraph& d, Vertex r, const WeightAssignment& w, int W, int max_arcs) {
    RelaxedCounts total;
    for (const auto& [key, c] : census_relaxed_pairs(d, r, w)) {
        if (key.second != W || key.first > max_arcs) continue;
        total.candidates += c.candidates;
        total.solutions += c.solutions;
        total.with_cuts += c.with_cuts;
    }
    return total;
}

std::optional<int> brute_set_cover(const SetCoverInstance& sc) {
    const int m = static_cast<int>(sc.sets.size());
    if (m > 20) throw Error(ErrorKind::TooLarge, "set cover brute force needs m <= 20");
    if (sc.universe > 64) throw Error(ErrorKind::TooLarge, "set cover brute force needs n <= 64");
    const Mask all = sc.universe == 64 ? ~Mask{0} : (Mask{1} << sc.universe) - 1;
    std::vector<Mask> masks;
    for (const auto& s : sc.sets) {
        Mask x = 0;
        for (int e : s) x |= Mask{1} << (e - 1);
        masks.push_back(x);
    }
    std::optional<int> best;
    for_each_subset_by_size(m, m, [&](std::uint32_t x) {
        Mask covered = 0;
        for (std::uint32_t s = x; s; s &= s - 1) covered |= masks[static_cast<std::size_t>(std::countr_zero(s))];
        if (covered != all) return false;
        best = std::popcount(x);
        return true;
    });
    return best;
}

std::optional<int> brute_2ecss(const UndirectedGraph& g) {
    const int m = g.edge_count();
    if (m > 20) throw Error(ErrorKind::TooLarge, "2-ECSS brute force needs |E| <= 20");
    std::optional<int> best;
    for_each_subset_by_size(m, m, [&](std::uint32_t x) {
        const auto idx = subset_indices(x);
        if (!two_edge_connected(g, idx)) return false;
        best = std::popcount(x);
        return true;
    });
    return best;
}

BruteResult brute_meg(const Digraph& d) {
    const int m = d.arc_count();
    if (m > kBruteArcLimit) throw Error(ErrorKind::TooLarge, "brute force needs |A| <= " + std::to_string(kBruteArcLimit));
    if (d.vertex_count() > 64) throw Error(ErrorKind::TooLarge, "brute force needs n <= 64");
    const std::size_t n = static_cast<std::size_t>(d.vertex_count());
    auto reach = [&](std::uint32_t x) {
        std::vector<Mask> adj(n, 0);
        for (std::uint32_t s = x; s; s &= s - 1) {
            const Arc& a = d.arc(std::countr_zero(s));
            adj[static_cast<std::size_t>(a.tail - 1)] |= bit_of(a.head);
        }
        std::vector<Mask> out(n);
        for (std::size_t v = 0; v < n; ++v) out[v] = closure(Mask{1} << v, adj);
        return out;
    };
    const auto target = reach(m == 32 ? ~0u : (1u << m) - 1);
    BruteResult result;
    for_each_subset_by_size(m, m, [&](std::uint32_t x) {
        if (reach(x) != target) return false;
        result.optimum = std::popcount(x);
        result.witness = ArcSet(subset_indices(x));
        return true;
    });
    return result;
}

}  // namespace scss
