#include "scss/exact.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "scss/error.hpp"

namespace scss {

namespace {

constexpr int kInf = SetFunctionMinPlus::kInf;

std::uint32_t vbit(Vertex v) { return 1u << (v - 1); }

std::vector<std::uint32_t> out_masks(const Digraph& d) {
    std::vector<std::uint32_t> out(static_cast<std::size_t>(d.vertex_count()) + 1, 0);
    for (const Arc& a : d.arcs()) out[static_cast<std::size_t>(a.tail)] |= vbit(a.head);
    return out;
}

// reach[X] = set of v such that a simple s->v path has interior exactly X.
std::vector<std::uint32_t> path_reach(int n, Vertex s, const std::vector<std::uint32_t>& out) {
    const std::uint32_t full = 1u << n;
    std::vector<std::uint32_t> reach(full, 0);
    reach[0] = out[static_cast<std::size_t>(s)] & ~vbit(s);
    for (std::uint32_t x = 0; x < full; ++x) {
        if (x & vbit(s)) continue;
        for (std::uint32_t r = reach[x]; r; r &= r - 1) {
            const int v = std::countr_zero(r) + 1;
            const std::uint32_t y = x | vbit(v);
            reach[y] |= out[static_cast<std::size_t>(v)] & ~y & ~vbit(s);
        }
    }
    return reach;
}

SetFunctionMinPlus clamp_table(int n, const std::vector<int>& values) {
    const int bound = ear_value_bound(n);
    SetFunctionMinPlus t(n, bound);
    for (std::uint32_t x = 0; x < values.size(); ++x)
        if (values[x] != kInf && values[x] <= bound) t.set(x, values[x]);
    return t;
}

bool all_infinite(const SetFunctionMinPlus& t) {
    for (std::uint32_t x = 0; x < t.size(); ++x)
        if (t.finite(x)) return false;
    return true;
}

}  // namespace

PathTables::PathTables(int n, std::vector<std::vector<std::uint8_t>> finite) : n_(n), finite_(std::move(finite)) {
    empty_.resize(finite_.size());
    for (std::size_t i = 0; i < finite_.size(); ++i)
        empty_[i] = std::none_of(finite_[i].begin(), finite_[i].end(), [](std::uint8_t b) { return b != 0; });
}

int PathTables::value(Vertex s, Vertex t, std::uint32_t x) const {
    return finite(s, t, x) ? std::popcount(x) + 1 : kInf;
}

SetFunctionMinPlus PathTables::table(Vertex s, Vertex t) const {
    SetFunctionMinPlus out(n_, std::max(n_, 1));
    const auto& r = row(s, t);
    for (std::uint32_t x = 0; x < r.size(); ++x)
        if (r[x]) out.set(x, std::popcount(x) + 1);
    return out;
}

PathTables build_path_tables(const Digraph& d, int cap) {
    const int n = d.vertex_count();
    if (n > cap || n > kMaxUniverse)
        throw Error(ErrorKind::TooManyVertices, "exact engine handles at most " + std::to_string(std::min(cap, kMaxUniverse)) + " vertices, got " + std::to_string(n));
    const std::uint32_t full = 1u << n;
    const auto out = out_masks(d);
    std::vector<std::uint32_t> in(static_cast<std::size_t>(n) + 1, 0);
    for (const Arc& a : d.arcs()) in[static_cast<std::size_t>(a.head)] |= vbit(a.tail);

    std::vector<std::vector<std::uint8_t>> finite(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (Vertex s = 1; s <= n; ++s) {
        const auto reach = path_reach(n, s, out);
        for (Vertex t = 1; t <= n; ++t) {
            auto& row = finite[static_cast<std::size_t>((s - 1) * n + (t - 1))];
            row.assign(full, 0);
            if (s != t) {
                for (std::uint32_t x = 0; x < full; ++x) row[x] = (reach[x] & vbit(t)) != 0;
                continue;
            }
            // Cycle through s: the last interior vertex u closes the cycle with arc (u, s).
            for (std::uint32_t x = 1; x < full; ++x) {
                if (x & vbit(s)) continue;
                for (std::uint32_t cand = x & in[static_cast<std::size_t>(s)]; cand; cand &= cand - 1) {
                    const std::uint32_t u = cand & -cand;
                    if (reach[x ^ u] & u) {
                        row[x] = 1;
                        break;
                    }
                }
            }
        }
    }
    return PathTables(n, std::move(finite));
}

int ear_value_bound(int n) { return std::max(1, 2 * n - 1); }

SetFunctionMinPlus first_ear_table(const PathTables& f) {
    const int n = f.vertex_count();
    std::vector<int> values(std::size_t{1} << n, kInf);
    for (std::uint32_t x = 1; x < values.size(); ++x)
        for (std::uint32_t r = x; r; r &= r - 1) {
            const Vertex a = std::countr_zero(r) + 1;
            if (f.finite(a, a, x ^ vbit(a))) {
                values[x] = std::popcount(x);
                break;
            }
        }
    return clamp_table(n, values);
}

EarStepper::EarStepper(const PathTables& f) : f_(&f) {
    const int n = f.vertex_count();
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::uint32_t> fz_full;
    for (Vertex s = 1; s <= n; ++s)
        for (Vertex t = 1; t <= n; ++t) {
            if (f.empty(s, t)) continue;
            PairZeta p;
            p.s = s;
            p.t = t;
            const std::uint32_t fixed = vbit(s) | vbit(t);
            const int free_bits = n - std::popcount(fixed);
            const std::size_t m = std::size_t{1} << free_bits;
            std::uint32_t others[32];
            int c = 0;
            for (int b = 0; b < n; ++b)
                if (!(fixed >> b & 1)) others[c++] = 1u << b;
            p.expand.resize(m);
            for (std::size_t i = 0; i < m; ++i) {
                std::uint32_t sset = fixed;
                for (int b = 0; b < free_bits; ++b)
                    if (i >> b & 1) sset |= others[b];
                p.expand[i] = sset;
            }
            // Only sets containing s and t can receive a contribution, so the
            // transform is kept on those alone.
            ranked_zeta_counts(n, f.row(s, t).data(), fz_full);
            p.fz.assign(static_cast<std::size_t>(n + 1) * m, 0);
            for (int j = 0; j <= n; ++j) {
                bool any = false;
                for (std::size_t i = 0; i < m; ++i) {
                    const std::uint32_t val = fz_full[static_cast<std::size_t>(j) * full + p.expand[i]];
                    p.fz[static_cast<std::size_t>(j) * m + i] = val;
                    any |= val != 0;
                }
                if (any) p.top_rank = j;
            }
            pairs_.push_back(std::move(p));
        }
}

SetFunctionMinPlus EarStepper::step(const SetFunctionMinPlus& prev) const {
    const int n = f_->vertex_count();
    if (prev.universe() != n) throw Error(ErrorKind::UniverseMismatch, "ear table and path tables disagree on n");
    const std::size_t full = std::size_t{1} << n;
    const int ranks = n + 1;

    // Shift by rank: S'[A] = T_{q-1}[A] - |A|, so every ear contributes |B| + 1 and
    // only the level of S' remains to be minimized.
    int top = -1;
    std::vector<int> shifted(full, kInf);
    for (std::uint32_t a = 0; a < full; ++a)
        if (prev.finite(a)) {
            shifted[a] = prev.get(a) - std::popcount(a);
            if (shifted[a] < 0) throw Error(ErrorKind::InternalInconsistency, "ear table below vertex count");
            top = std::max(top, shifted[a]);
        }
    SetFunctionMinPlus result(n, ear_value_bound(n));
    if (top < 0) return result;
    const int levels = top + 1;

    // z[(v * ranks + k) * full + S] = #{A ⊆ S : |A| = k, S'[A] = v}.
    std::vector<std::uint32_t> z(static_cast<std::size_t>(levels) * ranks * full, 0);
    std::vector<bool> level_used(static_cast<std::size_t>(levels), false);
    for (std::uint32_t a = 0; a < full; ++a)
        if (shifted[a] != kInf) {
            z[(static_cast<std::size_t>(shifted[a]) * ranks + std::popcount(a)) * full + a] = 1;
            level_used[static_cast<std::size_t>(shifted[a])] = true;
        }
    for (int v = 0; v < levels; ++v)
        if (level_used[static_cast<std::size_t>(v)])
            for (int k = 0; k <= n; ++k) zeta_counts(n, z.data() + (static_cast<std::size_t>(v) * ranks + k) * full);

    // Counts are nonnegative, so summing every pair's transformed product before a
    // single inverse transform still marks exactly the sets some pair can reach.
    std::vector<std::uint32_t> h(z.size(), 0);
    std::vector<std::uint32_t> zm;
    for (const PairZeta& p : pairs_) {
        const Vertex s = p.s, t = p.t;
        const std::size_t m = p.expand.size();
        zm.assign(static_cast<std::size_t>(ranks) * m, 0);
        for (int v = 0; v < levels; ++v) {
            if (!level_used[static_cast<std::size_t>(v)]) continue;
            // Zeta of S' restricted to sets containing s and t, by inclusion-exclusion.
            bool any = false;
            for (int k = 0; k <= n; ++k) {
                const std::uint32_t* zk = z.data() + (static_cast<std::size_t>(v) * ranks + k) * full;
                std::uint32_t* out = zm.data() + static_cast<std::size_t>(k) * m;
                for (std::size_t i = 0; i < m; ++i) {
                    const std::uint32_t sset = p.expand[i];
                    std::uint32_t val = zk[sset] - zk[sset ^ vbit(s)];
                    if (s != t) val += zk[sset ^ vbit(s) ^ vbit(t)] - zk[sset ^ vbit(t)];
                    out[i] = val;
                    any |= val != 0;
                }
            }
            if (!any) continue;
            for (int k = 0; k <= n; ++k) {
                std::uint32_t* hk = h.data() + (static_cast<std::size_t>(v) * ranks + k) * full;
                for (int j = 0; j <= std::min(k, p.top_rank); ++j) {
                    const std::uint32_t* a = zm.data() + static_cast<std::size_t>(k - j) * m;
                    const std::uint32_t* b = p.fz.data() + static_cast<std::size_t>(j) * m;
                    for (std::size_t i = 0; i < m; ++i) hk[p.expand[i]] += a[i] * b[i];
                }
            }
        }
    }

    std::vector<int> values(full, kInf);
    for (int v = 0; v < levels; ++v) {
        if (!level_used[static_cast<std::size_t>(v)]) continue;
        for (int k = 0; k <= n; ++k) moebius_counts(n, h.data() + (static_cast<std::size_t>(v) * ranks + k) * full);
        for (std::uint32_t x = 0; x < full; ++x) {
            if (values[x] != kInf) continue;
            const int k = std::popcount(x);
            if (h[(static_cast<std::size_t>(v) * ranks + k) * full + x] != 0) values[x] = v + k + 1;
        }
    }
    return clamp_table(n, values);
}

SetFunctionMinPlus ear_step(const SetFunctionMinPlus& prev, const PathTables& f) { return EarStepper(f).step(prev); }

SetFunctionMinPlus ear_step_reference(const SetFunctionMinPlus& prev, const PathTables& f) {
    const int n = f.vertex_count();
    if (prev.universe() != n) throw Error(ErrorKind::UniverseMismatch, "ear table and path tables disagree on n");
    const int bound = ear_value_bound(n);
    std::vector<int> values(std::size_t{1} << n, kInf);
    for (Vertex s = 1; s <= n; ++s)
        for (Vertex t = 1; t <= n; ++t) {
            SetFunctionMinPlus masked(n, bound);
            for (std::uint32_t a = 0; a < masked.size(); ++a)
                if ((a & vbit(s)) && (a & vbit(t)) && prev.finite(a)) masked.set(a, prev.get(a));
            SetFunctionMinPlus path(n, bound);
            for (std::uint32_t b = 0; b < path.size(); ++b)
                if (f.finite(s, t, b)) path.set(b, f.value(s, t, b));
            const SetFunctionMinPlus u = minplus_subset_convolution(masked, path, bound);
            for (std::uint32_t x = 0; x < u.size(); ++x)
                if (u.finite(x)) values[x] = std::min(values[x], u.get(x));
        }
    return clamp_table(n, values);
}

namespace {

// Arcs of a simple s->t path (or cycle when s == t) whose interior is exactly `interior`.
std::vector<Arc> witness_path(const Digraph& d, Vertex s, Vertex t, std::uint32_t interior) {
    std::vector<Vertex> verts;
    for (std::uint32_t r = interior; r; r &= r - 1) verts.push_back(std::countr_zero(r) + 1);
    const int k = static_cast<int>(verts.size());
    auto has = [&](Vertex a, Vertex b) { return d.find_arc(a, b).has_value(); };
    // ok[Y][j]: a simple path from s to verts[j] using exactly local set Y (which contains j).
    const std::uint32_t full = 1u << k;
    std::vector<std::uint32_t> ok(full, 0);
    for (int j = 0; j < k; ++j)
        if (has(s, verts[static_cast<std::size_t>(j)])) ok[1u << j] |= 1u << j;
    for (std::uint32_t y = 1; y < full; ++y)
        for (std::uint32_t e = ok[y]; e; e &= e - 1) {
            const int j = std::countr_zero(e);
            for (int nx = 0; nx < k; ++nx)
                if (!(y >> nx & 1) && has(verts[static_cast<std::size_t>(j)], verts[static_cast<std::size_t>(nx)])) ok[y | 1u << nx] |= 1u << nx;
        }
    std::vector<Arc> arcs;
    if (k == 0) {
        if (s == t || !has(s, t)) throw Error(ErrorKind::InternalInconsistency, "missing single-arc ear");
        arcs.push_back({s, t});
        return arcs;
    }
    int last = -1;
    for (int j = 0; j < k && last < 0; ++j)
        if ((ok[full - 1] >> j & 1) && has(verts[static_cast<std::size_t>(j)], t)) last = j;
    if (last < 0) throw Error(ErrorKind::InternalInconsistency, "no witness path for ear");
    std::vector<Vertex> order;
    std::uint32_t y = full - 1;
    int cur = last;
    while (true) {
        order.push_back(verts[static_cast<std::size_t>(cur)]);
        const std::uint32_t rest = y ^ (1u << cur);
        if (rest == 0) break;
        int prev = -1;
        for (std::uint32_t e = ok[rest]; e; e &= e - 1) {
            const int j = std::countr_zero(e);
            if (has(verts[static_cast<std::size_t>(j)], verts[static_cast<std::size_t>(cur)])) {
                prev = j;
                break;
            }
        }
        if (prev < 0) throw Error(ErrorKind::InternalInconsistency, "broken path backtrack");
        y = rest;
        cur = prev;
    }
    std::reverse(order.begin(), order.end());
    Vertex at = s;
    for (Vertex v : order) {
        arcs.push_back({at, v});
        at = v;
    }
    arcs.push_back({at, t});
    return arcs;
}

}  // namespace

ArcSet reconstruct(const Digraph& d, const PathTables& f, const std::vector<SetFunctionMinPlus>& ears,
                   std::uint32_t x, int q) {
    if (q < 1 || q > static_cast<int>(ears.size()) || !ears[static_cast<std::size_t>(q - 1)].finite(x))
        throw Error(ErrorKind::InternalInconsistency, "reconstruction requested at an infinite entry");
    const int n = d.vertex_count();
    const int target = ears[static_cast<std::size_t>(q - 1)].get(x);
    std::vector<Arc> arcs;
    std::uint32_t cur = x;
    for (int level = q; level >= 2; --level) {
        const SetFunctionMinPlus& prev = ears[static_cast<std::size_t>(level - 2)];
        const int want = ears[static_cast<std::size_t>(level - 1)].get(cur);
        bool found = false;
        for (std::uint32_t a = cur; a && !found; a = (a - 1) & cur) {
            if (!prev.finite(a)) continue;
            const std::uint32_t b = cur ^ a;
            if (prev.get(a) + std::popcount(b) + 1 != want) continue;
            for (Vertex s = 1; s <= n && !found; ++s) {
                if (!(a & vbit(s))) continue;
                for (Vertex t = 1; t <= n && !found; ++t) {
                    if (!(a & vbit(t)) || !f.finite(s, t, b)) continue;
                    const auto ear = witness_path(d, s, t, b);
                    arcs.insert(arcs.end(), ear.begin(), ear.end());
                    cur = a;
                    found = true;
                }
            }
        }
        if (!found) throw Error(ErrorKind::InternalInconsistency, "no argmin for ear " + std::to_string(level));
    }
    bool found = false;
    for (std::uint32_t r = cur; r && !found; r &= r - 1) {
        const Vertex a = std::countr_zero(r) + 1;
        if (f.finite(a, a, cur ^ vbit(a))) {
            const auto cycle = witness_path(d, a, a, cur ^ vbit(a));
            arcs.insert(arcs.end(), cycle.begin(), cycle.end());
            found = true;
        }
    }
    if (!found) throw Error(ErrorKind::InternalInconsistency, "no initial cycle");

    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    const ArcSet result = ArcSet::from_arcs(d, arcs);
    if (result.size() != target) throw Error(ErrorKind::InternalInconsistency, "reconstructed arc count differs from table value");
    std::vector<Vertex> span;
    for (std::uint32_t r = x; r; r &= r - 1) span.push_back(std::countr_zero(r) + 1);
    if (!terminals_mutually_reachable(d, result, span))
        throw Error(ErrorKind::InternalInconsistency, "reconstructed subgraph is not strongly connected");
    return result;
}

ExactResult solve_exact(const Digraph& d, const ExactOptions& options) {
    const int n = d.vertex_count();
    if (n > options.cap || n > kMaxUniverse)
        throw Error(ErrorKind::TooManyVertices, "exact engine handles at most " + std::to_string(std::min(options.cap, kMaxUniverse)) + " vertices, got " + std::to_string(n));
    ExactResult result;
    if (d.terminals().size() <= 1) {
        result.optimum = 0;
        if (options.reconstruct) result.solution = ArcSet();
        return result;
    }
    std::uint32_t tmask = 0;
    for (Vertex t : d.terminals()) tmask |= vbit(t);

    const PathTables f = build_path_tables(d, options.cap);
    const EarStepper stepper(f);
    std::vector<SetFunctionMinPlus> ears;
    ears.push_back(first_ear_table(f));
    int best = kInf;
    auto scan = [&](int q) {
        const SetFunctionMinPlus& t = ears.back();
        for (std::uint32_t x = 0; x < t.size(); ++x)
            if ((x & tmask) == tmask && t.finite(x) && t.get(x) < best) {
                best = t.get(x);
                result.ears = q;
                result.vertex_set = x;
            }
    };
    scan(1);
    for (int q = 2; q <= n - 1; ++q) {
        if (all_infinite(ears.back())) break;
        ears.push_back(stepper.step(ears.back()));
        scan(q);
    }
    if (best == kInf) return result;
    result.optimum = best;
    if (options.reconstruct) result.solution = reconstruct(d, f, ears, result.vertex_set, result.ears);
    return result;
}

}  // namespace scss
