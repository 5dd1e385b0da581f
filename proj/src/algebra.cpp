#include "scss/algebra.hpp"

#include <bit>
#include <string>

#include "scss/error.hpp"

namespace scss {

namespace {

void check_universe(int u) {
    if (u < 0 || u > kMaxUniverse)
        throw Error(ErrorKind::RangeError, "universe size " + std::to_string(u) + " outside 0.." + std::to_string(kMaxUniverse));
}

// Carry-less product of two rank vectors, truncated to ranks 0..u.
std::uint32_t clmul_ranks(std::uint32_t a, std::uint32_t b, int u) {
    std::uint32_t out = 0;
    while (a) {
        const int j = std::countr_zero(a);
        a &= a - 1;
        out ^= b << j;
    }
    return out & static_cast<std::uint32_t>((std::uint64_t{1} << (u + 1)) - 1);
}

void zeta_xor(int u, std::vector<std::uint32_t>& t) {
    const std::size_t n = t.size();
    for (int bit = 0; bit < u; ++bit) {
        const std::size_t m = std::size_t{1} << bit;
        for (std::size_t s = 0; s < n; ++s)
            if (s & m) t[s] ^= t[s ^ m];
    }
}

}  // namespace

SetFunctionGF2::SetFunctionGF2(int universe) : u_(universe) {
    check_universe(universe);
    bits_.assign(std::size_t{1} << universe, 0);
}

SetFunctionMinPlus::SetFunctionMinPlus(int universe, int bound) : u_(universe), bound_(bound) {
    check_universe(universe);
    if (bound < 0) throw Error(ErrorKind::RangeError, "negative value bound");
    values_.assign(std::size_t{1} << universe, kInf);
}

void SetFunctionMinPlus::set(std::uint32_t s, int value) {
    if (value != kInf && (value < 0 || value > bound_))
        throw Error(ErrorKind::ValueBoundExceeded, "value " + std::to_string(value) + " outside 0.." + std::to_string(bound_));
    values_[s] = value;
}

SetFunctionGF2 zeta_gf2(const SetFunctionGF2& f) {
    SetFunctionGF2 out = f;
    const int u = f.universe();
    for (int bit = 0; bit < u; ++bit) {
        const std::uint32_t m = 1u << bit;
        for (std::uint32_t s = 0; s < out.size(); ++s)
            if ((s & m) && out.get(s ^ m)) out.flip(s);
    }
    return out;
}

SetFunctionGF2 moebius_gf2(const SetFunctionGF2& f) {
    // Over GF(2) subtraction is addition, so the inverse transform is the transform itself.
    return zeta_gf2(f);
}

SetFunctionGF2 subset_convolution_gf2(const SetFunctionGF2& f, const SetFunctionGF2& g) {
    if (f.universe() != g.universe()) throw Error(ErrorKind::UniverseMismatch, "operands live on different universes");
    const int u = f.universe();
    const std::size_t n = f.size();
    // Bit k of fr[S] holds the rank-k layer, so one XOR moves all layers at once.
    std::vector<std::uint32_t> fr(n), gr(n);
    for (std::size_t s = 0; s < n; ++s) {
        const int k = std::popcount(static_cast<std::uint32_t>(s));
        fr[s] = f.get(static_cast<std::uint32_t>(s)) ? 1u << k : 0;
        gr[s] = g.get(static_cast<std::uint32_t>(s)) ? 1u << k : 0;
    }
    zeta_xor(u, fr);
    zeta_xor(u, gr);
    for (std::size_t s = 0; s < n; ++s) fr[s] = clmul_ranks(fr[s], gr[s], u);
    zeta_xor(u, fr);
    SetFunctionGF2 h(u);
    for (std::size_t s = 0; s < n; ++s) {
        const int k = std::popcount(static_cast<std::uint32_t>(s));
        h.set(static_cast<std::uint32_t>(s), (fr[s] >> k) & 1);
    }
    return h;
}

SetFunctionGF2 subset_convolution_gf2_naive(const SetFunctionGF2& f, const SetFunctionGF2& g) {
    if (f.universe() != g.universe()) throw Error(ErrorKind::UniverseMismatch, "operands live on different universes");
    SetFunctionGF2 h(f.universe());
    for (std::uint32_t s = 0; s < h.size(); ++s) {
        bool acc = false;
        for (std::uint32_t a = s;; a = (a - 1) & s) {
            acc ^= f.get(a) && g.get(s ^ a);
            if (a == 0) break;
        }
        h.set(s, acc);
    }
    return h;
}

void zeta_counts(int u, std::uint32_t* table) {
    const std::size_t n = std::size_t{1} << u;
    for (int bit = 0; bit < u; ++bit) {
        const std::size_t m = std::size_t{1} << bit;
        for (std::size_t s = 0; s < n; ++s)
            if (s & m) table[s] += table[s ^ m];
    }
}

void moebius_counts(int u, std::uint32_t* table) {
    const std::size_t n = std::size_t{1} << u;
    for (int bit = 0; bit < u; ++bit) {
        const std::size_t m = std::size_t{1} << bit;
        for (std::size_t s = 0; s < n; ++s)
            if (s & m) table[s] -= table[s ^ m];
    }
}

void ranked_zeta_counts(int u, const std::uint8_t* indicator, std::vector<std::uint32_t>& out) {
    const std::size_t n = std::size_t{1} << u;
    out.assign((u + 1) * n, 0);
    for (std::size_t s = 0; s < n; ++s)
        if (indicator[s]) out[std::popcount(static_cast<std::uint32_t>(s)) * n + s] = 1;
    for (int k = 0; k <= u; ++k) zeta_counts(u, out.data() + k * n);
}

SetFunctionMinPlus minplus_subset_convolution(const SetFunctionMinPlus& f, const SetFunctionMinPlus& g, int bound) {
    if (f.universe() != g.universe()) throw Error(ErrorKind::UniverseMismatch, "operands live on different universes");
    for (const SetFunctionMinPlus* x : {&f, &g})
        for (std::uint32_t s = 0; s < x->size(); ++s)
            if (x->finite(s) && (x->get(s) < 0 || x->get(s) > bound))
                throw Error(ErrorKind::ValueBoundExceeded, "input value " + std::to_string(x->get(s)) + " exceeds bound " + std::to_string(bound));

    const int u = f.universe();
    const std::size_t n = f.size();
    const std::size_t layers = static_cast<std::size_t>(u + 1) * n;
    // One ranked zeta per exact value level of each operand; empty levels are skipped.
    auto levels = [&](const SetFunctionMinPlus& x) {
        std::vector<std::vector<std::uint32_t>> out(static_cast<std::size_t>(bound) + 1);
        std::vector<std::uint8_t> ind(n);
        for (int v = 0; v <= bound; ++v) {
            bool any = false;
            for (std::uint32_t s = 0; s < n; ++s) {
                ind[s] = x.get(s) == v;
                any |= ind[s] != 0;
            }
            if (any) ranked_zeta_counts(u, ind.data(), out[static_cast<std::size_t>(v)]);
        }
        return out;
    };
    const auto fl = levels(f);
    const auto gl = levels(g);

    SetFunctionMinPlus h(u, 2 * bound);
    std::vector<std::uint32_t> acc(layers);
    std::vector<bool> done(n, false);
    for (int v = 0; v <= 2 * bound; ++v) {
        bool touched = false;
        std::fill(acc.begin(), acc.end(), 0);
        for (int a = std::max(0, v - bound); a <= std::min(v, bound); ++a) {
            const auto& fa = fl[static_cast<std::size_t>(a)];
            const auto& gb = gl[static_cast<std::size_t>(v - a)];
            if (fa.empty() || gb.empty()) continue;
            touched = true;
            for (int k = 0; k <= u; ++k)
                for (int j = 0; j <= k; ++j) {
                    const std::uint32_t* x = fa.data() + j * n;
                    const std::uint32_t* y = gb.data() + (k - j) * n;
                    std::uint32_t* z = acc.data() + k * n;
                    for (std::size_t s = 0; s < n; ++s) z[s] += x[s] * y[s];
                }
        }
        if (!touched) continue;
        for (int k = 0; k <= u; ++k) moebius_counts(u, acc.data() + k * n);
        for (std::size_t s = 0; s < n; ++s) {
            if (done[s]) continue;
            if (acc[std::popcount(static_cast<std::uint32_t>(s)) * n + s] != 0) {
                h.set(static_cast<std::uint32_t>(s), v);
                done[s] = true;
            }
        }
    }
    return h;
}

SetFunctionMinPlus minplus_subset_convolution_naive(const SetFunctionMinPlus& f, const SetFunctionMinPlus& g) {
    if (f.universe() != g.universe()) throw Error(ErrorKind::UniverseMismatch, "operands live on different universes");
    SetFunctionMinPlus h(f.universe(), f.bound() + g.bound());
    for (std::uint32_t s = 0; s < h.size(); ++s) {
        int best = SetFunctionMinPlus::kInf;
        for (std::uint32_t a = s;; a = (a - 1) & s) {
            if (f.finite(a) && g.finite(s ^ a)) best = std::min(best, f.get(a) + g.get(s ^ a));
            if (a == 0) break;
        }
        h.set(s, best);
    }
    return h;
}

}  // namespace scss
