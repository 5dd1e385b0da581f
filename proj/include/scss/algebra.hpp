#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace scss {

inline constexpr int kMaxUniverse = 25;

/// Parity-valued function on the subsets of {0..u-1}; subsets are bitmasks.
class SetFunctionGF2 {
public:
    SetFunctionGF2() = default;
    explicit SetFunctionGF2(int universe);

    int universe() const noexcept { return u_; }
    std::size_t size() const noexcept { return bits_.size(); }
    bool get(std::uint32_t s) const { return bits_[s] != 0; }
    void set(std::uint32_t s, bool value) { bits_[s] = value ? 1 : 0; }
    void flip(std::uint32_t s) { bits_[s] ^= 1; }

    friend bool operator==(const SetFunctionGF2&, const SetFunctionGF2&) = default;

private:
    int u_ = 0;
    std::vector<std::uint8_t> bits_{0};
};

/// Function on subsets with values in {0..bound} plus infinity.
class SetFunctionMinPlus {
public:
    static constexpr int kInf = std::numeric_limits<int>::max();

    SetFunctionMinPlus() = default;
    /// All entries start at infinity.
    SetFunctionMinPlus(int universe, int bound);

    int universe() const noexcept { return u_; }
    int bound() const noexcept { return bound_; }
    std::size_t size() const noexcept { return values_.size(); }
    int get(std::uint32_t s) const { return values_[s]; }
    bool finite(std::uint32_t s) const { return values_[s] != kInf; }
    /// Throws ValueBoundExceeded for finite values outside {0..bound}.
    void set(std::uint32_t s, int value);

    friend bool operator==(const SetFunctionMinPlus&, const SetFunctionMinPlus&) = default;

private:
    int u_ = 0;
    int bound_ = 0;
    std::vector<int> values_{kInf};
};

SetFunctionGF2 zeta_gf2(const SetFunctionGF2& f);
SetFunctionGF2 moebius_gf2(const SetFunctionGF2& f);

/// h[S] = sum over S = A ⊔ B of f[A] g[B] (mod 2). Throws UniverseMismatch.
SetFunctionGF2 subset_convolution_gf2(const SetFunctionGF2& f, const SetFunctionGF2& g);
SetFunctionGF2 subset_convolution_gf2_naive(const SetFunctionGF2& f, const SetFunctionGF2& g);

/// h[S] = min over S = A ⊔ B of f[A] + g[B]. Inputs must have finite values <= bound
/// (ValueBoundExceeded otherwise); the result carries bound 2*bound.
SetFunctionMinPlus minplus_subset_convolution(const SetFunctionMinPlus& f, const SetFunctionMinPlus& g, int bound);
SetFunctionMinPlus minplus_subset_convolution_naive(const SetFunctionMinPlus& f, const SetFunctionMinPlus& g);

// Counting transforms over uint32 with wrap-around arithmetic. Results are exact
// whenever the true counts stay below 2^32.

/// In-place zeta (sum over subsets) of a table of length 2^u.
void zeta_counts(int u, std::uint32_t* table);
/// In-place inverse of zeta_counts.
void moebius_counts(int u, std::uint32_t* table);

/// out[k * 2^u + S] = #{A ⊆ S : |A| = k and indicator[A] != 0}; out is resized to (u+1) 2^u.
void ranked_zeta_counts(int u, const std::uint8_t* indicator, std::vector<std::uint32_t>& out);

/// Ranked subset convolution over an arbitrary ring whose elements are fixed-width
/// blocks of `Ring::word`. The ring supplies:
///   std::size_t stride;                          words per element
///   void add(word* dst, const word* src) const;  dst += src
///   void sub(word* dst, const word* src) const;  dst -= src
///   void mul_add(word* dst, const word* a, const word* b) const;  dst += a*b
///   bool is_zero(const word* a) const;
/// f, g and h hold 2^u consecutive elements; h is overwritten.
template <typename Ring>
void ranked_subset_convolution(const Ring& ring, int u, const typename Ring::word* f,
                               const typename Ring::word* g, typename Ring::word* h) {
    using word = typename Ring::word;
    const std::size_t n = std::size_t{1} << u;
    const std::size_t stride = ring.stride;
    const std::size_t layer = n * stride;
    std::vector<word> fh((u + 1) * layer, word{}), gh((u + 1) * layer, word{}), hh((u + 1) * layer, word{});
    auto at = [&](std::vector<word>& v, int k, std::size_t s) { return v.data() + k * layer + s * stride; };

    for (std::size_t s = 0; s < n; ++s) {
        const int k = __builtin_popcountll(s);
        std::copy(f + s * stride, f + (s + 1) * stride, at(fh, k, s));
        std::copy(g + s * stride, g + (s + 1) * stride, at(gh, k, s));
    }
    for (int k = 0; k <= u; ++k)
        for (int bit = 0; bit < u; ++bit)
            for (std::size_t s = 0; s < n; ++s)
                if (s >> bit & 1) {
                    ring.add(at(fh, k, s), at(fh, k, s ^ (std::size_t{1} << bit)));
                    ring.add(at(gh, k, s), at(gh, k, s ^ (std::size_t{1} << bit)));
                }
    for (std::size_t s = 0; s < n; ++s) {
        const int pc = __builtin_popcountll(s);
        for (int k = 0; k <= u; ++k)
            for (int j = 0; j <= k; ++j) {
                // Layer j of a zeta transform vanishes on sets smaller than j.
                if (j > pc || k - j > pc) continue;
                const word* a = at(fh, j, s);
                const word* b = at(gh, k - j, s);
                if (ring.is_zero(a) || ring.is_zero(b)) continue;
                ring.mul_add(at(hh, k, s), a, b);
            }
    }
    for (int k = 0; k <= u; ++k)
        for (int bit = 0; bit < u; ++bit)
            for (std::size_t s = 0; s < n; ++s)
                if (s >> bit & 1) ring.sub(at(hh, k, s), at(hh, k, s ^ (std::size_t{1} << bit)));
    for (std::size_t s = 0; s < n; ++s) {
        const word* src = at(hh, __builtin_popcountll(s), s);
        std::copy(src, src + stride, h + s * stride);
    }
}

}  // namespace scss
