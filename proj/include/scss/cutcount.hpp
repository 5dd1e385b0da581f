#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "scss/graph.hpp"
#include "scss/treedecomp.hpp"

namespace scss {

/// Two random weights per arc, one for the in-branching copy and one for the
/// out-branching copy, each drawn from {1..N}.
struct WeightAssignment {
    int N = 1;
    std::vector<int> in;   // indexed by arc
    std::vector<int> out;  // indexed by arc

    friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;
};

WeightAssignment sample_weights(const Digraph& d, int N, std::uint64_t seed);

/// Default N = 2|U| = 4|A| (at least 1).
int default_weight_range(const Digraph& d);

// ---------------------------------------------------------------------------
// Bag states. Each bag vertex carries a 5-bit code: 0 is NULL, otherwise
// 1 + (sI | sO<<1 | vin<<2 | vout<<3). Codes are packed by position in the
// sorted bag, position p occupying bits 5p..5p+4.

using StateKey = std::uint64_t;
inline constexpr int kMaxBagSize = 12;
inline constexpr int kNullCode = 0;
inline constexpr int kStateAlphabet = 17;

struct VertexState {
    bool active = false;
    int s_in = 0;    // in-degree in the out-branching
    int s_out = 0;   // out-degree in the in-branching
    int v_in = 0;    // side of the in-branching cut
    int v_out = 0;   // side of the out-branching cut

    friend bool operator==(const VertexState&, const VertexState&) = default;
};

constexpr int encode(const VertexState& s) {
    return s.active ? 1 + (s.s_in | s.s_out << 1 | s.v_in << 2 | s.v_out << 3) : kNullCode;
}
constexpr VertexState decode(int code) {
    if (code == kNullCode) return {};
    const int b = code - 1;
    return {true, b & 1, b >> 1 & 1, b >> 2 & 1, b >> 3 & 1};
}
constexpr int code_at(StateKey key, int pos) { return static_cast<int>(key >> (5 * pos) & 31); }
constexpr StateKey with_code(StateKey key, int pos, int code) {
    return (key & ~(StateKey{31} << (5 * pos))) | (static_cast<StateKey>(code) << (5 * pos));
}

/// Merge one vertex's states from the two children of a join node; nullopt when
/// they do not combine (NULL disagreement, cut disagreement or overlapping degrees).
std::optional<int> combine_vertex_states(int left, int right);

/// One set bit of the parity table: (i, w, state) has odd count.
struct ParityEntry {
    StateKey state = 0;
    std::uint32_t i = 0;
    std::uint32_t w = 0;

    friend auto operator<=>(const ParityEntry&, const ParityEntry&) = default;
};

/// Sparse GF(2) table over (i, w, state) with i <= max_arcs and w <= max_weight.
/// Absent keys are 0. Writers append toggles and call normalize(), which sorts
/// and cancels pairs; readers require a normalized table.
class ParityTable {
public:
    ParityTable() = default;
    ParityTable(std::vector<Vertex> bag, int max_arcs, int max_weight);

    const std::vector<Vertex>& bag() const noexcept { return bag_; }
    int max_arcs() const noexcept { return max_arcs_; }
    int max_weight() const noexcept { return max_weight_; }

    /// Number of odd (i, w, state) keys.
    std::size_t size() const;
    std::size_t state_count() const;
    std::vector<StateKey> states() const;
    const std::vector<ParityEntry>& entries() const;

    bool get(int i, int w, StateKey key) const;
    void set(int i, int w, StateKey key, bool value);

    void toggle(int i, int w, StateKey key) { entries_.push_back({key, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(w)}); dirty_ = true; }
    void toggle(const ParityEntry& e) { entries_.push_back(e); dirty_ = true; }
    void reserve(std::size_t n) { entries_.reserve(n); }
    void normalize();

    /// Calls fn(state, first, last) for each state's run of entries.
    template <typename Fn>
    void for_each_state(Fn&& fn) const {
        const auto& e = entries();
        for (std::size_t a = 0; a < e.size();) {
            std::size_t b = a;
            while (b < e.size() && e[b].state == e[a].state) ++b;
            fn(e[a].state, e.data() + a, e.data() + b);
            a = b;
        }
    }

    friend bool operator==(const ParityTable& a, const ParityTable& b);

private:
    void require_normalized() const;

    std::vector<Vertex> bag_;
    int max_arcs_ = 0;
    int max_weight_ = 0;
    std::vector<ParityEntry> entries_;
    bool dirty_ = false;
};

enum class JoinStrategy { Auto, Convolution, Naive };

struct CutCountOptions {
    int width_cap = 7;
    JoinStrategy join = JoinStrategy::Auto;
    /// 0 selects default_weight_range.
    int weight_range = 0;
};

/// Join of two child tables over identical bags. Convolution runs a ranked GF(2)
/// subset convolution per (active set, cut bits) group; Naive pairs up the stored
/// states of each group directly. Both give the same table. Throws BagMismatch.
ParityTable join_tables(const ParityTable& left, const ParityTable& right, JoinStrategy strategy = JoinStrategy::Auto);

/// Reference join: all pairs of stored states combined vertex by vertex.
ParityTable join_tables_naive(const ParityTable& left, const ParityTable& right);

/// Root table of the parity DP for budget d.budget(). Root terminal r is the
/// smallest terminal. Throws WidthTooLarge when a bag exceeds width_cap + 1.
ParityTable run_dp(const NiceTreeDecomposition& ntd, const Digraph& d, const WeightAssignment& w,
                   const CutCountOptions& options = {});

/// parity[W] = XOR over i of the root entry (i, W) for W in 0..max_weight.
std::vector<bool> root_parities(const ParityTable& root);

struct CutCountVerdict {
    bool yes = false;
    int trials_run = 0;
    std::vector<std::uint64_t> seeds;
    /// When yes: trial index and weight W with odd parity.
    std::optional<std::pair<int, int>> witness;
};

/// Monte Carlo decision with one-sided error: a NO answer is always right, a
/// YES instance is missed with probability at most 2^-trials.
CutCountVerdict decide(const Digraph& d, const NiceTreeDecomposition& ntd, int trials, std::uint64_t seed,
                       const CutCountOptions& options = {});

}  // namespace scss
