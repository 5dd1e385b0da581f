#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scss/algebra.hpp"
#include "scss/graph.hpp"

namespace scss {

inline constexpr int kDefaultExactCap = 16;

/// For every ordered pair (s, t): which vertex sets X occur as the exact interior
/// of a simple s->t path (s != t) or of a simple cycle through s (s == t). The
/// tabulated value is |X| + 1, the number of arcs on that path or cycle.
class PathTables {
public:
    PathTables() = default;
    PathTables(int n, std::vector<std::vector<std::uint8_t>> finite);

    int vertex_count() const noexcept { return n_; }
    bool finite(Vertex s, Vertex t, std::uint32_t x) const { return row(s, t)[x] != 0; }
    int value(Vertex s, Vertex t, std::uint32_t x) const;
    bool empty(Vertex s, Vertex t) const { return empty_[index(s, t)] != 0; }
    /// 0/1 indicator over the 2^n subsets (bit v-1 stands for vertex v).
    const std::vector<std::uint8_t>& row(Vertex s, Vertex t) const { return finite_[index(s, t)]; }
    SetFunctionMinPlus table(Vertex s, Vertex t) const;

private:
    std::size_t index(Vertex s, Vertex t) const { return static_cast<std::size_t>((s - 1) * n_ + (t - 1)); }

    int n_ = 0;
    std::vector<std::vector<std::uint8_t>> finite_;
    std::vector<std::uint8_t> empty_;
};

/// Throws TooManyVertices when n > cap.
PathTables build_path_tables(const Digraph& d, int cap = kDefaultExactCap);

/// Value bound for ear tables: 2n - 1. Larger totals are stored as infinity.
int ear_value_bound(int n);

/// T_1[X] = min over a in X of F_{a,a}[X \ {a}].
SetFunctionMinPlus first_ear_table(const PathTables& f);

/// T_q from T_{q-1}: T_q[X] = min over ordered (s, t) and X = A ⊔ B with s, t in A
/// of T_{q-1}[A] + F_{s,t}[B].
SetFunctionMinPlus ear_step(const SetFunctionMinPlus& prev, const PathTables& f);

/// ear_step with the path-table transforms computed once and reused for every q.
class EarStepper {
public:
    explicit EarStepper(const PathTables& f);
    SetFunctionMinPlus step(const SetFunctionMinPlus& prev) const;

private:
    struct PairZeta {
        Vertex s = 0, t = 0;
        int top_rank = 0;
        std::vector<std::uint32_t> expand;  // local index -> subset containing s and t
        std::vector<std::uint32_t> fz;      // ranked zeta of F_{s,t} on those subsets
    };
    const PathTables* f_;
    std::vector<PairZeta> pairs_;
};

/// Same recurrence evaluated pair by pair with minplus_subset_convolution.
SetFunctionMinPlus ear_step_reference(const SetFunctionMinPlus& prev, const PathTables& f);

struct ExactOptions {
    int cap = kDefaultExactCap;
    bool reconstruct = true;
};

struct ExactResult {
    std::optional<int> optimum;  // nullopt: no strongly connected subgraph contains T
    std::optional<ArcSet> solution;
    int ears = 0;                // q at the optimum (0 when |T| <= 1)
    std::uint32_t vertex_set = 0;
};

ExactResult solve_exact(const Digraph& d, const ExactOptions& options = {});

/// Recovers one ear decomposition realizing ears[q-1][x] and returns its arcs.
/// Throws InternalInconsistency if no witness is found or the result fails to verify.
ArcSet reconstruct(const Digraph& d, const PathTables& f, const std::vector<SetFunctionMinPlus>& ears,
                   std::uint32_t x, int q);

}  // namespace scss
