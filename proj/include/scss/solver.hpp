#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "scss/exact.hpp"
#include "scss/io.hpp"
#include "scss/treedecomp.hpp"

namespace scss {

enum class Engine { Auto, CutCount, Exact, Brute };

std::string_view to_string(Engine e);
std::optional<Engine> parse_engine(std::string_view name);

/// Largest n the automatic choice sends to the exact engine.
inline constexpr int kAutoExactVertexLimit = 14;

struct SolveConfig {
    Engine engine = Engine::Auto;
    std::optional<TreeDecomposition> td;
    int trials = 30;
    std::uint64_t seed = 0;
    bool emit_solution = false;
    int width_cap = 7;
    int exact_cap = kDefaultExactCap;
};

struct SolveOutcome {
    ResultRecord record;
    /// Cut&Count ran on a min-fill decomposition because none was supplied.
    bool heuristic_td = false;
    int td_width = -1;
};

/// Dispatches one instance to an engine. Automatic choice for scss/scsps: exact
/// when n <= min(14, exact_cap), else Cut&Count when the width fits width_cap,
/// else brute force when |A| <= 22, else NoApplicableEngine. meg and 2ecss run
/// through their reductions (Cut&Count is not applicable to them).
SolveOutcome solve_instance(const Instance& inst, const SolveConfig& cfg);

/// Human-readable multi-line report (no timing, so it is reproducible).
std::string format_outcome(const SolveOutcome& out);

}  // namespace scss
