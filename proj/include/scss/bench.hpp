#pragma once

#include <cstdint>
#include <vector>

#include "scss/cutcount.hpp"

namespace scss {

/// Random table over a bag of width + 1 vertices where every state (all 17^(w+1)
/// codes) is present with probability 1/2 and carries the constant polynomial 1.
ParityTable random_full_table(int width, std::uint64_t seed);

struct JoinTiming {
    int width = 0;
    std::size_t states = 0;   // states in each input table
    double seconds = 0.0;     // mean wall time of one join
    int repeats = 0;
};

/// Times join_tables on pairs of random full tables for each width in widths.
std::vector<JoinTiming> bench_joins(const std::vector<int>& widths, std::uint64_t seed, double min_seconds = 0.2,
                                    JoinStrategy strategy = JoinStrategy::Convolution);

}  // namespace scss
