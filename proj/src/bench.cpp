#include "scss/bench.hpp"

#include <chrono>

#include "scss/rng.hpp"

namespace scss {

ParityTable random_full_table(int width, std::uint64_t seed) {
    const int q = width + 1;
    std::vector<Vertex> bag;
    for (int v = 1; v <= q; ++v) bag.push_back(v);
    ParityTable t(bag, 0, 0);
    Rng rng(seed);
    std::vector<int> code(static_cast<std::size_t>(q), 0);
    for (;;) {
        if (rng.next() & 1) {
            StateKey key = 0;
            for (int p = 0; p < q; ++p) key = with_code(key, p, code[static_cast<std::size_t>(p)]);
            t.toggle(0, 0, key);
        }
        int p = 0;
        while (p < q && ++code[static_cast<std::size_t>(p)] == kStateAlphabet) code[static_cast<std::size_t>(p++)] = 0;
        if (p == q) break;
    }
    t.normalize();
    return t;
}

std::vector<JoinTiming> bench_joins(const std::vector<int>& widths, std::uint64_t seed, double min_seconds, JoinStrategy strategy) {
    using clock = std::chrono::steady_clock;
    std::vector<JoinTiming> out;
    for (int w : widths) {
        const ParityTable a = random_full_table(w, splitmix64(seed + 2 * static_cast<std::uint64_t>(w)));
        const ParityTable b = random_full_table(w, splitmix64(seed + 2 * static_cast<std::uint64_t>(w) + 1));
        JoinTiming t;
        t.width = w;
        t.states = a.state_count();
        const auto start = clock::now();
        double elapsed = 0.0;
        do {
            const ParityTable c = join_tables(a, b, strategy);
            ++t.repeats;
            elapsed = std::chrono::duration<double>(clock::now() - start).count();
        } while (elapsed < min_seconds);
        t.seconds = elapsed / t.repeats;
        out.push_back(t);
    }
    return out;
}

}  // namespace scss
