#include "scss/cutcount.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

#include "scss/algebra.hpp"
#include "scss/error.hpp"
#include "scss/rng.hpp"

namespace scss {

namespace {

struct PolyShape {
    int rows = 1;
    std::size_t words = 1;
    int max_weight = 0;
    std::uint64_t last_mask = ~std::uint64_t{0};

    PolyShape(int max_arcs, int max_weight_, std::size_t row_words)
        : rows(max_arcs + 1), words(row_words), max_weight(max_weight_) {
        const int tail = (max_weight + 1) % 64;
        last_mask = tail == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
    }
    std::size_t stride() const { return static_cast<std::size_t>(rows) * words; }
};

PolyShape shape_of(const ParityTable& t) {
    return PolyShape(t.max_arcs(), t.max_weight(), (static_cast<std::size_t>(t.max_weight()) + 64) / 64);
}

void scatter(std::uint64_t* dst, const ParityEntry* first, const ParityEntry* last, const PolyShape& sh) {
    for (; first != last; ++first) dst[first->i * sh.words + first->w / 64] ^= std::uint64_t{1} << (first->w % 64);
}

void gather(ParityTable& out, StateKey key, const std::uint64_t* p, const PolyShape& sh) {
    for (int i = 0; i < sh.rows; ++i) {
        const std::uint64_t* row = p + i * sh.words;
        for (std::size_t wi = 0; wi < sh.words; ++wi) {
            std::uint64_t bits = row[wi];
            while (bits) {
                const int bit = std::countr_zero(bits);
                bits &= bits - 1;
                out.toggle(i, static_cast<int>(wi * 64) + bit, key);
            }
        }
    }
}

void xor_block(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

bool is_zero_block(const std::uint64_t* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i]) return false;
    return true;
}

std::size_t used_words(const std::uint64_t* row, std::size_t words) {
    while (words > 0 && row[words - 1] == 0) --words;
    return words;
}

// dst ^= src << shift, truncated to the row width.
void shift_xor(std::uint64_t* dst, const std::uint64_t* src, std::size_t src_words, int shift, const PolyShape& sh) {
    if (shift > sh.max_weight || src_words == 0) return;
    const std::size_t ws = static_cast<std::size_t>(shift) / 64;
    const int bs = shift % 64;
    const std::size_t end = std::min(sh.words, src_words + ws + (bs ? 1 : 0));
    if (bs == 0) {
        for (std::size_t j = ws; j < end; ++j) dst[j] ^= src[j - ws];
    } else {
        for (std::size_t j = ws; j < end; ++j) {
            const std::size_t k = j - ws;
            std::uint64_t v = k < src_words ? src[k] << bs : 0;
            if (k >= 1) v |= src[k - 1] >> (64 - bs);
            dst[j] ^= v;
        }
    }
    dst[sh.words - 1] &= sh.last_mask;
}

// Carry-less row product accumulated into dst.
void clmul_row(std::uint64_t* dst, const std::uint64_t* a, std::size_t na, const std::uint64_t* b, std::size_t nb,
               const PolyShape& sh) {
    int pa = 0, pb = 0;
    for (std::size_t i = 0; i < na; ++i) pa += std::popcount(a[i]);
    for (std::size_t i = 0; i < nb; ++i) pb += std::popcount(b[i]);
    if (pa > pb) {
        std::swap(a, b);
        std::swap(na, nb);
    }
    for (std::size_t wi = 0; wi < na; ++wi) {
        std::uint64_t bits = a[wi];
        while (bits) {
            const int bit = std::countr_zero(bits);
            bits &= bits - 1;
            shift_xor(dst, b, nb, static_cast<int>(wi * 64) + bit, sh);
        }
    }
}

void poly_mul_add(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, const PolyShape& sh) {
    std::size_t ub[64];
    std::vector<std::size_t> ub_heap;
    std::size_t* used_b = ub;
    if (sh.rows > 64) {
        ub_heap.resize(static_cast<std::size_t>(sh.rows));
        used_b = ub_heap.data();
    }
    for (int i = 0; i < sh.rows; ++i) used_b[i] = used_words(b + i * sh.words, sh.words);
    for (int i1 = 0; i1 < sh.rows; ++i1) {
        const std::uint64_t* ra = a + i1 * sh.words;
        const std::size_t na = used_words(ra, sh.words);
        if (na == 0) continue;
        for (int i2 = 0; i1 + i2 < sh.rows; ++i2) {
            if (used_b[i2] == 0) continue;
            clmul_row(dst + (i1 + i2) * sh.words, ra, na, b + i2 * sh.words, used_b[i2], sh);
        }
    }
}

struct PolyRing {
    using word = std::uint64_t;
    std::size_t stride;
    PolyShape shape;

    void add(word* dst, const word* src) const { xor_block(dst, src, stride); }
    void sub(word* dst, const word* src) const { xor_block(dst, src, stride); }
    void mul_add(word* dst, const word* a, const word* b) const { poly_mul_add(dst, a, b, shape); }
    bool is_zero(const word* a) const { return is_zero_block(a, stride); }
};

StateKey insert_code(StateKey key, int pos, int code) {
    const StateKey low = key & ((StateKey{1} << (5 * pos)) - 1);
    const StateKey high = key >> (5 * pos);
    return low | static_cast<StateKey>(code) << (5 * pos) | high << (5 * (pos + 1));
}

StateKey remove_code(StateKey key, int pos) {
    const StateKey low = key & ((StateKey{1} << (5 * pos)) - 1);
    const StateKey high = key >> (5 * (pos + 1));
    return low | high << (5 * pos);
}

int position(const std::vector<Vertex>& bag, Vertex v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw Error(ErrorKind::InvalidDecomposition, "vertex " + std::to_string(v) + " missing from bag");
    return static_cast<int>(it - bag.begin());
}

// Splits a state into its group (degree bits cleared) and the degree mask over the
// active vertices: bit 2j is s_in and bit 2j+1 is s_out of the j-th active vertex.
void split_state(StateKey key, int q, StateKey& group, std::uint32_t& mask, int& active) {
    group = 0;
    mask = 0;
    active = 0;
    for (int p = 0; p < q; ++p) {
        const int c = code_at(key, p);
        if (c == kNullCode) continue;
        const int bits = c - 1;
        group |= static_cast<StateKey>(1 + (bits & 0b1100)) << (5 * p);
        mask |= static_cast<std::uint32_t>(bits & 0b11) << (2 * active);
        ++active;
    }
}

StateKey compose_state(StateKey group, int q, std::uint32_t mask) {
    StateKey key = group;
    int j = 0;
    for (int p = 0; p < q; ++p) {
        const int c = code_at(group, p);
        if (c == kNullCode) continue;
        key = with_code(key, p, c + static_cast<int>(mask >> (2 * j) & 0b11));
        ++j;
    }
    return key;
}

void check_compatible(const ParityTable& a, const ParityTable& b) {
    if (a.bag() != b.bag()) throw Error(ErrorKind::BagMismatch, "join children carry different bags");
    if (a.max_arcs() != b.max_arcs() || a.max_weight() != b.max_weight())
        throw Error(ErrorKind::BagMismatch, "join children carry different (i, w) ranges");
}

}  // namespace

WeightAssignment sample_weights(const Digraph& d, int N, std::uint64_t seed) {
    if (N < 1) throw Error(ErrorKind::BadParams, "weight range N must be positive");
    Rng rng(seed);
    WeightAssignment w;
    w.N = N;
    w.in.resize(static_cast<std::size_t>(d.arc_count()));
    w.out.resize(static_cast<std::size_t>(d.arc_count()));
    for (int a = 0; a < d.arc_count(); ++a) {
        w.in[static_cast<std::size_t>(a)] = static_cast<int>(rng.uniform(1, N));
        w.out[static_cast<std::size_t>(a)] = static_cast<int>(rng.uniform(1, N));
    }
    return w;
}

int default_weight_range(const Digraph& d) { return std::max(1, 4 * d.arc_count()); }

std::optional<int> combine_vertex_states(int left, int right) {
    if (left == kNullCode || right == kNullCode) {
        if (left == right) return kNullCode;
        return std::nullopt;
    }
    const int a = left - 1, b = right - 1;
    if ((a & 0b1100) != (b & 0b1100)) return std::nullopt;
    if (a & b & 0b11) return std::nullopt;
    return 1 + (a | b);
}

ParityTable::ParityTable(std::vector<Vertex> bag, int max_arcs, int max_weight)
    : bag_(std::move(bag)), max_arcs_(max_arcs), max_weight_(max_weight) {
    if (max_arcs < 0 || max_weight < 0) throw Error(ErrorKind::RangeError, "negative table dimensions");
    if (static_cast<int>(bag_.size()) > kMaxBagSize)
        throw Error(ErrorKind::WidthTooLarge, "bag of size " + std::to_string(bag_.size()) + " exceeds " + std::to_string(kMaxBagSize));
}

void ParityTable::require_normalized() const {
    if (dirty_) throw Error(ErrorKind::InternalInconsistency, "parity table read before normalize()");
}

namespace {

int bit_width_of(std::uint64_t x) { return x == 0 ? 0 : 64 - std::countl_zero(x); }

void radix_sort(std::vector<std::uint64_t>& keys, int bits) {
    std::vector<std::uint64_t> tmp(keys.size());
    for (int shift = 0; shift < bits; shift += 11) {
        std::size_t count[2049] = {};
        for (std::uint64_t k : keys) ++count[(k >> shift & 2047) + 1];
        for (int b = 0; b < 2048; ++b) count[b + 1] += count[b];
        for (std::uint64_t k : keys) tmp[count[k >> shift & 2047]++] = k;
        keys.swap(tmp);
    }
}

}  // namespace

void ParityTable::normalize() {
    if (!dirty_) return;
    dirty_ = false;
    std::uint64_t max_state = 0;
    std::uint32_t max_i = 0, max_w = 0;
    for (const ParityEntry& e : entries_) {
        max_state |= e.state;
        max_i |= e.i;
        max_w |= e.w;
    }
    const int bw = bit_width_of(max_w), bi = bit_width_of(max_i), bs = bit_width_of(max_state);
    if (bs + bi + bw > 64) {
        std::sort(entries_.begin(), entries_.end());
        std::size_t out = 0;
        for (std::size_t a = 0; a < entries_.size();) {
            std::size_t b = a + 1;
            while (b < entries_.size() && entries_[b] == entries_[a]) ++b;
            if ((b - a) % 2 == 1) entries_[out++] = entries_[a];
            a = b;
        }
        entries_.resize(out);
        return;
    }
    std::vector<std::uint64_t> keys(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const ParityEntry& e = entries_[k];
        keys[k] = (bi + bw == 64 ? 0 : e.state << (bi + bw)) | static_cast<std::uint64_t>(e.i) << bw | e.w;
    }
    radix_sort(keys, bs + bi + bw);
    const std::uint64_t wmask = bw == 0 ? 0 : (std::uint64_t{1} << bw) - 1;
    const std::uint64_t imask = bi == 0 ? 0 : (std::uint64_t{1} << bi) - 1;
    entries_.clear();
    for (std::size_t a = 0; a < keys.size();) {
        std::size_t b = a + 1;
        while (b < keys.size() && keys[b] == keys[a]) ++b;
        if ((b - a) % 2 == 1) {
            const std::uint64_t k = keys[a];
            entries_.push_back({bi + bw == 64 ? 0 : k >> (bi + bw), static_cast<std::uint32_t>(k >> bw & imask),
                                static_cast<std::uint32_t>(k & wmask)});
        }
        a = b;
    }
}

const std::vector<ParityEntry>& ParityTable::entries() const {
    require_normalized();
    return entries_;
}

std::size_t ParityTable::size() const { return entries().size(); }

std::size_t ParityTable::state_count() const {
    std::size_t n = 0;
    for_each_state([&](StateKey, const ParityEntry*, const ParityEntry*) { ++n; });
    return n;
}

std::vector<StateKey> ParityTable::states() const {
    std::vector<StateKey> out;
    for_each_state([&](StateKey key, const ParityEntry*, const ParityEntry*) { out.push_back(key); });
    return out;
}

bool ParityTable::get(int i, int w, StateKey key) const {
    if (i < 0 || i > max_arcs_ || w < 0 || w > max_weight_) return false;
    const ParityEntry e{key, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(w)};
    return std::binary_search(entries().begin(), entries().end(), e);
}

void ParityTable::set(int i, int w, StateKey key, bool value) {
    if (i < 0 || i > max_arcs_ || w < 0 || w > max_weight_) throw Error(ErrorKind::RangeError, "(i, w) outside table");
    normalize();
    if (get(i, w, key) != value) {
        toggle(i, w, key);
        normalize();
    }
}

bool operator==(const ParityTable& a, const ParityTable& b) {
    return a.bag_ == b.bag_ && a.max_arcs_ == b.max_arcs_ && a.max_weight_ == b.max_weight_ && a.entries() == b.entries();
}

namespace {

// out += key * (A * B), products reaching past max_arcs dropped.
void product_into(ParityTable& out, StateKey key, const ParityEntry* a0, const ParityEntry* a1, const ParityEntry* b0,
                  const ParityEntry* b1, const PolyShape& sh, std::vector<std::uint64_t>& scratch) {
    const std::size_t na = static_cast<std::size_t>(a1 - a0), nb = static_cast<std::size_t>(b1 - b0);
    if (na * nb <= 1024) {
        for (const ParityEntry* x = a0; x != a1; ++x)
            for (const ParityEntry* y = b0; y != b1; ++y) {
                const std::uint32_t i = x->i + y->i, w = x->w + y->w;
                if (static_cast<int>(i) < sh.rows && static_cast<int>(w) <= sh.max_weight) out.toggle({key, i, w});
            }
        return;
    }
    const std::size_t stride = sh.stride();
    scratch.assign(3 * stride, 0);
    scatter(scratch.data(), a0, a1, sh);
    scatter(scratch.data() + stride, b0, b1, sh);
    poly_mul_add(scratch.data() + 2 * stride, scratch.data(), scratch.data() + stride, sh);
    gather(out, key, scratch.data() + 2 * stride, sh);
}

}  // namespace

ParityTable join_tables(const ParityTable& left, const ParityTable& right, JoinStrategy strategy) {
    check_compatible(left, right);
    const int q = static_cast<int>(left.bag().size());
    const PolyShape sh = shape_of(left);
    const std::size_t stride = sh.stride();

    struct Item {
        std::uint32_t mask;
        const ParityEntry* first;
        const ParityEntry* last;
    };
    struct Group {
        int active = 0;
        std::vector<Item> left, right;
    };
    std::unordered_map<StateKey, Group> groups;
    left.for_each_state([&](StateKey key, const ParityEntry* first, const ParityEntry* last) {
        StateKey g;
        std::uint32_t mask;
        int active;
        split_state(key, q, g, mask, active);
        auto& grp = groups[g];
        grp.active = active;
        grp.left.push_back({mask, first, last});
    });
    right.for_each_state([&](StateKey key, const ParityEntry* first, const ParityEntry* last) {
        StateKey g;
        std::uint32_t mask;
        int active;
        split_state(key, q, g, mask, active);
        auto it = groups.find(g);
        if (it != groups.end()) it->second.right.push_back({mask, first, last});
    });

    ParityTable out(left.bag(), left.max_arcs(), left.max_weight());
    std::vector<std::uint64_t> f, g, h, scratch;
    for (const auto& [group, grp] : groups) {
        if (grp.left.empty() || grp.right.empty()) continue;
        const int u = 2 * grp.active;
        const std::size_t cube = std::size_t{1} << u;
        bool naive = strategy == JoinStrategy::Naive;
        if (strategy == JoinStrategy::Auto) {
            const double pairs = static_cast<double>(grp.left.size()) * static_cast<double>(grp.right.size());
            naive = pairs < static_cast<double>((u + 1) * (u + 1)) * static_cast<double>(cube) / 2.0;
        }
        if (naive) {
            for (const Item& a : grp.left)
                for (const Item& b : grp.right)
                    if ((a.mask & b.mask) == 0)
                        product_into(out, compose_state(group, q, a.mask | b.mask), a.first, a.last, b.first, b.last, sh, scratch);
            continue;
        }
        f.assign(cube * stride, 0);
        g.assign(cube * stride, 0);
        h.assign(cube * stride, 0);
        for (const Item& a : grp.left) scatter(f.data() + a.mask * stride, a.first, a.last, sh);
        for (const Item& b : grp.right) scatter(g.data() + b.mask * stride, b.first, b.last, sh);
        ranked_subset_convolution(PolyRing{stride, sh}, u, f.data(), g.data(), h.data());
        for (std::size_t m = 0; m < cube; ++m) {
            const std::uint64_t* p = h.data() + m * stride;
            if (!is_zero_block(p, stride)) gather(out, compose_state(group, q, static_cast<std::uint32_t>(m)), p, sh);
        }
    }
    out.normalize();
    return out;
}

ParityTable join_tables_naive(const ParityTable& left, const ParityTable& right) {
    check_compatible(left, right);
    const int q = static_cast<int>(left.bag().size());
    const PolyShape sh = shape_of(left);
    ParityTable out(left.bag(), left.max_arcs(), left.max_weight());
    std::vector<std::uint64_t> scratch;
    left.for_each_state([&](StateKey k1, const ParityEntry* a0, const ParityEntry* a1) {
        right.for_each_state([&](StateKey k2, const ParityEntry* b0, const ParityEntry* b1) {
            StateKey key = 0;
            for (int p = 0; p < q; ++p) {
                auto c = combine_vertex_states(code_at(k1, p), code_at(k2, p));
                if (!c) return;
                key = with_code(key, p, *c);
            }
            product_into(out, key, a0, a1, b0, b1, sh, scratch);
        });
    });
    out.normalize();
    return out;
}

ParityTable run_dp(const NiceTreeDecomposition& ntd, const Digraph& d, const WeightAssignment& w,
                   const CutCountOptions& options) {
    if (static_cast<int>(w.in.size()) != d.arc_count() || static_cast<int>(w.out.size()) != d.arc_count())
        throw Error(ErrorKind::BadParams, "weight assignment does not match the arc count");
    if (ntd.size() == 0) throw Error(ErrorKind::InvalidDecomposition, "empty decomposition");
    const int cap = std::min(options.width_cap + 1, kMaxBagSize);
    for (const NiceNode& node : ntd.nodes())
        if (static_cast<int>(node.bag.size()) > cap)
            throw Error(ErrorKind::WidthTooLarge, "bag of size " + std::to_string(node.bag.size()) + " exceeds width cap " +
                                                      std::to_string(options.width_cap));

    // A union of two branchings never has more than |A| arcs.
    const int max_arcs = std::max(0, std::min(d.budget(), d.arc_count()));
    const int max_weight = 2 * max_arcs * w.N;
    const Vertex root = d.terminals().empty() ? 0 : d.terminals().front();

    std::vector<ParityTable> tables(static_cast<std::size_t>(ntd.size()));
    for (int idx = 0; idx < ntd.size(); ++idx) {
        const NiceNode& node = ntd.node(idx);
        ParityTable out(node.bag, max_arcs, max_weight);
        auto child = [&](int which) -> ParityTable& { return tables[static_cast<std::size_t>(node.children[static_cast<std::size_t>(which)])]; };

        switch (node.kind) {
        case NodeKind::Leaf:
            if (!node.bag.empty()) throw Error(ErrorKind::InvalidDecomposition, "leaf with nonempty bag");
            out.set(0, 0, 0, true);
            break;
        case NodeKind::IntroduceVertex: {
            const Vertex v = node.vertex;
            const int p = position(node.bag, v);
            std::vector<int> codes;
            if (v == root) {
                codes.push_back(encode({true, 0, 0, 0, 0}));
            } else {
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) codes.push_back(encode({true, 0, 0, a, b}));
                if (!d.is_terminal(v)) codes.push_back(kNullCode);
            }
            out.reserve(child(0).size() * codes.size());
            for (const ParityEntry& e : child(0).entries())
                for (int c : codes) out.toggle({insert_code(e.state, p, c), e.i, e.w});
            break;
        }
        case NodeKind::Forget: {
            const Vertex v = node.vertex;
            const int p = position(child(0).bag(), v);
            const bool terminal = d.is_terminal(v);
            for (const ParityEntry& e : child(0).entries()) {
                const int c = code_at(e.state, p);
                const VertexState s = decode(c);
                bool keep;
                if (v == root)
                    keep = s.active && s.s_in == 0 && s.s_out == 0;
                else if (terminal)
                    keep = s.active && s.s_in == 1 && s.s_out == 1;
                else
                    keep = !s.active || (s.s_in == 1 && s.s_out == 1);
                if (keep) out.toggle({remove_code(e.state, p), e.i, e.w});
            }
            break;
        }
        case NodeKind::IntroduceArc: {
            const Arc arc = d.arc(node.arc);
            const int pu = position(node.bag, arc.tail);
            const int pv = position(node.bag, arc.head);
            const int wi = w.in[static_cast<std::size_t>(node.arc)];
            const int wo = w.out[static_cast<std::size_t>(node.arc)];
            out.reserve(child(0).size() * 2);
            for (const ParityEntry& e : child(0).entries()) {
                out.toggle(e);
                const StateKey key = e.state;
                VertexState su = decode(code_at(key, pu));
                VertexState sv = decode(code_at(key, pv));
                if (!su.active || !sv.active || static_cast<int>(e.i) >= max_arcs) continue;
                const bool in_ok = arc.tail != root && su.s_out == 0 && su.v_in == sv.v_in;
                const bool out_ok = arc.head != root && sv.s_in == 0 && su.v_out == sv.v_out;
                su.s_out = 1;
                sv.s_in = 1;
                const StateKey k_in = with_code(key, pu, encode(su));
                const StateKey k_out = with_code(key, pv, encode(sv));
                const std::uint32_t i1 = e.i + 1;
                if (in_ok) out.toggle({k_in, i1, e.w + static_cast<std::uint32_t>(wi)});
                if (out_ok) out.toggle({k_out, i1, e.w + static_cast<std::uint32_t>(wo)});
                if (in_ok && out_ok) out.toggle({with_code(k_in, pv, encode(sv)), i1, e.w + static_cast<std::uint32_t>(wi + wo)});
            }
            break;
        }
        case NodeKind::Join:
            out = join_tables(child(0), child(1), options.join);
            break;
        }
        out.normalize();
        for (int c : node.children)
            if (c >= 0) tables[static_cast<std::size_t>(c)] = ParityTable();
        tables[static_cast<std::size_t>(idx)] = std::move(out);
    }
    return std::move(tables.back());
}

std::vector<bool> root_parities(const ParityTable& root) {
    std::vector<bool> parity(static_cast<std::size_t>(root.max_weight()) + 1, false);
    for (const ParityEntry& e : root.entries())
        if (e.state == 0) parity[e.w] = !parity[e.w];
    return parity;
}

CutCountVerdict decide(const Digraph& d, const NiceTreeDecomposition& ntd, int trials, std::uint64_t seed,
                       const CutCountOptions& options) {
    if (trials < 1) throw Error(ErrorKind::BadParams, "trials must be at least 1");
    if (d.budget() < 0) throw Error(ErrorKind::BadParams, "negative budget");
    CutCountVerdict verdict;
    if (d.terminals().size() <= 1) {
        verdict.yes = true;
        return verdict;
    }
    if (d.budget() == 0) return verdict;
    const int N = options.weight_range > 0 ? options.weight_range : default_weight_range(d);
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t s = splitmix64(seed + static_cast<std::uint64_t>(trial));
        verdict.seeds.push_back(s);
        verdict.trials_run = trial + 1;
        const auto parity = root_parities(run_dp(ntd, d, sample_weights(d, N, s), options));
        for (std::size_t W = 1; W < parity.size(); ++W)
            if (parity[W]) {
                verdict.yes = true;
                verdict.witness = std::make_pair(trial, static_cast<int>(W));
                return verdict;
            }
    }
    return verdict;
}

}  // namespace scss
