#include "scss/treedecomp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "scss/error.hpp"

namespace scss {

namespace {

bool bag_contains(const std::vector<Vertex>& bag, Vertex v) { return std::binary_search(bag.begin(), bag.end(), v); }

std::vector<Vertex> sorted_bag(std::vector<Vertex> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    return bag;
}

// Tree check on bag indices: m == k-1 and connected.
bool is_tree(int bag_count, const std::vector<std::pair<int, int>>& edges) {
    if (bag_count == 0) return false;
    if (static_cast<int>(edges.size()) != bag_count - 1) return false;
    std::vector<int> parent(static_cast<std::size_t>(bag_count));
    for (int i = 0; i < bag_count; ++i) parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        return a;
    };
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= bag_count || b >= bag_count) return false;
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    return true;
}

}  // namespace

int TreeDecomposition::width() const {
    std::size_t best = 0;
    for (const auto& b : bags) best = std::max(best, b.size());
    return best == 0 ? 0 : static_cast<int>(best) - 1;
}

std::vector<Violation> validate(const TreeDecomposition& td, const Digraph& d) {
    std::vector<Violation> out;
    const int n = d.vertex_count();
    const int k = static_cast<int>(td.bags.size());
    std::vector<std::vector<Vertex>> bags;
    bool range_ok = true;
    for (int i = 0; i < k; ++i) {
        for (Vertex v : td.bags[static_cast<std::size_t>(i)]) {
            if (v < 1 || v > n) {
                out.push_back({ViolationKind::VertexRange, "bag " + std::to_string(i + 1) + " holds vertex " + std::to_string(v)});
                range_ok = false;
            }
        }
        bags.push_back(sorted_bag(td.bags[static_cast<std::size_t>(i)]));
    }
    const bool tree = is_tree(k, td.edges);
    if (!tree) out.push_back({ViolationKind::NotATree, k == 0 ? "no bags" : "bag graph is not a tree"});
    if (!range_ok) return out;

    std::vector<std::vector<int>> occ(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < k; ++i)
        for (Vertex v : bags[static_cast<std::size_t>(i)]) occ[static_cast<std::size_t>(v)].push_back(i);
    for (Vertex v = 1; v <= n; ++v)
        if (occ[static_cast<std::size_t>(v)].empty())
            out.push_back({ViolationKind::VertexCoverage, "vertex " + std::to_string(v) + " in no bag"});
    for (const Edge& e : d.underlying_edges()) {
        bool covered = false;
        for (int i : occ[static_cast<std::size_t>(e.u)])
            if (bag_contains(bags[static_cast<std::size_t>(i)], e.v)) {
                covered = true;
                break;
            }
        if (!covered)
            out.push_back({ViolationKind::EdgeCoverage, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " in no bag"});
    }
    if (!tree) return out;

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
    for (auto [a, b] : td.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (Vertex v = 1; v <= n; ++v) {
        const auto& o = occ[static_cast<std::size_t>(v)];
        if (o.size() <= 1) continue;
        std::vector<char> seen(static_cast<std::size_t>(k), 0);
        std::vector<int> stack{o.front()};
        seen[static_cast<std::size_t>(o.front())] = 1;
        std::size_t reached = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++reached;
            for (int y : adj[static_cast<std::size_t>(x)]) {
                if (!seen[static_cast<std::size_t>(y)] && bag_contains(bags[static_cast<std::size_t>(y)], v)) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
            }
        }
        if (reached != o.size())
            out.push_back({ViolationKind::Connectivity, "bags holding vertex " + std::to_string(v) + " are disconnected"});
    }
    return out;
}

TreeDecomposition heuristic_td(const Digraph& d) {
    const int n = d.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n) + 1);
    for (const Edge& e : d.underlying_edges()) {
        adj[static_cast<std::size_t>(e.u)].insert(e.v);
        adj[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    std::vector<bool> gone(static_cast<std::size_t>(n) + 1, false);
    std::vector<int> position(static_cast<std::size_t>(n) + 1, -1);
    std::vector<Vertex> order;
    std::vector<std::vector<Vertex>> neighbourhoods;
    for (int step = 0; step < n; ++step) {
        Vertex best = 0;
        long best_fill = -1;
        std::size_t best_deg = 0;
        for (Vertex v = 1; v <= n; ++v) {
            if (gone[static_cast<std::size_t>(v)]) continue;
            const auto& nb = adj[static_cast<std::size_t>(v)];
            long fill = 0;
            for (auto a = nb.begin(); a != nb.end(); ++a)
                for (auto b = std::next(a); b != nb.end(); ++b)
                    if (!adj[static_cast<std::size_t>(*a)].count(*b)) ++fill;
            if (best == 0 || fill < best_fill || (fill == best_fill && nb.size() < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = nb.size();
            }
        }
        const auto nb = adj[static_cast<std::size_t>(best)];
        for (auto a = nb.begin(); a != nb.end(); ++a) {
            for (auto b = std::next(a); b != nb.end(); ++b) {
                adj[static_cast<std::size_t>(*a)].insert(*b);
                adj[static_cast<std::size_t>(*b)].insert(*a);
            }
            adj[static_cast<std::size_t>(*a)].erase(best);
        }
        gone[static_cast<std::size_t>(best)] = true;
        position[static_cast<std::size_t>(best)] = step;
        order.push_back(best);
        neighbourhoods.emplace_back(nb.begin(), nb.end());
    }
    int previous_root = -1;
    for (int i = 0; i < n; ++i) {
        std::vector<Vertex> bag = neighbourhoods[static_cast<std::size_t>(i)];
        bag.push_back(order[static_cast<std::size_t>(i)]);
        td.bags.push_back(sorted_bag(bag));
    }
    for (int i = 0; i < n; ++i) {
        const auto& nb = neighbourhoods[static_cast<std::size_t>(i)];
        if (nb.empty()) {
            // Component root; chain roots together (they share no vertices).
            if (previous_root >= 0) td.edges.push_back({previous_root, i});
            previous_root = i;
            continue;
        }
        int parent = n;
        for (Vertex w : nb) parent = std::min(parent, position[static_cast<std::size_t>(w)]);
        td.edges.push_back({i, parent});
    }
    return td;
}

int NiceTreeDecomposition::width() const {
    std::size_t best = 0;
    for (const auto& node : nodes_) best = std::max(best, node.bag.size());
    return best == 0 ? 0 : static_cast<int>(best) - 1;
}

std::size_t NiceTreeDecomposition::count(NodeKind kind) const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [&](const NiceNode& x) { return x.kind == kind; }));
}

namespace {

class NiceBuilder {
public:
    int add(NiceNode node) {
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size()) - 1;
    }

    int leaf() { return add({NodeKind::Leaf, {}, 0, -1, {-1, -1}}); }

    int introduce(int child, Vertex v) {
        auto bag = nodes_[static_cast<std::size_t>(child)].bag;
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        return add({NodeKind::IntroduceVertex, std::move(bag), v, -1, {child, -1}});
    }

    int forget(int child, Vertex v) {
        auto bag = nodes_[static_cast<std::size_t>(child)].bag;
        bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
        return add({NodeKind::Forget, std::move(bag), v, -1, {child, -1}});
    }

    int join(int left, int right) {
        return add({NodeKind::Join, nodes_[static_cast<std::size_t>(left)].bag, 0, -1, {left, right}});
    }

    // Moves a node with bag `from` to bag `to`: forget first, then introduce.
    int transition(int id, const std::vector<Vertex>& to) {
        const auto from = nodes_[static_cast<std::size_t>(id)].bag;
        for (Vertex v : from)
            if (!bag_contains(to, v)) id = forget(id, v);
        for (Vertex v : to)
            if (!bag_contains(from, v)) id = introduce(id, v);
        return id;
    }

    std::vector<NiceNode>& nodes() { return nodes_; }

private:
    std::vector<NiceNode> nodes_;
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td, const Digraph& d) {
    auto violations = validate(td, d);
    if (!violations.empty()) throw Error(ErrorKind::InvalidDecomposition, violations.front().detail);

    const int k = static_cast<int>(td.bags.size());
    std::vector<std::vector<Vertex>> bags;
    for (const auto& b : td.bags) bags.push_back(sorted_bag(b));
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
    for (auto [a, b] : td.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    // Root the bag tree at bag 0; children in increasing bag index.
    std::vector<std::vector<int>> children(static_cast<std::size_t>(k));
    std::vector<int> bfs{0};
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        for (int y : adj[static_cast<std::size_t>(bfs[i])]) {
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                children[static_cast<std::size_t>(bfs[i])].push_back(y);
                bfs.push_back(y);
            }
        }
    }

    NiceBuilder builder;
    std::vector<int> built(static_cast<std::size_t>(k), -1);
    // Bottom-up over the BFS order (reverse) avoids deep recursion.
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
        const int x = *it;
        const auto& bag = bags[static_cast<std::size_t>(x)];
        const auto& kids = children[static_cast<std::size_t>(x)];
        int id;
        if (kids.empty()) {
            id = builder.transition(builder.leaf(), bag);
        } else {
            id = builder.transition(built[static_cast<std::size_t>(kids.front())], bag);
            for (std::size_t c = 1; c < kids.size(); ++c)
                id = builder.join(id, builder.transition(built[static_cast<std::size_t>(kids[c])], bag));
        }
        built[static_cast<std::size_t>(x)] = id;
    }
    int root = builder.transition(built[0], {});
    auto& nodes = builder.nodes();

    auto post_order = [&](int from) {
        std::vector<int> order;
        std::vector<std::pair<int, int>> stack{{from, 0}};
        while (!stack.empty()) {
            auto& [x, state] = stack.back();
            const auto& ch = nodes[static_cast<std::size_t>(x)].children;
            if (state < 2 && ch[static_cast<std::size_t>(state)] >= 0) {
                int c = ch[static_cast<std::size_t>(state)];
                ++state;
                stack.push_back({c, 0});
                continue;
            }
            if (state < 2) {
                ++state;
                continue;
            }
            order.push_back(x);
            stack.pop_back();
        }
        return order;
    };

    // Attach each arc above the highest post-order node whose bag holds both ends.
    {
        auto order = post_order(root);
        std::vector<int> rank(nodes.size(), -1);
        for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        std::vector<int> parent(nodes.size(), -1);
        for (int x : order)
            for (int c : nodes[static_cast<std::size_t>(x)].children)
                if (c >= 0) parent[static_cast<std::size_t>(c)] = x;
        std::map<int, std::vector<int>> arcs_at;
        for (int a = 0; a < d.arc_count(); ++a) {
            const Arc& arc = d.arc(a);
            int best = -1;
            for (int x : order) {
                const auto& b = nodes[static_cast<std::size_t>(x)].bag;
                if (bag_contains(b, arc.tail) && bag_contains(b, arc.head) && (best < 0 || rank[static_cast<std::size_t>(x)] > rank[static_cast<std::size_t>(best)]))
                    best = x;
            }
            if (best < 0) throw Error(ErrorKind::InvalidDecomposition, "arc endpoints share no bag");
            arcs_at[best].push_back(a);
        }
        for (auto& [target, arcs] : arcs_at) {
            int below = target;
            const int up = parent[static_cast<std::size_t>(target)];
            for (int a : arcs) {
                NiceNode n{NodeKind::IntroduceArc, nodes[static_cast<std::size_t>(target)].bag, 0, a, {below, -1}};
                nodes.push_back(std::move(n));
                below = static_cast<int>(nodes.size()) - 1;
            }
            if (up < 0) {
                root = below;
            } else {
                for (int& c : nodes[static_cast<std::size_t>(up)].children)
                    if (c == target) c = below;
            }
        }
    }

    auto order = post_order(root);
    std::vector<int> renumber(nodes.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) renumber[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    std::vector<NiceNode> out;
    out.reserve(order.size());
    for (int x : order) {
        NiceNode n = nodes[static_cast<std::size_t>(x)];
        for (int& c : n.children)
            if (c >= 0) c = renumber[static_cast<std::size_t>(c)];
        out.push_back(std::move(n));
    }
    return NiceTreeDecomposition(std::move(out));
}

std::vector<std::string> validate_nice(const NiceTreeDecomposition& ntd, const Digraph& d) {
    std::vector<std::string> out;
    const auto& nodes = ntd.nodes();
    if (nodes.empty()) {
        out.push_back("no nodes");
        return out;
    }
    const int n = d.vertex_count();
    std::vector<int> parent(nodes.size(), -1);
    std::vector<int> introduced(static_cast<std::size_t>(d.arc_count()), 0);
    std::vector<int> forgotten(static_cast<std::size_t>(n) + 1, 0);
    auto label = [](std::size_t i) { return "node " + std::to_string(i) + ": "; };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NiceNode& x = nodes[i];
        if (!std::is_sorted(x.bag.begin(), x.bag.end()) || std::adjacent_find(x.bag.begin(), x.bag.end()) != x.bag.end())
            out.push_back(label(i) + "bag not sorted/distinct");
        for (Vertex v : x.bag)
            if (v < 1 || v > n) out.push_back(label(i) + "vertex out of range");
        int expected_children = x.kind == NodeKind::Leaf ? 0 : (x.kind == NodeKind::Join ? 2 : 1);
        int actual = (x.children[0] >= 0) + (x.children[1] >= 0);
        if (actual != expected_children || (actual == 1 && x.children[0] < 0)) {
            out.push_back(label(i) + "wrong child count");
            continue;
        }
        for (int c = 0; c < actual; ++c) {
            int ch = x.children[static_cast<std::size_t>(c)];
            if (ch >= static_cast<int>(i)) out.push_back(label(i) + "child not before parent");
            else if (parent[static_cast<std::size_t>(ch)] >= 0) out.push_back(label(i) + "child has two parents");
            else parent[static_cast<std::size_t>(ch)] = static_cast<int>(i);
        }
        if (actual && x.children[0] >= static_cast<int>(i)) continue;
        const auto& cb = actual ? nodes[static_cast<std::size_t>(x.children[0])].bag : x.bag;
        switch (x.kind) {
        case NodeKind::Leaf:
            if (!x.bag.empty()) out.push_back(label(i) + "leaf bag not empty");
            break;
        case NodeKind::IntroduceVertex: {
            auto expect = cb;
            if (bag_contains(cb, x.vertex)) out.push_back(label(i) + "introduced vertex already in child");
            expect.insert(std::upper_bound(expect.begin(), expect.end(), x.vertex), x.vertex);
            if (expect != x.bag) out.push_back(label(i) + "introduce delta mismatch");
            break;
        }
        case NodeKind::Forget: {
            auto expect = cb;
            auto it = std::lower_bound(expect.begin(), expect.end(), x.vertex);
            if (it == expect.end() || *it != x.vertex) {
                out.push_back(label(i) + "forgotten vertex not in child");
                break;
            }
            expect.erase(it);
            if (expect != x.bag) out.push_back(label(i) + "forget delta mismatch");
            if (x.vertex >= 1 && x.vertex <= n) ++forgotten[static_cast<std::size_t>(x.vertex)];
            break;
        }
        case NodeKind::IntroduceArc:
            if (cb != x.bag) out.push_back(label(i) + "arc node bag differs from child");
            if (x.arc < 0 || x.arc >= d.arc_count()) {
                out.push_back(label(i) + "arc index out of range");
            } else {
                ++introduced[static_cast<std::size_t>(x.arc)];
                const Arc& a = d.arc(x.arc);
                if (!bag_contains(x.bag, a.tail) || !bag_contains(x.bag, a.head)) out.push_back(label(i) + "arc endpoints not in bag");
            }
            break;
        case NodeKind::Join:
            if (nodes[static_cast<std::size_t>(x.children[0])].bag != x.bag || nodes[static_cast<std::size_t>(x.children[1])].bag != x.bag)
                out.push_back(label(i) + "join children bags differ");
            break;
        }
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (parent[i] < 0) out.push_back(label(i) + "unreachable from root");
    if (!nodes.back().bag.empty()) out.push_back("root bag not empty");
    for (int a = 0; a < d.arc_count(); ++a)
        if (introduced[static_cast<std::size_t>(a)] != 1)
            out.push_back("arc " + std::to_string(a) + " introduced " + std::to_string(introduced[static_cast<std::size_t>(a)]) + " times");
    // Connected occurrence: exactly one topmost node holds each vertex.
    std::vector<int> tops(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (Vertex v : nodes[i].bag) {
            if (v < 1 || v > n) continue;
            int p = parent[i];
            if (p < 0 || !bag_contains(nodes[static_cast<std::size_t>(p)].bag, v)) ++tops[static_cast<std::size_t>(v)];
        }
    }
    for (Vertex v = 1; v <= n; ++v) {
        if (tops[static_cast<std::size_t>(v)] != 1)
            out.push_back("vertex " + std::to_string(v) + " has " + std::to_string(tops[static_cast<std::size_t>(v)]) + " occurrence subtrees");
        if (forgotten[static_cast<std::size_t>(v)] != 1)
            out.push_back("vertex " + std::to_string(v) + " forgotten " + std::to_string(forgotten[static_cast<std::size_t>(v)]) + " times");
    }
    return out;
}

}  // namespace scss
