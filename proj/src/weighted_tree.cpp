#include "distrange/weighted_tree.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "distrange/errors.hpp"

namespace distrange {

namespace {

std::string vtx(int v) { return std::to_string(v); }

} // namespace

WeightedTree::WeightedTree(int vertex_count, int leaf_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), leaf_count_(leaf_count) {
    const int n = leaf_count;
    if (n < 2) throw InvariantError("tree: need at least 2 leaves");
    if (vertex_count < n) throw InvariantError("tree: vertex count below leaf count");
    if (static_cast<int>(edges.size()) != vertex_count - 1)
        throw InvariantError("tree: edge count " + vtx(edges.size()) + " != vertex count - 1");

    std::vector<std::vector<std::pair<int, Rational>>> adj(vertex_count + 1);
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
        if (e.u < 1 || e.u > vertex_count || e.v < 1 || e.v > vertex_count)
            throw InvariantError("tree: edge endpoint out of range");
        if (e.u == e.v) throw InvariantError("tree: loop at vertex " + vtx(e.u));
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw InvariantError("tree: parallel edge {" + vtx(e.u) + "," + vtx(e.v) + "}");
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }

    // connectivity (|E| = |V|-1 and connected => acyclic tree)
    std::vector<char> visited(vertex_count + 1, 0);
    std::vector<int> stack{1};
    visited[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [w, _] : adj[v])
            if (!visited[w]) {
                visited[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != vertex_count) throw InvariantError("tree: disconnected (cycle elsewhere)");

    for (int v = 1; v <= vertex_count; ++v) {
        std::size_t deg = adj[v].size();
        if (v <= n && deg != 1)
            throw InvariantError("tree: labeled vertex " + vtx(v) + " is not a leaf (degree " +
                                 vtx(deg) + ")");
        if (v > n && deg == 1)
            throw InvariantError("tree: unlabeled vertex " + vtx(v) + " is a leaf");
    }

    // Suppress degree-2 internal vertices, summing the two edge weights.
    std::vector<char> removed(vertex_count + 1, 0);
    for (int v = n + 1; v <= vertex_count; ++v) {
        if (adj[v].size() != 2) continue;
        auto [a, wa] = adj[v][0];
        auto [b, wb] = adj[v][1];
        removed[v] = 1;
        auto relink = [&](int from, int to, const Rational& w) {
            for (auto& [x, wx] : adj[from])
                if (x == v) {
                    x = to;
                    wx = w;
                    return;
                }
        };
        Rational w = wa + wb;
        relink(a, b, w);
        relink(b, a, w);
        adj[v].clear();
    }

    // Renumber remaining internal vertices to n+1.. preserving id order.
    std::vector<int> remap(vertex_count + 1, 0);
    int next = n;
    for (int v = 1; v <= vertex_count; ++v) {
        if (v <= n) remap[v] = v;
        else if (!removed[v]) remap[v] = ++next;
    }
    vertex_count_ = next;

    edges_.clear();
    for (int v = 1; v <= vertex_count; ++v) {
        if (removed[v]) continue;
        for (const auto& [w, weight] : adj[v]) {
            int a = remap[v], b = remap[w];
            if (a < b) edges_.emplace_back(a, b, weight);
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
        return std::pair(x.u, x.v) < std::pair(y.u, y.v);
    });

    adj_.assign(vertex_count_ + 1, {});
    for (const Edge& e : edges_) {
        adj_[e.u].emplace_back(e.v, e.w);
        adj_[e.v].emplace_back(e.u, e.w);
    }
}

bool WeightedTree::positive_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w > 0; });
}

std::vector<int> WeightedTree::path_vertices(int a, int b) const {
    std::vector<int> parent(vertex_count_ + 1, 0);
    std::vector<int> stack{a};
    parent[a] = a;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == b) break;
        for (const auto& [w, _] : adj_[v])
            if (parent[w] == 0) {
                parent[w] = v;
                stack.push_back(w);
            }
    }
    std::vector<int> path;
    for (int v = b; v != a; v = parent[v]) path.push_back(v);
    path.push_back(a);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::pair<std::vector<int>, Rational>> WeightedTree::edge_leaf_splits() const {
    std::vector<std::pair<std::vector<int>, Rational>> out;
    for (const Edge& e : edges_) {
        // leaves on e.v's side when the edge is removed
        std::vector<char> visited(vertex_count_ + 1, 0);
        visited[e.u] = 1;
        std::vector<int> stack{e.v};
        visited[e.v] = 1;
        std::vector<int> side;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v <= leaf_count_) side.push_back(v);
            for (const auto& [w, _] : adj_[v])
                if (!visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(side.begin(), side.end());
        if (!side.empty() && side.front() == 1) {
            // report the complementary side
            std::vector<int> other;
            std::size_t k = 0;
            for (int leaf = 1; leaf <= leaf_count_; ++leaf) {
                if (k < side.size() && side[k] == leaf) ++k;
                else other.push_back(leaf);
            }
            side = std::move(other);
        }
        out.emplace_back(std::move(side), e.w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DissimilarityVector tree_two_weights(const WeightedTree& tree) {
    const int n = tree.leaf_count();
    DissimilarityVector d(n);
    std::vector<std::vector<std::pair<int, Rational>>> adj(tree.vertex_count() + 1);
    for (const Edge& e : tree.edges()) {
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }
    for (int i = 1; i <= n; ++i) {
        std::vector<char> visited(tree.vertex_count() + 1, 0);
        std::vector<Rational> dist(tree.vertex_count() + 1);
        std::vector<int> stack{i};
        visited[i] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [w, weight] : adj[v])
                if (!visited[w]) {
                    visited[w] = 1;
                    dist[w] = dist[v] + weight;
                    stack.push_back(w);
                }
        }
        for (int j = i + 1; j <= n; ++j) d.at(i, j) = dist[j];
    }
    return d;
}

WeightedTree make_star(int n, const std::vector<Rational>& pendant_weights) {
    if (static_cast<int>(pendant_weights.size()) != n)
        throw InvariantError("star: need one pendant weight per leaf");
    std::vector<Edge> edges;
    edges.reserve(n);
    for (int i = 1; i <= n; ++i) edges.emplace_back(i, n + 1, pendant_weights[i - 1]);
    return WeightedTree(n + 1, n, std::move(edges));
}

} // namespace distrange
