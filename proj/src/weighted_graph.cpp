#include "distrange/weighted_graph.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "distrange/errors.hpp"

namespace distrange {

WeightedGraph::WeightedGraph(int vertex_count, int labeled_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), labeled_count_(labeled_count), edges_(std::move(edges)) {
    if (labeled_count < 2) throw InvariantError("graph: need at least 2 labeled vertices");
    if (vertex_count < labeled_count) throw InvariantError("graph: vertex count below labeled count");
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> adj(vertex_count + 1);
    for (const Edge& e : edges_) {
        if (e.u < 1 || e.u > vertex_count || e.v < 1 || e.v > vertex_count)
            throw InvariantError("graph: edge endpoint out of range");
        if (e.u == e.v) throw InvariantError("graph: loop at vertex " + std::to_string(e.u));
        if (!seen.insert(std::minmax(e.u, e.v)).second)
            throw InvariantError("graph: parallel edge {" + std::to_string(e.u) + "," +
                                 std::to_string(e.v) + "}");
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> visited(vertex_count + 1, 0);
    std::vector<int> stack{1};
    visited[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!visited[w]) {
                visited[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != vertex_count) throw InvariantError("graph: disconnected");
}

bool WeightedGraph::positive_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w > 0; });
}

DissimilarityVector graph_two_weights(const WeightedGraph& graph) {
    if (!graph.positive_weights())
        throw VariantError("graph 2-weights: defined for positive-weighted graphs only");
    const int V = graph.vertex_count();
    // Floyd-Warshall, exact arithmetic; absent entries stand for +infinity.
    std::vector<std::vector<std::optional<Rational>>> dist(V + 1,
                                                           std::vector<std::optional<Rational>>(V + 1));
    for (int v = 1; v <= V; ++v) dist[v][v] = Rational(0);
    for (const Edge& e : graph.edges()) {
        dist[e.u][e.v] = e.w;
        dist[e.v][e.u] = e.w;
    }
    for (int k = 1; k <= V; ++k)
        for (int i = 1; i <= V; ++i) {
            if (!dist[i][k]) continue;
            for (int j = 1; j <= V; ++j) {
                if (!dist[k][j]) continue;
                Rational through = *dist[i][k] + *dist[k][j];
                if (!dist[i][j] || through < *dist[i][j]) dist[i][j] = through;
            }
        }
    const int n = graph.labeled_count();
    DissimilarityVector d(n);
    for (const PairIndex& p : all_pairs(n)) d.at(p) = *dist[p.i][p.j];
    return d;
}

WeightedGraph make_complete_graph(const DissimilarityVector& weights) {
    std::vector<Edge> edges;
    edges.reserve(pair_count(weights.n));
    for (const PairIndex& p : all_pairs(weights.n)) edges.emplace_back(p.i, p.j, weights.at(p));
    return WeightedGraph(weights.n, weights.n, std::move(edges));
}

} // namespace distrange
