#ifndef DISTRANGE_WEIGHTED_TREE_HPP
#define DISTRANGE_WEIGHTED_TREE_HPP

#include <utility>
#include <vector>

#include "distrange/interval_family.hpp"
#include "distrange/pair_index.hpp"
#include "distrange/rational.hpp"

namespace distrange {

struct Edge {
    int u = 0;
    int v = 0;
    Rational w;

    Edge() = default;
    Edge(int u, int v, Rational w) : u(u), v(v), w(std::move(w)) {}
    bool operator==(const Edge&) const = default;
};

/// Weighted tree whose leaves are exactly the labeled vertices 1..n.
/// Vertices are 1..vertex_count(); internal vertices are n+1.. and all have
/// degree >= 3. Construction validates tree-ness and the leaf labeling, and
/// suppresses degree-2 internal vertices (summing the two edge weights), so
/// equal inputs up to subdivision construct the same canonical tree.
class WeightedTree {
  public:
    /// vertex ids in edges must lie in 1..vertex_count; leaf_count = n.
    WeightedTree(int vertex_count, int leaf_count, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    int leaf_count() const { return leaf_count_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool positive_weights() const;

    /// Vertex sequence of the unique a-b path (endpoints included).
    std::vector<int> path_vertices(int a, int b) const;

    /// Leaf sets split off by each edge, with the edge weight; the reported
    /// side is the one not containing leaf 1, sorted. Together these
    /// determine the labeled weighted tree up to isomorphism.
    std::vector<std::pair<std::vector<int>, Rational>> edge_leaf_splits() const;

  private:
    int vertex_count_ = 0;
    int leaf_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, Rational>>> adj_; // 1-based
};

/// 2-weights of a tree: value at {i,j} is the weight of the unique path
/// between leaves i and j.
DissimilarityVector tree_two_weights(const WeightedTree& tree);

/// Star on leaves 1..n with the given pendant weights (weights[k] belongs
/// to leaf k+1). For n = 2 the degree-2 center is suppressed into a single
/// edge.
WeightedTree make_star(int n, const std::vector<Rational>& pendant_weights);

} // namespace distrange

#endif
