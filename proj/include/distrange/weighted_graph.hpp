#ifndef DISTRANGE_WEIGHTED_GRAPH_HPP
#define DISTRANGE_WEIGHTED_GRAPH_HPP

#include <vector>

#include "distrange/interval_family.hpp"
#include "distrange/weighted_tree.hpp"

namespace distrange {

/// Simple connected weighted graph with vertices 1..vertex_count, the first
/// labeled_count of which are the labeled points.
class WeightedGraph {
  public:
    WeightedGraph(int vertex_count, int labeled_count, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    int labeled_count() const { return labeled_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool positive_weights() const;

  private:
    int vertex_count_ = 0;
    int labeled_count_ = 0;
    std::vector<Edge> edges_;
};

/// Shortest-path distances between labeled vertices; defined for
/// positive-weighted graphs only (throws VariantError otherwise).
DissimilarityVector graph_two_weights(const WeightedGraph& graph);

/// Complete graph on [n] with the given edge weights.
WeightedGraph make_complete_graph(const DissimilarityVector& weights);

} // namespace distrange

#endif
