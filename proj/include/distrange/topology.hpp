#ifndef DISTRANGE_TOPOLOGY_HPP
#define DISTRANGE_TOPOLOGY_HPP

#include <utility>
#include <vector>

#include "distrange/weighted_tree.hpp"

namespace distrange {

/// Unweighted leaf-labeled tree shape: leaves 1..n, internal vertices
/// n+1..vertex_count, every internal degree >= 3.
struct Topology {
    int n = 0;
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    int internal_edge_count() const;
};

/// All leaf-labeled topologies on [n] with internal degrees >= 3, each
/// exactly once (1, 1, 4, 26, 236, 2752, ... for n = 2, 3, 4, 5, 6, 7).
/// Generated by inserting leaf k into every edge (new degree-3 vertex) and
/// at every internal vertex of each topology on [k-1].
std::vector<Topology> enumerate_topologies(int n);

/// The topology as a weighted tree with unit edge weights.
WeightedTree unit_tree(const Topology& topology);

} // namespace distrange

#endif
