#include "distrange/topology.hpp"

#include "distrange/errors.hpp"

namespace distrange {

int Topology::internal_edge_count() const {
    int count = 0;
    for (const auto& [u, v] : edges)
        if (u > n && v > n) ++count;
    return count;
}

std::vector<Topology> enumerate_topologies(int n) {
    if (n < 2) throw InvariantError("topology enumeration: need n >= 2");
    // Internal vertices are numbered n+1.. from the start, so ids stay
    // stable while leaves 3..n are inserted one by one.
    struct Partial {
        int internal_count = 0;
        std::vector<std::pair<int, int>> edges;
    };
    std::vector<Partial> current{Partial{0, {{1, 2}}}};
    for (int leaf = 3; leaf <= n; ++leaf) {
        std::vector<Partial> next;
        for (const Partial& t : current) {
            // subdivide each edge with a fresh degree-3 internal vertex
            for (std::size_t e = 0; e < t.edges.size(); ++e) {
                Partial grown{t.internal_count + 1, {}};
                int mid = n + t.internal_count + 1;
                grown.edges.reserve(t.edges.size() + 2);
                for (std::size_t f = 0; f < t.edges.size(); ++f)
                    if (f != e) grown.edges.push_back(t.edges[f]);
                grown.edges.emplace_back(t.edges[e].first, mid);
                grown.edges.emplace_back(mid, t.edges[e].second);
                grown.edges.emplace_back(mid, leaf);
                next.push_back(std::move(grown));
            }
            // attach the leaf at each existing internal vertex
            for (int k = 0; k < t.internal_count; ++k) {
                Partial grown{t.internal_count, t.edges};
                grown.edges.emplace_back(n + 1 + k, leaf);
                next.push_back(std::move(grown));
            }
        }
        current = std::move(next);
    }
    std::vector<Topology> out;
    out.reserve(current.size());
    for (const Partial& t : current) {
        // compact internal ids to n+1..n+internal_count in first-use order
        std::vector<int> remap(t.internal_count + 1, 0);
        int used = 0;
        Topology topo{n, 0, {}};
        topo.edges.reserve(t.edges.size());
        auto map_vertex = [&](int v) {
            if (v <= n) return v;
            int idx = v - n;
            if (remap[idx] == 0) remap[idx] = n + ++used;
            return remap[idx];
        };
        for (const auto& [u, v] : t.edges) topo.edges.emplace_back(map_vertex(u), map_vertex(v));
        topo.vertex_count = n + used;
        out.push_back(std::move(topo));
    }
    return out;
}

WeightedTree unit_tree(const Topology& topology) {
    std::vector<Edge> edges;
    edges.reserve(topology.edges.size());
    for (const auto& [u, v] : topology.edges) edges.emplace_back(u, v, Rational(1));
    return WeightedTree(topology.vertex_count, topology.n, std::move(edges));
}

} // namespace distrange
