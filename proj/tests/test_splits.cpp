#include <doctest.h>

#include <algorithm>
#include <set>

#include "distrange/errors.hpp"
#include "distrange/oracle.hpp"
#include "distrange/split_system.hpp"
#include "distrange/topology.hpp"

using namespace distrange;

namespace {

SplitSystem system_of(int n, std::initializer_list<QuartetSplit> splits) {
    SplitSystem s(n);
    for (const QuartetSplit& q : splits) s.insert(q);
    return s;
}

WeightedTree caterpillar5() {
    // cherries {1,2} and {4,5}, leaf 3 on the middle vertex
    return WeightedTree(8, 5,
                        {Edge(1, 6, Rational(1)), Edge(2, 6, Rational(1)), Edge(6, 7, Rational(1)),
                         Edge(3, 7, Rational(1)), Edge(7, 8, Rational(1)), Edge(4, 8, Rational(1)),
                         Edge(5, 8, Rational(1))});
}

} // namespace

TEST_CASE("quartet splits are canonical") {
    CHECK(QuartetSplit(3, 4, 2, 1) == QuartetSplit(1, 2, 3, 4));
    CHECK(QuartetSplit(4, 3, 1, 2) == QuartetSplit(1, 2, 3, 4));
    CHECK(QuartetSplit(1, 2, 3, 4) != QuartetSplit(1, 3, 2, 4));
    CHECK(QuartetSplit(1, 2, 3, 4).str() == "1,2|3,4");
    CHECK_THROWS_AS(QuartetSplit(1, 1, 2, 3), InvariantError);
}

TEST_CASE("fatness") {
    CHECK(!is_fat(system_of(4, {QuartetSplit(1, 2, 3, 4)})));
    auto empty = is_fat(SplitSystem(4));
    REQUIRE(empty.has_value());
    CHECK(empty->quartet == std::array<int, 4>{1, 2, 3, 4});
    CHECK(empty->split_count == 0);
    auto two = is_fat(system_of(4, {QuartetSplit(1, 2, 3, 4), QuartetSplit(1, 3, 2, 4)}));
    REQUIRE(two.has_value());
    CHECK(two->split_count == 2);
    // n < 4 is vacuously fat
    CHECK(!is_fat(SplitSystem(3)));
    CHECK(!is_fat(SplitSystem(2)));
}

TEST_CASE("transitivity") {
    auto missing = is_transitive(system_of(5, {QuartetSplit(1, 2, 3, 4), QuartetSplit(1, 2, 3, 5)}));
    REQUIRE(missing.has_value());
    CHECK(missing->missing == QuartetSplit(1, 2, 4, 5));
    CHECK(!is_transitive(system_of(
        5, {QuartetSplit(1, 2, 3, 4), QuartetSplit(1, 2, 3, 5), QuartetSplit(1, 2, 4, 5)})));
    // no five distinct labels exist
    CHECK(!is_transitive(system_of(4, {QuartetSplit(1, 3, 2, 4)})));
    CHECK(!is_transitive(SplitSystem(4)));
}

TEST_CASE("saturation") {
    auto v = is_saturated(system_of(5, {QuartetSplit(1, 2, 3, 4)}));
    REQUIRE(v.has_value());
    CHECK(v->point == 5);
    CHECK(!is_saturated(system_of(4, {QuartetSplit(1, 2, 3, 4)})));
    CHECK(!is_saturated(SplitSystem(4)));
    CHECK(!is_saturated(tree_induced_splits(caterpillar5())));
}

TEST_CASE("tree-induced splits: quartet, star, caterpillar") {
    WeightedTree quartet(6, 4,
                         {Edge(1, 5, Rational(1)), Edge(2, 5, Rational(1)), Edge(5, 6, Rational(1)),
                          Edge(3, 6, Rational(1)), Edge(4, 6, Rational(1))});
    SplitSystem qs = tree_induced_splits(quartet);
    CHECK(qs.size() == 1);
    CHECK(qs.contains(QuartetSplit(1, 2, 3, 4)));

    WeightedTree star = make_star(4, {Rational(1), Rational(1), Rational(1), Rational(1)});
    SplitSystem ss = tree_induced_splits(star);
    CHECK(ss.size() == 3);

    SplitSystem cs = tree_induced_splits(caterpillar5());
    CHECK(cs.contains(QuartetSplit(1, 2, 3, 4)));
    CHECK(cs.contains(QuartetSplit(1, 2, 3, 5)));
    CHECK(cs.contains(QuartetSplit(1, 2, 4, 5)));
    CHECK(cs.contains(QuartetSplit(4, 5, 1, 3)));
    CHECK(cs.contains(QuartetSplit(4, 5, 2, 3)));
    CHECK(cs.size() == 5);

    CHECK(tree_induced_splits(make_star(3, {Rational(1), Rational(1), Rational(1)})).size() == 0);
}

TEST_CASE("topology enumeration counts") {
    CHECK(enumerate_topologies(2).size() == 1);
    CHECK(enumerate_topologies(3).size() == 1);
    CHECK(enumerate_topologies(4).size() == 4);
    CHECK(enumerate_topologies(5).size() == 26);
    CHECK(enumerate_topologies(6).size() == 236);
    CHECK(enumerate_topologies(7).size() == 2752);
}

TEST_CASE("candidate systems: n=4 topology and raw agree") {
    std::vector<SplitSystem> topo = enumerate_candidate_systems(4, CandidateStrategy::Topology);
    CHECK(topo.size() == 4);
    int singles = 0, stars = 0;
    for (const SplitSystem& s : topo) {
        if (s.size() == 1) ++singles;
        if (s.size() == 3) ++stars;
    }
    CHECK(singles == 3);
    CHECK(stars == 1);

    std::vector<SplitSystem> raw = enumerate_candidate_systems(4, CandidateStrategy::Raw);
    CHECK(raw.size() == 4);
    CHECK(std::set<SplitSystem>(topo.begin(), topo.end()) ==
          std::set<SplitSystem>(raw.begin(), raw.end()));
    // raw emission order: the three single splits, then all-three
    CHECK(raw[0].size() == 1);
    CHECK(raw[3].size() == 3);
}

TEST_CASE("candidate systems: n=5 topology count and raw containment") {
    std::vector<SplitSystem> topo = enumerate_candidate_systems(5, CandidateStrategy::Topology);
    CHECK(topo.size() == 26);
    // ascending internal-edge count: the star (all-three on every quartet) first
    CHECK(topo.front().size() == 15);

    std::set<SplitSystem> raw;
    for (const SplitSystem& s : enumerate_candidate_systems(5, CandidateStrategy::Raw))
        raw.insert(s);
    for (const SplitSystem& s : topo) CHECK(raw.count(s) == 1);
}

TEST_CASE("induced systems are fat, transitive and saturated up to n = 8") {
    oracle::Rng rng(5150);
    for (int n = 4; n <= 8; ++n) {
        std::vector<Topology> shapes = enumerate_topologies(n);
        // all topologies up to n = 6, random sample beyond
        std::vector<std::size_t> picks;
        if (n <= 6)
            for (std::size_t i = 0; i < shapes.size(); ++i) picks.push_back(i);
        else
            for (int k = 0; k < 60; ++k) picks.push_back(rng.below(shapes.size()));
        for (std::size_t i : picks) {
            SplitSystem s = tree_induced_splits(unit_tree(shapes[i]));
            CHECK(!is_fat(s));
            CHECK(!is_transitive(s));
            CHECK(!is_saturated(s));
        }
    }
}

TEST_CASE("induced splits depend on the topology only") {
    oracle::Rng rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(rng.below(4));
        std::vector<Topology> shapes = enumerate_topologies(n);
        const Topology& shape = shapes[rng.below(shapes.size())];
        SplitSystem reference = tree_induced_splits(unit_tree(shape));
        std::vector<Edge> edges;
        for (auto [u, v] : shape.edges)
            edges.emplace_back(u, v, rng.rational_in(Rational(1, 16), Rational(7)));
        WeightedTree reweighted(shape.vertex_count, n, std::move(edges));
        CHECK(tree_induced_splits(reweighted) == reference);
    }
}
