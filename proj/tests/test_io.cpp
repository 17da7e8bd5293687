#include <doctest.h>

#include "distrange/errors.hpp"
#include "distrange/io.hpp"
#include "distrange/oracle.hpp"
#include "distrange/tree_decision.hpp"

using namespace distrange;

namespace {

const char* triangle_feasible = R"({
  "n": 3,
  "variant": "graph-closed",
  "intervals": [
    {"i": 1, "j": 2, "lo": "4", "hi": "5"},
    {"i": 1, "j": 3, "lo": "2", "hi": "2"},
    {"i": 2, "j": 3, "lo": "2", "hi": "2"}
  ]
})";

} // namespace

TEST_CASE("instance parsing and validation diagnostics") {
    IntervalFamily f = io::parse_instance(triangle_feasible);
    CHECK(f.n() == 3);
    CHECK(f.variant() == Variant::GraphClosed);
    CHECK(f.lo(PairIndex(1, 2)) == 4);
    CHECK(f.hi(PairIndex(1, 2)) == 5);

    // the serialization round-trips
    IntervalFamily again = io::parse_instance(io::instance_to_json(f));
    for (const PairIndex& p : all_pairs(3)) {
        CHECK(again.lo(p) == f.lo(p));
        CHECK(again.hi(p) == f.hi(p));
    }

    CHECK_THROWS_WITH_AS(io::parse_instance(R"({
        "n": 3, "variant": "graph-closed",
        "intervals": [
          {"i": 1, "j": 2, "lo": "4", "hi": "5"},
          {"i": 2, "j": 1, "lo": "4", "hi": "5"},
          {"i": 1, "j": 3, "lo": "2", "hi": "2"},
          {"i": 2, "j": 3, "lo": "2", "hi": "2"}
        ]})"),
                         doctest::Contains("duplicate pair {1,2}"), ParseError);

    CHECK_THROWS_WITH_AS(io::parse_instance(R"({
        "n": 3, "variant": "graph-closed",
        "intervals": [ {"i": 1, "j": 2, "lo": "4", "hi": "5"} ]})"),
                         doctest::Contains("missing"), ParseError);

    // floats are rejected, exactness is end-to-end
    CHECK_THROWS_AS(io::parse_instance(R"({
        "n": 2, "variant": "graph-closed",
        "intervals": [ {"i": 1, "j": 2, "lo": 1.5, "hi": "3"} ]})"),
                    ParseError);

    CHECK_THROWS_AS(io::parse_instance("{"), ParseError);
    CHECK_THROWS_AS(io::parse_instance(R"({"n": 2, "variant": "nope", "intervals": []})"),
                    ParseError);
}

TEST_CASE("witness documents round-trip through decide results") {
    IntervalFamily f = io::parse_instance(triangle_feasible);
    GraphDecision d = decide_graph(f);
    REQUIRE(d.feasible());
    std::string doc = io::decide_result_json(f, d, false);
    io::Witness w = io::parse_witness(doc);
    REQUIRE(std::holds_alternative<WeightedGraph>(w));
    CHECK(io::verify_witness(w, f).ok);
}

TEST_CASE("non-canonical tree witness documents are rejected") {
    // vertex 4 is an internal vertex of degree 2
    CHECK_THROWS_WITH_AS(io::parse_witness(R"({
        "type": "tree", "vertexCount": 4, "leafCount": 2,
        "edges": [ {"u":1,"v":3,"w":"1"}, {"u":3,"v":4,"w":"1"}, {"u":4,"v":2,"w":"1"} ]})"),
                         doctest::Contains("degree-2"), ParseError);
    // graphs with parallel edges are invalid
    CHECK_THROWS_AS(io::parse_witness(R"({
        "type": "graph", "vertexCount": 2, "labeledCount": 2,
        "edges": [ {"u":1,"v":2,"w":"1"}, {"u":2,"v":1,"w":"2"} ]})"),
                    ParseError);
}

TEST_CASE("result documents are deterministic") {
    IntervalFamily f = io::parse_instance(triangle_feasible);
    GraphDecision d1 = decide_graph(f);
    GraphDecision d2 = decide_graph(f);
    CHECK(io::decide_result_json(f, d1, true) == io::decide_result_json(f, d2, true));

    PairTable<Interval> table(4);
    DissimilarityVector distinct(4);
    const char* values[] = {"1", "2", "2", "5", "2", "1"};
    int k = 0;
    for (const PairIndex& p : all_pairs(4)) {
        Rational v = parse_rational(values[k++]);
        table.at(p) = Interval{v, v};
    }
    IntervalFamily tf(4, std::move(table), Variant::TreeGeneralClosed);
    TreeDecision t1 = decide_tree(tf);
    TreeDecision t2 = decide_tree(tf);
    REQUIRE(!t1.feasible());
    CHECK(io::decide_result_json(tf, t1, true) == io::decide_result_json(tf, t2, true));
}

TEST_CASE("emitted rationals are canonical p/q strings") {
    PairTable<Interval> table(2);
    table.at(1, 2) = Interval{parse_rational("6/4"), parse_rational("10/4")};
    IntervalFamily f(2, std::move(table), Variant::TreeGeneralClosed);
    std::string text = io::instance_to_json(f);
    CHECK(text.find("3/2") != std::string::npos);
    CHECK(text.find("5/2") != std::string::npos);
    CHECK(text.find("6/4") == std::string::npos);
}
