#include "distrange/io.hpp"

#include <json.hpp>

#include "distrange/errors.hpp"

namespace distrange::io {

using Json = nlohmann::ordered_json;

namespace {

Rational parse_rational_field(const Json& node, const std::string& where) {
    if (node.is_string()) return parse_rational(node.get<std::string>());
    if (node.is_number_integer()) return Rational(node.get<long>());
    throw ParseError(where + ": rationals are \"p/q\" or integer strings, got " + node.dump());
}

int parse_int_field(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number_integer())
        throw ParseError(where + ": missing integer field \"" + key + "\"");
    return obj[key].get<int>();
}

Json rational_json(const Rational& r) { return Json(to_string(r)); }

Json edges_json(const std::vector<Edge>& edges) {
    Json out = Json::array();
    for (const Edge& e : edges)
        out.push_back(Json{{"u", e.u}, {"v", e.v}, {"w", to_string(e.w)}});
    return out;
}

std::vector<Edge> parse_edges(const Json& node, const std::string& where) {
    if (!node.is_array()) throw ParseError(where + ": \"edges\" must be an array");
    std::vector<Edge> edges;
    for (const Json& e : node) {
        int u = parse_int_field(e, "u", where);
        int v = parse_int_field(e, "v", where);
        if (!e.contains("w")) throw ParseError(where + ": edge missing \"w\"");
        edges.emplace_back(u, v, parse_rational_field(e["w"], where));
    }
    return edges;
}

Json pair_checks_json(const std::vector<PairCheck>& checks) {
    Json pairs = Json::array();
    for (const PairCheck& c : checks)
        pairs.push_back(Json{{"i", c.pair.i},
                             {"j", c.pair.j},
                             {"d", to_string(c.distance)},
                             {"lo", to_string(c.lo)},
                             {"hi", to_string(c.hi)},
                             {"ok", c.ok}});
    return pairs;
}

Json certificate_json(const linsys::Certificate& cert) {
    Json mults = Json::array();
    for (const auto& [id, c] : cert.multipliers) mults.push_back(Json::array({id, to_string(c)}));
    return Json{{"multipliers", std::move(mults)}, {"residual", to_string(cert.residual)}};
}

Json constraints_json(const std::vector<linsys::Constraint>& constraints) {
    Json out = Json::array();
    for (const linsys::Constraint& c : constraints) out.push_back(c.str());
    return out;
}

Json distances_json(const DissimilarityVector& d) {
    Json out = Json::array();
    for (const PairIndex& p : all_pairs(d.n))
        out.push_back(Json{{"i", p.i}, {"j", p.j}, {"d", to_string(d.at(p))}});
    return out;
}

Json verify_json(const VerifyReport& report) {
    return Json{{"ok", report.ok}, {"pairs", pair_checks_json(report.pairs)},
                {"notes", report.notes}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json result_header(const IntervalFamily& family, bool feasible) {
    return Json{{"feasible", feasible},
                {"n", family.n()},
                {"variant", variant_name(family.variant())}};
}

} // namespace

IntervalFamily parse_instance(const std::string& json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance: top level must be an object");
    int n = parse_int_field(doc, "n", "instance");
    if (n < 2) throw ParseError("instance: n must be at least 2");
    if (!doc.contains("variant") || !doc["variant"].is_string())
        throw ParseError("instance: missing string field \"variant\"");
    Variant variant = variant_from_name(doc["variant"].get<std::string>());
    if (!doc.contains("intervals") || !doc["intervals"].is_array())
        throw ParseError("instance: missing array field \"intervals\"");

    PairTable<Interval> bounds(n);
    PairTable<char> filled(n, 0);
    for (const Json& entry : doc["intervals"]) {
        int i = parse_int_field(entry, "i", "intervals");
        int j = parse_int_field(entry, "j", "intervals");
        if (i < 1 || j < 1 || i > n || j > n || i == j)
            throw ParseError("intervals: bad pair {" + std::to_string(i) + "," +
                             std::to_string(j) + "}");
        PairIndex p(i, j);
        if (filled.at(p))
            throw ParseError("intervals: duplicate pair " + p.str());
        filled.at(p) = 1;
        if (!entry.contains("lo") || !entry.contains("hi"))
            throw ParseError("intervals: pair " + p.str() + " missing lo/hi");
        bounds.at(p) = Interval{parse_rational_field(entry["lo"], "intervals.lo"),
                                parse_rational_field(entry["hi"], "intervals.hi")};
    }
    for (const PairIndex& p : all_pairs(n))
        if (!filled.at(p)) throw ParseError("intervals: pair " + p.str() + " missing");
    try {
        return IntervalFamily(n, std::move(bounds), variant);
    } catch (const InvariantError& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
}

std::string instance_to_json(const IntervalFamily& family) {
    Json intervals = Json::array();
    for (const PairIndex& p : all_pairs(family.n()))
        intervals.push_back(Json{{"i", p.i},
                                 {"j", p.j},
                                 {"lo", to_string(family.lo(p))},
                                 {"hi", to_string(family.hi(p))}});
    Json doc{{"n", family.n()},
             {"variant", variant_name(family.variant())},
             {"intervals", std::move(intervals)}};
    return dump(doc);
}

Witness parse_witness(const std::string& json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("witness: invalid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("witness")) doc = doc["witness"];
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw ParseError("witness: missing string field \"type\"");
    std::string type = doc["type"].get<std::string>();
    int vertex_count = parse_int_field(doc, "vertexCount", "witness");
    if (!doc.contains("edges")) throw ParseError("witness: missing \"edges\"");
    std::vector<Edge> edges = parse_edges(doc["edges"], "witness");
    try {
        if (type == "tree") {
            int leaf_count = parse_int_field(doc, "leafCount", "witness");
            WeightedTree tree(vertex_count, leaf_count, std::move(edges));
            if (tree.vertex_count() != vertex_count)
                throw InvariantError("tree witness document has a degree-2 internal vertex");
            return tree;
        }
        if (type == "graph") {
            int labeled = parse_int_field(doc, "labeledCount", "witness");
            return WeightedGraph(vertex_count, labeled, std::move(edges));
        }
    } catch (const InvariantError& e) {
        throw ParseError(std::string("witness: ") + e.what());
    }
    throw ParseError("witness: unknown type \"" + type + "\"");
}

namespace {

Json tree_witness_json(const WeightedTree& tree) {
    return Json{{"type", "tree"},
                {"vertexCount", tree.vertex_count()},
                {"leafCount", tree.leaf_count()},
                {"edges", edges_json(tree.edges())}};
}

Json graph_witness_json(const WeightedGraph& graph) {
    return Json{{"type", "graph"},
                {"vertexCount", graph.vertex_count()},
                {"labeledCount", graph.labeled_count()},
                {"edges", edges_json(graph.edges())}};
}

} // namespace

std::string decide_result_json(const IntervalFamily& family, const GraphDecision& decision,
                               bool emit_certificate) {
    if (decision.feasible()) {
        Json doc = result_header(family, true);
        doc["witness"] = graph_witness_json(*decision.witness);
        DissimilarityVector d = graph_two_weights(*decision.witness);
        doc["distances"] = distances_json(d);
        doc["verification"] = verify_json(verify_graph(*decision.witness, family));
        return dump(doc);
    }
    Json doc = result_header(family, false);
    const GraphViolation& v = *decision.violation;
    doc["violation"] = Json{{"i", v.pair.i},
                            {"j", v.pair.j},
                            {"chain", v.chain},
                            {"slack", to_string(v.slack)}};
    if (emit_certificate) {
        GraphCertificate cert = graph_infeasibility_certificate(family, v);
        Json c = certificate_json(cert.certificate);
        c["constraints"] = constraints_json(cert.constraints);
        doc["certificate"] = std::move(c);
    }
    return dump(doc);
}

std::string decide_result_json(const IntervalFamily& family, const TreeDecision& decision,
                               bool emit_certificate) {
    if (decision.feasible()) {
        Json doc = result_header(family, true);
        const TreeWitness& w = *decision.witness;
        doc["witness"] = tree_witness_json(w.tree);
        doc["distances"] = distances_json(w.distances);
        Json splits = Json::array();
        for (const QuartetSplit& s : w.splits.members()) splits.push_back(s.str());
        doc["splits"] = std::move(splits);
        doc["verification"] = verify_json(verify_tree(w.tree, family));
        return dump(doc);
    }
    Json doc = result_header(family, false);
    Json candidates = Json::array();
    for (const CandidateRejection& r : decision.rejections) {
        Json splits = Json::array();
        for (const QuartetSplit& s : r.splits.members()) splits.push_back(s.str());
        Json entry{{"splits", std::move(splits)},
                   {"certificate", certificate_json(r.certificate)}};
        if (emit_certificate) entry["constraints"] = constraints_json(r.constraints);
        candidates.push_back(std::move(entry));
    }
    doc["candidates"] = std::move(candidates);
    return dump(doc);
}

std::string verify_report_json(const VerifyReport& report) { return dump(verify_json(report)); }

VerifyReport verify_witness(const Witness& witness, const IntervalFamily& family) {
    if (std::holds_alternative<WeightedTree>(witness)) {
        if (family.variant() == Variant::GraphClosed) {
            VerifyReport r;
            r.ok = false;
            r.notes.push_back("tree witness offered for a graph instance");
            return r;
        }
        return verify_tree(std::get<WeightedTree>(witness), family);
    }
    if (family.variant() != Variant::GraphClosed) {
        VerifyReport r;
        r.ok = false;
        r.notes.push_back("graph witness offered for a tree instance");
        return r;
    }
    return verify_graph(std::get<WeightedGraph>(witness), family);
}

} // namespace distrange::io
