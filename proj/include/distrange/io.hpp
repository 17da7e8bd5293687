#ifndef DISTRANGE_IO_HPP
#define DISTRANGE_IO_HPP

#include <string>
#include <variant>

#include "distrange/graph_decision.hpp"
#include "distrange/interval_family.hpp"
#include "distrange/tree_decision.hpp"

namespace distrange::io {

/// Parse an instance document:
///   { "n": 3, "variant": "graph-closed",
///     "intervals": [ {"i":1,"j":2,"lo":"4","hi":"5"}, ... ] }
/// Rationals are "p/q" or integer strings (never floats). Every pair of [n]
/// must appear exactly once; validation mirrors the IntervalFamily
/// invariants. Throws ParseError with field diagnostics.
IntervalFamily parse_instance(const std::string& json_text);

std::string instance_to_json(const IntervalFamily& family);

using Witness = std::variant<WeightedTree, WeightedGraph>;

/// Parse a witness document (or a decide result document containing one).
/// A tree document must be canonical: a degree-2 internal vertex is a
/// validation error, not a suppression opportunity.
Witness parse_witness(const std::string& json_text);

std::string decide_result_json(const IntervalFamily& family, const GraphDecision& decision,
                               bool emit_certificate);
std::string decide_result_json(const IntervalFamily& family, const TreeDecision& decision,
                               bool emit_certificate);

std::string verify_report_json(const VerifyReport& report);

/// Verification of an untyped witness against a family (dispatches on the
/// witness alternative and the family's variant).
VerifyReport verify_witness(const Witness& witness, const IntervalFamily& family);

} // namespace distrange::io

#endif
