#ifndef DISTRANGE_GRAPH_DECISION_HPP
#define DISTRANGE_GRAPH_DECISION_HPP

#include <optional>
#include <vector>

#include "distrange/interval_family.hpp"
#include "distrange/linsys.hpp"
#include "distrange/weighted_graph.hpp"

namespace distrange {

/// Min-plus closure of an upper-bound family: the entrywise minimum over
/// chains of intermediate points of the summed bounds, with one optimal
/// chain per pair.
struct ClosureResult {
    DissimilarityVector m_tilde;
    PairTable<std::vector<int>> via; // optimal intermediate chain, maybe empty

    const std::vector<int>& chain(const PairIndex& p) const { return via.at(p); }
};

/// Computed by iterated all-pairs relaxation (exact, O(n^3)); ties pick the
/// lowest-index intermediate.
ClosureResult minplus_closure(const DissimilarityVector& upper);

struct GraphViolation {
    PairIndex pair;         // m_pair exceeds the chain sum
    std::vector<int> chain; // intermediate vertices t_1..t_k
    Rational slack;         // m_pair - (chain upper-bound sum) > 0
};

struct GraphDecision {
    std::optional<WeightedGraph> witness;     // set iff feasible
    std::optional<GraphViolation> violation;  // set iff infeasible
    ClosureResult closure;

    bool feasible() const { return witness.has_value(); }
};

/// Decide realizability by a positive-weighted graph: feasible iff
/// lo_I <= closure(hi)_I everywhere; the witness is the complete graph
/// weighted by the closure.
GraphDecision decide_graph(const IntervalFamily& family);

struct PairCheck {
    PairIndex pair;
    Rational distance;
    Rational lo;
    Rational hi;
    bool ok = false;
};

struct VerifyReport {
    bool ok = false;
    std::vector<PairCheck> pairs;
    std::vector<std::string> notes; // non-pair failures (weight positivity etc.)
};

/// Exact per-pair check of the graph's 2-weights against the family.
VerifyReport verify_graph(const WeightedGraph& graph, const IntervalFamily& family);

/// The violating chain as a nonnegative-combination certificate over an
/// explicit constraint system (box rows per pair, then triangle rows); the
/// certificate re-validates syntactically.
struct GraphCertificate {
    std::vector<linsys::Constraint> constraints;
    linsys::Certificate certificate;
};

GraphCertificate graph_infeasibility_certificate(const IntervalFamily& family,
                                                 const GraphViolation& violation);

} // namespace distrange

#endif
