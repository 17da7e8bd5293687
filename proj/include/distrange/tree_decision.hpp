#ifndef DISTRANGE_TREE_DECISION_HPP
#define DISTRANGE_TREE_DECISION_HPP

#include <optional>
#include <vector>

#include "distrange/graph_decision.hpp" // VerifyReport / PairCheck
#include "distrange/interval_family.hpp"
#include "distrange/linsys.hpp"
#include "distrange/split_system.hpp"
#include "distrange/weighted_tree.hpp"

namespace distrange {

/// Constraint system of one candidate split system against a family:
/// interval bounds on every pairwise distance, expressed over the free
/// unknowns of the split-equality parametrization; the positive variant
/// adds strict triangle rows, one strict quartet row per unique split, and
/// positivity rows.
struct CandidateSystem {
    SplitSystem splits;
    linsys::Parametrization parametrization;
    std::vector<linsys::Constraint> constraints;
};

CandidateSystem build_system(const SplitSystem& splits, const IntervalFamily& family);

struct TreeWitness {
    WeightedTree tree;
    DissimilarityVector distances;
    SplitSystem splits;
};

struct CandidateRejection {
    SplitSystem splits;
    std::vector<linsys::Constraint> constraints;
    linsys::Certificate certificate;
};

struct TreeDecision {
    std::optional<TreeWitness> witness;        // set iff feasible
    std::vector<CandidateRejection> rejections;// one per candidate iff infeasible

    bool feasible() const { return witness.has_value(); }
};

/// Decide realizability by a weighted tree with leaves exactly 1..n.
/// Candidates are tried in enumeration order; the first feasible system
/// yields the witness. When every candidate is infeasible the decision
/// carries one certificate per candidate.
TreeDecision decide_tree(const IntervalFamily& family,
                         CandidateStrategy strategy = CandidateStrategy::Topology);

/// Build the weighted tree realizing an exactly treelike distance family by
/// iterative leaf insertion: leaf k attaches at the point of the partial
/// tree determined by the Gromov products, reusing a vertex or splitting an
/// edge; created zero-length internal edges are contracted. Throws
/// PreconditionError (citing a quartet) unless in every quartet at least two
/// of the three pair-sums agree; with `positive` set, also requires triangle
/// inequalities and the twice-attained maximum, and rejects trees with
/// nonpositive edges.
WeightedTree tree_from_distances(const DissimilarityVector& distances, bool positive);

/// Star fast path: feasibility of lo_{i,j} < y_i + y_j < hi_{i,j} over the
/// pendant weights y.
TreeDecision decide_star(const IntervalFamily& family);

/// Exact per-pair check of the tree's 2-weights against the family, with
/// the variant's openness; positive variants also require every edge > 0.
VerifyReport verify_tree(const WeightedTree& tree, const IntervalFamily& family);

} // namespace distrange

#endif
