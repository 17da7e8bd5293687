#ifndef DISTRANGE_ORACLE_HPP
#define DISTRANGE_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <variant>

#include "distrange/graph_decision.hpp"
#include "distrange/interval_family.hpp"
#include "distrange/weighted_graph.hpp"
#include "distrange/weighted_tree.hpp"

namespace distrange::oracle {

/// Deterministic 64-bit generator (splitmix64); identical streams on every
/// platform, so failures reproduce from the seed alone.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Rational with denominator <= max_den, uniform over the grid within
    /// [lo, hi].
    Rational rational_in(const Rational& lo, const Rational& hi, int max_den = 16);

  private:
    std::uint64_t state_;
};

struct InstanceSpec {
    int n = 4;
    Variant variant = Variant::TreeGeneralOpen;
    std::uint64_t seed = 0;
    Rational weight_lo;
    Rational weight_hi;
    Rational half_width;
};

struct GeneratedInstance {
    IntervalFamily family;
    std::variant<WeightedTree, WeightedGraph> ground_truth;
};

/// Ground-truth object honoring the variant's weight constraints, with
/// intervals D +- half_width around its 2-weights (positive variants clamp
/// the lower bound above zero). Deterministic from the spec.
GeneratedInstance random_instance(const InstanceSpec& spec);

struct BruteForceTreeDecision {
    std::optional<WeightedTree> witness;
    bool feasible() const { return witness.has_value(); }
};

/// Independent tree decider: enumerate every leaf-labeled topology, put one
/// unknown on each edge, constrain each path sum into its interval (edge
/// positivity for the positive variant) and decide with exact elimination.
/// Never touches split systems or the leaf-insertion construction. n <= 6.
BruteForceTreeDecision brute_force_tree_decide(const IntervalFamily& family);

struct BruteForceGraphDecision {
    std::optional<WeightedGraph> witness;
    std::optional<GraphViolation> violation;
    bool feasible() const { return witness.has_value(); }
};

/// Independent graph decider: check m_{i,j} against the bound sum of every
/// simple chain of intermediates by explicit enumeration. n <= 6.
BruteForceGraphDecision brute_force_graph_decide(const IntervalFamily& family);

} // namespace distrange::oracle

#endif
