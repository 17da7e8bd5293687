#ifndef DISTRANGE_SPLIT_SYSTEM_HPP
#define DISTRANGE_SPLIT_SYSTEM_HPP

#include <array>
#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "distrange/weighted_tree.hpp"

namespace distrange {

/// Quartet split (a,b | c,d): a partition of a 4-subset into two pairs.
/// Canonical storage: each side sorted, and the side holding the smallest
/// label first, so equal splits compare equal however they are written.
struct QuartetSplit {
    int a = 0, b = 0; // first side, a < b, a = min of the quartet
    int c = 0, d = 0; // second side, c < d

    QuartetSplit() = default;
    /// Split (p,q | r,s); the four labels must be distinct.
    QuartetSplit(int p, int q, int r, int s);

    std::array<int, 4> quartet() const; // sorted 4 labels
    auto operator<=>(const QuartetSplit&) const = default;

    std::string str() const;
};

/// A set of quartet splits over [n].
class SplitSystem {
  public:
    SplitSystem() = default;
    explicit SplitSystem(int n) : n_(n) {}
    SplitSystem(int n, std::vector<QuartetSplit> members);

    int n() const { return n_; }
    const std::set<QuartetSplit>& members() const { return members_; }
    bool contains(const QuartetSplit& s) const { return members_.count(s) > 0; }
    void insert(const QuartetSplit& s);
    std::size_t size() const { return members_.size(); }

    auto operator<=>(const SplitSystem&) const = default;

    /// Canonical one-line encoding, e.g. "1,2|3,4 1,3|2,5".
    std::string str() const;

  private:
    int n_ = 0;
    std::set<QuartetSplit> members_;
};

struct FatViolation {
    std::array<int, 4> quartet;
    int split_count = 0; // number of this quartet's splits present (not 1 or 3)
};

struct TransitivityViolation {
    QuartetSplit premise1; // (a,b|c,d)
    QuartetSplit premise2; // (a,b|c,e)
    QuartetSplit missing;  // (a,b|d,e)
};

struct SaturationViolation {
    QuartetSplit split; // the member that fails to extend
    int point = 0;      // the fifth point x
    QuartetSplit option1;
    QuartetSplit option2;
};

/// Every 4-subset must contribute exactly one or exactly three splits.
/// Vacuously true for n < 4. Returns the first offending quartet otherwise.
std::optional<FatViolation> is_fat(const SplitSystem& system);

/// (a,b|c,d) and (a,b|c,e) in S must force (a,b|d,e) in S.
std::optional<TransitivityViolation> is_transitive(const SplitSystem& system);

/// Every member (a1,a2|b1,b2) must extend to each fifth point x through
/// (a1,x|b1,b2) or (a1,a2|b1,x); required for every reading of the
/// unordered pairing (both side orders, both choices of a1 and of b1).
std::optional<SaturationViolation> is_saturated(const SplitSystem& system);

/// Empty when the system passes all three predicates; otherwise a message
/// naming the first failed predicate and its counterexample.
std::string predicate_failure(const SplitSystem& system);

/// Splits induced by a tree: (a,b|c,d) iff the a-b and c-d paths are
/// vertex-disjoint; a quartet whose restriction is a star contributes all
/// three splits. Depends on the topology only. Empty for n < 4.
SplitSystem tree_induced_splits(const WeightedTree& tree);

enum class CandidateStrategy { Topology, Raw };

/// Candidate fat-transitive-saturated systems on [n], n >= 4.
///  - Topology: the system induced by every leaf-labeled topology with
///    internal degrees >= 3, each exactly once, ordered by ascending
///    internal-edge count then lexicographically.
///  - Raw: every fat-transitive-saturated system, by backtracking over the
///    four choices per quartet (practical for n <= 6).
/// `visit` may return false to stop early.
void for_each_candidate_system(int n, CandidateStrategy strategy,
                               const std::function<bool(const SplitSystem&)>& visit);

std::vector<SplitSystem> enumerate_candidate_systems(int n, CandidateStrategy strategy);

} // namespace distrange

#endif
