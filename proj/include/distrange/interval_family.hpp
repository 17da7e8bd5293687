#ifndef DISTRANGE_INTERVAL_FAMILY_HPP
#define DISTRANGE_INTERVAL_FAMILY_HPP

#include <string>

#include "distrange/pair_index.hpp"
#include "distrange/rational.hpp"

namespace distrange {

/// Which realization problem an interval family poses.
enum class Variant {
    GraphClosed,      // positive-weighted graph, D_I in [lo,hi]
    TreeGeneralOpen,  // weighted tree, D_I in (lo,hi)
    TreeGeneralClosed,// weighted tree, D_I in [lo,hi]
    TreePositiveOpen, // positive-weighted tree, D_I in (lo,hi)
    StarOpen,         // weighted star, D_I in (lo,hi)
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// True if the variant constrains distances to open intervals.
inline bool variant_is_open(Variant v) { return v != Variant::GraphClosed && v != Variant::TreeGeneralClosed; }

/// True if the variant requires a positive family (all bounds > 0).
inline bool variant_requires_positive(Variant v) {
    return v == Variant::GraphClosed || v == Variant::TreePositiveOpen;
}

struct Interval {
    Rational lo;
    Rational hi;
    bool operator==(const Interval&) const = default;
};

/// Lower/upper bounds on every pairwise distance of n labeled points,
/// together with the variant tag. Validated on construction:
///   lo <= hi always, lo < hi for open variants, lo,hi > 0 where the
///   variant requires a positive family.
class IntervalFamily {
  public:
    IntervalFamily(int n, PairTable<Interval> bounds, Variant variant);

    int n() const { return n_; }
    Variant variant() const { return variant_; }
    const Interval& at(const PairIndex& p) const { return bounds_.at(p); }
    const Interval& at(int i, int j) const { return bounds_.at(i, j); }
    const Rational& lo(const PairIndex& p) const { return bounds_.at(p).lo; }
    const Rational& hi(const PairIndex& p) const { return bounds_.at(p).hi; }

    /// Same bounds under a different variant tag (revalidates).
    IntervalFamily with_variant(Variant v) const { return IntervalFamily(n_, bounds_, v); }

  private:
    int n_;
    PairTable<Interval> bounds_;
    Variant variant_;
};

/// Full family {D_I} of pairwise distances of n labeled points.
struct DissimilarityVector {
    int n = 0;
    PairTable<Rational> values;

    DissimilarityVector() = default;
    explicit DissimilarityVector(int n) : n(n), values(n) {}

    const Rational& at(const PairIndex& p) const { return values.at(p); }
    const Rational& at(int i, int j) const { return values.at(i, j); }
    Rational& at(const PairIndex& p) { return values.at(p); }
    Rational& at(int i, int j) { return values.at(i, j); }

    bool operator==(const DissimilarityVector&) const = default;
};

} // namespace distrange

#endif
