#include "distrange/interval_family.hpp"

namespace distrange {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::GraphClosed: return "graph-closed";
        case Variant::TreeGeneralOpen: return "tree-general-open";
        case Variant::TreeGeneralClosed: return "tree-general-closed";
        case Variant::TreePositiveOpen: return "tree-positive-open";
        case Variant::StarOpen: return "star-open";
    }
    throw InvariantError("unknown variant");
}

Variant variant_from_name(const std::string& name) {
    if (name == "graph-closed") return Variant::GraphClosed;
    if (name == "tree-general-open") return Variant::TreeGeneralOpen;
    if (name == "tree-general-closed") return Variant::TreeGeneralClosed;
    if (name == "tree-positive-open") return Variant::TreePositiveOpen;
    if (name == "star-open") return Variant::StarOpen;
    throw ParseError("unknown variant \"" + name + "\"");
}

IntervalFamily::IntervalFamily(int n, PairTable<Interval> bounds, Variant variant)
    : n_(n), bounds_(std::move(bounds)), variant_(variant) {
    if (n < 2) throw InvariantError("interval family: need n >= 2");
    if (bounds_.n() != n) throw InvariantError("interval family: bounds table size mismatch");
    const bool open = variant_is_open(variant);
    const bool positive = variant_requires_positive(variant);
    for (const PairIndex& p : all_pairs(n)) {
        const Interval& iv = bounds_.at(p);
        if (iv.lo > iv.hi)
            throw InvariantError("interval family: lo > hi at pair " + p.str());
        if (open && iv.lo == iv.hi)
            throw InvariantError("interval family: open variant needs lo < hi at pair " + p.str());
        if (positive && (iv.lo <= 0 || iv.hi <= 0))
            throw InvariantError("interval family: variant " + variant_name(variant) +
                                 " needs positive bounds at pair " + p.str());
    }
}

} // namespace distrange
