#include "distrange/oracle.hpp"

#include <algorithm>

#include "distrange/errors.hpp"
#include "distrange/linsys.hpp"
#include "distrange/topology.hpp"

namespace distrange::oracle {

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InvariantError("rng: zero bound");
    // rejection keeps the distribution uniform
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
}

Rational Rng::rational_in(const Rational& lo, const Rational& hi, int max_den) {
    if (lo > hi) throw InvariantError("rng: empty range");
    int den = static_cast<int>(below(static_cast<std::uint64_t>(max_den))) + 1;
    // integer p with lo <= p/den <= hi
    mpz_class p_lo, p_hi;
    mpz_cdiv_q(p_lo.get_mpz_t(), mpz_class(lo.get_num() * den).get_mpz_t(),
               lo.get_den().get_mpz_t());
    mpz_fdiv_q(p_hi.get_mpz_t(), mpz_class(hi.get_num() * den).get_mpz_t(),
               hi.get_den().get_mpz_t());
    if (p_hi < p_lo) {
        // grid too coarse at this denominator; fall back to the midpoint
        Rational mid = (lo + hi) / 2;
        return mid;
    }
    mpz_class span = p_hi - p_lo + 1;
    std::uint64_t offset = below(span.get_ui());
    Rational r(p_lo + static_cast<long>(offset), den);
    r.canonicalize();
    return r;
}

namespace {

Rational nonzero_rational_in(Rng& rng, const Rational& lo, const Rational& hi, int max_den = 16) {
    for (int tries = 0; tries < 64; ++tries) {
        Rational r = rng.rational_in(lo, hi, max_den);
        if (r != 0) return r;
    }
    throw InvariantError("rng: range contains only zero");
}

IntervalFamily intervals_around(const DissimilarityVector& d, const Rational& half_width,
                                Variant variant) {
    PairTable<Interval> bounds(d.n);
    const bool positive = variant_requires_positive(variant);
    for (const PairIndex& p : all_pairs(d.n)) {
        Rational lo = d.at(p) - half_width;
        Rational hi = d.at(p) + half_width;
        if (positive && lo <= 0) lo = d.at(p) / 2; // keep the family positive
        bounds.at(p) = Interval{std::move(lo), std::move(hi)};
    }
    return IntervalFamily(d.n, std::move(bounds), variant);
}

} // namespace

GeneratedInstance random_instance(const InstanceSpec& spec) {
    if (spec.n < 2) throw InvariantError("instance spec: need n >= 2");
    if (spec.weight_lo > spec.weight_hi) throw InvariantError("instance spec: empty weight range");
    if ((spec.variant == Variant::GraphClosed || spec.variant == Variant::TreePositiveOpen) &&
        spec.weight_lo <= 0)
        throw InvariantError("instance spec: this variant needs positive weights");
    Rng rng(spec.seed);

    if (spec.variant == Variant::GraphClosed) {
        DissimilarityVector weights(spec.n);
        for (const PairIndex& p : all_pairs(spec.n))
            weights.at(p) = rng.rational_in(spec.weight_lo, spec.weight_hi);
        WeightedGraph graph = make_complete_graph(weights);
        IntervalFamily family =
            intervals_around(graph_two_weights(graph), spec.half_width, spec.variant);
        return GeneratedInstance{std::move(family), std::move(graph)};
    }

    std::vector<Topology> topologies = enumerate_topologies(spec.n);
    const Topology* shape = nullptr;
    if (spec.variant == Variant::StarOpen) {
        // the star is the unique topology with no internal edges
        for (const Topology& t : topologies)
            if (t.internal_edge_count() == 0) shape = &t;
    } else {
        shape = &topologies[rng.below(topologies.size())];
    }
    const bool positive = spec.variant == Variant::TreePositiveOpen;
    std::vector<Edge> edges;
    for (const auto& [u, v] : shape->edges) {
        Rational w = positive ? rng.rational_in(spec.weight_lo, spec.weight_hi)
                              : nonzero_rational_in(rng, spec.weight_lo, spec.weight_hi);
        edges.emplace_back(u, v, w);
    }
    WeightedTree tree(shape->vertex_count, spec.n, std::move(edges));
    IntervalFamily family =
        intervals_around(tree_two_weights(tree), spec.half_width, spec.variant);
    return GeneratedInstance{std::move(family), std::move(tree)};
}

BruteForceTreeDecision brute_force_tree_decide(const IntervalFamily& family) {
    using linsys::Constraint;
    using linsys::LinExpr;
    using linsys::Sense;
    const int n = family.n();
    if (n > 6) throw PreconditionError("brute-force tree decide: n > 6");
    const bool open = variant_is_open(family.variant());
    const bool positive = family.variant() == Variant::TreePositiveOpen;
    const Sense box = open ? Sense::Gt : Sense::Ge;

    for (const Topology& shape : enumerate_topologies(n)) {
        // one unknown per edge; D_I = sum of the edges on the i-j path
        WeightedTree unit = unit_tree(shape);
        std::vector<Constraint> sys;
        auto edge_var = [&](int u, int v) {
            for (std::size_t e = 0; e < shape.edges.size(); ++e) {
                auto [a, b] = shape.edges[e];
                if ((a == u && b == v) || (a == v && b == u)) return static_cast<int>(e);
            }
            throw Error("brute-force tree decide: edge lookup failed");
        };
        for (const PairIndex& p : all_pairs(n)) {
            std::vector<int> path = unit.path_vertices(p.i, p.j);
            LinExpr sum;
            for (std::size_t k = 0; k + 1 < path.size(); ++k)
                sum.add_term(edge_var(path[k], path[k + 1]), Rational(1));
            LinExpr lower = sum;
            lower.add_constant(-family.lo(p));
            sys.push_back(Constraint{std::move(lower), box});
            LinExpr upper = sum * Rational(-1);
            upper.add_constant(family.hi(p));
            sys.push_back(Constraint{std::move(upper), box});
        }
        if (positive)
            for (std::size_t e = 0; e < shape.edges.size(); ++e)
                sys.push_back(Constraint{LinExpr::variable(static_cast<int>(e)), Sense::Gt});

        linsys::FeasibilityResult r = linsys::fm_feasible(sys);
        if (!r.feasible()) continue;
        std::vector<Edge> edges;
        for (std::size_t e = 0; e < shape.edges.size(); ++e) {
            auto it = r.sample->find(static_cast<int>(e));
            Rational w = it == r.sample->end() ? Rational(0) : it->second;
            edges.emplace_back(shape.edges[e].first, shape.edges[e].second, std::move(w));
        }
        return BruteForceTreeDecision{WeightedTree(shape.vertex_count, n, std::move(edges))};
    }
    return BruteForceTreeDecision{};
}

BruteForceGraphDecision brute_force_graph_decide(const IntervalFamily& family) {
    if (family.variant() != Variant::GraphClosed)
        throw VariantError("brute-force graph decide: wrong variant");
    const int n = family.n();
    if (n > 6) throw PreconditionError("brute-force graph decide: n > 6");

    // chain minima by explicit enumeration of distinct intermediates
    DissimilarityVector chain_min(n);
    for (const PairIndex& p : all_pairs(n)) chain_min.at(p) = family.hi(p);
    PairTable<std::vector<int>> best_chain(n);

    std::vector<int> others;
    for (const PairIndex& p : all_pairs(n)) {
        others.clear();
        for (int t = 1; t <= n; ++t)
            if (t != p.i && t != p.j) others.push_back(t);
        std::vector<int> chain;
        auto extend = [&](auto&& self) -> void {
            if (!chain.empty()) {
                Rational sum = family.hi(PairIndex(p.i, chain.front()));
                for (std::size_t k = 0; k + 1 < chain.size(); ++k)
                    sum += family.hi(PairIndex(chain[k], chain[k + 1]));
                sum += family.hi(PairIndex(chain.back(), p.j));
                if (sum < chain_min.at(p)) {
                    chain_min.at(p) = sum;
                    best_chain.at(p) = chain;
                }
            }
            for (int t : others) {
                if (std::find(chain.begin(), chain.end(), t) != chain.end()) continue;
                chain.push_back(t);
                self(self);
                chain.pop_back();
            }
        };
        extend(extend);
    }

    for (const PairIndex& p : all_pairs(n))
        if (family.lo(p) > chain_min.at(p))
            return BruteForceGraphDecision{
                std::nullopt,
                GraphViolation{p, best_chain.at(p), family.lo(p) - chain_min.at(p)}};
    return BruteForceGraphDecision{make_complete_graph(chain_min), std::nullopt};
}

} // namespace distrange::oracle
