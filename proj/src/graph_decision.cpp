#include "distrange/graph_decision.hpp"

#include "distrange/errors.hpp"

namespace distrange {

ClosureResult minplus_closure(const DissimilarityVector& upper) {
    const int n = upper.n;
    for (const PairIndex& p : all_pairs(n))
        if (upper.at(p) <= 0)
            throw PreconditionError("min-plus closure: entry at " + p.str() + " not positive");

    std::vector<std::vector<Rational>> dist(n + 1, std::vector<Rational>(n + 1, Rational(0)));
    std::vector<std::vector<int>> mid(n + 1, std::vector<int>(n + 1, 0));
    for (const PairIndex& p : all_pairs(n)) {
        dist[p.i][p.j] = upper.at(p);
        dist[p.j][p.i] = upper.at(p);
    }
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i) {
            if (i == k) continue;
            for (int j = 1; j <= n; ++j) {
                if (j == k || j == i) continue;
                Rational through = dist[i][k] + dist[k][j];
                if (through < dist[i][j]) {
                    dist[i][j] = through;
                    mid[i][j] = k;
                }
            }
        }

    ClosureResult result;
    result.m_tilde = DissimilarityVector(n);
    result.via = PairTable<std::vector<int>>(n);
    auto chain = [&](auto&& self, int i, int j, std::vector<int>& out) -> void {
        int k = mid[i][j];
        if (k == 0) return;
        self(self, i, k, out);
        out.push_back(k);
        self(self, k, j, out);
    };
    for (const PairIndex& p : all_pairs(n)) {
        result.m_tilde.at(p) = dist[p.i][p.j];
        std::vector<int> c;
        chain(chain, p.i, p.j, c);
        result.via.at(p) = std::move(c);
    }
    return result;
}

GraphDecision decide_graph(const IntervalFamily& family) {
    if (family.variant() != Variant::GraphClosed)
        throw VariantError("decide_graph: wrong variant " + variant_name(family.variant()));
    const int n = family.n();
    DissimilarityVector upper(n);
    for (const PairIndex& p : all_pairs(n)) upper.at(p) = family.hi(p);

    GraphDecision decision;
    decision.closure = minplus_closure(upper);
    for (const PairIndex& p : all_pairs(n)) {
        const Rational& reachable = decision.closure.m_tilde.at(p);
        if (family.lo(p) > reachable) {
            decision.violation =
                GraphViolation{p, decision.closure.chain(p), family.lo(p) - reachable};
            return decision;
        }
    }
    decision.witness = make_complete_graph(decision.closure.m_tilde);
    return decision;
}

VerifyReport verify_graph(const WeightedGraph& graph, const IntervalFamily& family) {
    VerifyReport report;
    report.ok = true;
    if (!graph.positive_weights()) {
        report.ok = false;
        report.notes.push_back("graph has a nonpositive edge weight");
        return report;
    }
    DissimilarityVector d = graph_two_weights(graph);
    if (d.n != family.n()) {
        report.ok = false;
        report.notes.push_back("labeled count differs from the family's n");
        return report;
    }
    for (const PairIndex& p : all_pairs(family.n())) {
        PairCheck check{p, d.at(p), family.lo(p), family.hi(p), false};
        check.ok = check.distance >= check.lo && check.distance <= check.hi;
        report.ok = report.ok && check.ok;
        report.pairs.push_back(std::move(check));
    }
    return report;
}

GraphCertificate graph_infeasibility_certificate(const IntervalFamily& family,
                                                 const GraphViolation& violation) {
    const int n = family.n();
    using linsys::Constraint;
    using linsys::LinExpr;
    using linsys::Sense;
    GraphCertificate out;

    auto var = [&](int i, int j) { return pair_rank(n, PairIndex(i, j)); };
    std::map<std::string, int> row_of;
    // box rows: x_I - lo_I >= 0 and hi_I - x_I >= 0, pairs in lexicographic
    // order; then triangle rows x_{i,o} + x_{o,j} - x_{i,j} >= 0
    for (const PairIndex& p : all_pairs(n)) {
        LinExpr lo_row = LinExpr::variable(var(p.i, p.j));
        lo_row.add_constant(-family.lo(p));
        row_of["lo " + p.str()] = static_cast<int>(out.constraints.size());
        out.constraints.push_back(Constraint{std::move(lo_row), Sense::Ge});
        LinExpr hi_row(family.hi(p));
        hi_row.add_term(var(p.i, p.j), Rational(-1));
        row_of["hi " + p.str()] = static_cast<int>(out.constraints.size());
        out.constraints.push_back(Constraint{std::move(hi_row), Sense::Ge});
    }
    for (const PairIndex& p : all_pairs(n))
        for (int o = 1; o <= n; ++o) {
            if (o == p.i || o == p.j) continue;
            LinExpr tri = LinExpr::variable(var(p.i, o));
            tri.add_term(var(o, p.j), Rational(1));
            tri.add_term(var(p.i, p.j), Rational(-1));
            row_of["tri " + p.str() + " via " + std::to_string(o)] =
                static_cast<int>(out.constraints.size());
            out.constraints.push_back(Constraint{std::move(tri), Sense::Ge});
        }

    // unroll m_ij <= x_ij <= x_{i,t1} + x_{t1,j} <= ... <= sum of chain bounds
    std::map<int, Rational> mult;
    auto cite = [&](const std::string& key) { mult[row_of.at(key)] += 1; };
    const PairIndex& pair = violation.pair;
    cite("lo " + pair.str());
    int from = pair.i;
    for (std::size_t k = 0; k < violation.chain.size(); ++k) {
        int t = violation.chain[k];
        cite("tri " + PairIndex(from, pair.j).str() + " via " + std::to_string(t));
        cite("hi " + PairIndex(from, t).str());
        from = t;
    }
    cite("hi " + PairIndex(from, pair.j).str());

    out.certificate.multipliers.assign(mult.begin(), mult.end());
    out.certificate.residual = -violation.slack;
    return out;
}

} // namespace distrange
