#include <doctest.h>

#include <algorithm>

#include "distrange/errors.hpp"
#include "distrange/linsys.hpp"
#include "distrange/oracle.hpp"
#include "distrange/pair_index.hpp"
#include "distrange/topology.hpp"

using namespace distrange;
using linsys::Assignment;
using linsys::Certificate;
using linsys::Constraint;
using linsys::LinExpr;
using linsys::Parametrization;
using linsys::Sense;

namespace {

LinExpr expr(std::initializer_list<std::pair<int, long>> terms, long constant = 0) {
    LinExpr e{Rational(constant)};
    for (auto [v, c] : terms) e.add_term(v, Rational(c));
    return e;
}

bool satisfies(const Constraint& c, const Assignment& a) {
    Rational v = c.expr.evaluate(a);
    return c.sense == Sense::Eq ? v == 0 : (c.sense == Sense::Ge ? v >= 0 : v > 0);
}

bool all_satisfied(const std::vector<Constraint>& sys, const Assignment& a) {
    return std::all_of(sys.begin(), sys.end(), [&](const Constraint& c) { return satisfies(c, a); });
}

// brute-force grid search over assignments p/4 with p in [-24, 24]
bool grid_feasible(const std::vector<Constraint>& sys, const std::vector<int>& vars) {
    Assignment a;
    auto scan = [&](auto&& self, std::size_t k) -> bool {
        if (k == vars.size()) return all_satisfied(sys, a);
        for (int p = -24; p <= 24; ++p) {
            a[vars[k]] = Rational(p, 4);
            if (self(self, k + 1)) return true;
        }
        return false;
    };
    return scan(scan, 0);
}

std::vector<int> vars_of(const std::vector<Constraint>& sys) {
    std::set<int> vars;
    for (const Constraint& c : sys)
        for (const auto& [v, coeff] : c.expr.coefficients()) vars.insert(v);
    return {vars.begin(), vars.end()};
}

// random small system over <= max_vars unknowns
std::vector<Constraint> random_system(oracle::Rng& rng, int max_vars, int max_rows,
                                      bool allow_eq = false) {
    std::vector<Constraint> sys;
    int rows = 1 + static_cast<int>(rng.below(max_rows));
    for (int r = 0; r < rows; ++r) {
        LinExpr e{rng.rational_in(Rational(-3), Rational(3), 4)};
        int terms = 1 + static_cast<int>(rng.below(max_vars));
        for (int t = 0; t < terms; ++t) {
            int v = static_cast<int>(rng.below(max_vars));
            Rational c = rng.rational_in(Rational(-2), Rational(2), 4);
            e.add_term(v, c);
        }
        int kind = static_cast<int>(rng.below(allow_eq ? 3u : 2u));
        Sense s = kind == 0 ? Sense::Gt : (kind == 1 ? Sense::Ge : Sense::Eq);
        sys.push_back(Constraint{std::move(e), s});
    }
    return sys;
}

// decide whether the relaxed system (strict rows L_i > -z_i*eps) is solvable
// for every eps > 0: eliminate everything except eps and inspect the
// one-variable conditions a*eps + b {>,>=} 0 over (0, inf).
bool feasible_for_all_positive_eps(std::vector<Constraint> sys, int eps_var) {
    while (true) {
        std::vector<int> vars = vars_of(sys);
        vars.erase(std::remove(vars.begin(), vars.end(), eps_var), vars.end());
        if (vars.empty()) break;
        sys = fm_eliminate(sys, vars.front());
    }
    for (const Constraint& c : sys) {
        Rational a = c.expr.coefficient(eps_var);
        Rational b = c.expr.constant();
        bool holds_for_all;
        if (a < 0)
            holds_for_all = false; // fails for large eps
        else if (b > 0)
            holds_for_all = true;
        else if (b == 0)
            holds_for_all = a > 0 || c.sense == Sense::Ge;
        else
            holds_for_all = false; // fails near eps -> 0
        if (!holds_for_all) return false;
    }
    return true;
}

} // namespace

TEST_CASE("split equalities: single split, empty, all-three") {
    SplitSystem single(4);
    single.insert(QuartetSplit(1, 2, 3, 4));
    std::vector<Constraint> eqs = linsys::split_equalities(single);
    REQUIRE(eqs.size() == 1);
    // x13 - x23 - x14 + x24 = 0 over ranks x12=0 x13=1 x14=2 x23=3 x24=4 x34=5
    CHECK(eqs[0].sense == Sense::Eq);
    CHECK(eqs[0].expr == expr({{1, 1}, {3, -1}, {2, -1}, {4, 1}}));

    CHECK(linsys::split_equalities(SplitSystem(4)).empty());

    SplitSystem all3(4);
    all3.insert(QuartetSplit(1, 2, 3, 4));
    all3.insert(QuartetSplit(1, 3, 2, 4));
    all3.insert(QuartetSplit(1, 4, 2, 3));
    std::vector<Constraint> three = linsys::split_equalities(all3);
    REQUIRE(three.size() == 3);
    // together they force x12+x34 = x13+x24 = x14+x23
    Parametrization p = linsys::solve_equalities(three);
    Assignment a = p.lift([&] {
        Assignment f;
        Rational val(1);
        for (int v : p.free_vars) f[v] = val += 1;
        return f;
    }());
    Rational s1 = a[0] + a[5], s2 = a[1] + a[4], s3 = a[2] + a[3];
    CHECK(s1 == s2);
    CHECK(s2 == s3);
}

TEST_CASE("solve_equalities pivots the smallest unknown") {
    std::vector<Constraint> eqs{Constraint{expr({{1, 1}, {3, -1}, {2, -1}, {4, 1}}), Sense::Eq}};
    Parametrization p = linsys::solve_equalities(eqs);
    CHECK(p.free_vars.size() == 3); // of the unknowns that occur
    CHECK(pair_count(4) - static_cast<int>(p.pivots.size()) == 5); // over the distance space
    REQUIRE(p.pivots.count(1) == 1);
    CHECK(p.pivots.at(1) == expr({{2, 1}, {3, 1}, {4, -1}}));

    CHECK(linsys::solve_equalities({}).dimension() == 0);

    SplitSystem all3(4);
    all3.insert(QuartetSplit(1, 2, 3, 4));
    all3.insert(QuartetSplit(1, 3, 2, 4));
    all3.insert(QuartetSplit(1, 4, 2, 3));
    Parametrization q = linsys::solve_equalities(linsys::split_equalities(all3));
    CHECK(q.pivots.size() == 2); // rank 2, dimension 6 - 2 = 4
}

TEST_CASE("inductive parametrization: single split pins one unknown") {
    SplitSystem single(4);
    single.insert(QuartetSplit(1, 2, 3, 4));
    Parametrization p = linsys::inductive_parametrization(single);
    CHECK(p.dimension() == 5);
    CHECK(p.pivots.size() == 1);
    // the pinned unknown involves leaf 4
    int pinned = p.pivots.begin()->first;
    PairIndex pair = pair_from_rank(4, pinned);
    CHECK(pair.j == 4);
    // the parametrization satisfies the split equality
    for (const Constraint& eq : linsys::split_equalities(single))
        CHECK(p.annihilates(eq.expr));
}

TEST_CASE("inductive parametrization rejects a non-fat system") {
    CHECK_THROWS_WITH_AS(linsys::inductive_parametrization(SplitSystem(4)),
                         doctest::Contains("is_fat"), PreconditionError);
    SplitSystem missing_conclusion(5);
    missing_conclusion.insert(QuartetSplit(1, 2, 3, 4));
    missing_conclusion.insert(QuartetSplit(1, 2, 3, 5));
    CHECK_THROWS_AS(linsys::inductive_parametrization(missing_conclusion), PreconditionError);
}

TEST_CASE("inductive parametrization matches generic elimination on every topology, n <= 6") {
    for (int n = 4; n <= 6; ++n) {
        for (const Topology& shape : enumerate_topologies(n)) {
            SplitSystem s = tree_induced_splits(unit_tree(shape));
            std::vector<Constraint> eqs = linsys::split_equalities(s);
            Parametrization inductive = linsys::inductive_parametrization(s);
            Parametrization generic = linsys::solve_equalities(eqs);
            int generic_dim = pair_count(n) - static_cast<int>(generic.pivots.size());
            CHECK(inductive.dimension() == generic_dim);
            CHECK(inductive.dimension() >= 1);
            // both annihilate every split equality (symbolic check)
            for (const Constraint& eq : eqs) {
                CHECK(inductive.annihilates(eq.expr));
                CHECK(generic.annihilates(eq.expr));
            }
        }
    }
}

TEST_CASE("fm_eliminate: bound pairing, contradiction row, pass-through") {
    // {x - y > 0, -x + 2 > 0, y - 1 >= 0}, eliminate x -> {2 - y > 0, y - 1 >= 0}
    std::vector<Constraint> sys{Constraint{expr({{0, 1}, {1, -1}}), Sense::Gt},
                                Constraint{expr({{0, -1}}, 2), Sense::Gt},
                                Constraint{expr({{1, 1}}, -1), Sense::Ge}};
    std::vector<Constraint> out = linsys::fm_eliminate(sys, 0);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == Constraint{expr({{1, 1}}, -1), Sense::Ge}); // pass-through first
    CHECK(out[1] == Constraint{expr({{1, -1}}, 2), Sense::Gt});

    // {x > 0, -x >= 0} -> {0 > 0}
    std::vector<Constraint> bad{Constraint{expr({{0, 1}}), Sense::Gt},
                                Constraint{expr({{0, -1}}), Sense::Ge}};
    std::vector<Constraint> residue = linsys::fm_eliminate(bad, 0);
    REQUIRE(residue.size() == 1);
    CHECK(residue[0].expr.is_constant());
    CHECK(residue[0].expr.constant() == 0);
    CHECK(residue[0].sense == Sense::Gt);

    // constraints not mentioning the unknown pass through
    std::vector<Constraint> only_y{Constraint{expr({{1, 1}}, -3), Sense::Ge}};
    CHECK(linsys::fm_eliminate(only_y, 0) == only_y);

    CHECK_THROWS_AS(linsys::fm_eliminate({Constraint{expr({{0, 1}}), Sense::Eq}}, 0),
                    PreconditionError);
}

TEST_CASE("fm_feasible: sample with strict slack") {
    std::vector<Constraint> sys{Constraint{expr({{0, 1}, {1, -1}}), Sense::Gt},
                                Constraint{expr({{0, -1}}, 2), Sense::Gt},
                                Constraint{expr({{1, 1}}, -1), Sense::Ge}};
    linsys::FeasibilityResult r = linsys::fm_feasible(sys);
    REQUIRE(r.feasible());
    CHECK(all_satisfied(sys, *r.sample));
    // frozen deterministic sample (fewest-occurrences order, midpoint rule)
    CHECK((*r.sample)[1] == Rational(3, 2));
    CHECK((*r.sample)[0] == Rational(7, 4));
}

TEST_CASE("fm_feasible: infeasible with unit multipliers") {
    std::vector<Constraint> sys{Constraint{expr({{0, 1}}), Sense::Gt},
                                Constraint{expr({{0, -1}}), Sense::Ge}};
    linsys::FeasibilityResult r = linsys::fm_feasible(sys);
    REQUIRE(!r.feasible());
    const Certificate& cert = *r.certificate;
    REQUIRE(cert.multipliers.size() == 2);
    CHECK(cert.multipliers[0] == std::pair<int, Rational>(0, Rational(1)));
    CHECK(cert.multipliers[1] == std::pair<int, Rational>(1, Rational(1)));
    CHECK(cert.residual == 0);
    std::string why;
    CHECK(linsys::validate_certificate(sys, cert, &why));
}

TEST_CASE("fm_feasible: empty system") {
    linsys::FeasibilityResult r = linsys::fm_feasible({});
    REQUIRE(r.feasible());
    CHECK(r.sample->empty());
}

TEST_CASE("fm_feasible vs grid oracle on random systems") {
    oracle::Rng rng(2024);
    int infeasible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<Constraint> sys = random_system(rng, 3, 5, true);
        linsys::FeasibilityResult r = linsys::fm_feasible(sys);
        if (r.feasible()) {
            CHECK(all_satisfied(sys, *r.sample));
        } else {
            ++infeasible_seen;
            std::string why;
            CHECK_MESSAGE(linsys::validate_certificate(sys, *r.certificate, &why), why);
            CHECK(!grid_feasible(sys, vars_of(sys)));
        }
    }
    CHECK(infeasible_seen > 10); // the generator must exercise both outcomes
}

TEST_CASE("fm_eliminate preserves solvability under any elimination order") {
    oracle::Rng rng(4711);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Constraint> sys = random_system(rng, 3, 4, false);
        bool reference = linsys::fm_feasible(sys).feasible();
        // eliminate in ascending and in descending variable order
        for (int direction = 0; direction < 2; ++direction) {
            std::vector<Constraint> reduced = sys;
            std::vector<int> vars = vars_of(reduced);
            if (direction) std::reverse(vars.begin(), vars.end());
            for (int v : vars) reduced = linsys::fm_eliminate(reduced, v);
            bool contradicted = false;
            for (const Constraint& c : reduced) {
                bool ok = c.sense == Sense::Gt ? c.expr.constant() > 0 : c.expr.constant() >= 0;
                contradicted = contradicted || !ok;
            }
            CHECK(reference == !contradicted);
        }
    }
}

TEST_CASE("strict-to-nonstrict limit: all-eps feasibility implies the closed system") {
    oracle::Rng rng(99);
    const int eps = 100; // reserved unknown
    int premise_held = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Constraint> sys = random_system(rng, 3, 4, false);
        // relax strict rows by z_i * eps and keep a nonstrict copy
        std::vector<Constraint> relaxed = sys;
        std::vector<Constraint> closed = sys;
        for (std::size_t i = 0; i < sys.size(); ++i) {
            if (sys[i].sense != Sense::Gt) continue;
            Rational z(1 + static_cast<long>(rng.below(3)));
            relaxed[i].expr.add_term(eps, z);
            closed[i].sense = Sense::Ge;
        }
        if (!feasible_for_all_positive_eps(relaxed, eps)) continue;
        ++premise_held;
        CHECK(linsys::fm_feasible(closed).feasible());
    }
    CHECK(premise_held > 50);
}

TEST_CASE("certificate validation rejects tampering") {
    std::vector<Constraint> sys{Constraint{expr({{0, 1}}, -1), Sense::Ge},
                                Constraint{expr({{0, -1}}), Sense::Ge}};
    linsys::FeasibilityResult r = linsys::fm_feasible(sys);
    REQUIRE(!r.feasible());
    Certificate cert = *r.certificate;
    CHECK(linsys::validate_certificate(sys, cert));

    Certificate wrong_residual = cert;
    wrong_residual.residual += 1;
    CHECK(!linsys::validate_certificate(sys, wrong_residual));

    Certificate negative = cert;
    negative.multipliers[0].second = Rational(-1);
    CHECK(!linsys::validate_certificate(sys, negative));

    Certificate dangling = cert;
    dangling.multipliers[0].first = 99;
    CHECK(!linsys::validate_certificate(sys, dangling));

    // a combination that does not collapse must be rejected
    Certificate partial = cert;
    partial.multipliers.pop_back();
    CHECK(!linsys::validate_certificate(sys, partial));
}

TEST_CASE("fm_feasible substitutes equalities and certificates still validate") {
    // x = 1 (as equality), x > 2 is infeasible
    std::vector<Constraint> sys{Constraint{expr({{0, 1}}, -1), Sense::Eq},
                                Constraint{expr({{0, 1}}, -2), Sense::Gt}};
    linsys::FeasibilityResult r = linsys::fm_feasible(sys);
    REQUIRE(!r.feasible());
    std::string why;
    CHECK_MESSAGE(linsys::validate_certificate(sys, *r.certificate, &why), why);

    // x = y, x - y >= -1 is feasible; sample must satisfy the equality exactly
    std::vector<Constraint> ok{Constraint{expr({{0, 1}, {1, -1}}), Sense::Eq},
                               Constraint{expr({{0, 1}, {1, -1}}, 1), Sense::Ge},
                               Constraint{expr({{0, 1}}, -5), Sense::Gt}};
    linsys::FeasibilityResult s = linsys::fm_feasible(ok);
    REQUIRE(s.feasible());
    CHECK(all_satisfied(ok, *s.sample));

    // inconsistent equalities produce a signed certificate
    std::vector<Constraint> contradictory{Constraint{expr({{0, 1}}, -1), Sense::Eq},
                                          Constraint{expr({{0, 1}}, -2), Sense::Eq}};
    linsys::FeasibilityResult t = linsys::fm_feasible(contradictory);
    REQUIRE(!t.feasible());
    CHECK_MESSAGE(linsys::validate_certificate(contradictory, *t.certificate, &why), why);
}
