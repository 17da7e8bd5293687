#include "distrange/linsys.hpp"

#include <algorithm>
#include <set>

#include "distrange/errors.hpp"
#include "distrange/pair_index.hpp"

namespace distrange::linsys {

// ---- LinExpr ----------------------------------------------------------------

LinExpr LinExpr::variable(VarId v) {
    LinExpr e;
    e.coeffs_[v] = 1;
    return e;
}

LinExpr& LinExpr::add_term(VarId v, const Rational& c) {
    if (c == 0) return *this;
    auto [it, inserted] = coeffs_.emplace(v, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
    return *this;
}

Rational LinExpr::coefficient(VarId v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    for (const auto& [v, c] : o.coeffs_) add_term(v, c);
    constant_ += o.constant_;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
    constant_ -= o.constant_;
    return *this;
}

LinExpr& LinExpr::operator*=(const Rational& s) {
    if (s == 0) {
        coeffs_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [v, c] : coeffs_) c *= s;
    constant_ *= s;
    return *this;
}

Rational LinExpr::evaluate(const Assignment& values) const {
    Rational r = constant_;
    for (const auto& [v, c] : coeffs_) {
        auto it = values.find(v);
        if (it == values.end())
            throw InvariantError("evaluate: unknown x" + std::to_string(v) + " unassigned");
        r += c * it->second;
    }
    return r;
}

std::string LinExpr::str(const std::string& var_prefix) const {
    std::string out;
    for (const auto& [v, c] : coeffs_) {
        if (out.empty())
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        Rational ac = rational_abs(c);
        if (ac != 1) out += to_string(ac) + "*";
        out += var_prefix + std::to_string(v);
    }
    if (out.empty()) return to_string(constant_);
    if (constant_ != 0)
        out += (constant_ < 0 ? " - " : " + ") + to_string(rational_abs(constant_));
    return out;
}

std::string Constraint::str(const std::string& var_prefix) const {
    const char* rel = sense == Sense::Eq ? " = 0" : (sense == Sense::Ge ? " >= 0" : " > 0");
    return expr.str(var_prefix) + rel;
}

// ---- Parametrization --------------------------------------------------------

LinExpr Parametrization::express(VarId v) const {
    auto it = pivots.find(v);
    return it == pivots.end() ? LinExpr::variable(v) : it->second;
}

LinExpr Parametrization::substitute(const LinExpr& e) const {
    LinExpr out(e.constant());
    for (const auto& [v, c] : e.coefficients()) {
        auto it = pivots.find(v);
        if (it == pivots.end())
            out.add_term(v, c);
        else
            out += it->second * c;
    }
    return out;
}

Assignment Parametrization::lift(Assignment free_values) const {
    for (const auto& [v, expr] : pivots) free_values[v] = expr.evaluate(free_values);
    return free_values;
}

// ---- internal helpers -------------------------------------------------------

namespace {

using Prov = std::map<int, Rational>; // original constraint index -> weight

void prov_add(Prov& into, const Prov& from, const Rational& scale) {
    for (const auto& [id, c] : from) {
        Rational& slot = into[id];
        slot += c * scale;
        if (slot == 0) into.erase(id);
    }
}

struct Row {
    LinExpr expr;
    Sense sense = Sense::Ge;
    Prov prov;
};

// Scale a row by the positive rational that makes all coefficients (and the
// constant) coprime integers. Purely cosmetic plus enables cheap dedup.
void normalize_row(Row& row) {
    mpz_class lcm = 1;
    mpz_class gcd = 0;
    auto fold = [&](const Rational& r) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    };
    for (const auto& [v, c] : row.expr.coefficients()) fold(c);
    fold(row.expr.constant());
    auto fold_num = [&](const Rational& r) {
        mpz_class scaled = r.get_num() * (lcm / r.get_den());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_mpz_t());
    };
    for (const auto& [v, c] : row.expr.coefficients()) fold_num(c);
    fold_num(row.expr.constant());
    if (gcd == 0) return; // zero row
    Rational scale(lcm, gcd);
    scale.canonicalize();
    if (scale == 1) return;
    row.expr *= scale;
    for (auto& [id, c] : row.prov) c *= scale;
}

Certificate certificate_from(const Row& row) {
    Certificate cert;
    cert.multipliers.assign(row.prov.begin(), row.prov.end());
    cert.residual = row.expr.constant();
    return cert;
}

// A constant row that no assignment can satisfy?
bool constant_row_violated(const Row& row) {
    const Rational& c = row.expr.constant();
    return row.sense == Sense::Gt ? c <= 0 : c < 0;
}

struct Gaussian {
    Parametrization param;
    std::map<VarId, Prov> pivot_prov; // prov of (x_p - f_p) per pivot p
    std::optional<Row> inconsistent;  // constant != 0 row, if any
};

// Exact Gauss elimination of equality rows, smallest unknown of each reduced
// row as pivot. Tracks every pivot as a combination of the original rows so
// substituted inequalities keep certificates over the caller's indices.
Gaussian gaussian_eliminate(const std::vector<Row>& equalities) {
    Gaussian g;
    for (const Row& input : equalities) {
        // reduce by existing pivots (pivot expressions are pivot-free)
        LinExpr expr = input.expr;
        Prov prov = input.prov;
        for (const auto& [p, f] : g.param.pivots) {
            Rational c = expr.coefficient(p);
            if (c == 0) continue;
            // expr -= c * (x_p - f_p)
            expr.add_term(p, -c);
            expr += f * c;
            prov_add(prov, g.pivot_prov.at(p), -c);
        }
        if (expr.is_constant()) {
            if (expr.constant() == 0) continue; // dependent row
            Row bad{expr, Sense::Eq, prov};
            if (bad.expr.constant() > 0) { // normalize to residual < 0
                bad.expr *= Rational(-1);
                for (auto& [id, c] : bad.prov) c *= -1;
            }
            g.inconsistent = std::move(bad);
            return g;
        }
        VarId pivot = expr.coefficients().begin()->first;
        Rational a = expr.coefficients().begin()->second;
        // x_pivot = -(expr - a*x_pivot)/a ; (x_pivot - f) = expr/a
        LinExpr f = expr;
        f.add_term(pivot, -a);
        f *= Rational(-1) / a;
        Prov piv_prov;
        prov_add(piv_prov, prov, Rational(1) / a);
        // eliminate the new pivot from older pivot expressions
        for (auto& [p, fp] : g.param.pivots) {
            Rational c = fp.coefficient(pivot);
            if (c == 0) continue;
            fp.add_term(pivot, -c);
            fp += f * c;
            prov_add(g.pivot_prov.at(p), piv_prov, c);
        }
        g.param.pivots.emplace(pivot, std::move(f));
        g.pivot_prov.emplace(pivot, std::move(piv_prov));
    }
    return g;
}

void collect_free_vars(Parametrization& param, const std::set<VarId>& universe) {
    param.free_vars.clear();
    for (VarId v : universe)
        if (!param.pivots.count(v)) param.free_vars.push_back(v);
}

struct EliminationLevel {
    VarId var;
    std::vector<Row> lowers; // positive coefficient on var
    std::vector<Row> uppers; // negative coefficient on var
};

// One Fourier-Motzkin step over rows; constant result rows are kept.
std::vector<Row> eliminate_rows(const std::vector<Row>& rows, VarId var, EliminationLevel* level) {
    std::vector<Row> lowers, uppers, out;
    for (const Row& r : rows) {
        Rational c = r.expr.coefficient(var);
        if (c > 0)
            lowers.push_back(r);
        else if (c < 0)
            uppers.push_back(r);
        else
            out.push_back(r);
    }
    for (const Row& lo : lowers) {
        Rational a = lo.expr.coefficient(var);
        for (const Row& up : uppers) {
            Rational b = -up.expr.coefficient(var);
            Row combo;
            combo.expr = lo.expr * (Rational(1) / a) + up.expr * (Rational(1) / b);
            combo.sense =
                (lo.sense == Sense::Gt || up.sense == Sense::Gt) ? Sense::Gt : Sense::Ge;
            prov_add(combo.prov, lo.prov, Rational(1) / a);
            prov_add(combo.prov, up.prov, Rational(1) / b);
            normalize_row(combo);
            out.push_back(std::move(combo));
        }
    }
    if (level) {
        level->var = var;
        level->lowers = std::move(lowers);
        level->uppers = std::move(uppers);
    }
    return out;
}

// Keep, per coefficient vector, only the strongest row (smallest constant;
// strict beats nonstrict at equal constants). Cheap domination pruning only.
void prune_rows(std::vector<Row>& rows) {
    std::map<std::vector<std::pair<VarId, Rational>>, std::size_t> best;
    std::vector<Row> kept;
    kept.reserve(rows.size());
    for (Row& r : rows) {
        if (r.expr.is_constant()) {
            kept.push_back(std::move(r)); // handled by the caller
            continue;
        }
        std::vector<std::pair<VarId, Rational>> key(r.expr.coefficients().begin(),
                                                    r.expr.coefficients().end());
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(std::move(key), kept.size());
            kept.push_back(std::move(r));
            continue;
        }
        Row& cur = kept[it->second];
        const Rational& cc = cur.expr.constant();
        const Rational& rc = r.expr.constant();
        bool replace = rc < cc || (rc == cc && r.sense == Sense::Gt && cur.sense == Sense::Ge);
        if (replace) cur = std::move(r);
    }
    rows = std::move(kept);
}

VarId next_elimination_var(const std::vector<Row>& rows) {
    std::map<VarId, int> occurrences;
    for (const Row& r : rows)
        for (const auto& [v, c] : r.expr.coefficients()) ++occurrences[v];
    VarId bestVar = 0;
    int bestCount = -1;
    for (const auto& [v, count] : occurrences)
        if (bestCount < 0 || count < bestCount) {
            bestVar = v;
            bestCount = count;
        }
    return bestVar; // occurrences is ordered, ties go to the smallest id
}

struct VarBounds {
    std::optional<Rational> lo, hi; // closures of the single-row bounds
};

std::map<VarId, VarBounds> single_row_bounds(const std::vector<Row>& rows) {
    std::map<VarId, VarBounds> bounds;
    for (const Row& r : rows) {
        if (r.expr.coefficients().size() != 1) continue;
        const auto& [v, a] = *r.expr.coefficients().begin();
        Rational value = -r.expr.constant() / a;
        VarBounds& b = bounds[v];
        if (a > 0) {
            if (!b.lo || value > *b.lo) b.lo = value;
        } else {
            if (!b.hi || value < *b.hi) b.hi = value;
        }
    }
    return bounds;
}

// Minimum of the row expression over the closed box of known bounds;
// nothing when some needed bound is missing.
std::optional<Rational> box_minimum(const Row& row, const std::map<VarId, VarBounds>& bounds) {
    Rational m = row.expr.constant();
    for (const auto& [v, c] : row.expr.coefficients()) {
        auto it = bounds.find(v);
        if (it == bounds.end()) return std::nullopt;
        const std::optional<Rational>& edge = c > 0 ? it->second.lo : it->second.hi;
        if (!edge) return std::nullopt;
        m += c * *edge;
    }
    return m;
}

struct Bound {
    Rational value;
    bool strict = false;
};

// value of var implied by a lower/upper row under the current assignment
Bound bound_from_row(const Row& row, VarId var, const Assignment& values) {
    Rational a = row.expr.coefficient(var);
    LinExpr rest = row.expr;
    rest.add_term(var, -a);
    // a*var + rest {>,>=} 0  ->  var {>,>=} -rest/a (a>0), var {<,<=} -rest/a (a<0)
    return Bound{-rest.evaluate(values) / a, row.sense == Sense::Gt};
}

} // namespace

// ---- public operations -------------------------------------------------------

bool validate_certificate(const std::vector<Constraint>& sys, const Certificate& cert,
                          std::string* why) {
    auto fail = [&](const std::string& message) {
        if (why) *why = message;
        return false;
    };
    if (cert.multipliers.empty()) return fail("certificate cites no constraints");
    LinExpr weighted;
    bool strict_positive = false;
    for (const auto& [id, mult] : cert.multipliers) {
        if (id < 0 || id >= static_cast<int>(sys.size()))
            return fail("certificate cites constraint index out of range");
        const Constraint& c = sys[id];
        if (c.sense != Sense::Eq && mult < 0)
            return fail("negative multiplier on an inequality constraint");
        if (c.sense == Sense::Gt && mult > 0) strict_positive = true;
        weighted += c.expr * mult;
    }
    if (!weighted.is_constant())
        return fail("weighted sum does not collapse to a constant");
    if (weighted.constant() != cert.residual)
        return fail("residual does not match the weighted sum");
    if (cert.residual > 0) return fail("residual is positive (no contradiction)");
    if (cert.residual == 0 && !strict_positive)
        return fail("zero residual with no positive weight on a strict constraint");
    return true;
}

Parametrization solve_equalities(const std::vector<Constraint>& equalities) {
    std::vector<Row> rows;
    std::set<VarId> universe;
    rows.reserve(equalities.size());
    for (std::size_t i = 0; i < equalities.size(); ++i) {
        if (equalities[i].sense != Sense::Eq)
            throw PreconditionError("solve_equalities: non-equality constraint passed");
        for (const auto& [v, c] : equalities[i].expr.coefficients()) universe.insert(v);
        rows.push_back(Row{equalities[i].expr, Sense::Eq, {{static_cast<int>(i), Rational(1)}}});
    }
    Gaussian g = gaussian_eliminate(rows);
    if (g.inconsistent)
        throw PreconditionError("solve_equalities: inconsistent equality system");
    collect_free_vars(g.param, universe);
    return std::move(g.param);
}

std::vector<Constraint> fm_eliminate(const std::vector<Constraint>& sys, VarId var) {
    std::vector<Row> rows;
    rows.reserve(sys.size());
    for (const Constraint& c : sys) {
        if (c.sense == Sense::Eq)
            throw PreconditionError("fm_eliminate: equalities must be substituted away first");
        rows.push_back(Row{c.expr, c.sense, {}});
    }
    std::vector<Constraint> out;
    for (Row& r : eliminate_rows(rows, var, nullptr))
        out.push_back(Constraint{std::move(r.expr), r.sense});
    return out;
}

FeasibilityResult fm_feasible(const std::vector<Constraint>& sys) {
    std::set<VarId> universe;
    for (const Constraint& c : sys)
        for (const auto& [v, coeff] : c.expr.coefficients()) universe.insert(v);

    // substitute equalities away, keeping provenance over input indices
    std::vector<Row> eq_rows;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        Row r{sys[i].expr, sys[i].sense, {{static_cast<int>(i), Rational(1)}}};
        if (sys[i].sense == Sense::Eq)
            eq_rows.push_back(std::move(r));
        else
            rows.push_back(std::move(r));
    }
    Gaussian g = gaussian_eliminate(eq_rows);
    if (g.inconsistent)
        return FeasibilityResult{std::nullopt, certificate_from(*g.inconsistent)};
    for (Row& r : rows) {
        for (const auto& [p, f] : g.param.pivots) {
            Rational c = r.expr.coefficient(p);
            if (c == 0) continue;
            r.expr.add_term(p, -c);
            r.expr += f * c;
            prov_add(r.prov, g.pivot_prov.at(p), -c);
        }
        normalize_row(r);
    }

    std::map<VarId, VarBounds> bounds = single_row_bounds(rows);

    // probe the point the single-row bounds suggest before eliminating
    {
        Assignment guess;
        for (VarId v : universe) {
            if (g.param.pivots.count(v)) continue;
            auto it = bounds.find(v);
            if (it == bounds.end()) {
                guess[v] = 0;
            } else if (it->second.lo && it->second.hi) {
                guess[v] = (*it->second.lo + *it->second.hi) / 2;
            } else if (it->second.lo) {
                guess[v] = *it->second.lo + 1;
            } else {
                guess[v] = *it->second.hi - 1;
            }
        }
        bool ok = true;
        for (const Row& r : rows) {
            Rational value = r.expr.evaluate(guess);
            if (!(r.sense == Sense::Gt ? value > 0 : value >= 0)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            Assignment full = g.param.lift(std::move(guess));
            for (const Constraint& c : sys) {
                Rational v = c.expr.evaluate(full);
                bool sat = c.sense == Sense::Eq ? v == 0 : (c.sense == Sense::Ge ? v >= 0 : v > 0);
                if (!sat) throw Error("fm_feasible: probe sample fails " + c.str());
            }
            return FeasibilityResult{std::move(full), std::nullopt};
        }
    }

    // drop rows already implied by the single-row bounds (the bounding rows
    // themselves stay; implied rows can never flip feasibility)
    {
        std::vector<Row> kept;
        kept.reserve(rows.size());
        for (Row& r : rows) {
            if (r.expr.coefficients().size() > 1) {
                std::optional<Rational> m = box_minimum(r, bounds);
                if (m && (r.sense == Sense::Gt ? *m > 0 : *m >= 0)) continue;
            }
            kept.push_back(std::move(r));
        }
        rows = std::move(kept);
    }

    // eliminate, fewest-occurrences variable first
    std::vector<EliminationLevel> levels;
    // Kohler's bound: after eliminating k unknowns, an irredundant row
    // combines at most k+1 of the original inequalities. Inequality
    // multipliers are positive throughout, so the provenance support is the
    // exact derivation history and the filter is safe.
    auto ineq_history = [&](const Row& r) {
        int count = 0;
        for (const auto& [id, c] : r.prov)
            if (sys[id].sense != Sense::Eq) ++count;
        return count;
    };
    while (true) {
        // constant rows: contradiction or trivially satisfied
        std::vector<Row> live;
        live.reserve(rows.size());
        for (Row& r : rows) {
            if (r.expr.is_constant()) {
                if (constant_row_violated(r))
                    return FeasibilityResult{std::nullopt, certificate_from(r)};
            } else if (ineq_history(r) <= static_cast<int>(levels.size()) + 1) {
                live.push_back(std::move(r));
            }
        }
        rows = std::move(live);
        if (rows.empty()) break;
        prune_rows(rows);
        if (rows.size() > 500000)
            throw Error("fm_feasible: elimination exceeded the row budget");
        EliminationLevel level;
        rows = eliminate_rows(rows, next_elimination_var(rows), &level);
        levels.push_back(std::move(level));
    }

    // feasible: back-substitute midpoints

    Assignment values;
    for (VarId v : universe)
        if (!g.param.pivots.count(v)) values[v] = 0; // defaults for the unconstrained
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        std::optional<Bound> lo, hi;
        for (const Row& r : it->lowers) {
            Bound b = bound_from_row(r, it->var, values);
            if (!lo || b.value > lo->value || (b.value == lo->value && b.strict)) lo = b;
        }
        for (const Row& r : it->uppers) {
            Bound b = bound_from_row(r, it->var, values);
            if (!hi || b.value < hi->value || (b.value == hi->value && b.strict)) hi = b;
        }
        Rational v;
        if (lo && hi)
            v = (lo->value + hi->value) / 2;
        else if (lo)
            v = lo->value + 1;
        else if (hi)
            v = hi->value - 1;
        else
            v = 0;
        values[it->var] = v;
    }
    Assignment full = g.param.lift(std::move(values));

    // exactness self-check
    for (const Constraint& c : sys) {
        Rational v = c.expr.evaluate(full);
        bool ok = c.sense == Sense::Eq ? v == 0 : (c.sense == Sense::Ge ? v >= 0 : v > 0);
        if (!ok)
            throw Error("fm_feasible: sample fails constraint " + c.str());
    }
    return FeasibilityResult{std::move(full), std::nullopt};
}

std::vector<Constraint> split_equalities(const SplitSystem& system) {
    const int n = system.n();
    std::vector<Constraint> out;
    std::set<std::string> seen;
    for (const QuartetSplit& s : system.members()) {
        // x_ac - x_bc - x_ad + x_bd = 0
        LinExpr e;
        e.add_term(pair_rank(n, PairIndex(s.a, s.c)), Rational(1));
        e.add_term(pair_rank(n, PairIndex(s.b, s.c)), Rational(-1));
        e.add_term(pair_rank(n, PairIndex(s.a, s.d)), Rational(-1));
        e.add_term(pair_rank(n, PairIndex(s.b, s.d)), Rational(1));
        // sign-normalize so symmetric rewritings coincide
        if (e.coefficients().begin()->second < 0) e *= Rational(-1);
        if (seen.insert(e.str()).second) out.push_back(Constraint{e, Sense::Eq});
    }
    return out;
}

Parametrization inductive_parametrization(const SplitSystem& system) {
    std::string failure = predicate_failure(system);
    if (!failure.empty()) throw PreconditionError("inductive parametrization: " + failure);

    const int n = system.n();
    Parametrization param;
    // Leaves 1..3 contribute no quartets; x_{m,t} for m = 4..n is pinned to
    // x_{m,i} + x_{x,t} - x_{x,i} for the first split (m,x|t,i), i < t.
    for (int m = 4; m <= n; ++m) {
        for (int t = 1; t < m; ++t) {
            std::optional<std::pair<int, int>> found;
            for (int x = 1; x < m && !found; ++x) {
                if (x == t) continue;
                for (int i = 1; i < t && !found; ++i) {
                    if (i == x) continue;
                    if (system.contains(QuartetSplit(m, x, t, i))) found = {x, i};
                }
            }
            if (!found) continue;
            auto [x, i] = *found;
            LinExpr f = param.express(pair_rank(n, PairIndex(m, i)));
            f += param.express(pair_rank(n, PairIndex(x, t)));
            f -= param.express(pair_rank(n, PairIndex(x, i)));
            param.pivots.emplace(pair_rank(n, PairIndex(m, t)), std::move(f));
        }
    }
    for (int v = 0; v < pair_count(n); ++v)
        if (!param.pivots.count(v)) param.free_vars.push_back(v);
    return param;
}

} // namespace distrange::linsys
