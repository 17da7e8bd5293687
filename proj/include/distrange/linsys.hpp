#ifndef DISTRANGE_LINSYS_HPP
#define DISTRANGE_LINSYS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "distrange/rational.hpp"
#include "distrange/split_system.hpp"

namespace distrange::linsys {

using VarId = int;
using Assignment = std::map<VarId, Rational>;

/// Linear expression c_1 x_1 + ... + c_k x_k + c over rational unknowns.
/// Zero coefficients are never stored.
class LinExpr {
  public:
    LinExpr() = default;
    explicit LinExpr(Rational constant) : constant_(std::move(constant)) {}

    static LinExpr variable(VarId v);

    LinExpr& add_term(VarId v, const Rational& c);
    LinExpr& add_constant(const Rational& c) {
        constant_ += c;
        return *this;
    }

    const std::map<VarId, Rational>& coefficients() const { return coeffs_; }
    const Rational& constant() const { return constant_; }
    Rational coefficient(VarId v) const;
    bool is_constant() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(const Rational& s);
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(LinExpr a, const Rational& s) { return a *= s; }

    bool operator==(const LinExpr&) const = default;

    /// Exact value under a (total, for this expression) assignment.
    Rational evaluate(const Assignment& values) const;

    std::string str(const std::string& var_prefix = "x") const;

  private:
    std::map<VarId, Rational> coeffs_;
    Rational constant_;
};

enum class Sense { Eq, Ge, Gt }; // expr = 0, expr >= 0, expr > 0

struct Constraint {
    LinExpr expr;
    Sense sense = Sense::Ge;

    bool operator==(const Constraint&) const = default;
    std::string str(const std::string& var_prefix = "x") const;
};

/// Solution space of a system of linear equalities: pivot unknowns written
/// as affine expressions of the free unknowns.
struct Parametrization {
    std::map<VarId, LinExpr> pivots; // pivot -> expression over free unknowns
    std::vector<VarId> free_vars;    // ascending

    int dimension() const { return static_cast<int>(free_vars.size()); }

    /// x_v itself when free, its pivot expression otherwise.
    LinExpr express(VarId v) const;

    /// Substitute every pivot unknown out of e.
    LinExpr substitute(const LinExpr& e) const;

    /// Extend an assignment of the free unknowns by the pivot values.
    Assignment lift(Assignment free_values) const;

    /// True if e vanishes identically on the solution space.
    bool annihilates(const LinExpr& e) const { return substitute(e).is_zero(); }
};

/// Nonnegative-combination witness of infeasibility: the multiplier-weighted
/// sum of the cited constraint expressions collapses to the constant
/// `residual`, with residual < 0, or residual = 0 while a strict constraint
/// carries positive weight. Multipliers on >=/> constraints are nonnegative;
/// equality constraints may be cited with either sign.
struct Certificate {
    std::vector<std::pair<int, Rational>> multipliers; // (constraint index, weight)
    Rational residual;
};

/// Syntactic re-validation of a certificate against the system it cites.
bool validate_certificate(const std::vector<Constraint>& sys, const Certificate& cert,
                          std::string* why = nullptr);

struct FeasibilityResult {
    std::optional<Assignment> sample;      // set iff feasible
    std::optional<Certificate> certificate;// set iff infeasible
    bool feasible() const { return sample.has_value(); }
};

/// Exact elimination of a homogeneous (or consistent affine) equality
/// system; pivots are chosen as the smallest unknown of each reduced row.
/// Throws PreconditionError if a non-equality row is passed or the rows are
/// inconsistent.
Parametrization solve_equalities(const std::vector<Constraint>& equalities);

/// One Fourier-Motzkin step: eliminate `var` from an inequality system
/// (senses > and >= only). Constraints not mentioning var pass through;
/// every lower/upper pair combines, strict if either parent is strict.
/// The result is solvable iff the input is.
std::vector<Constraint> fm_eliminate(const std::vector<Constraint>& sys, VarId var);

/// Decide a mixed system exactly. Equalities are substituted away first;
/// the remaining unknowns are eliminated fewest-occurrences-first. Returns
/// either an exact sample (strict constraints get strictly positive slack)
/// or a certificate over the input constraint indices.
FeasibilityResult fm_feasible(const std::vector<Constraint>& sys);

/// One equality x_ac - x_bc - x_ad + x_bd = 0 per split (a,b|c,d), over the
/// pairwise-distance unknowns indexed by pair_rank; symmetric rewritings of
/// the same split are deduplicated.
std::vector<Constraint> split_equalities(const SplitSystem& system);

/// The leaf-by-leaf inductive parametrization of the split-equality system
/// of a fat, transitive and saturated split system: each unknown x_{m,t}
/// (m processed in increasing order, t < m) is pinned to
/// x_{m,i} + x_{x,t} - x_{x,i} for the first split (m,x|t,i) in the system
/// with i < t (smallest (x,i) lexicographically), and is a fresh free
/// unknown when no such split exists. Throws PreconditionError (naming the
/// failed predicate and a counterexample) unless the system passes all
/// three predicates.
Parametrization inductive_parametrization(const SplitSystem& system);

} // namespace distrange::linsys

#endif
