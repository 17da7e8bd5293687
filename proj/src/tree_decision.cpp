#include "distrange/tree_decision.hpp"

#include <algorithm>
#include <map>

#include "distrange/errors.hpp"

namespace distrange {

using linsys::Constraint;
using linsys::LinExpr;
using linsys::Sense;

namespace {

bool is_tree_variant(Variant v) {
    return v == Variant::TreeGeneralOpen || v == Variant::TreeGeneralClosed ||
           v == Variant::TreePositiveOpen;
}

std::string quartet_str(int a, int b, int c, int d) {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
           std::to_string(d) + "}";
}

int quartet_member_count(const SplitSystem& splits, const std::array<int, 4>& q) {
    int count = 0;
    if (splits.contains(QuartetSplit(q[0], q[1], q[2], q[3]))) ++count;
    if (splits.contains(QuartetSplit(q[0], q[2], q[1], q[3]))) ++count;
    if (splits.contains(QuartetSplit(q[0], q[3], q[1], q[2]))) ++count;
    return count;
}

} // namespace

CandidateSystem build_system(const SplitSystem& splits, const IntervalFamily& family) {
    if (!is_tree_variant(family.variant()))
        throw VariantError("build_system: wrong variant " + variant_name(family.variant()));
    std::string failure = predicate_failure(splits);
    if (!failure.empty()) throw PreconditionError("build_system: " + failure);
    const int n = family.n();
    CandidateSystem sys;
    sys.splits = splits;
    sys.parametrization = linsys::solve_equalities(linsys::split_equalities(splits));
    // free unknowns of the distance space, not only those hit by equalities
    sys.parametrization.free_vars.clear();
    for (int v = 0; v < pair_count(n); ++v)
        if (!sys.parametrization.pivots.count(v)) sys.parametrization.free_vars.push_back(v);

    const Sense box = variant_is_open(family.variant()) ? Sense::Gt : Sense::Ge;
    auto expr_of = [&](int i, int j) {
        return sys.parametrization.express(pair_rank(n, PairIndex(i, j)));
    };
    for (const PairIndex& p : all_pairs(n)) {
        LinExpr e = expr_of(p.i, p.j);
        LinExpr lower = e;
        lower.add_constant(-family.lo(p));
        sys.constraints.push_back(Constraint{std::move(lower), box});
        LinExpr upper = e * Rational(-1);
        upper.add_constant(family.hi(p));
        sys.constraints.push_back(Constraint{std::move(upper), box});
    }
    if (family.variant() == Variant::TreePositiveOpen) {
        // strict triangle rows x_{a,c} + x_{c,b} - x_{a,b} > 0
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = 1; c <= n; ++c) {
                    if (c == a || c == b) continue;
                    LinExpr tri = expr_of(a, c);
                    tri += expr_of(c, b);
                    tri -= expr_of(a, b);
                    sys.constraints.push_back(Constraint{std::move(tri), Sense::Gt});
                }
        // one strict row per quartet holding a single split (a,b|c,d):
        // x_{a,b} + x_{c,d} < x_{a,c} + x_{b,d}
        for (const QuartetSplit& s : splits.members()) {
            if (quartet_member_count(splits, s.quartet()) != 1) continue;
            LinExpr cross = expr_of(s.a, s.c);
            cross += expr_of(s.b, s.d);
            cross -= expr_of(s.a, s.b);
            cross -= expr_of(s.c, s.d);
            sys.constraints.push_back(Constraint{std::move(cross), Sense::Gt});
        }
        // positivity of every distance
        for (const PairIndex& p : all_pairs(n))
            sys.constraints.push_back(Constraint{expr_of(p.i, p.j), Sense::Gt});
    }
    return sys;
}

namespace {

// Necessary interval test per split: the boxes of the two equal pair-sums
// must overlap (and the unique-split strict row must be satisfiable).
// False means the candidate is provably infeasible without elimination.
bool cheap_candidate_check(const SplitSystem& splits, const IntervalFamily& family) {
    const bool open = variant_is_open(family.variant());
    auto overlaps = [&](const Rational& lo1, const Rational& hi1, const Rational& lo2,
                        const Rational& hi2) {
        return open ? (lo1 < hi2 && lo2 < hi1) : (lo1 <= hi2 && lo2 <= hi1);
    };
    for (const QuartetSplit& s : splits.members()) {
        const Interval &ac = family.at(s.a, s.c), &bd = family.at(s.b, s.d);
        const Interval &ad = family.at(s.a, s.d), &bc = family.at(s.b, s.c);
        if (!overlaps(ac.lo + bd.lo, ac.hi + bd.hi, ad.lo + bc.lo, ad.hi + bc.hi)) return false;
    }
    if (family.variant() == Variant::TreePositiveOpen) {
        for (const QuartetSplit& s : splits.members()) {
            if (quartet_member_count(splits, s.quartet()) != 1) continue;
            const Interval &ab = family.at(s.a, s.b), &cd = family.at(s.c, s.d);
            const Interval &ac = family.at(s.a, s.c), &bd = family.at(s.b, s.d);
            if (!(ab.lo + cd.lo < ac.hi + bd.hi)) return false;
        }
    }
    return true;
}

DissimilarityVector lift_distances(const CandidateSystem& sys, const linsys::Assignment& sample,
                                   int n) {
    linsys::Assignment free_values;
    for (linsys::VarId v : sys.parametrization.free_vars) {
        auto it = sample.find(v);
        free_values[v] = it == sample.end() ? Rational(0) : it->second;
    }
    linsys::Assignment full = sys.parametrization.lift(std::move(free_values));
    DissimilarityVector d(n);
    for (const PairIndex& p : all_pairs(n)) d.at(p) = full.at(pair_rank(n, p));
    return d;
}

std::vector<SplitSystem> tree_candidates(int n, CandidateStrategy strategy) {
    if (n < 4) return {SplitSystem(n)};
    // enumeration is deterministic; cache it per (n, strategy)
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<SplitSystem>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, static_cast<int>(strategy));
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, enumerate_candidate_systems(n, strategy)).first;
    return it->second;
}

} // namespace

TreeDecision decide_tree(const IntervalFamily& family, CandidateStrategy strategy) {
    if (!is_tree_variant(family.variant()))
        throw VariantError("decide_tree: wrong variant " + variant_name(family.variant()));
    const int n = family.n();
    const bool positive = family.variant() == Variant::TreePositiveOpen;

    std::vector<SplitSystem> candidates = tree_candidates(n, strategy);
    std::map<std::size_t, CandidateRejection> rejected;

    // search pass: skip candidates the interval test already refutes
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (!cheap_candidate_check(candidates[k], family)) continue;
        CandidateSystem sys = build_system(candidates[k], family);
        linsys::FeasibilityResult r = linsys::fm_feasible(sys.constraints);
        if (!r.feasible()) {
            rejected.emplace(k, CandidateRejection{candidates[k], std::move(sys.constraints),
                                                   std::move(*r.certificate)});
            continue;
        }
        DissimilarityVector d = lift_distances(sys, *r.sample, n);
        WeightedTree tree = tree_from_distances(d, positive);
        TreeDecision decision;
        decision.witness = TreeWitness{std::move(tree), std::move(d), candidates[k]};
        return decision;
    }

    // certificate pass: every candidate is infeasible, including the skipped
    TreeDecision decision;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto it = rejected.find(k);
        if (it != rejected.end()) {
            decision.rejections.push_back(std::move(it->second));
            continue;
        }
        CandidateSystem sys = build_system(candidates[k], family);
        linsys::FeasibilityResult r = linsys::fm_feasible(sys.constraints);
        if (r.feasible())
            throw Error("decide_tree: interval prefilter rejected a feasible candidate");
        decision.rejections.push_back(
            CandidateRejection{candidates[k], std::move(sys.constraints), std::move(*r.certificate)});
    }
    return decision;
}

// ---- witness construction ----------------------------------------------------

namespace {

struct Builder {
    int n = 0;
    int vertex_budget = 0; // ids handed out so far
    std::vector<std::vector<std::pair<int, Rational>>> adj; // 1-based, grown on demand

    explicit Builder(int n) : n(n), vertex_budget(n), adj(2 * n + 2) {}

    void add_edge(int u, int v, const Rational& w) {
        adj[u].emplace_back(v, w);
        adj[v].emplace_back(u, w);
    }
    void remove_edge(int u, int v) {
        auto drop = [&](int from, int to) {
            auto& list = adj[from];
            for (std::size_t i = 0; i < list.size(); ++i)
                if (list[i].first == to) {
                    list.erase(list.begin() + i);
                    return;
                }
        };
        drop(u, v);
        drop(v, u);
    }
    int new_internal() {
        int id = ++vertex_budget;
        if (id >= static_cast<int>(adj.size())) adj.resize(id + 1);
        return id;
    }

    // distances from v to every current vertex
    std::vector<std::optional<Rational>> distances_from(int v) const {
        std::vector<std::optional<Rational>> dist(adj.size());
        dist[v] = Rational(0);
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [w, weight] : adj[u])
                if (!dist[w]) {
                    dist[w] = *dist[u] + weight;
                    stack.push_back(w);
                }
        }
        return dist;
    }

    // vertices on v's side when edge (u,v) is removed
    std::vector<char> side_of(int u, int v) const {
        std::vector<char> seen(adj.size(), 0);
        seen[u] = 1; // blocked
        std::vector<int> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& [w, weight] : adj[x])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        seen[u] = 0;
        return seen;
    }
};

void check_four_point(const DissimilarityVector& d, bool positive) {
    const int n = d.n;
    if (positive) {
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = 1; c <= n; ++c) {
                    if (c == a || c == b) continue;
                    if (d.at(a, b) > d.at(a, c) + d.at(c, b))
                        throw PreconditionError("tree construction: triangle inequality fails on {" +
                                                std::to_string(a) + "," + std::to_string(b) + "," +
                                                std::to_string(c) + "}");
                }
    }
    for (int a = 1; a <= n - 3; ++a)
        for (int b = a + 1; b <= n - 2; ++b)
            for (int c = b + 1; c <= n - 1; ++c)
                for (int e = c + 1; e <= n; ++e) {
                    Rational s1 = d.at(a, b) + d.at(c, e);
                    Rational s2 = d.at(a, c) + d.at(b, e);
                    Rational s3 = d.at(a, e) + d.at(b, c);
                    bool two_equal = s1 == s2 || s1 == s3 || s2 == s3;
                    if (!two_equal)
                        throw PreconditionError("tree construction: four-point condition fails on " +
                                                quartet_str(a, b, c, e));
                    if (positive) {
                        const Rational& mx = std::max({s1, s2, s3});
                        int hits = (s1 == mx) + (s2 == mx) + (s3 == mx);
                        if (hits < 2)
                            throw PreconditionError(
                                "tree construction: maximum pair-sum attained once on " +
                                quartet_str(a, b, c, e));
                    }
                }
}

} // namespace

WeightedTree tree_from_distances(const DissimilarityVector& distances, bool positive) {
    const int n = distances.n;
    check_four_point(distances, positive);

    Builder b(n);
    b.add_edge(1, 2, distances.at(1, 2));

    for (int z = 3; z <= n; ++z) {
        bool attached = false;
        // existing internal vertex whose leaf distances all agree?
        for (int v = n + 1; v <= b.vertex_budget && !attached; ++v) {
            if (b.adj[v].empty()) continue;
            auto dist = b.distances_from(v);
            Rational w = distances.at(z, 1) - *dist[1];
            bool consistent = true;
            for (int leaf = 2; leaf < z && consistent; ++leaf)
                consistent = distances.at(z, leaf) == *dist[leaf] + w;
            if (consistent) {
                b.add_edge(v, z, w);
                attached = true;
            }
        }
        if (attached) continue;
        // otherwise split an edge: solve the two Gromov-product equations
        // for the split point and pendant weight, then check every leaf
        std::vector<std::tuple<int, int, Rational>> edges;
        for (int u = 1; u <= b.vertex_budget; ++u)
            for (const auto& [v, w] : b.adj[u])
                if (u < v) edges.emplace_back(u, v, w);
        for (const auto& [u, v, we] : edges) {
            std::vector<char> v_side = b.side_of(u, v);
            int leaf_u = 0, leaf_v = 0;
            for (int leaf = 1; leaf < z; ++leaf) {
                if (v_side[leaf] && !leaf_v) leaf_v = leaf;
                if (!v_side[leaf] && !leaf_u) leaf_u = leaf;
            }
            auto du = b.distances_from(u);
            auto dv = b.distances_from(v);
            // t + w = A (u side), (we - t) + w = B (v side)
            Rational A = distances.at(z, leaf_u) - *du[leaf_u];
            Rational B = distances.at(z, leaf_v) - *dv[leaf_v];
            Rational w = (A + B - we) / 2;
            Rational t = A - w;
            bool consistent = true;
            for (int leaf = 1; leaf < z && consistent; ++leaf) {
                Rational through = v_side[leaf] ? Rational((we - t) + *dv[leaf] + w)
                                                : Rational(t + *du[leaf] + w);
                consistent = distances.at(z, leaf) == through;
            }
            if (!consistent) continue;
            if (t == 0 && u > n) {
                b.add_edge(u, z, w); // reuse the vertex instead of a zero edge
            } else if (t == we && v > n) {
                b.add_edge(v, z, w);
            } else {
                int mid = b.new_internal();
                b.remove_edge(u, v);
                b.add_edge(u, mid, t);
                b.add_edge(mid, v, we - t);
                b.add_edge(mid, z, w);
            }
            attached = true;
            break;
        }
        if (!attached)
            throw Error("tree construction: no consistent attachment for leaf " +
                        std::to_string(z));
    }

    std::vector<Edge> edges;
    for (int u = 1; u <= b.vertex_budget; ++u)
        for (const auto& [v, w] : b.adj[u])
            if (u < v) edges.emplace_back(u, v, w);
    // compact ids (vertex attachment reuse never skips ids, but keep safe)
    std::vector<int> remap(b.vertex_budget + 1, 0);
    int used = n;
    for (int v = 1; v <= b.vertex_budget; ++v)
        if (v <= n)
            remap[v] = v;
        else if (!b.adj[v].empty())
            remap[v] = ++used;
    for (Edge& e : edges) {
        e.u = remap[e.u];
        e.v = remap[e.v];
    }
    WeightedTree tree(used, n, std::move(edges));
    if (positive)
        for (const Edge& e : tree.edges())
            if (e.w <= 0)
                throw InvariantError("tree construction: nonpositive edge {" +
                                     std::to_string(e.u) + "," + std::to_string(e.v) +
                                     "} of weight " + to_string(e.w));
    if (!(tree_two_weights(tree) == distances))
        throw Error("tree construction: built tree does not reproduce the distances");
    return tree;
}

TreeDecision decide_star(const IntervalFamily& family) {
    if (family.variant() != Variant::StarOpen)
        throw VariantError("decide_star: wrong variant " + variant_name(family.variant()));
    const int n = family.n();
    std::vector<Constraint> sys;
    for (const PairIndex& p : all_pairs(n)) {
        LinExpr sum = LinExpr::variable(p.i);
        sum.add_term(p.j, Rational(1));
        LinExpr lower = sum;
        lower.add_constant(-family.lo(p));
        sys.push_back(Constraint{std::move(lower), Sense::Gt});
        LinExpr upper = sum * Rational(-1);
        upper.add_constant(family.hi(p));
        sys.push_back(Constraint{std::move(upper), Sense::Gt});
    }
    linsys::FeasibilityResult r = linsys::fm_feasible(sys);
    TreeDecision decision;
    if (!r.feasible()) {
        decision.rejections.push_back(CandidateRejection{SplitSystem(n), std::move(sys), *r.certificate});
        return decision;
    }
    std::vector<Rational> pendant(n, Rational(0));
    for (int i = 1; i <= n; ++i) {
        auto it = r.sample->find(i);
        if (it != r.sample->end()) pendant[i - 1] = it->second;
    }
    WeightedTree star = make_star(n, pendant);
    DissimilarityVector d = tree_two_weights(star);
    SplitSystem induced = tree_induced_splits(star);
    decision.witness = TreeWitness{std::move(star), std::move(d), std::move(induced)};
    return decision;
}

VerifyReport verify_tree(const WeightedTree& tree, const IntervalFamily& family) {
    VerifyReport report;
    report.ok = true;
    if (family.variant() == Variant::TreePositiveOpen) {
        for (const Edge& e : tree.edges())
            if (e.w <= 0) {
                report.ok = false;
                report.notes.push_back("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                       "} has nonpositive weight " + to_string(e.w));
            }
    }
    if (tree.leaf_count() != family.n()) {
        report.ok = false;
        report.notes.push_back("leaf count differs from the family's n");
        return report;
    }
    const bool open = variant_is_open(family.variant());
    DissimilarityVector d = tree_two_weights(tree);
    for (const PairIndex& p : all_pairs(family.n())) {
        PairCheck check{p, d.at(p), family.lo(p), family.hi(p), false};
        check.ok = open ? (check.distance > check.lo && check.distance < check.hi)
                        : (check.distance >= check.lo && check.distance <= check.hi);
        report.ok = report.ok && check.ok;
        report.pairs.push_back(std::move(check));
    }
    return report;
}

} // namespace distrange
