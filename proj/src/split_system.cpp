#include "distrange/split_system.hpp"

#include <algorithm>
#include <map>

#include "distrange/errors.hpp"
#include "distrange/topology.hpp"

namespace distrange {

QuartetSplit::QuartetSplit(int p, int q, int r, int s) {
    int x[4] = {p, q, r, s};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (x[i] == x[j]) throw InvariantError("quartet split: labels must be distinct");
    a = std::min(p, q);
    b = std::max(p, q);
    c = std::min(r, s);
    d = std::max(r, s);
    if (c < a) {
        std::swap(a, c);
        std::swap(b, d);
    }
}

std::array<int, 4> QuartetSplit::quartet() const {
    std::array<int, 4> q{a, b, c, d};
    std::sort(q.begin(), q.end());
    return q;
}

std::string QuartetSplit::str() const {
    return std::to_string(a) + "," + std::to_string(b) + "|" + std::to_string(c) + "," +
           std::to_string(d);
}

SplitSystem::SplitSystem(int n, std::vector<QuartetSplit> members) : n_(n) {
    for (const QuartetSplit& s : members) insert(s);
}

void SplitSystem::insert(const QuartetSplit& s) {
    if (s.d > n_ || s.b > n_ || s.a < 1)
        throw InvariantError("split system: split " + s.str() + " uses labels outside [n]");
    members_.insert(s);
}

std::string SplitSystem::str() const {
    std::string out;
    for (const QuartetSplit& s : members_) {
        if (!out.empty()) out += " ";
        out += s.str();
    }
    return out;
}

namespace {

// The three splits of a sorted quartet {q0,q1,q2,q3}, in canonical order:
// (q0,q1|q2,q3), (q0,q2|q1,q3), (q0,q3|q1,q2).
std::array<QuartetSplit, 3> quartet_splits(const std::array<int, 4>& q) {
    return {QuartetSplit(q[0], q[1], q[2], q[3]), QuartetSplit(q[0], q[2], q[1], q[3]),
            QuartetSplit(q[0], q[3], q[1], q[2])};
}

template <typename F>
void for_each_quartet(int n, F&& f) {
    for (int a = 1; a <= n - 3; ++a)
        for (int b = a + 1; b <= n - 2; ++b)
            for (int c = b + 1; c <= n - 1; ++c)
                for (int d = c + 1; d <= n; ++d)
                    if (!f(std::array<int, 4>{a, b, c, d})) return;
}

} // namespace

std::optional<FatViolation> is_fat(const SplitSystem& system) {
    std::optional<FatViolation> violation;
    for_each_quartet(system.n(), [&](const std::array<int, 4>& q) {
        int count = 0;
        for (const QuartetSplit& s : quartet_splits(q))
            if (system.contains(s)) ++count;
        if (count != 1 && count != 3) {
            violation = FatViolation{q, count};
            return false;
        }
        return true;
    });
    return violation;
}

std::optional<TransitivityViolation> is_transitive(const SplitSystem& system) {
    const int n = system.n();
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (b == a) continue;
            for (int c = 1; c <= n; ++c) {
                if (c == a || c == b) continue;
                for (int d = 1; d <= n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    QuartetSplit p1(a, b, c, d);
                    if (!system.contains(p1)) continue;
                    for (int e = 1; e <= n; ++e) {
                        if (e == a || e == b || e == c || e == d) continue;
                        QuartetSplit p2(a, b, c, e);
                        if (!system.contains(p2)) continue;
                        QuartetSplit conclusion(a, b, d, e);
                        if (!system.contains(conclusion))
                            return TransitivityViolation{p1, p2, conclusion};
                    }
                }
            }
        }
    return std::nullopt;
}

std::optional<SaturationViolation> is_saturated(const SplitSystem& system) {
    const int n = system.n();
    for (const QuartetSplit& s : system.members()) {
        for (int x = 1; x <= n; ++x) {
            if (x == s.a || x == s.b || x == s.c || x == s.d) continue;
            // every reading (a1,a2|b1,b2) of the unordered pairing
            const std::array<std::array<int, 4>, 8> readings{{{s.a, s.b, s.c, s.d},
                                                              {s.a, s.b, s.d, s.c},
                                                              {s.b, s.a, s.c, s.d},
                                                              {s.b, s.a, s.d, s.c},
                                                              {s.c, s.d, s.a, s.b},
                                                              {s.c, s.d, s.b, s.a},
                                                              {s.d, s.c, s.a, s.b},
                                                              {s.d, s.c, s.b, s.a}}};
            for (const auto& [a1, a2, b1, b2] : readings) {
                QuartetSplit option1(a1, x, b1, b2);
                QuartetSplit option2(a1, a2, b1, x);
                if (!system.contains(option1) && !system.contains(option2))
                    return SaturationViolation{s, x, option1, option2};
            }
        }
    }
    return std::nullopt;
}

std::string predicate_failure(const SplitSystem& system) {
    if (auto fat = is_fat(system)) {
        auto& q = fat->quartet;
        return "is_fat fails: quartet {" + std::to_string(q[0]) + "," + std::to_string(q[1]) +
               "," + std::to_string(q[2]) + "," + std::to_string(q[3]) + "} contributes " +
               std::to_string(fat->split_count) + " splits";
    }
    if (auto tr = is_transitive(system))
        return "is_transitive fails: " + tr->premise1.str() + " and " + tr->premise2.str() +
               " lack " + tr->missing.str();
    if (auto sat = is_saturated(system))
        return "is_saturated fails: " + sat->split.str() + " does not extend to point " +
               std::to_string(sat->point);
    return {};
}

SplitSystem tree_induced_splits(const WeightedTree& tree) {
    const int n = tree.leaf_count();
    SplitSystem system(n);
    if (n < 4) return system;

    // vertex sets of all leaf-leaf paths
    std::map<std::pair<int, int>, std::vector<int>> paths;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<int> p = tree.path_vertices(i, j);
            std::sort(p.begin(), p.end());
            paths[{i, j}] = std::move(p);
        }
    auto disjoint = [&](int i, int j, int k, int l) {
        const std::vector<int>& p = paths[{i, j}];
        const std::vector<int>& q = paths[{k, l}];
        std::vector<int> common;
        std::set_intersection(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(common));
        return common.empty();
    };

    for_each_quartet(n, [&](const std::array<int, 4>& q) {
        bool any = false;
        const std::array<std::array<int, 4>, 3> pairings{{{q[0], q[1], q[2], q[3]},
                                                          {q[0], q[2], q[1], q[3]},
                                                          {q[0], q[3], q[1], q[2]}}};
        for (const auto& [i, j, k, l] : pairings)
            if (disjoint(i, j, k, l)) {
                system.insert(QuartetSplit(i, j, k, l));
                any = true;
            }
        if (!any)
            for (const QuartetSplit& s : quartet_splits(q)) system.insert(s);
        return true;
    });
    return system;
}

namespace {

// ---- raw enumeration: backtracking over per-quartet choices ----------------

struct SplitRef {
    int quartet_index = -1;
    int split_index = -1; // 0..2 within quartet_splits of that quartet
};

struct RawTables {
    std::vector<std::array<int, 4>> quartets;               // lexicographic
    std::vector<std::array<QuartetSplit, 3>> splits;        // per quartet
    std::map<QuartetSplit, SplitRef> index;                 // split -> position
    // checks become active once every involved quartet is assigned
    struct TransInstance {
        SplitRef p1, p2, conclusion;
    };
    struct SatInstance {
        SplitRef premise, option1, option2;
    };
    std::vector<std::vector<TransInstance>> trans_by_trigger; // per quartet index
    std::vector<std::vector<SatInstance>> sat_by_trigger;
};

RawTables build_raw_tables(int n) {
    RawTables t;
    for_each_quartet(n, [&](const std::array<int, 4>& q) {
        int qi = static_cast<int>(t.quartets.size());
        t.quartets.push_back(q);
        t.splits.push_back(quartet_splits(q));
        for (int k = 0; k < 3; ++k) t.index[t.splits.back()[k]] = SplitRef{qi, k};
        return true;
    });
    const int Q = static_cast<int>(t.quartets.size());
    t.trans_by_trigger.resize(Q);
    t.sat_by_trigger.resize(Q);

    std::set<std::tuple<QuartetSplit, QuartetSplit, QuartetSplit>> trans_seen;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (b == a) continue;
            for (int c = 1; c <= n; ++c) {
                if (c == a || c == b) continue;
                for (int d = 1; d <= n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    for (int e = 1; e <= n; ++e) {
                        if (e == a || e == b || e == c || e == d) continue;
                        QuartetSplit p1(a, b, c, d), p2(a, b, c, e), con(a, b, d, e);
                        auto key = std::tuple(std::min(p1, p2), std::max(p1, p2), con);
                        if (!trans_seen.insert(key).second) continue;
                        SplitRef r1 = t.index.at(p1), r2 = t.index.at(p2), rc = t.index.at(con);
                        int trigger = std::max({r1.quartet_index, r2.quartet_index, rc.quartet_index});
                        t.trans_by_trigger[trigger].push_back({r1, r2, rc});
                    }
                }
            }
        }

    std::set<std::tuple<QuartetSplit, QuartetSplit, QuartetSplit>> sat_seen;
    for (std::size_t qi = 0; qi < t.quartets.size(); ++qi) {
        for (const QuartetSplit& s : t.splits[qi]) {
            for (int x = 1; x <= n; ++x) {
                if (x == s.a || x == s.b || x == s.c || x == s.d) continue;
                const std::array<std::array<int, 4>, 8> readings{{{s.a, s.b, s.c, s.d},
                                                                  {s.a, s.b, s.d, s.c},
                                                                  {s.b, s.a, s.c, s.d},
                                                                  {s.b, s.a, s.d, s.c},
                                                                  {s.c, s.d, s.a, s.b},
                                                                  {s.c, s.d, s.b, s.a},
                                                                  {s.d, s.c, s.a, s.b},
                                                                  {s.d, s.c, s.b, s.a}}};
                for (const auto& [a1, a2, b1, b2] : readings) {
                    QuartetSplit o1(a1, x, b1, b2), o2(a1, a2, b1, x);
                    auto key = std::tuple(s, std::min(o1, o2), std::max(o1, o2));
                    if (!sat_seen.insert(key).second) continue;
                    SplitRef rp = t.index.at(s), r1 = t.index.at(o1), r2 = t.index.at(o2);
                    int trigger = std::max({rp.quartet_index, r1.quartet_index, r2.quartet_index});
                    t.sat_by_trigger[trigger].push_back({rp, r1, r2});
                }
            }
        }
    }
    return t;
}

// choice encoding per quartet: 0..2 = that single split, 3 = all three
bool choice_contains(const std::vector<int>& choice, const SplitRef& r) {
    int c = choice[r.quartet_index];
    return c == 3 || c == r.split_index;
}

bool raw_checks_pass(const RawTables& t, const std::vector<int>& choice, int quartet_index) {
    for (const auto& inst : t.trans_by_trigger[quartet_index])
        if (choice_contains(choice, inst.p1) && choice_contains(choice, inst.p2) &&
            !choice_contains(choice, inst.conclusion))
            return false;
    for (const auto& inst : t.sat_by_trigger[quartet_index])
        if (choice_contains(choice, inst.premise) && !choice_contains(choice, inst.option1) &&
            !choice_contains(choice, inst.option2))
            return false;
    return true;
}

bool raw_backtrack(const RawTables& t, std::vector<int>& choice, std::size_t depth, int n,
                   const std::function<bool(const SplitSystem&)>& visit) {
    if (depth == t.quartets.size()) {
        SplitSystem system(n);
        for (std::size_t qi = 0; qi < t.quartets.size(); ++qi) {
            if (choice[qi] == 3)
                for (const QuartetSplit& s : t.splits[qi]) system.insert(s);
            else
                system.insert(t.splits[qi][choice[qi]]);
        }
        return visit(system);
    }
    for (int c = 0; c < 4; ++c) {
        choice[depth] = c;
        if (!raw_checks_pass(t, choice, static_cast<int>(depth))) continue;
        if (!raw_backtrack(t, choice, depth + 1, n, visit)) return false;
    }
    choice[depth] = -1;
    return true;
}

} // namespace

void for_each_candidate_system(int n, CandidateStrategy strategy,
                               const std::function<bool(const SplitSystem&)>& visit) {
    if (n < 4) throw PreconditionError("candidate enumeration: need n >= 4");
    if (strategy == CandidateStrategy::Topology) {
        std::vector<std::pair<int, SplitSystem>> systems;
        for (const Topology& t : enumerate_topologies(n))
            systems.emplace_back(t.internal_edge_count(), tree_induced_splits(unit_tree(t)));
        std::sort(systems.begin(), systems.end());
        systems.erase(std::unique(systems.begin(), systems.end()), systems.end());
        for (const auto& [edges, s] : systems)
            if (!visit(s)) return;
        return;
    }
    RawTables tables = build_raw_tables(n);
    std::vector<int> choice(tables.quartets.size(), -1);
    raw_backtrack(tables, choice, 0, n, visit);
}

std::vector<SplitSystem> enumerate_candidate_systems(int n, CandidateStrategy strategy) {
    std::vector<SplitSystem> out;
    for_each_candidate_system(n, strategy, [&](const SplitSystem& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

} // namespace distrange
