#ifndef DISTRANGE_PAIR_INDEX_HPP
#define DISTRANGE_PAIR_INDEX_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "distrange/errors.hpp"

namespace distrange {

/// Unordered 2-subset {i,j} of the labeled points 1..n, stored sorted so
/// {i,j} and {j,i} are the same key.
struct PairIndex {
    int i = 0; // smaller label
    int j = 0; // larger label

    PairIndex() = default;
    PairIndex(int a, int b) : i(a < b ? a : b), j(a < b ? b : a) {
        if (a == b || a < 1 || b < 1) throw InvariantError("pair index: labels must be distinct and >= 1");
    }

    auto operator<=>(const PairIndex&) const = default;

    std::string str() const { return "{" + std::to_string(i) + "," + std::to_string(j) + "}"; }
};

/// Lexicographic rank of {i,j} among the 2-subsets of [n]:
/// (1,2),(1,3),...,(1,n),(2,3),... -> 0,1,...
inline int pair_rank(int n, const PairIndex& p) {
    return (p.i - 1) * (2 * n - p.i) / 2 + (p.j - p.i - 1);
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Inverse of pair_rank.
inline PairIndex pair_from_rank(int n, int rank) {
    for (int i = 1; i < n; ++i) {
        int row = n - i;
        if (rank < row) return PairIndex(i, i + 1 + rank);
        rank -= row;
    }
    throw InvariantError("pair rank out of range");
}

/// All pairs of [n] in lexicographic order.
inline std::vector<PairIndex> all_pairs(int n) {
    std::vector<PairIndex> ps;
    ps.reserve(pair_count(n));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) ps.emplace_back(i, j);
    return ps;
}

/// Total map PairIndex -> T over the 2-subsets of [n], stored densely.
template <typename T>
class PairTable {
  public:
    PairTable() = default;
    explicit PairTable(int n, const T& init = T{}) : n_(n), values_(pair_count(n), init) {
        if (n < 2) throw InvariantError("pair table: need n >= 2");
    }

    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }

    T& at(const PairIndex& p) { return values_[check(p)]; }
    const T& at(const PairIndex& p) const { return values_[check(p)]; }
    T& at(int i, int j) { return at(PairIndex(i, j)); }
    const T& at(int i, int j) const { return at(PairIndex(i, j)); }

    bool operator==(const PairTable&) const = default;

  private:
    std::size_t check(const PairIndex& p) const {
        if (p.j > n_) throw InvariantError("pair table: label " + std::to_string(p.j) + " exceeds n");
        return static_cast<std::size_t>(pair_rank(n_, p));
    }

    int n_ = 0;
    std::vector<T> values_;
};

} // namespace distrange

#endif
