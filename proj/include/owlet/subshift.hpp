#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "owlet/group.hpp"

namespace owlet::dynamics {

using groups::FiniteSet;
using Site = std::vector<long long>;

/// Finite partial configuration: assignment of symbols to finitely many sites.
struct Pattern {
    std::vector<std::pair<Site, int>> cells;  // sorted by site, total on its support

    static Pattern make(std::vector<std::pair<Site, int>> cells);
    std::size_t size() const { return cells.size(); }
};

/// Subshift of finite type over Z^d given by forbidden patterns. An empty
/// forbidden list is the full shift. Pattern counts are taken with the
/// admissibility margin: a pattern on F counts when it extends to a pattern on
/// F + B_margin with no fully visible forbidden occurrence.
struct Subshift {
    int alphabet = 2;
    int dim = 1;
    std::vector<Pattern> forbidden;
    int margin = 0;
    std::string name = "sft";

    static Subshift full_shift(int k, int d = 1);
    static Subshift golden_mean();            // forbid "11" in Z
    static Subshift hard_square();            // forbid adjacent 1s in Z^2
    static Subshift single_point(int d = 1);  // one symbol, entropy 0
    /// Product of two Z-subshifts on the paired alphabet k1*k2.
    static Subshift product(const Subshift& a, const Subshift& b);

    bool is_full_shift() const { return forbidden.empty(); }
    /// Maximum forbidden-pattern coordinate span (0 for full shifts).
    int forbidden_span() const;
};

/// Cylinder scale: the entourage "equal on the centered box of radius r".
struct Scale {
    int radius = 0;
};

/// Centered grid ball B_r = {-r..r}^d as a finite set.
FiniteSet centered_ball(int d, int r);

/// Number of margin-admissible patterns on F (exact). Throws
/// std::domain_error("enumeration budget ...") when the d=2 sweep would
/// exceed `budget` search nodes.
BigInt count_patterns(const Subshift& s, const FiniteSet& F,
                      std::uint64_t budget = 1ull << 26);

/// Minimal cover cardinality at cylinder scale r over the Bowen set A:
/// equals count_patterns on A + B_r (cylinders partition the space).
BigInt cov(const Subshift& s, const FiniteSet& A, Scale scale,
           std::uint64_t budget = 1ull << 26);

/// Explicit list of margin-admissible patterns on F (symbols in site-sorted
/// order). Exponential; only for small instances.
std::vector<std::vector<int>> enumerate_patterns(const Subshift& s, const FiniteSet& F,
                                                 std::uint64_t budget = 1ull << 22);

}  // namespace owlet::dynamics
