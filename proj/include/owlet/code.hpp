#pragma once

#include <string>
#include <vector>

#include "owlet/subshift.hpp"

namespace owlet::dynamics {

/// Sliding-block factor map: the target symbol at site t is rule[encode(x on
/// t + N)], the same local rule at every site. The rule table is indexed by
/// the mixed-radix encoding of the neighborhood pattern (first neighborhood
/// offset = most significant digit, source-alphabet base).
struct SlidingBlockCode {
    Subshift source;
    Subshift target;
    FiniteSet neighborhood;
    std::vector<int> rule;
    std::string name = "code";

    static SlidingBlockCode make(Subshift source, Subshift target, FiniteSet neighborhood,
                                 std::vector<int> rule, std::string name = "code");
    /// Radius-0 code given by a per-symbol map.
    static SlidingBlockCode symbol_map(Subshift source, Subshift target,
                                       std::vector<int> symbol_to_symbol,
                                       std::string name = "symbol-map");
    static SlidingBlockCode identity(const Subshift& s);
    static SlidingBlockCode to_point(const Subshift& s);

    bool is_symbol_map() const;
    /// Image of a neighborhood pattern (symbols in neighborhood order).
    int apply(const std::vector<int>& window) const;
};

/// q after p; the composed neighborhood is the Minkowski sum of the two.
SlidingBlockCode compose(const SlidingBlockCode& p, const SlidingBlockCode& q);

/// Largest fiber complexity at the given scale: max over target patterns y on
/// the window A + B_r + N + B_m of the number of distinct source patterns on
/// A + B_r extendable to a locally admissible pattern mapping to y.
BigInt fiber_cov(const SlidingBlockCode& code, const FiniteSet& A, Scale scale,
                 std::uint64_t budget = 1ull << 24);

/// Desk-scale surjectivity: every admissible target pattern on {-w..w}^d has
/// a realizable preimage window. Exponential; keep w small.
bool surjective_on_window(const SlidingBlockCode& code, int window_radius,
                          std::uint64_t budget = 1ull << 22);

}  // namespace owlet::dynamics
