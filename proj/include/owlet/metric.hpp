#pragma once

#include <cstddef>
#include <vector>

#include "owlet/code.hpp"
#include "owlet/subshift.hpp"

namespace owlet::dynamics {

/// Finite metric space given by an exact rational distance matrix. Symmetry,
/// identity of indiscernibles and the triangle inequality are validated on
/// construction.
struct FiniteMetricSpace {
    std::vector<std::vector<Rational>> dist;

    static FiniteMetricSpace make(std::vector<std::vector<Rational>> dist);
    std::size_t size() const { return dist.size(); }
};

/// Result of a counting query; `exact` false means certified bound only
/// (lower bound for sep, upper bound for spa/cov).
struct CountResult {
    BigInt value;
    bool exact = true;
};

/// Max cardinality of a subset with pairwise distances >= eps.
CountResult sep(const FiniteMetricSpace& m, const Rational& eps, std::size_t exact_limit = 24);
/// Min cardinality of a subset S with every point at distance < eps of S.
CountResult spa(const FiniteMetricSpace& m, const Rational& eps, std::size_t exact_limit = 24);
/// Min number of point-subsets of diameter < eps covering the space.
CountResult cov_metric(const FiniteMetricSpace& m, const Rational& eps,
                       std::size_t exact_limit = 24);

/// Discrete space on the distinct cylinders of s over A + B_r: distance 1
/// between distinct cylinders. At eps = 1, sep = spa = cov = cov(s, A, r).
FiniteMetricSpace cylinder_space(const Subshift& s, const FiniteSet& A, Scale scale,
                                 std::uint64_t budget = 1ull << 22);

}  // namespace owlet::dynamics
