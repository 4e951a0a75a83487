#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "owlet/group.hpp"

namespace owlet::groups {

enum class RegionKind {
    Finite,       // finite set, counting measure
    Box,          // closed rational box in R^d
    IntBox,       // integer grid box {lo..hi}^d in Z^d, counting measure, not materialized
    PadicBall,    // center + p^{-n} Z_p, measure p^n (mu(Z_p) = 1)
    Product,      // product of factor regions
    BoxShell,     // closed outer box minus an open inner box (k_boundary of boxes)
    IntBoxShell,  // grid box minus an inclusive inner grid box
    Union         // finite disjoint union of regions over the same group
};

using Interval = std::pair<Rational, Rational>;  // closed [lo, hi], lo <= hi

/// A computable compact region with exact Haar measure.
struct CompactRegion {
    RegionKind kind = RegionKind::Finite;
    GroupDescriptor group;

    FiniteSet finite;                  // Finite
    std::vector<Interval> box;         // Box / BoxShell outer
    std::vector<Interval> inner_box;   // BoxShell inner (open); empty vector = empty inner
    std::vector<std::pair<long long, long long>> ranges;        // IntBox / IntBoxShell outer
    std::vector<std::pair<long long, long long>> inner_ranges;  // IntBoxShell inner (inclusive)
    Rational center;                   // PadicBall
    int radius_exp = 0;                // PadicBall: ball center + p^{-radius_exp} Z_p
    std::vector<CompactRegion> parts;  // Product factors / Union parts

    static CompactRegion from_finite(FiniteSet s);
    static CompactRegion make_box(std::vector<Interval> intervals);
    static CompactRegion make_box_shell(std::vector<Interval> outer, std::vector<Interval> inner_open);
    static CompactRegion make_int_box(std::vector<std::pair<long long, long long>> ranges);
    static CompactRegion make_int_box_shell(std::vector<std::pair<long long, long long>> outer,
                                            std::vector<std::pair<long long, long long>> inner);
    static CompactRegion make_padic_ball(const GroupDescriptor& g, Rational center, int radius_exp);
    static CompactRegion make_product(std::vector<CompactRegion> factors);
    static CompactRegion make_union(std::vector<CompactRegion> disjoint_parts);

    bool is_empty() const;
};

/// Exact Haar measure: counting / volume / p^n / products / sums.
Rational haar_measure(const CompactRegion& r);

/// Translate a region by a group element (exact; all kinds supported except Union of
/// mixed geometry, which translates part-wise).
CompactRegion translate(const CompactRegion& r, const GroupElement& g);

/// Minkowski dilation K . A for the supported geometry pairings.
/// Throws std::domain_error("unsupported geometry ...") otherwise.
CompactRegion dilate(const CompactRegion& K, const CompactRegion& A);

/// Exact membership test where decidable (Finite, Box, PadicBall, products, shells).
bool region_contains(const CompactRegion& r, const GroupElement& x);

/// Materialize an IntBox (or Finite) region as a FiniteSet; throws over budget.
FiniteSet materialize(const CompactRegion& r, std::size_t budget = 1u << 20);

}  // namespace owlet::groups
