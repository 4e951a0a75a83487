#pragma once

#include <functional>
#include <string>

#include "owlet/boundary.hpp"
#include "owlet/region.hpp"

namespace owlet::groups {

/// N-indexed sequence of compact regions, the computational stand-in for a
/// Van Hove net. The generator is evaluated lazily; index starts at 1.
struct VanHoveSequence {
    GroupDescriptor group;
    std::string label = "custom";
    std::function<CompactRegion(int)> generator;

    CompactRegion at(int i) const;
};

// ---- Shipped sequence presets ----

VanHoveSequence boxes_sequence(int d);                         // [-n,n]^d in R^d
VanHoveSequence cubes_sequence(int d);                         // {-n..n}^d in Z^d
VanHoveSequence intervals_sequence();                          // {0..n-1} in Z
VanHoveSequence shifted_intervals_sequence();                  // {n..3n} in Z
VanHoveSequence padic_ball_sequence(long long p, int precision);  // p^{-n} Z_p
VanHoveSequence constant_interval_sequence();                  // [0,1] in R, not Van Hove
VanHoveSequence offset_boxes_sequence(int d, Rational offset); // [-n,n]^d + offset

struct DiagnosticRow {
    int index;
    Rational boundary_measure;
    Rational measure;
    Rational ratio;
};

struct VanHoveDiagnostic {
    std::vector<DiagnosticRow> rows;
    double tolerance;
    int tail_length;
    bool pass;  // ratio below tolerance and non-increasing over the final tail
};

/// Table of mu(bd_K A_i)/mu(A_i) with a verdict. Exact ratios throughout.
VanHoveDiagnostic van_hove_diagnostic(const VanHoveSequence& seq, const CompactRegion& K,
                                      int i_max, double tolerance = 1e-2, int tail_length = 5);

struct DilatedSequence {
    VanHoveSequence sequence;                     // i -> K . A_i
    std::vector<std::pair<int, Rational>> ratio;  // mu(K A_i)/mu(A_i)
};

/// Dilation of a Van Hove sequence; the ratio trace tends to 1 for genuine input.
DilatedSequence dilated_sequence(const CompactRegion& K, const VanHoveSequence& seq, int i_max);

/// Diagonal product (i -> A_i x B_i) over the product group.
VanHoveSequence product_sequence(const VanHoveSequence& a, const VanHoveSequence& b);

/// Lattice discretization of a closed box A against the scaled lattice
/// spacing.Z^d with cell C = [0,spacing)^d:
///   f_check = {z : C+sz c A},  f_hat = {z : (cl(C)+sz) n A != {}}.
/// Coordinates are returned in lattice units (multiply by spacing for geometry).
struct LatticeDiscretization {
    FiniteSet f_check;
    FiniteSet f_hat;
    Rational spacing;
};

LatticeDiscretization lattice_discretize(const CompactRegion& box, const Rational& spacing);

}  // namespace owlet::groups
