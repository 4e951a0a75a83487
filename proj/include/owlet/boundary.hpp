#pragma once

#include "owlet/region.hpp"

namespace owlet::groups {

/// K-boundary of A: the set K.cl(A) n K.cl(A^c) of group elements g whose
/// translate K^{-1}g meets both A and its complement.
///
/// Supported pairings: finite/finite in discrete groups, box/box in R^d,
/// (p-adic ball or finite translate set)/(p-adic ball). Anything else throws
/// std::domain_error("unsupported geometry ...").
CompactRegion k_boundary(const CompactRegion& K, const CompactRegion& A);

/// Exact measure of the K-boundary. Supports everything k_boundary supports,
/// plus factor-wise products: for K = prod K_i and A = prod A_i the measure is
/// prod mu(K_i cl(A_i)) - prod (mu(K_i cl(A_i)) - mu(bd_{K_i} A_i)).
Rational k_boundary_measure(const CompactRegion& K, const CompactRegion& A);

}  // namespace owlet::groups
