#include "owlet/boundary.hpp"

#include <limits>
#include <optional>
#include <stdexcept>

namespace owlet::groups {

namespace {

[[noreturn]] void unsupported(const std::string& what) {
    throw std::domain_error("unsupported geometry: k_boundary of " + what);
}

CompactRegion empty_region(const GroupDescriptor& g) {
    return CompactRegion::from_finite(FiniteSet::make(g, {}));
}

CompactRegion discrete_boundary(const CompactRegion& K, const CompactRegion& A) {
    const FiniteSet& Kf = K.finite;
    const FiniteSet& Af = A.finite;
    FiniteSet KA = minkowski(Kf, Af);
    FiniteSet Kinv = minkowski_inverse(Kf);
    std::vector<GroupElement> out;
    for (const auto& g : KA.elements) {
        // g lies in the boundary iff K^{-1}g is not fully inside A.
        bool escapes = false;
        for (const auto& k : Kinv.elements) {
            if (!Af.contains(op(Af.group, k, g))) {
                escapes = true;
                break;
            }
        }
        if (escapes) out.push_back(g);
    }
    return CompactRegion::from_finite(FiniteSet::make(Af.group, std::move(out)));
}

CompactRegion box_boundary(const CompactRegion& K, const CompactRegion& A) {
    // Outer box: K + A. Inner open box: the erosion {g : g - K c int A},
    // per axis (a_lo + k_hi, a_hi + k_lo).
    std::vector<Interval> outer(A.box.size()), inner(A.box.size());
    for (std::size_t i = 0; i < A.box.size(); ++i) {
        const auto& [alo, ahi] = A.box[i];
        const auto& [klo, khi] = K.box[i];
        outer[i] = {klo + alo, khi + ahi};
        inner[i] = {alo + khi, ahi + klo};
    }
    return CompactRegion::make_box_shell(std::move(outer), std::move(inner));
}

CompactRegion padic_boundary(const CompactRegion& K, const CompactRegion& A) {
    if (K.kind == RegionKind::PadicBall) {
        if (K.radius_exp <= A.radius_exp) return empty_region(A.group);
        // A larger ball smears A over every coset it meets: the boundary is all of K+A.
        return dilate(K, A);
    }
    // K is a finite translate set: KA is a union of cosets of the ball group;
    // one coset means no boundary, several mean the whole union is boundary.
    CompactRegion KA = dilate(K, A);
    std::size_t cosets = (KA.kind == RegionKind::Union) ? KA.parts.size() : 1;
    if (cosets <= 1) return empty_region(A.group);
    return KA;
}

CompactRegion int_box_boundary(const CompactRegion& K, const CompactRegion& A) {
    // Discrete analogue of the box shell: KA minus {g : K^{-1}g c A}.
    std::vector<std::pair<long long, long long>> outer(A.ranges.size()), inner(A.ranges.size());
    for (std::size_t i = 0; i < A.ranges.size(); ++i) {
        const auto& [alo, ahi] = A.ranges[i];
        const auto& [klo, khi] = K.ranges[i];
        outer[i] = {klo + alo, khi + ahi};
        inner[i] = {alo + khi, ahi + klo};
    }
    return CompactRegion::make_int_box_shell(std::move(outer), std::move(inner));
}

/// Recognize a finite set that is a full grid box in Z^d.
std::optional<CompactRegion> as_int_box(const FiniteSet& s) {
    if (s.group.kind != GroupKind::IntLattice || s.elements.empty()) return std::nullopt;
    std::size_t d = s.elements.front().ints().size();
    std::vector<std::pair<long long, long long>> ranges(
        d, {std::numeric_limits<long long>::max(), std::numeric_limits<long long>::min()});
    for (const auto& e : s.elements)
        for (std::size_t i = 0; i < d; ++i) {
            ranges[i].first = std::min(ranges[i].first, e.ints()[i]);
            ranges[i].second = std::max(ranges[i].second, e.ints()[i]);
        }
    Rational full = 1;
    for (const auto& [lo, hi] : ranges) full *= Rational(hi - lo + 1);
    if (full != Rational(static_cast<long long>(s.size()))) return std::nullopt;
    return CompactRegion::make_int_box(std::move(ranges));
}

}  // namespace

CompactRegion k_boundary(const CompactRegion& K, const CompactRegion& A) {
    if (!(K.group == A.group))
        throw std::invalid_argument("k_boundary: group mismatch between " + K.group.str() +
                                    " and " + A.group.str());

    if (K.kind == RegionKind::Finite && A.kind == RegionKind::Finite) {
        if (!A.group.is_discrete()) unsupported("finite sets in a non-discrete group");
        // Full grid boxes admit a closed-form shell; fall back to enumeration.
        if (A.group.kind == GroupKind::IntLattice) {
            auto kb = as_int_box(K.finite);
            auto ab = as_int_box(A.finite);
            if (kb && ab) return int_box_boundary(*kb, *ab);
        }
        return discrete_boundary(K, A);
    }
    if (K.kind == RegionKind::IntBox && A.kind == RegionKind::IntBox)
        return int_box_boundary(K, A);
    if (K.kind == RegionKind::Finite && A.kind == RegionKind::IntBox) {
        if (auto kb = as_int_box(K.finite)) return int_box_boundary(*kb, A);
        return discrete_boundary(CompactRegion::from_finite(K.finite),
                                 CompactRegion::from_finite(materialize(A)));
    }
    if (K.kind == RegionKind::IntBox && A.kind == RegionKind::Finite)
        return discrete_boundary(CompactRegion::from_finite(materialize(K)), A);
    if (K.kind == RegionKind::Box && A.kind == RegionKind::Box) return box_boundary(K, A);
    if (A.kind == RegionKind::PadicBall &&
        (K.kind == RegionKind::PadicBall || K.kind == RegionKind::Finite))
        return padic_boundary(K, A);
    unsupported("the given region pairing in " + A.group.str());
}

Rational k_boundary_measure(const CompactRegion& K, const CompactRegion& A) {
    if (K.kind == RegionKind::Product && A.kind == RegionKind::Product &&
        K.parts.size() == A.parts.size()) {
        Rational dilated = 1, interior = 1;
        for (std::size_t i = 0; i < K.parts.size(); ++i) {
            Rational di = haar_measure(dilate(K.parts[i], A.parts[i]));
            Rational bi = k_boundary_measure(K.parts[i], A.parts[i]);
            dilated *= di;
            interior *= di - bi;
        }
        return dilated - interior;
    }
    return haar_measure(k_boundary(K, A));
}

}  // namespace owlet::groups
