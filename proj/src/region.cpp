#include "owlet/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace owlet::groups {

namespace {

Rational box_volume(const std::vector<Interval>& box) {
    Rational v = 1;
    for (const auto& [lo, hi] : box) v *= (hi - lo);
    return v;
}

Rational padic_ball_measure(long long p, int radius_exp) {
    if (radius_exp >= 0) return Rational(int_pow(BigInt(p), static_cast<unsigned>(radius_exp)));
    return Rational(1, int_pow(BigInt(p), static_cast<unsigned>(-radius_exp)));
}

[[noreturn]] void unsupported(const std::string& what) {
    throw std::domain_error("unsupported geometry: " + what);
}

}  // namespace

CompactRegion CompactRegion::from_finite(FiniteSet s) {
    CompactRegion r;
    r.kind = RegionKind::Finite;
    r.group = s.group;
    r.finite = std::move(s);
    return r;
}

CompactRegion CompactRegion::make_box(std::vector<Interval> intervals) {
    if (intervals.empty()) throw std::invalid_argument("box needs at least one interval");
    for (const auto& [lo, hi] : intervals)
        if (lo > hi) throw std::invalid_argument("box interval with lower > upper");
    CompactRegion r;
    r.kind = RegionKind::Box;
    r.group = GroupDescriptor::real_vector(static_cast<int>(intervals.size()));
    r.box = std::move(intervals);
    return r;
}

CompactRegion CompactRegion::make_box_shell(std::vector<Interval> outer,
                                            std::vector<Interval> inner_open) {
    CompactRegion r = make_box(std::move(outer));
    r.kind = RegionKind::BoxShell;
    // An empty or degenerate inner box is normalized to "no inner box".
    bool empty = inner_open.empty();
    for (const auto& [lo, hi] : inner_open)
        if (lo >= hi) empty = true;
    if (!empty) {
        if (inner_open.size() != r.box.size())
            throw std::invalid_argument("shell inner/outer dimension mismatch");
        for (std::size_t i = 0; i < inner_open.size(); ++i)
            if (inner_open[i].first < r.box[i].first || inner_open[i].second > r.box[i].second)
                throw std::invalid_argument("shell inner box must lie inside the outer box");
        r.inner_box = std::move(inner_open);
    }
    return r;
}

CompactRegion CompactRegion::make_int_box(std::vector<std::pair<long long, long long>> ranges) {
    if (ranges.empty()) throw std::invalid_argument("int box needs at least one range");
    for (const auto& [lo, hi] : ranges)
        if (lo > hi) throw std::invalid_argument("int box range with lower > upper");
    CompactRegion r;
    r.kind = RegionKind::IntBox;
    r.group = GroupDescriptor::int_lattice(static_cast<int>(ranges.size()));
    r.ranges = std::move(ranges);
    return r;
}

CompactRegion CompactRegion::make_int_box_shell(std::vector<std::pair<long long, long long>> outer,
                                                std::vector<std::pair<long long, long long>> inner) {
    CompactRegion r = make_int_box(std::move(outer));
    r.kind = RegionKind::IntBoxShell;
    bool empty = inner.empty();
    for (const auto& [lo, hi] : inner)
        if (lo > hi) empty = true;
    if (!empty) {
        if (inner.size() != r.ranges.size())
            throw std::invalid_argument("shell inner/outer dimension mismatch");
        for (std::size_t i = 0; i < inner.size(); ++i)
            if (inner[i].first < r.ranges[i].first || inner[i].second > r.ranges[i].second)
                throw std::invalid_argument("shell inner box must lie inside the outer box");
        r.inner_ranges = std::move(inner);
    }
    return r;
}

CompactRegion CompactRegion::make_padic_ball(const GroupDescriptor& g, Rational center,
                                             int radius_exp) {
    if (g.kind != GroupKind::PadicTruncated)
        throw std::invalid_argument("p-adic ball needs a p-adic group descriptor");
    if (radius_exp > g.precision)
        throw std::domain_error("p-adic ball radius exceeds valuation precision");
    make_padic_element(g, center);  // validates the center
    CompactRegion r;
    r.kind = RegionKind::PadicBall;
    r.group = g;
    r.center = std::move(center);
    r.radius_exp = radius_exp;
    return r;
}

CompactRegion CompactRegion::make_product(std::vector<CompactRegion> factors) {
    if (factors.size() < 2) throw std::invalid_argument("product region needs >= 2 factors");
    std::vector<GroupDescriptor> gs;
    for (const auto& f : factors) {
        if (f.group.kind == GroupKind::Product)
            throw std::invalid_argument("product region factors must be flattened");
        gs.push_back(f.group);
    }
    CompactRegion r;
    r.kind = RegionKind::Product;
    r.group = GroupDescriptor::product(std::move(gs));
    r.parts = std::move(factors);
    return r;
}

CompactRegion CompactRegion::make_union(std::vector<CompactRegion> disjoint_parts) {
    if (disjoint_parts.empty()) throw std::invalid_argument("union needs at least one part");
    for (const auto& p : disjoint_parts)
        if (!(p.group == disjoint_parts.front().group))
            throw std::invalid_argument("union parts over different groups");
    if (disjoint_parts.size() == 1) return disjoint_parts.front();
    CompactRegion r;
    r.kind = RegionKind::Union;
    r.group = disjoint_parts.front().group;
    r.parts = std::move(disjoint_parts);
    return r;
}

bool CompactRegion::is_empty() const {
    switch (kind) {
        case RegionKind::Finite: return finite.elements.empty();
        case RegionKind::Box:
        case RegionKind::IntBox:
        case RegionKind::PadicBall:
        case RegionKind::Product: return false;
        case RegionKind::BoxShell:
        case RegionKind::IntBoxShell: return false;  // outer box is nonempty by construction
        case RegionKind::Union:
            return std::all_of(parts.begin(), parts.end(),
                               [](const CompactRegion& p) { return p.is_empty(); });
    }
    return true;
}

namespace {

Rational int_box_count(const std::vector<std::pair<long long, long long>>& ranges) {
    Rational n = 1;
    for (const auto& [lo, hi] : ranges) n *= Rational(hi - lo + 1);
    return n;
}

}  // namespace

Rational haar_measure(const CompactRegion& r) {
    switch (r.kind) {
        case RegionKind::Finite: return Rational(static_cast<long long>(r.finite.size()));
        case RegionKind::Box: return box_volume(r.box);
        case RegionKind::IntBox: return int_box_count(r.ranges);
        case RegionKind::IntBoxShell: {
            Rational m = int_box_count(r.ranges);
            if (!r.inner_ranges.empty()) m -= int_box_count(r.inner_ranges);
            return m;
        }
        case RegionKind::PadicBall: return padic_ball_measure(r.group.prime, r.radius_exp);
        case RegionKind::Product: {
            Rational m = 1;
            for (const auto& p : r.parts) m *= haar_measure(p);
            return m;
        }
        case RegionKind::BoxShell: {
            Rational m = box_volume(r.box);
            if (!r.inner_box.empty()) m -= box_volume(r.inner_box);
            return m;
        }
        case RegionKind::Union: {
            Rational m = 0;
            for (const auto& p : r.parts) m += haar_measure(p);
            return m;
        }
    }
    throw std::logic_error("unreachable");
}

CompactRegion translate(const CompactRegion& r, const GroupElement& g) {
    switch (r.kind) {
        case RegionKind::Finite: {
            std::vector<GroupElement> out;
            out.reserve(r.finite.size());
            for (const auto& e : r.finite.elements) out.push_back(op(r.group, g, e));
            return CompactRegion::from_finite(FiniteSet::make(r.group, std::move(out)));
        }
        case RegionKind::Box:
        case RegionKind::BoxShell: {
            const auto& shift = g.rats();
            CompactRegion out = r;
            for (std::size_t i = 0; i < out.box.size(); ++i) {
                out.box[i].first += shift[i];
                out.box[i].second += shift[i];
            }
            for (std::size_t i = 0; i < out.inner_box.size(); ++i) {
                out.inner_box[i].first += shift[i];
                out.inner_box[i].second += shift[i];
            }
            return out;
        }
        case RegionKind::IntBox:
        case RegionKind::IntBoxShell: {
            const auto& shift = g.ints();
            CompactRegion out = r;
            for (std::size_t i = 0; i < out.ranges.size(); ++i) {
                out.ranges[i].first += shift[i];
                out.ranges[i].second += shift[i];
            }
            for (std::size_t i = 0; i < out.inner_ranges.size(); ++i) {
                out.inner_ranges[i].first += shift[i];
                out.inner_ranges[i].second += shift[i];
            }
            return out;
        }
        case RegionKind::PadicBall: {
            CompactRegion out = r;
            out.center = r.center + g.padic();
            return out;
        }
        case RegionKind::Product: {
            const auto& t = g.tuple();
            std::vector<CompactRegion> fs;
            fs.reserve(r.parts.size());
            for (std::size_t i = 0; i < r.parts.size(); ++i)
                fs.push_back(translate(r.parts[i], t[i]));
            return CompactRegion::make_product(std::move(fs));
        }
        case RegionKind::Union: {
            std::vector<CompactRegion> ps;
            ps.reserve(r.parts.size());
            for (const auto& p : r.parts) ps.push_back(translate(p, g));
            return CompactRegion::make_union(std::move(ps));
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

/// Merge closed 1-d intervals into a disjoint union (overlapping or touching
/// intervals coalesce), returned sorted.
std::vector<Interval> merge_intervals(std::vector<Interval> iv) {
    std::sort(iv.begin(), iv.end());
    std::vector<Interval> out;
    for (auto& [lo, hi] : iv) {
        if (!out.empty() && lo <= out.back().second) {
            if (hi > out.back().second) out.back().second = hi;
        } else {
            out.push_back({lo, hi});
        }
    }
    return out;
}

CompactRegion boxes_to_region(const std::vector<Interval>& iv) {
    std::vector<CompactRegion> parts;
    for (const auto& i : iv) parts.push_back(CompactRegion::make_box({i}));
    return CompactRegion::make_union(std::move(parts));
}

std::vector<Interval> collect_1d_boxes(const CompactRegion& r) {
    if (r.kind == RegionKind::Box && r.box.size() == 1) return {r.box[0]};
    if (r.kind == RegionKind::Union) {
        std::vector<Interval> out;
        for (const auto& p : r.parts) {
            auto sub = collect_1d_boxes(p);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    unsupported("expected 1-d boxes or a union of 1-d boxes");
}

}  // namespace

CompactRegion dilate(const CompactRegion& K, const CompactRegion& A) {
    if (!(K.group == A.group)) unsupported("dilation across different groups");

    if (K.kind == RegionKind::Finite && A.kind == RegionKind::Finite)
        return CompactRegion::from_finite(minkowski(K.finite, A.finite));

    if (K.kind == RegionKind::IntBox && A.kind == RegionKind::IntBox) {
        std::vector<std::pair<long long, long long>> out(A.ranges.size());
        for (std::size_t i = 0; i < A.ranges.size(); ++i)
            out[i] = {K.ranges[i].first + A.ranges[i].first,
                      K.ranges[i].second + A.ranges[i].second};
        return CompactRegion::make_int_box(std::move(out));
    }

    if (K.kind == RegionKind::Box && A.kind == RegionKind::Box) {
        std::vector<Interval> out(A.box.size());
        for (std::size_t i = 0; i < A.box.size(); ++i)
            out[i] = {K.box[i].first + A.box[i].first, K.box[i].second + A.box[i].second};
        return CompactRegion::make_box(std::move(out));
    }

    if (K.kind == RegionKind::Box && K.box.size() == 1 &&
        (A.kind == RegionKind::Union || A.kind == RegionKind::Box)) {
        auto ivs = collect_1d_boxes(A);
        for (auto& [lo, hi] : ivs) {
            lo += K.box[0].first;
            hi += K.box[0].second;
        }
        return boxes_to_region(merge_intervals(std::move(ivs)));
    }

    if (K.kind == RegionKind::PadicBall && A.kind == RegionKind::PadicBall) {
        return CompactRegion::make_padic_ball(A.group, K.center + A.center,
                                              std::max(K.radius_exp, A.radius_exp));
    }

    // Finitely many p-adic translates of a ball: distinct cosets of the ball group.
    if (K.kind == RegionKind::Finite && A.kind == RegionKind::PadicBall) {
        std::vector<CompactRegion> balls;
        for (const auto& k : K.finite.elements) {
            Rational c = k.padic() + A.center;
            bool dup = false;
            for (const auto& b : balls) {
                Rational diff = b.center - c;
                if (diff == 0 || padic_valuation(diff, BigInt(A.group.prime)) >= -A.radius_exp) {
                    dup = true;
                    break;
                }
            }
            if (!dup) balls.push_back(CompactRegion::make_padic_ball(A.group, c, A.radius_exp));
        }
        return CompactRegion::make_union(std::move(balls));
    }

    if (K.kind == RegionKind::Product && A.kind == RegionKind::Product &&
        K.parts.size() == A.parts.size()) {
        std::vector<CompactRegion> fs;
        for (std::size_t i = 0; i < K.parts.size(); ++i)
            fs.push_back(dilate(K.parts[i], A.parts[i]));
        return CompactRegion::make_product(std::move(fs));
    }

    // Singleton acts by translation.
    if (K.kind == RegionKind::Finite && K.finite.size() == 1)
        return translate(A, K.finite.elements.front());

    unsupported("dilation of " + A.group.str() + " region by the given pairing");
}

bool region_contains(const CompactRegion& r, const GroupElement& x) {
    switch (r.kind) {
        case RegionKind::Finite: return r.finite.contains(x);
        case RegionKind::IntBox: {
            const auto& c = x.ints();
            for (std::size_t i = 0; i < r.ranges.size(); ++i)
                if (c[i] < r.ranges[i].first || c[i] > r.ranges[i].second) return false;
            return true;
        }
        case RegionKind::IntBoxShell: {
            const auto& c = x.ints();
            for (std::size_t i = 0; i < r.ranges.size(); ++i)
                if (c[i] < r.ranges[i].first || c[i] > r.ranges[i].second) return false;
            if (r.inner_ranges.empty()) return true;
            for (std::size_t i = 0; i < r.inner_ranges.size(); ++i)
                if (c[i] < r.inner_ranges[i].first || c[i] > r.inner_ranges[i].second) return true;
            return false;
        }
        case RegionKind::Box: {
            const auto& c = x.rats();
            for (std::size_t i = 0; i < r.box.size(); ++i)
                if (c[i] < r.box[i].first || c[i] > r.box[i].second) return false;
            return true;
        }
        case RegionKind::BoxShell: {
            const auto& c = x.rats();
            for (std::size_t i = 0; i < r.box.size(); ++i)
                if (c[i] < r.box[i].first || c[i] > r.box[i].second) return false;
            if (r.inner_box.empty()) return true;
            for (std::size_t i = 0; i < r.inner_box.size(); ++i)
                if (c[i] <= r.inner_box[i].first || c[i] >= r.inner_box[i].second) return true;
            return false;
        }
        case RegionKind::PadicBall: {
            Rational diff = x.padic() - r.center;
            if (diff == 0) return true;
            return padic_valuation(diff, BigInt(r.group.prime)) >= -r.radius_exp;
        }
        case RegionKind::Product: {
            const auto& t = x.tuple();
            for (std::size_t i = 0; i < r.parts.size(); ++i)
                if (!region_contains(r.parts[i], t[i])) return false;
            return true;
        }
        case RegionKind::Union:
            return std::any_of(r.parts.begin(), r.parts.end(),
                               [&](const CompactRegion& p) { return region_contains(p, x); });
    }
    throw std::logic_error("unreachable");
}

FiniteSet materialize(const CompactRegion& r, std::size_t budget) {
    if (r.kind == RegionKind::Finite) return r.finite;
    if (r.kind == RegionKind::IntBox) {
        Rational n = int_box_count(r.ranges);
        if (n > Rational(static_cast<long long>(budget)))
            throw std::domain_error("materialize: int box of " + rat_str(n) +
                                    " points exceeds budget " + std::to_string(budget));
        std::vector<GroupElement> out;
        std::vector<long long> cur;
        cur.reserve(r.ranges.size());
        for (const auto& [lo, hi] : r.ranges) cur.push_back(lo);
        while (true) {
            out.push_back(make_int_element(cur));
            int i = static_cast<int>(cur.size()) - 1;
            while (i >= 0 && cur[i] == r.ranges[i].second) cur[i] = r.ranges[i].first, --i;
            if (i < 0) break;
            ++cur[i];
        }
        return FiniteSet::make(r.group, std::move(out));
    }
    unsupported("materialize of non-discrete region");
}

}  // namespace owlet::groups
