#include "owlet/vanhove.hpp"

#include <stdexcept>

namespace owlet::groups {

CompactRegion VanHoveSequence::at(int i) const {
    if (i < 1) throw std::invalid_argument("sequence index starts at 1");
    CompactRegion r = generator(i);
    if (r.is_empty() || haar_measure(r) == 0)
        throw std::invalid_argument("sequence '" + label + "' produced a null region at index " +
                                    std::to_string(i));
    return r;
}

VanHoveSequence boxes_sequence(int d) {
    VanHoveSequence s;
    s.group = GroupDescriptor::real_vector(d);
    s.label = "boxes:" + std::to_string(d);
    s.generator = [d](int n) {
        std::vector<Interval> iv(d, Interval{Rational(-n), Rational(n)});
        return CompactRegion::make_box(std::move(iv));
    };
    return s;
}

VanHoveSequence offset_boxes_sequence(int d, Rational offset) {
    VanHoveSequence s;
    s.group = GroupDescriptor::real_vector(d);
    s.label = "offset-boxes:" + std::to_string(d);
    s.generator = [d, offset](int n) {
        std::vector<Interval> iv(d, Interval{offset - n, offset + n});
        return CompactRegion::make_box(std::move(iv));
    };
    return s;
}

VanHoveSequence cubes_sequence(int d) {
    VanHoveSequence s;
    s.group = GroupDescriptor::int_lattice(d);
    s.label = "cubes:" + std::to_string(d);
    s.generator = [d](int n) {
        std::vector<std::pair<long long, long long>> rg(d, {-n, n});
        return CompactRegion::make_int_box(std::move(rg));
    };
    return s;
}

VanHoveSequence intervals_sequence() {
    VanHoveSequence s;
    s.group = GroupDescriptor::int_lattice(1);
    s.label = "intervals";
    s.generator = [](int n) { return CompactRegion::make_int_box({{0, n - 1}}); };
    return s;
}

VanHoveSequence shifted_intervals_sequence() {
    VanHoveSequence s;
    s.group = GroupDescriptor::int_lattice(1);
    s.label = "shifted-intervals";
    s.generator = [](int n) { return CompactRegion::make_int_box({{n, 3 * n}}); };
    return s;
}

VanHoveSequence padic_ball_sequence(long long p, int precision) {
    VanHoveSequence s;
    GroupDescriptor g = GroupDescriptor::padic(p, precision);
    s.group = g;
    s.label = "padic-balls:" + std::to_string(p);
    s.generator = [g](int n) { return CompactRegion::make_padic_ball(g, Rational(0), n); };
    return s;
}

VanHoveSequence constant_interval_sequence() {
    VanHoveSequence s;
    s.group = GroupDescriptor::real_vector(1);
    s.label = "constant";
    s.generator = [](int) {
        return CompactRegion::make_box({{Rational(0), Rational(1)}});
    };
    return s;
}

VanHoveDiagnostic van_hove_diagnostic(const VanHoveSequence& seq, const CompactRegion& K,
                                      int i_max, double tolerance, int tail_length) {
    if (i_max < 1) throw std::invalid_argument("i_max must be >= 1");
    VanHoveDiagnostic diag;
    diag.tolerance = tolerance;
    diag.tail_length = tail_length;
    for (int i = 1; i <= i_max; ++i) {
        CompactRegion a = seq.at(i);
        Rational bm = k_boundary_measure(K, a);
        Rational m = haar_measure(a);
        diag.rows.push_back({i, bm, m, bm / m});
    }
    bool pass = to_double(diag.rows.back().ratio) <= tolerance;
    int first = std::max(0, static_cast<int>(diag.rows.size()) - tail_length);
    for (std::size_t j = first + 1; j < diag.rows.size(); ++j)
        if (diag.rows[j].ratio > diag.rows[j - 1].ratio) pass = false;
    diag.pass = pass;
    return diag;
}

DilatedSequence dilated_sequence(const CompactRegion& K, const VanHoveSequence& seq, int i_max) {
    DilatedSequence out;
    out.sequence.group = seq.group;
    out.sequence.label = "dilated(" + seq.label + ")";
    auto base = seq;
    out.sequence.generator = [K, base](int i) { return dilate(K, base.at(i)); };
    for (int i = 1; i <= i_max; ++i) {
        CompactRegion a = seq.at(i);
        out.ratio.push_back({i, haar_measure(dilate(K, a)) / haar_measure(a)});
    }
    return out;
}

VanHoveSequence product_sequence(const VanHoveSequence& a, const VanHoveSequence& b) {
    VanHoveSequence s;
    auto ga = a;
    auto gb = b;
    s.label = a.label + " x " + b.label;
    s.generator = [ga, gb](int i) {
        std::vector<CompactRegion> parts;
        for (const CompactRegion& r : {ga.at(i), gb.at(i)}) {
            if (r.kind == RegionKind::Product)
                parts.insert(parts.end(), r.parts.begin(), r.parts.end());
            else
                parts.push_back(r);
        }
        return CompactRegion::make_product(std::move(parts));
    };
    s.group = s.generator(1).group;
    return s;
}

namespace {

BigInt rational_floor(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

BigInt rational_ceil(const Rational& r) { return -rational_floor(-r); }

}  // namespace

LatticeDiscretization lattice_discretize(const CompactRegion& box, const Rational& spacing) {
    if (box.kind != RegionKind::Box)
        throw std::domain_error("unsupported geometry: lattice_discretize needs a rational box");
    if (spacing <= 0) throw std::invalid_argument("lattice spacing must be positive");
    int d = static_cast<int>(box.box.size());

    // Per axis: cell [sz, sz+s) inside [lo,hi] for f_check, closed cell meeting
    // [lo,hi] for f_hat.
    std::vector<std::pair<long long, long long>> check_rg(d), hat_rg(d);
    bool check_empty = false;
    for (int i = 0; i < d; ++i) {
        const auto& [lo, hi] = box.box[i];
        BigInt clo = rational_ceil(lo / spacing);
        BigInt chi = rational_floor(hi / spacing - 1);
        BigInt hlo = rational_ceil(lo / spacing - 1);
        BigInt hhi = rational_floor(hi / spacing);
        if (clo > chi) check_empty = true;
        check_rg[i] = {clo.convert_to<long long>(), chi.convert_to<long long>()};
        hat_rg[i] = {hlo.convert_to<long long>(), hhi.convert_to<long long>()};
    }

    LatticeDiscretization out;
    out.spacing = spacing;
    out.f_check = check_empty
                      ? FiniteSet::make(GroupDescriptor::int_lattice(d), {})
                      : materialize(CompactRegion::make_int_box(check_rg));
    out.f_hat = materialize(CompactRegion::make_int_box(hat_rg));
    return out;
}

}  // namespace owlet::groups
