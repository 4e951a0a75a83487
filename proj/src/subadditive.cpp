#include "owlet/subadditive.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "owlet/boundary.hpp"

namespace owlet::entropy {

double log_big(const BigInt& n) {
    if (n <= 0) throw std::domain_error("log of a nonpositive count");
    std::size_t bits = msb(n);
    if (bits < 900) return std::log(n.convert_to<double>());
    BigInt shifted = n >> (bits - 512);
    return std::log(shifted.convert_to<double>()) +
           static_cast<double>(bits - 512) * std::log(2.0);
}

namespace {

groups::FiniteSet as_finite(const groups::CompactRegion& r) {
    return groups::materialize(r);
}

}  // namespace

SubadditiveFunction SubadditiveFunction::log_pattern_count(Subshift s) {
    SubadditiveFunction f;
    f.tag = "log-pattern-count:" + s.name;
    f.group = GroupDescriptor::int_lattice(s.dim);
    f.eval = [s = std::move(s)](const CompactRegion& r) {
        return log_big(dynamics::count_patterns(s, as_finite(r)));
    };
    spot_verify(f);
    return f;
}

SubadditiveFunction SubadditiveFunction::log_fiber_cov(SlidingBlockCode code, Scale scale) {
    SubadditiveFunction f;
    f.tag = "log-fiber-cov:" + code.name + ":r" + std::to_string(scale.radius);
    f.group = GroupDescriptor::int_lattice(code.source.dim);
    f.eval = [code = std::move(code), scale](const CompactRegion& r) {
        return log_big(dynamics::fiber_cov(code, as_finite(r), scale));
    };
    spot_verify(f);
    return f;
}

SubadditiveFunction SubadditiveFunction::dilation_volume(CompactRegion k0) {
    SubadditiveFunction f;
    f.tag = "dilation-volume";
    f.group = k0.group;
    f.eval = [k0 = std::move(k0)](const CompactRegion& r) {
        return to_double(groups::haar_measure(groups::dilate(k0, r)));
    };
    spot_verify(f);
    return f;
}

SubadditiveFunction SubadditiveFunction::linear(const GroupDescriptor& g, const Rational& c) {
    if (c < 0) throw std::invalid_argument("linear coefficient must be nonnegative");
    SubadditiveFunction f;
    f.tag = "linear:" + rat_str(c);
    f.group = g;
    f.eval = [c](const CompactRegion& r) { return to_double(c * groups::haar_measure(r)); };
    spot_verify(f);
    return f;
}

void spot_verify(const SubadditiveFunction& f, unsigned seed) {
    std::mt19937 rng(seed);
    const double eps = 1e-9;

    if (f.group.kind == groups::GroupKind::IntLattice) {
        int d = f.group.dim;
        auto random_set = [&](long long lo, long long hi) {
            std::vector<groups::GroupElement> elems;
            std::uniform_int_distribution<long long> coord(lo, hi);
            int n = 1 + int(rng() % 5);
            for (int i = 0; i < n; ++i) {
                std::vector<long long> v(d);
                for (auto& x : v) x = coord(rng);
                elems.push_back(groups::make_int_element(std::move(v)));
            }
            return groups::FiniteSet::make(f.group, std::move(elems));
        };
        for (int trial = 0; trial < 4; ++trial) {
            auto a = random_set(0, 6);
            auto b = random_set(20, 26);  // far from a: disjoint
            auto both = groups::FiniteSet::make(
                f.group, [&] {
                    auto e = a.elements;
                    e.insert(e.end(), b.elements.begin(), b.elements.end());
                    return e;
                }());
            double fa = f.eval(CompactRegion::from_finite(a));
            double fb = f.eval(CompactRegion::from_finite(b));
            double fab = f.eval(CompactRegion::from_finite(both));
            if (f.subadditive && fab > fa + fb + eps)
                throw std::logic_error(f.tag + ": subadditivity spot check failed");
            if (f.monotone && (fab < fa - eps || fab < fb - eps))
                throw std::logic_error(f.tag + ": monotonicity spot check failed");
            if (f.right_invariant) {
                std::vector<long long> g(d, 3);
                auto shifted = groups::minkowski(
                    a, groups::singleton(f.group, groups::make_int_element(g)));
                double fs = f.eval(CompactRegion::from_finite(shifted));
                if (std::abs(fs - fa) > eps)
                    throw std::logic_error(f.tag + ": invariance spot check failed");
            }
        }
        return;
    }

    if (f.group.kind == groups::GroupKind::RealVector) {
        int d = f.group.dim;
        for (int trial = 0; trial < 4; ++trial) {
            long long n = 1 + (long long)(rng() % 5);
            std::vector<groups::Interval> small(d, {Rational(-n), Rational(n)});
            std::vector<groups::Interval> big(d, {Rational(-n - 2), Rational(n + 2)});
            auto A = CompactRegion::make_box(small);
            auto B = CompactRegion::make_box(big);
            double fa = f.eval(A), fb = f.eval(B);
            if (f.monotone && fa > fb + eps)
                throw std::logic_error(f.tag + ": monotonicity spot check failed");
            if (f.right_invariant) {
                std::vector<Rational> shift(d, Rational(7, 2));
                double fs = f.eval(groups::translate(A, groups::make_rat_element(shift)));
                if (std::abs(fs - fa) > eps)
                    throw std::logic_error(f.tag + ": invariance spot check failed");
            }
        }
        return;
    }
    // Other groups: nothing cheap to check; the declared flags stand as given.
}

}  // namespace owlet::entropy
