#include "owlet/owlimit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace owlet::entropy {

OWEstimate make_estimate(std::vector<OWRow> rows, int tail_window) {
    if (rows.empty()) throw std::invalid_argument("estimate needs at least one trace row");
    OWEstimate est;
    est.trace = std::move(rows);
    est.tail_window = tail_window;
    std::size_t w = std::min<std::size_t>(tail_window, est.trace.size());
    std::size_t first = est.trace.size() - w;

    double df = est.trace.back().f_value - est.trace[first].f_value;
    double dm = est.trace.back().measure - est.trace[first].measure;
    if (w >= 2 && std::abs(dm) > 1e-12) {
        est.tail = df / dm;
    } else {
        double sum = 0;
        for (std::size_t i = first; i < est.trace.size(); ++i) sum += est.trace[i].ratio;
        est.tail = sum / double(w);
    }
    est.band = 0;
    for (std::size_t i = first; i < est.trace.size(); ++i)
        est.band = std::max(est.band, std::abs(est.trace[i].ratio - est.tail));
    return est;
}

OWEstimate ow_limit(const SubadditiveFunction& f, const VanHoveSequence& seq, int i_max,
                    const std::function<double(const groups::CompactRegion&)>& normalizer) {
    if (i_max < 1) throw std::invalid_argument("i_max must be >= 1");
    std::vector<OWRow> rows;
    for (int i = 1; i <= i_max; ++i) {
        groups::CompactRegion a = seq.at(i);
        double value;
        try {
            value = f.eval(a);
        } catch (const std::domain_error& e) {
            throw std::domain_error(std::string(e.what()) + " (at sequence index " +
                                    std::to_string(i) + ")");
        }
        double m = normalizer ? normalizer(a) : to_double(groups::haar_measure(a));
        if (m <= 0) throw std::invalid_argument("normalizer must be positive along the sequence");
        rows.push_back({i, value, m, value / m});
    }
    return make_estimate(std::move(rows));
}

CrossCheckReport ow_crosscheck(const SubadditiveFunction& f, const VanHoveSequence& seq_a,
                               const VanHoveSequence& seq_b, int i_max, double tolerance) {
    CrossCheckReport rep;
    rep.first = ow_limit(f, seq_a, i_max);
    rep.second = ow_limit(f, seq_b, i_max);
    rep.delta = std::abs(rep.first.tail - rep.second.tail);
    rep.tolerance = tolerance;
    rep.pass = rep.delta <= tolerance + rep.first.band + rep.second.band;
    return rep;
}

namespace {

/// closure(C) translated over a 1-d rational patch: merged interval union.
groups::CompactRegion tile_union_1d(const cps::FundamentalDomain& fd,
                                    const FiniteSet& patch) {
    Rational s = fd.closure.box.at(0).second;  // tile [0, s]
    std::vector<std::pair<Rational, Rational>> iv;
    for (const auto& e : patch.elements) {
        Rational x = e.rats().at(0);
        iv.push_back({x, x + s});
    }
    std::sort(iv.begin(), iv.end());
    std::vector<groups::CompactRegion> parts;
    Rational lo = iv.front().first, hi = iv.front().second;
    for (std::size_t i = 1; i < iv.size(); ++i) {
        if (iv[i].first <= hi) {
            hi = std::max(hi, iv[i].second);
        } else {
            parts.push_back(groups::CompactRegion::make_box({{lo, hi}}));
            lo = iv[i].first;
            hi = iv[i].second;
        }
    }
    parts.push_back(groups::CompactRegion::make_box({{lo, hi}}));
    if (parts.size() == 1) return parts.front();
    return groups::CompactRegion::make_union(std::move(parts));
}

/// d >= 2: the patch must be a full Cartesian grid whose per-axis tiles merge
/// into one contiguous interval each, so the tile union is a single box.
groups::CompactRegion tile_union_grid(const cps::FundamentalDomain& fd,
                                      const FiniteSet& patch) {
    int d = fd.ambient.dim;
    Rational s = fd.closure.box.at(0).second;
    std::vector<std::vector<Rational>> axes(d);
    for (const auto& e : patch.elements)
        for (int ax = 0; ax < d; ++ax) axes[ax].push_back(e.rats().at(ax));
    std::size_t grid = 1;
    std::vector<groups::Interval> box;
    for (auto& a : axes) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        grid *= a.size();
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] - a[i - 1] > s)
                throw std::domain_error(
                    "unsupported region algebra: patch tiles leave a gap along an axis");
        box.push_back({a.front(), a.back() + s});
    }
    if (grid != patch.size())
        throw std::domain_error("unsupported region algebra: patch is not a full grid");
    return groups::CompactRegion::make_box(std::move(box));
}

}  // namespace

double lattice_transfer_value(const SubadditiveFunction& f, const cps::FundamentalDomain& fd,
                              const FiniteSet& patch) {
    if (!(patch.group == fd.ambient))
        throw std::invalid_argument("patch group does not match the lattice's ambient group");
    if (patch.size() == 0) throw std::invalid_argument("patch must be nonempty");

    if (fd.ambient.kind == groups::GroupKind::RealVector) {
        if (fd.ambient.dim != 1) return f.eval(tile_union_grid(fd, patch));
        return f.eval(tile_union_1d(fd, patch));
    }
    if (fd.ambient.kind == groups::GroupKind::IntLattice) {
        auto tile = groups::materialize(fd.closure);
        return f.eval(groups::CompactRegion::from_finite(groups::minkowski(tile, patch)));
    }
    // Heisenberg preset: the tile is {e}.
    return f.eval(groups::CompactRegion::from_finite(patch));
}

TransferReport lattice_transfer_check(const SubadditiveFunction& f,
                                      const cps::FundamentalDomain& fd,
                                      const VanHoveSequence& seq, int i_max, double tolerance) {
    TransferReport rep;
    rep.covolume = to_double(fd.covolume);

    std::vector<OWRow> rows;
    for (int j = 1; j <= i_max; ++j) {
        FiniteSet patch = [&] {
            if (fd.ambient.kind == groups::GroupKind::RealVector) {
                Rational s = fd.closure.box.at(0).second;
                std::vector<groups::GroupElement> elems;
                for (int z = 0; z < j; ++z) elems.push_back(groups::make_rat_element({s * z}));
                return FiniteSet::make(fd.ambient, std::move(elems));
            }
            if (fd.ambient.kind == groups::GroupKind::IntLattice) {
                // cubes of lattice points {0, n, ..., (j-1) n} per axis
                std::size_t d = fd.closure.ranges.size();
                std::vector<groups::GroupElement> elems;
                std::vector<long long> idx(d, 0);
                while (true) {
                    std::vector<long long> v(d);
                    for (std::size_t ax = 0; ax < d; ++ax)
                        v[ax] = idx[ax] * (fd.closure.ranges[ax].second + 1);
                    elems.push_back(groups::make_int_element(std::move(v)));
                    std::size_t ax = 0;
                    while (ax < d && ++idx[ax] == j) idx[ax++] = 0;
                    if (ax == d) break;
                }
                return FiniteSet::make(fd.ambient, std::move(elems));
            }
            throw std::domain_error("unsupported region algebra: no canonical patches for " +
                                    fd.lattice);
        }();
        double value = lattice_transfer_value(f, fd, patch);
        rows.push_back({j, value, double(patch.size()), value / double(patch.size())});
    }
    rep.lattice_side = make_estimate(std::move(rows));
    rep.group_side = ow_limit(f, seq, i_max);
    rep.delta = std::abs(rep.lattice_side.tail - rep.covolume * rep.group_side.tail);
    rep.pass = rep.delta <=
               tolerance + rep.lattice_side.band + rep.covolume * rep.group_side.band;
    return rep;
}

}  // namespace owlet::entropy
