#include "owlet/cps.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace owlet::cps {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

BigInt quad5_floor(const Quad5& q) {
    BigInt c(static_cast<long long>(std::floor(q.to_double())));
    while (Quad5(Rational(c)) > q) --c;
    while (Quad5(Rational(c + 1)) <= q) ++c;
    return c;
}

BigInt quad5_ceil(const Quad5& q) { return -quad5_floor(-q); }

long long to_ll(const BigInt& b) { return b.convert_to<long long>(); }

}  // namespace

ModelSetDesc ModelSetDesc::parse(const std::string& preset) {
    ModelSetDesc ms;
    ms.name = preset;
    if (preset == "trivial-z") {
        ms.kind = SchemeKind::TrivialZ;
        return ms;
    }
    if (preset == "fibonacci") {
        ms.kind = SchemeKind::Fibonacci;
        return ms;
    }
    auto parts = split(preset, ':');
    if (parts.size() == 4 && parts[0] == "padic") {
        ms.kind = SchemeKind::Padic;
        ms.p = std::stoll(parts[1]);
        ms.window_radius = parse_rational(parts[2]);
        ms.depth = std::stoi(parts[3]);
        if (!is_prime(ms.p)) throw std::invalid_argument("padic preset needs a prime, got " + parts[1]);
        if (ms.window_radius <= 0) throw std::invalid_argument("padic window radius must be positive");
        if (ms.depth < 1) throw std::invalid_argument("padic depth must be >= 1");
        return ms;
    }
    throw std::invalid_argument("unknown scheme preset '" + preset +
                                "' (expected trivial-z | fibonacci | padic:<p>:<R>:<depth>)");
}

GroupDescriptor ModelSetDesc::physical_group() const {
    if (kind == SchemeKind::Padic) return GroupDescriptor::padic(p, depth);
    return GroupDescriptor::real_vector(1);
}

Quad5 ModelSetDesc::covolume() const {
    switch (kind) {
        case SchemeKind::TrivialZ: return Quad5(1);
        // det [[1, tau], [1, 1-tau]] = 1 - 2 tau = -sqrt5, covolume sqrt5
        case SchemeKind::Fibonacci: return Quad5::sqrt5();
        // Z[1/p] diagonal in Q_p x R: fundamental domain Z_p x [0,1)
        case SchemeKind::Padic: return Quad5(1);
    }
    throw std::logic_error("unreachable");
}

Quad5 ModelSetDesc::window_measure() const {
    switch (kind) {
        case SchemeKind::TrivialZ: return Quad5(1);  // counting measure of {e}
        case SchemeKind::Fibonacci: return Quad5::tau();  // mu((-1, tau-1]) = tau
        case SchemeKind::Padic: return Quad5(2 * window_radius);
    }
    throw std::logic_error("unreachable");
}

Quad5 ModelSetDesc::density_oracle() const { return window_measure() / covolume(); }

std::vector<Quad5> enumerate_model_set(const ModelSetDesc& ms, const Rational& lo,
                                       const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("query interval is empty");
    std::vector<Quad5> out;
    if (ms.kind == SchemeKind::TrivialZ) {
        BigInt a = quad5_ceil(Quad5(lo)), b = quad5_floor(Quad5(hi));
        for (BigInt n = a; n <= b; ++n) out.push_back(Quad5(Rational(n)));
        return out;
    }
    if (ms.kind == SchemeKind::Padic) {
        for (const Rational& r : enumerate_padic_points(ms, ms.depth))
            if (r >= lo && r <= hi) out.push_back(Quad5(r));
        std::sort(out.begin(), out.end());
        return out;
    }

    // Fibonacci: x = m + n tau with star m + n (1 - tau) in (-1, tau-1].
    // From x - x* = n sqrt5, the coefficient n is boxed by the query and the
    // window; m then ranges over an exact interval intersection.
    Quad5 tau = Quad5::tau(), s5 = Quad5::sqrt5(), one(1);
    long long n_lo = to_ll(quad5_floor((Quad5(lo) - (tau - one)) / s5)) - 1;
    long long n_hi = to_ll(quad5_ceil((Quad5(hi) + one) / s5)) + 1;
    for (long long n = n_lo; n <= n_hi; ++n) {
        Quad5 ntau = Rational(n) * tau;
        Quad5 nstar = Quad5(Rational(n)) - ntau;  // n (1 - tau)
        BigInt m_min = quad5_ceil(Quad5(lo) - ntau);
        BigInt m_max = quad5_floor(Quad5(hi) - ntau);
        // window: -1 < m + nstar <= tau - 1
        Quad5 w_lo = Quad5(-1) - nstar;
        BigInt m_min_w = quad5_floor(w_lo) + 1;
        if (Quad5(Rational(m_min_w)) == w_lo) ++m_min_w;  // strict lower end
        BigInt m_max_w = quad5_floor(tau - one - nstar);
        m_min = std::max(m_min, m_min_w);
        m_max = std::min(m_max, m_max_w);
        for (BigInt m = m_min; m <= m_max; ++m) out.push_back(Quad5(Rational(m)) + ntau);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> enumerate_padic_points(const ModelSetDesc& ms, int ball_radius_exp) {
    if (ms.kind != SchemeKind::Padic)
        throw std::invalid_argument("ball queries apply to the p-adic scheme only");
    if (ball_radius_exp < 0 || ball_radius_exp > ms.depth)
        throw std::invalid_argument("ball radius exponent must lie in [0, depth]");
    std::vector<Rational> out;
    BigInt denom = 1;
    for (int k = 0; k <= ball_radius_exp; ++k) {
        BigInt a_max = numerator(ms.window_radius * Rational(denom)) /
                       denominator(ms.window_radius * Rational(denom));
        for (BigInt a = -a_max; a <= a_max; ++a) {
            if (k > 0 && a % ms.p == 0) continue;  // lower form already listed
            Rational x = Rational(a) / Rational(denom);
            if (x >= -ms.window_radius && x <= ms.window_radius) out.push_back(x);
        }
        denom *= ms.p;
    }
    std::sort(out.begin(), out.end());
    return out;
}

double internal_fill_gap(const ModelSetDesc& ms, long long sweep) {
    if (ms.kind == SchemeKind::TrivialZ) return 0.0;  // internal group is a point
    std::vector<Quad5> stars;
    Quad5 w_lo, w_hi;
    if (ms.kind == SchemeKind::Fibonacci) {
        Quad5 tau = Quad5::tau(), one(1);
        w_lo = Quad5(-1);
        w_hi = tau - one;
        for (long long m = -sweep; m <= sweep; ++m)
            for (long long n = -sweep; n <= sweep; ++n) {
                Quad5 star = Quad5(Rational(m)) + Rational(n) * (one - tau);
                if (star > w_lo && star <= w_hi) stars.push_back(star);
            }
    } else {
        w_lo = Quad5(-ms.window_radius);
        w_hi = Quad5(ms.window_radius);
        for (const Rational& r : enumerate_padic_points(ms, ms.depth))
            stars.push_back(Quad5(r));
    }
    std::sort(stars.begin(), stars.end());
    if (stars.empty()) return (w_hi - w_lo).to_double();
    double gap = (stars.front() - w_lo).to_double();
    gap = std::max(gap, (w_hi - stars.back()).to_double());
    for (std::size_t i = 1; i < stars.size(); ++i)
        gap = std::max(gap, (stars[i] - stars[i - 1]).to_double());
    return gap;
}

namespace {

void finish_trace(DensityTrace& t, int tail_window) {
    int first = std::max(0, static_cast<int>(t.rows.size()) - tail_window);
    double lo = 0, hi = 0, sum = 0;
    int n = 0;
    for (std::size_t i = first; i < t.rows.size(); ++i) {
        double v = to_double(t.rows[i].ratio);
        if (n == 0) lo = hi = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        ++n;
    }
    t.tail = n ? sum / n : 0;
    t.band = (hi - lo) / 2;
}

}  // namespace

DensityTrace uniform_density(const ModelSetDesc& ms, int i_max, int tail_window) {
    if (i_max < 1) throw std::invalid_argument("i_max must be >= 1");
    DensityTrace t;
    if (ms.kind == SchemeKind::Padic) {
        if (i_max > ms.depth)
            throw std::invalid_argument("p-adic density trace is capped at the truncation depth " +
                                        std::to_string(ms.depth));
        Rational mu = 1;
        for (int i = 1; i <= i_max; ++i) {
            mu *= ms.p;
            BigInt count(enumerate_padic_points(ms, i).size());
            t.rows.push_back({i, count, mu, Rational(count) / mu});
        }
    } else {
        for (int i = 1; i <= i_max; ++i) {
            BigInt count(enumerate_model_set(ms, Rational(-i), Rational(i)).size());
            Rational mu(2 * i);
            t.rows.push_back({i, count, mu, Rational(count) / mu});
        }
    }
    finish_trace(t, tail_window);
    return t;
}

DensityTrace sublattice_density(const std::vector<long long>& moduli, int i_max,
                                int tail_window) {
    if (moduli.empty()) throw std::invalid_argument("sublattice needs at least one modulus");
    for (long long n : moduli)
        if (n < 1) throw std::invalid_argument("sublattice moduli must be >= 1");
    DensityTrace t;
    for (int i = 1; i <= i_max; ++i) {
        BigInt count = 1;
        BigInt cube = 1;
        for (long long n : moduli) {
            count *= BigInt(2 * (i / n) + 1);  // multiples of n in {-i..i}
            cube *= BigInt(2 * i + 1);
        }
        t.rows.push_back({i, count, Rational(cube), Rational(count) / Rational(cube)});
    }
    finish_trace(t, tail_window);
    return t;
}

MeyerReport meyer_check(const std::vector<Quad5>& patch, const Rational& patch_lo,
                        const Rational& patch_hi, const Rational& query_lo,
                        const Rational& query_hi, const Rational& k_bound,
                        const Rational& f_bound) {
    MeyerReport rep;
    if (query_lo >= query_hi) throw std::invalid_argument("query interval is empty");
    Rational width = query_hi - query_lo;
    Rational need_lo = std::min(Rational(query_lo - k_bound), Rational(-width - f_bound));
    Rational need_hi = std::max(Rational(query_hi + k_bound), Rational(width + f_bound));
    if (patch_lo > need_lo || patch_hi < need_hi) {
        rep.conclusive = false;
        rep.status = "inconclusive: patch [" + rat_str(patch_lo) + "," + rat_str(patch_hi) +
                     "] does not cover the boundary-safe range [" + rat_str(need_lo) + "," +
                     rat_str(need_hi) + "]";
        return rep;
    }
    rep.conclusive = true;
    rep.status = "ok";

    // Relative density: the largest distance from a query point to the patch.
    std::vector<Quad5> near;
    for (const Quad5& x : patch)
        if (x >= Quad5(query_lo - k_bound) && x <= Quad5(query_hi + k_bound)) near.push_back(x);
    Quad5 needed(0);
    if (near.empty()) {
        needed = Quad5(k_bound) + Quad5(1);
    } else {
        auto dist_to = [&](const Quad5& x) {
            Quad5 best = x - near.front();
            if (best.sign() < 0) best = -best;
            for (const Quad5& p : near) {
                Quad5 d = x - p;
                if (d.sign() < 0) d = -d;
                if (d < best) best = d;
            }
            return best;
        };
        needed = std::max(dist_to(Quad5(query_lo)), dist_to(Quad5(query_hi)));
        for (std::size_t i = 1; i < near.size(); ++i) {
            Quad5 mid = Rational(1, 2) * (near[i] + near[i - 1]);
            if (mid > Quad5(query_lo) && mid < Quad5(query_hi))
                needed = std::max(needed, Rational(1, 2) * (near[i] - near[i - 1]));
        }
    }
    rep.relatively_dense = needed <= Quad5(k_bound);
    rep.dense_witness_radius = k_bound;
    for (int j = 64; j >= 1; --j) {
        Rational r = k_bound * Rational(j, 64);
        if (needed <= Quad5(r)) rep.dense_witness_radius = r;
    }

    // Meyer difference property: (omega - omega) over the query covered by
    // finitely many translates f + omega with |f| <= f_bound.
    std::vector<Quad5> in_query;
    for (const Quad5& x : patch)
        if (x >= Quad5(query_lo) && x <= Quad5(query_hi)) in_query.push_back(x);
    std::vector<Quad5> diffs;
    for (const Quad5& x : in_query)
        for (const Quad5& y : in_query) diffs.push_back(x - y);
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());

    auto in_patch = [&](const Quad5& x) {
        auto it = std::lower_bound(patch.begin(), patch.end(), x);
        return it != patch.end() && *it == x;
    };

    std::vector<Quad5> candidates;
    Quad5 fb(f_bound);
    for (const Quad5& d : diffs) {
        auto lo_it = std::lower_bound(patch.begin(), patch.end(), d - fb);
        for (auto it = lo_it; it != patch.end() && *it <= d + fb; ++it)
            candidates.push_back(d - *it);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<char> covered(diffs.size(), 0);
    std::size_t remaining = diffs.size();
    while (remaining > 0) {
        std::size_t best_gain = 0;
        Quad5 best_f;
        for (const Quad5& f : candidates) {
            std::size_t gain = 0;
            for (std::size_t i = 0; i < diffs.size(); ++i)
                if (!covered[i] && in_patch(diffs[i] - f)) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best_f = f;
            }
        }
        if (best_gain == 0) break;
        rep.difference_witness.push_back(best_f);
        for (std::size_t i = 0; i < diffs.size(); ++i)
            if (!covered[i] && in_patch(diffs[i] - best_f)) {
                covered[i] = 1;
                --remaining;
            }
    }
    rep.meyer_difference = remaining == 0;
    if (!rep.meyer_difference) rep.difference_witness.clear();
    return rep;
}

FundamentalDomain fundamental_domain_zd(int d, const Rational& scale) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (scale <= 0) throw std::invalid_argument("lattice scale must be positive");
    FundamentalDomain fd;
    fd.lattice = "zd:" + std::to_string(d) + ":" + rat_str(scale);
    fd.ambient = GroupDescriptor::real_vector(d);
    fd.closure = CompactRegion::make_box(
        std::vector<groups::Interval>(d, {Rational(0), scale}));
    fd.covolume = 1;
    for (int i = 0; i < d; ++i) fd.covolume *= scale;
    return fd;
}

FundamentalDomain fundamental_domain_nzd(std::vector<long long> moduli) {
    if (moduli.empty()) throw std::invalid_argument("sublattice needs at least one modulus");
    FundamentalDomain fd;
    fd.lattice = "nzd:";
    std::vector<std::pair<long long, long long>> ranges;
    fd.covolume = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i] < 1) throw std::invalid_argument("sublattice moduli must be >= 1");
        ranges.push_back({0, moduli[i] - 1});
        fd.covolume *= moduli[i];
        fd.lattice += (i ? "," : "") + std::to_string(moduli[i]);
    }
    fd.ambient = GroupDescriptor::int_lattice(static_cast<int>(moduli.size()));
    fd.closure = CompactRegion::make_int_box(std::move(ranges));
    return fd;
}

FundamentalDomain fundamental_domain_heis() {
    FundamentalDomain fd;
    fd.lattice = "heis";
    fd.ambient = GroupDescriptor::heisenberg();
    fd.closure = CompactRegion::from_finite(
        groups::singleton(fd.ambient, groups::identity(fd.ambient)));
    fd.covolume = 1;
    return fd;
}

FundamentalDomain parse_fundamental_domain(const std::string& preset) {
    if (preset == "heis") return fundamental_domain_heis();
    auto parts = split(preset, ':');
    if (parts.size() >= 2 && parts[0] == "zd") {
        int d = std::stoi(parts[1]);
        Rational scale = parts.size() >= 3 ? parse_rational(parts[2]) : Rational(1);
        return fundamental_domain_zd(d, scale);
    }
    if (parts.size() == 2 && parts[0] == "nzd") {
        std::vector<long long> moduli;
        for (const std::string& tok : split(parts[1], ',')) moduli.push_back(std::stoll(tok));
        return fundamental_domain_nzd(std::move(moduli));
    }
    throw std::invalid_argument("unknown lattice preset '" + preset +
                                "' (expected zd:<d>[:<scale>] | nzd:<n1,...> | heis)");
}

}  // namespace owlet::cps
