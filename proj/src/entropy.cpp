#include "owlet/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace owlet::entropy {

namespace {

using dynamics::centered_ball;
using groups::FiniteSet;

void finish_report(EntropyReport& rep) {
    if (rep.per_scale.empty()) throw std::logic_error("entropy report without scales");
    const ScaleEstimate* best = &rep.per_scale.front();
    for (const auto& se : rep.per_scale)
        if (se.estimate.tail > best->estimate.tail) best = &se;
    rep.sup_value = rep.density_factor * best->estimate.tail;
    rep.band = rep.density_factor * best->estimate.band;
}

}  // namespace

EntropyReport topological_entropy(const Subshift& s, const VanHoveSequence& seq,
                                  const std::vector<int>& scales, int i_max,
                                  std::uint64_t budget) {
    if (scales.empty()) throw std::invalid_argument("at least one scale is required");
    EntropyReport rep;
    rep.label = "entropy:" + s.name;
    for (int r : scales) {
        std::vector<OWRow> rows;
        for (int i = 1; i <= i_max; ++i) {
            FiniteSet f = groups::materialize(seq.at(i));
            FiniteSet padded = groups::minkowski(f, centered_ball(s.dim, r));
            double value = log_big(dynamics::count_patterns(s, padded, budget));
            rows.push_back({i, value, double(padded.size()), value / double(padded.size())});
        }
        rep.per_scale.push_back({r, make_estimate(std::move(rows))});
    }
    finish_report(rep);
    return rep;
}

EntropyReport relative_entropy(const SlidingBlockCode& code, const VanHoveSequence& seq,
                               const std::vector<int>& scales, int i_max,
                               std::uint64_t budget) {
    if (scales.empty()) throw std::invalid_argument("at least one scale is required");
    EntropyReport rep;
    rep.label = "relative-entropy:" + code.name;
    for (int r : scales) {
        std::vector<OWRow> rows;
        for (int i = 1; i <= i_max; ++i) {
            FiniteSet f = groups::materialize(seq.at(i));
            FiniteSet padded = groups::minkowski(f, centered_ball(code.source.dim, r));
            double value = log_big(dynamics::fiber_cov(code, f, dynamics::Scale{r}, budget));
            rows.push_back({i, value, double(padded.size()), value / double(padded.size())});
        }
        rep.per_scale.push_back({r, make_estimate(std::move(rows))});
    }
    finish_report(rep);
    return rep;
}

namespace {

/// Lambda-sites of the sublattice inside the cube {-i..i}^d, padded by the
/// Lambda-ball of radius r, then fleshed out with the n-block per axis. The
/// result is the contiguous box holding those blocks; `site_count` receives
/// the number of padded Lambda-sites.
FiniteSet sublattice_support(const std::vector<long long>& moduli, int i, int r,
                             double& site_count) {
    std::size_t d = moduli.size();
    std::vector<std::pair<long long, long long>> ranges(d);
    site_count = 1;
    for (std::size_t ax = 0; ax < d; ++ax) {
        long long k = i / moduli[ax];  // multiples of n in [-i, i]
        long long lo = -(k + r) * moduli[ax];
        long long hi = (k + r) * moduli[ax] + moduli[ax] - 1;
        ranges[ax] = {lo, hi};
        site_count *= double(2 * (k + r) + 1);
    }
    return groups::materialize(groups::CompactRegion::make_int_box(std::move(ranges)),
                               std::size_t(1) << 24);
}

FiniteSet fibonacci_sample(int i) {
    auto pts = cps::enumerate_model_set(cps::ModelSetDesc::parse("fibonacci"), Rational(-i),
                                        Rational(i));
    std::vector<groups::GroupElement> elems;
    for (const Quad5& q : pts)
        elems.push_back(groups::make_int_element({llround(q.to_double())}));
    return FiniteSet::make(groups::GroupDescriptor::int_lattice(1), std::move(elems));
}

}  // namespace

EntropyReport lattice_restricted_entropy(const Subshift& s, const RestrictionSpec& restriction,
                                         const std::vector<int>& scales, int i_max,
                                         bool apply_density, std::uint64_t budget) {
    if (scales.empty()) throw std::invalid_argument("at least one scale is required");
    EntropyReport rep;

    if (!restriction.moduli.empty()) {
        if (static_cast<int>(restriction.moduli.size()) != s.dim)
            throw std::invalid_argument("one sublattice modulus per dimension is required");
        double covol = 1;
        std::string label;
        for (long long n : restriction.moduli) {
            if (n < 1) throw std::invalid_argument("sublattice moduli must be >= 1");
            covol *= double(n);
            label += (label.empty() ? "" : ",") + std::to_string(n);
        }
        rep.label = "restricted:" + s.name + ":" + label;
        rep.density_factor = apply_density ? 1.0 / covol : 1.0;
        for (int r : scales) {
            std::vector<OWRow> rows;
            for (int i = 1; i <= i_max; ++i) {
                double sites = 1;
                FiniteSet support = sublattice_support(restriction.moduli, i, r, sites);
                double value = log_big(dynamics::count_patterns(s, support, budget));
                rows.push_back({i, value, sites, value / sites});
            }
            rep.per_scale.push_back({r, make_estimate(std::move(rows))});
        }
        finish_report(rep);
        return rep;
    }

    if (restriction.model_preset != "fibonacci")
        throw std::invalid_argument("model-set restriction supports the fibonacci preset only");
    if (s.dim != 1)
        throw std::invalid_argument("model-set restriction applies to Z-subshifts");
    rep.label = "restricted:" + s.name + ":fibonacci";
    auto dens = cps::ModelSetDesc::parse("fibonacci").density_oracle().to_double();
    rep.density_factor = apply_density ? dens : 1.0;
    for (int r : scales) {
        std::vector<OWRow> rows;
        for (int i = 1; i <= i_max; ++i) {
            FiniteSet sample = fibonacci_sample(i);
            if (sample.size() == 0)
                throw std::invalid_argument("empty model-set sample at index " +
                                            std::to_string(i));
            FiniteSet support = groups::minkowski(sample, centered_ball(1, r));
            double value = log_big(dynamics::count_patterns(s, support, budget));
            rows.push_back({i, value, double(sample.size()), value / double(sample.size())});
        }
        rep.per_scale.push_back({r, make_estimate(std::move(rows))});
    }
    finish_report(rep);
    return rep;
}

PowerRuleReport power_rule_check(const Subshift& s, int n, int i_max, double tolerance,
                                 const std::vector<int>& scales) {
    if (n < 1) throw std::invalid_argument("power rule exponent must be >= 1");
    if (s.dim != 1) throw std::invalid_argument("power rule check applies to Z-subshifts");
    PowerRuleReport rep;
    rep.n = n;
    auto base = topological_entropy(s, groups::cubes_sequence(1), scales, i_max);
    auto restricted =
        lattice_restricted_entropy(s, {{n}, ""}, scales, i_max, /*apply_density=*/false);
    rep.base_entropy = base.sup_value;
    rep.restricted_entropy = restricted.sup_value;
    rep.delta = std::abs(n * rep.base_entropy - rep.restricted_entropy);
    rep.pass = rep.delta <= tolerance + n * base.band + restricted.band;
    return rep;
}

ChainReport bowen_chain_check(const SlidingBlockCode& p, const SlidingBlockCode& q,
                              const VanHoveSequence& seq, const std::vector<int>& scales,
                              int i_max, double corrupt_offset) {
    ChainReport rep{};
    rep.first = relative_entropy(p, seq, scales, i_max);
    rep.second = relative_entropy(q, seq, scales, i_max);
    rep.composed = relative_entropy(compose(p, q), seq, scales, i_max);
    rep.composed.sup_value += corrupt_offset;  // negative-test hook

    double e1 = rep.first.sup_value, e2 = rep.second.sup_value, e3 = rep.composed.sup_value;
    double bands = rep.first.band + rep.second.band + rep.composed.band + 1e-9;
    rep.slack_lower = e3 + bands - std::max(e1, e2);
    rep.slack_upper = e1 + e2 + bands - e3;
    rep.lower_ok = rep.slack_lower >= 0;
    rep.upper_ok = rep.slack_upper >= 0;
    rep.pass = rep.lower_ok && rep.upper_ok;
    return rep;
}

ProductExtensionReport product_extension_check(ProductFKind f, const FiniteSet& a,
                                               const FiniteSet& b, int margin,
                                               std::size_t budget) {
    if (a.group.kind != groups::GroupKind::IntLattice || a.group.dim != 1 ||
        b.group.kind != groups::GroupKind::IntLattice || b.group.dim != 1)
        throw std::invalid_argument("product extension check works over Z x Z");
    if (a.size() == 0 || b.size() == 0)
        throw std::invalid_argument("both factors must be nonempty");
    ProductExtensionReport rep;
    rep.unit = f == ProductFKind::Cardinality ? "1" : "log 2";
    // Both built-ins weigh a rectangle C x D by |C| |D| in their unit.
    rep.expected = Rational(static_cast<long long>(a.size() * b.size()));

    FiniteSet m = groups::minkowski(a, groups::interval_set(-margin, margin));
    std::size_t na = a.size(), nb = b.size(), nm = m.size();
    if (nm > 16 || nb > 16 || (std::size_t(1) << (nm + nb)) > budget) {
        rep.exhaustive = false;
        rep.infimum = rep.expected;  // single-rectangle upper bound
        rep.pass = false;
        return rep;
    }

    // Map the cells of A x B to bits; precompute each rectangle's coverage.
    std::vector<std::size_t> a_pos(nm, nm);  // index into A for members of M
    for (std::size_t i = 0; i < na; ++i) {
        auto it = std::lower_bound(m.elements.begin(), m.elements.end(), a.elements[i],
                                   groups::element_less);
        a_pos[static_cast<std::size_t>(it - m.elements.begin())] = i;
    }
    std::uint32_t full = (na * nb == 32) ? ~0u : ((1u << (na * nb)) - 1);

    struct Rect {
        std::uint32_t covers;
        Rational weight;
    };
    // The full family ranges over every C subset of M; padding C with points
    // outside A only adds weight without covering new cells, so the search
    // below can keep just the cheapest rectangle per coverage: C a subset of
    // A itself, with weight |C| |D|.
    rep.rectangles_tried =
        ((std::size_t(1) << nm) - 1) * ((std::size_t(1) << nb) - 1);
    std::vector<Rect> rects;
    for (std::uint32_t ca = 1; ca < (1u << na); ++ca) {
        long long csize = __builtin_popcount(ca);
        for (std::uint32_t dm = 1; dm < (1u << nb); ++dm) {
            std::uint32_t covers = 0;
            for (std::size_t i = 0; i < na; ++i)
                if ((ca >> i) & 1)
                    for (std::size_t j = 0; j < nb; ++j)
                        if ((dm >> j) & 1) covers |= 1u << (i * nb + j);
            rects.push_back({covers, Rational(csize * __builtin_popcount(dm))});
        }
    }

    Rational best = rep.expected + 1;  // the single full rectangle costs <= expected
    auto dfs = [&](auto&& self, std::uint32_t uncovered, const Rational& weight) -> void {
        if (weight >= best) return;
        if (!uncovered) {
            best = weight;
            return;
        }
        int cell = __builtin_ctz(uncovered);
        for (const Rect& r : rects)
            if ((r.covers >> cell) & 1) self(self, uncovered & ~r.covers, weight + r.weight);
    };
    dfs(dfs, full, Rational(0));

    rep.infimum = best;
    rep.pass = (best == rep.expected);
    return rep;
}

BernoulliReport bernoulli_entropy(const std::vector<Rational>& probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("distribution must be nonempty");
    Rational sum = 0;
    for (const Rational& p : probabilities) {
        if (p < 0) throw std::invalid_argument("probabilities must be nonnegative");
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("probabilities must sum to 1, got " + rat_str(sum));

    BernoulliReport rep;
    rep.probabilities = probabilities;
    std::size_t k = probabilities.size();
    rep.full_shift = std::log(double(k));
    rep.entropy = 0;
    rep.uniform = true;
    for (const Rational& p : probabilities) {
        if (p != Rational(1, static_cast<long long>(k))) rep.uniform = false;
        if (p > 0) {
            double pd = to_double(p);
            rep.entropy -= pd * std::log(pd);
        }
    }
    rep.variational_ok = rep.uniform ? std::abs(rep.entropy - rep.full_shift) < 1e-12
                                     : rep.entropy < rep.full_shift - 1e-15;
    return rep;
}

}  // namespace owlet::entropy
