#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "owlet/cli.hpp"
#include "owlet/entropy.hpp"

using namespace owlet;
using namespace owlet::entropy;
using dynamics::Scale;
using dynamics::SlidingBlockCode;
using dynamics::Subshift;
using groups::CompactRegion;
using groups::interval_set;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("log of big counts") {
    CHECK(log_big(BigInt(1)) == 0.0);
    CHECK(log_big(BigInt(1024)) == doctest::Approx(10 * kLog2).epsilon(1e-14));
    BigInt huge = pow(BigInt(2), 5000);
    CHECK(log_big(huge) == doctest::Approx(5000 * kLog2).epsilon(1e-12));
    CHECK_THROWS_AS(log_big(BigInt(0)), std::domain_error);
}

TEST_CASE("built-in subadditive functions") {
    auto lin = SubadditiveFunction::linear(groups::GroupDescriptor::real_vector(1),
                                           Rational(3, 2));
    CHECK(lin.eval(CompactRegion::make_box({{Rational(0), Rational(4)}})) == 6.0);
    CHECK_THROWS_AS(SubadditiveFunction::linear(groups::GroupDescriptor::real_vector(1),
                                                Rational(-1)),
                    std::invalid_argument);

    auto pc = SubadditiveFunction::log_pattern_count(Subshift::golden_mean());
    CHECK(pc.eval(CompactRegion::from_finite(interval_set(0, 4))) ==
          doctest::Approx(std::log(13.0)));

    auto dil = SubadditiveFunction::dilation_volume(
        CompactRegion::make_box({{Rational(-1), Rational(1)}}));
    CHECK(dil.eval(CompactRegion::make_box({{Rational(0), Rational(3)}})) == 5.0);
}

TEST_CASE("normalized limits") {
    SUBCASE("linear functions give the coefficient at every index") {
        auto lin = SubadditiveFunction::linear(groups::GroupDescriptor::real_vector(1),
                                               Rational(7, 3));
        auto est = ow_limit(lin, groups::boxes_sequence(1), 10);
        CHECK(est.tail == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
        CHECK(est.band <= 1e-12);
        for (const auto& row : est.trace)
            CHECK(row.ratio == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("dilation volume tends to one") {
        auto dil = SubadditiveFunction::dilation_volume(
            CompactRegion::make_box({{Rational(-1), Rational(1)}}));
        auto est = ow_limit(dil, groups::boxes_sequence(1), 30);
        CHECK(std::abs(est.tail - 1.0) <= 1e-6 + est.band);
    }
    SUBCASE("custom normalizer must stay positive") {
        auto lin = SubadditiveFunction::linear(groups::GroupDescriptor::real_vector(1),
                                               Rational(1));
        CHECK_THROWS_AS(ow_limit(lin, groups::boxes_sequence(1), 3,
                                 [](const CompactRegion&) { return 0.0; }),
                        std::invalid_argument);
    }
    SUBCASE("net independence") {
        auto pc = SubadditiveFunction::log_pattern_count(Subshift::golden_mean());
        auto rep = ow_crosscheck(pc, groups::intervals_sequence(),
                                 groups::shifted_intervals_sequence(), 30, 1e-2);
        CHECK(rep.pass);
        CHECK(rep.delta <= 1e-2 + rep.first.band + rep.second.band);
    }
}

TEST_CASE("lattice transfer") {
    SUBCASE("dilation volume against scaled lattices in R") {
        auto dil = SubadditiveFunction::dilation_volume(
            CompactRegion::make_box({{Rational(-1), Rational(1)}}));
        for (const char* preset : {"zd:1", "zd:1:1/2", "zd:1:3"}) {
            auto fd = cps::parse_fundamental_domain(preset);
            auto rep = lattice_transfer_check(dil, fd, groups::boxes_sequence(1), 25, 1e-2);
            CHECK(rep.pass);
        }
    }
    SUBCASE("linear built-in is exact") {
        auto fd = cps::parse_fundamental_domain("zd:1:2");
        auto lin = SubadditiveFunction::linear(groups::GroupDescriptor::real_vector(1),
                                               Rational(5));
        auto rep = lattice_transfer_check(lin, fd, groups::boxes_sequence(1), 10, 1e-9);
        CHECK(rep.pass);
        CHECK(rep.covolume == 2.0);
    }
    SUBCASE("pattern counts over integer sublattices") {
        auto pc = SubadditiveFunction::log_pattern_count(Subshift::full_shift(2, 1));
        auto fd = cps::parse_fundamental_domain("nzd:3");
        auto rep = lattice_transfer_check(pc, fd, groups::cubes_sequence(1), 12, 1e-6);
        CHECK(rep.pass);  // 3 * log2 per lattice site vs log2 per integer
    }
}

TEST_CASE("discretization sandwich") {
    // f_check/f_hat boxes around [-n,n]^d: monotone built-ins must sandwich f(A)
    for (int d = 1; d <= 2; ++d) {
        auto fd = cps::parse_fundamental_domain(d == 1 ? "zd:1" : "zd:2");
        auto dil = SubadditiveFunction::dilation_volume(CompactRegion::make_box(
            std::vector<groups::Interval>(d, {Rational(-1), Rational(1)})));
        auto lin = SubadditiveFunction::linear(groups::GroupDescriptor::real_vector(d),
                                               Rational(2));
        for (long long n = 1; n <= 10; ++n) {
            auto box = CompactRegion::make_box(
                std::vector<groups::Interval>(d, {Rational(-n), Rational(n)}));
            auto disc = groups::lattice_discretize(box, Rational(1));
            // lattice coordinates double as ambient coordinates at spacing 1
            auto as_real = [&](const groups::FiniteSet& f) {
                std::vector<groups::GroupElement> elems;
                for (const auto& e : f.elements) {
                    std::vector<Rational> v;
                    for (long long x : e.ints()) v.push_back(Rational(x));
                    elems.push_back(groups::make_rat_element(std::move(v)));
                }
                return groups::FiniteSet::make(groups::GroupDescriptor::real_vector(d),
                                               std::move(elems));
            };
            for (const auto* f : {&dil, &lin}) {
                double lo = lattice_transfer_value(*f, fd, as_real(disc.f_check));
                double mid = f->eval(box);
                double hi = lattice_transfer_value(*f, fd, as_real(disc.f_hat));
                CHECK(lo <= mid + 1e-9);
                CHECK(mid <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("topological entropy") {
    SUBCASE("full shifts are exact at every index and scale") {
        for (int k : {2, 3, 4}) {
            auto rep = topological_entropy(Subshift::full_shift(k, 1),
                                           groups::intervals_sequence(), {0, 1, 2}, 12);
            CHECK(rep.sup_value == doctest::Approx(std::log(double(k))).epsilon(1e-14));
            for (const auto& se : rep.per_scale)
                for (const auto& row : se.estimate.trace)
                    CHECK(std::abs(row.ratio - std::log(double(k))) < 1e-12);
        }
    }
    SUBCASE("golden mean matches the transfer-matrix oracle") {
        auto rep = topological_entropy(Subshift::golden_mean(), groups::intervals_sequence(),
                                       {0, 1, 2}, 30);
        CHECK(rep.sup_value == doctest::Approx(oracles::golden_mean_entropy()).epsilon(1e-3));
    }
    SUBCASE("per-scale tails are non-decreasing in the radius") {
        for (const auto& s : {Subshift::golden_mean(), Subshift::full_shift(3, 1)}) {
            auto rep = topological_entropy(s, groups::intervals_sequence(), {0, 1, 2}, 20);
            for (std::size_t i = 1; i < rep.per_scale.size(); ++i)
                CHECK(rep.per_scale[i].estimate.tail >=
                      rep.per_scale[i - 1].estimate.tail - 1e-6);
        }
    }
    SUBCASE("single point has zero entropy") {
        auto rep = topological_entropy(Subshift::single_point(), groups::intervals_sequence(),
                                       {0}, 10);
        CHECK(rep.sup_value == 0.0);
    }
    SUBCASE("hard squares run in two dimensions") {
        auto rep = topological_entropy(Subshift::hard_square(), groups::cubes_sequence(2), {0}, 1);
        CHECK(rep.sup_value > 0.3);  // true value ~ 0.4075; one desk-scale index
        CHECK(rep.sup_value < 0.55);
    }
}

TEST_CASE("relative entropy") {
    auto seq = groups::intervals_sequence();
    SUBCASE("identity maps have zero fiber entropy, exactly") {
        auto rep = relative_entropy(SlidingBlockCode::identity(Subshift::golden_mean()), seq,
                                    {0, 1}, 10);
        CHECK(rep.sup_value == 0.0);
        for (const auto& se : rep.per_scale)
            for (const auto& row : se.estimate.trace) CHECK(row.f_value == 0.0);
    }
    SUBCASE("collapse to a point recovers the source entropy per index") {
        auto source = Subshift::golden_mean();
        auto rel = relative_entropy(SlidingBlockCode::to_point(source), seq, {0, 1}, 12);
        auto top = topological_entropy(source, seq, {0, 1}, 12);
        for (std::size_t si = 0; si < rel.per_scale.size(); ++si)
            for (std::size_t i = 0; i < rel.per_scale[si].estimate.trace.size(); ++i)
                CHECK(rel.per_scale[si].estimate.trace[i].ratio ==
                      doctest::Approx(top.per_scale[si].estimate.trace[i].ratio)
                          .epsilon(1e-12));
    }
    SUBCASE("symbol merge counts the merged choices") {
        auto merge = cli::parse_code("merge:4:2");
        auto rep = relative_entropy(merge, seq, {0}, 10);
        CHECK(rep.sup_value == doctest::Approx(kLog2).epsilon(1e-12));
    }
}

TEST_CASE("restricted entropy") {
    SUBCASE("full shift over sublattices is exact") {
        for (long long n = 2; n <= 4; ++n) {
            auto rep = lattice_restricted_entropy(Subshift::full_shift(2, 1), {{n}, ""},
                                                  {0, 1}, 8);
            CHECK(rep.sup_value == doctest::Approx(kLog2).epsilon(1e-12));
            CHECK(rep.density_factor == doctest::Approx(1.0 / double(n)));
        }
    }
    SUBCASE("golden mean over sublattices matches its entropy") {
        for (long long n = 2; n <= 4; ++n) {
            auto rep = lattice_restricted_entropy(Subshift::golden_mean(), {{n}, ""}, {0, 1}, 25);
            CHECK(std::abs(rep.sup_value - oracles::golden_mean_entropy()) < 1e-3);
        }
    }
    SUBCASE("two dimensional sublattice") {
        auto rep = lattice_restricted_entropy(Subshift::full_shift(2, 2), {{2, 3}, ""}, {0}, 4);
        CHECK(rep.sup_value == doctest::Approx(kLog2).epsilon(1e-12));
    }
    SUBCASE("fibonacci index set on the full shift") {
        auto rep = lattice_restricted_entropy(Subshift::full_shift(2, 1), {{}, "fibonacci"},
                                              {0}, 25);
        double dens = cps::ModelSetDesc::parse("fibonacci").density_oracle().to_double();
        CHECK(rep.sup_value == doctest::Approx(dens * kLog2).epsilon(1e-6));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(lattice_restricted_entropy(Subshift::full_shift(2, 1), {{0}, ""},
                                                   {0}, 5),
                        std::invalid_argument);
        CHECK_THROWS_AS(lattice_restricted_entropy(Subshift::full_shift(2, 1), {{}, "penrose"},
                                                   {0}, 5),
                        std::invalid_argument);
    }
}

TEST_CASE("power rule") {
    for (int n = 1; n <= 4; ++n) {
        auto full = power_rule_check(Subshift::full_shift(2, 1), n, 10, 1e-12);
        CHECK(full.pass);
        CHECK(full.delta < 1e-12);
        auto gm = power_rule_check(Subshift::golden_mean(), n, 25, 1e-3);
        CHECK(gm.pass);
    }
}

TEST_CASE("bowen chain inequalities") {
    auto seq = groups::intervals_sequence();
    SUBCASE("four to two to point is exact") {
        auto p = cli::parse_code("four-to-two");
        auto q = cli::parse_code("to-point:full:2");
        auto rep = bowen_chain_check(p, q, seq, {0, 1}, 8);
        CHECK(rep.pass);
        CHECK(rep.first.sup_value == doctest::Approx(kLog2).epsilon(1e-12));
        CHECK(rep.second.sup_value == doctest::Approx(kLog2).epsilon(1e-12));
        CHECK(rep.composed.sup_value == doctest::Approx(2 * kLog2).epsilon(1e-12));
    }
    SUBCASE("projection from a product, right inequality tight") {
        auto p = cli::parse_code("projection:golden-mean:full:2");
        auto q = cli::parse_code("to-point:golden-mean");
        auto rep = bowen_chain_check(p, q, seq, {0, 1}, 8);
        CHECK(rep.pass);
        CHECK(rep.first.sup_value == doctest::Approx(kLog2).epsilon(1e-12));
        double tau_log = oracles::golden_mean_entropy();
        CHECK(std::abs(rep.second.sup_value - tau_log) < 2e-2 + rep.second.band);
        CHECK(std::abs(rep.composed.sup_value - rep.first.sup_value - rep.second.sup_value) <
              1e-9);
    }
    SUBCASE("identity collapses the chain") {
        auto rep = bowen_chain_check(cli::parse_code("identity:golden-mean"),
                                     cli::parse_code("to-point:golden-mean"), seq, {0}, 10);
        CHECK(rep.pass);
        CHECK(rep.first.sup_value == 0.0);
        CHECK(rep.composed.sup_value == doctest::Approx(rep.second.sup_value).epsilon(1e-12));
    }
    SUBCASE("corruption trips the verdict") {
        auto p = cli::parse_code("four-to-two");
        auto q = cli::parse_code("to-point:full:2");
        CHECK_FALSE(bowen_chain_check(p, q, seq, {0}, 6, 0.7).pass);
        CHECK_FALSE(bowen_chain_check(p, q, seq, {0}, 6, -0.9).pass);
    }
}

TEST_CASE("product extension infimum") {
    SUBCASE("cardinality on the documented instances") {
        auto rep = product_extension_check(ProductFKind::Cardinality, interval_set(0, 1),
                                           interval_set(0, 2));
        CHECK(rep.pass);
        CHECK(rep.infimum == Rational(6));
        CHECK(rep.exhaustive);
    }
    SUBCASE("log2 units on single cells") {
        auto rep = product_extension_check(ProductFKind::Log2Count, interval_set(0, 0),
                                           interval_set(0, 0));
        CHECK(rep.pass);
        CHECK(rep.infimum == Rational(1));
        CHECK(rep.unit == "log 2");
        auto wide = product_extension_check(ProductFKind::Log2Count, interval_set(0, 0),
                                            interval_set(0, 3));
        CHECK(wide.pass);
        CHECK(wide.infimum == Rational(4));
    }
    SUBCASE("budget falls back to the bound") {
        auto rep = product_extension_check(ProductFKind::Cardinality, interval_set(0, 2),
                                           interval_set(0, 2), 1, /*budget=*/16);
        CHECK_FALSE(rep.exhaustive);
        CHECK_FALSE(rep.pass);
        CHECK(rep.infimum == rep.expected);  // single-rectangle upper bound
    }
    SUBCASE("empty factors rejected") {
        auto empty = groups::FiniteSet::make(groups::GroupDescriptor::int_lattice(1), {});
        CHECK_THROWS_AS(product_extension_check(ProductFKind::Cardinality, empty,
                                                interval_set(0, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("bernoulli entropy") {
    auto flat = bernoulli_entropy({Rational(1, 2), Rational(1, 2)});
    CHECK(flat.entropy == doctest::Approx(kLog2).epsilon(1e-14));
    CHECK(flat.uniform);
    CHECK(flat.variational_ok);

    auto point = bernoulli_entropy({Rational(1), Rational(0)});
    CHECK(point.entropy == 0.0);
    CHECK(point.variational_ok);

    auto skew = bernoulli_entropy({Rational(1, 4), Rational(3, 4)});
    double expect = 0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0);
    CHECK(skew.entropy == doctest::Approx(expect).epsilon(1e-14));
    CHECK(skew.entropy < kLog2);
    CHECK(skew.variational_ok);

    CHECK_THROWS_AS(bernoulli_entropy({Rational(1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(bernoulli_entropy({Rational(3, 2), Rational(-1, 2)}),
                    std::invalid_argument);
}
