#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "owlet/cps.hpp"

using namespace owlet;
using namespace owlet::cps;

TEST_CASE("scheme preset parsing") {
    CHECK(ModelSetDesc::parse("trivial-z").kind == SchemeKind::TrivialZ);
    CHECK(ModelSetDesc::parse("fibonacci").kind == SchemeKind::Fibonacci);
    auto p = ModelSetDesc::parse("padic:3:2:4");
    CHECK(p.kind == SchemeKind::Padic);
    CHECK(p.p == 3);
    CHECK(p.window_radius == Rational(2));
    CHECK(p.depth == 4);
    CHECK_THROWS_AS(ModelSetDesc::parse("nope"), std::invalid_argument);
    CHECK_THROWS_AS(ModelSetDesc::parse("padic:4:1:2"), std::invalid_argument);  // composite p
}

TEST_CASE("trivial scheme is the integers") {
    auto ms = ModelSetDesc::parse("trivial-z");
    auto pts = enumerate_model_set(ms, Rational(-3), Rational(3));
    REQUIRE(pts.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(pts[i] == Quad5(Rational(i - 3)));
    CHECK(ms.density_oracle() == Quad5(Rational(1)));
}

TEST_CASE("fibonacci model set") {
    auto ms = ModelSetDesc::parse("fibonacci");
    auto pts = enumerate_model_set(ms, Rational(-50), Rational(50));

    SUBCASE("density oracle is tau over sqrt five") {
        // tau/sqrt5 = 1/2 + sqrt5/10
        CHECK(ms.density_oracle() == Quad5(Rational(1, 2), Rational(1, 10)));
        double expected = ms.density_oracle().to_double();
        CHECK(double(pts.size()) / 100.0 == doctest::Approx(expected).epsilon(0.03));
    }
    SUBCASE("two gap lengths: 1 and tau") {
        for (std::size_t i = 1; i < pts.size(); ++i) {
            Quad5 gap = pts[i] - pts[i - 1];
            bool short_gap = gap == Quad5(Rational(1));
            bool long_gap = gap == Quad5::tau();
            CHECK((short_gap || long_gap));
        }
    }
    SUBCASE("aperiodic: both gaps occur") {
        int ones = 0, taus = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            (pts[i] - pts[i - 1] == Quad5(Rational(1)) ? ones : taus)++;
        CHECK(ones > 0);
        CHECK(taus > 0);
    }
    SUBCASE("zero belongs to the chain") {
        bool has_zero = false;
        for (const auto& q : pts) has_zero |= q == Quad5(Rational(0));
        CHECK(has_zero);
    }
    SUBCASE("internal images nearly fill the window") {
        CHECK(internal_fill_gap(ms, 400) < 0.02);
    }
}

TEST_CASE("p-adic scheme enumeration") {
    auto ms = ModelSetDesc::parse("padic:2:1:3");
    SUBCASE("exactly 17 points at depth 3") {
        auto pts = enumerate_padic_points(ms, 3);
        CHECK(pts.size() == 17);
        // a/2^k with odd a for k>=1, |x| <= 1: k=0 -> -1,0,1; k=1..3 -> 2^k odd numerators
        long long expect = 3;
        for (int k = 1; k <= 3; ++k) expect += 1 << k;
        CHECK(pts.size() == std::size_t(expect));
        for (const auto& x : pts) {
            CHECK(abs(numerator(x)) <= denominator(x));
            CHECK(denominator(x) <= 8);
        }
    }
    SUBCASE("density trace approaches 2R") {
        auto trace = uniform_density(ms, 3);
        REQUIRE(trace.rows.size() == 3);
        // measured error constant: |ratio_i - 2R| <= C p^{-i} with moderate C
        for (const auto& row : trace.rows) {
            double err = std::abs(to_double(row.ratio) - 2.0);
            CHECK(err <= 3.0 * std::pow(2.0, -row.index));
        }
        CHECK_THROWS_AS(uniform_density(ms, 10), std::invalid_argument);  // beyond depth
    }
}

TEST_CASE("uniform density traces") {
    SUBCASE("fibonacci band contains the oracle") {
        auto ms = ModelSetDesc::parse("fibonacci");
        auto trace = uniform_density(ms, 30);
        double oracle = ms.density_oracle().to_double();
        CHECK(std::abs(trace.tail - oracle) <= trace.band);
    }
    SUBCASE("sublattice density is one over the covolume") {
        auto trace = sublattice_density({2, 3}, 20);
        CHECK(std::abs(trace.tail - 1.0 / 6.0) <= trace.band + 0.02);
        // counts are exact: |2Z x 3Z n [-i,i]^2| = (2 floor(i/2)+1)(2 floor(i/3)+1)
        for (const auto& row : trace.rows) {
            long long i = row.index;
            CHECK(row.count == BigInt((2 * (i / 2) + 1) * (2 * (i / 3) + 1)));
        }
    }
}

TEST_CASE("meyer property checks") {
    auto ms = ModelSetDesc::parse("fibonacci");
    auto patch = enumerate_model_set(ms, Rational(-110), Rational(110));

    SUBCASE("fibonacci passes on [-50,50]") {
        auto rep = meyer_check(patch, Rational(-110), Rational(110), Rational(-50), Rational(50),
                               Rational(2), Rational(2));
        CHECK(rep.conclusive);
        CHECK(rep.relatively_dense);
        CHECK(rep.dense_witness_radius > 0);
        CHECK(rep.dense_witness_radius <= Rational(2));
        CHECK(rep.meyer_difference);
        CHECK(!rep.difference_witness.empty());
    }
    SUBCASE("short patches are inconclusive") {
        auto rep = meyer_check(patch, Rational(-110), Rational(110), Rational(-109), Rational(109),
                               Rational(2), Rational(2));
        CHECK_FALSE(rep.conclusive);
        CHECK(rep.status.find("inconclusive") != std::string::npos);
    }
    SUBCASE("squares are not relatively dense") {
        std::vector<Quad5> squares;
        for (long long n = 0; n * n <= 400; ++n) squares.emplace_back(Rational(n * n));
        auto rep = meyer_check(squares, Rational(-420), Rational(420), Rational(0), Rational(390),
                               Rational(5), Rational(5));
        CHECK(rep.conclusive);
        CHECK_FALSE(rep.relatively_dense);
    }
}

TEST_CASE("fundamental domains") {
    auto zd = parse_fundamental_domain("zd:2:3/2");
    CHECK(zd.covolume == Rational(9, 4));
    CHECK(zd.ambient == groups::GroupDescriptor::real_vector(2));

    auto nzd = parse_fundamental_domain("nzd:2,3");
    CHECK(nzd.covolume == Rational(6));
    CHECK(nzd.ambient == groups::GroupDescriptor::int_lattice(2));
    CHECK(groups::haar_measure(nzd.closure) == Rational(6));

    auto heis = parse_fundamental_domain("heis");
    CHECK(heis.covolume == Rational(1));

    CHECK_THROWS_AS(parse_fundamental_domain("zd:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fundamental_domain("wat"), std::invalid_argument);
}
