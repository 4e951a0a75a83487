#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "owlet/code.hpp"
#include "owlet/metric.hpp"

using namespace owlet;
using namespace owlet::dynamics;
using groups::FiniteSet;
using groups::interval_set;

TEST_CASE("pattern construction") {
    CHECK_NOTHROW(Pattern::make({{{0}, 1}, {{1, }, 0}}));
    CHECK_THROWS_AS(Pattern::make({{{0}, 1}, {{0}, 0}}), std::invalid_argument);  // duplicate site
}

TEST_CASE("pattern counting closed forms") {
    SUBCASE("full shifts count k^|F| on any support") {
        for (int k = 2; k <= 4; ++k) {
            auto s = Subshift::full_shift(k, 1);
            auto sparse = FiniteSet::make(groups::GroupDescriptor::int_lattice(1),
                                          {groups::make_int_element({-7}),
                                           groups::make_int_element({0}),
                                           groups::make_int_element({5})});
            CHECK(count_patterns(s, sparse) == BigInt(k) * k * k);
            CHECK(count_patterns(s, interval_set(0, 9)) == pow(BigInt(k), 10));
        }
        auto s2 = Subshift::full_shift(3, 2);
        CHECK(count_patterns(s2, groups::grid_set(2, 0, 2)) == pow(BigInt(3), 9));
    }
    SUBCASE("golden mean intervals are Fibonacci numbers") {
        auto s = Subshift::golden_mean();
        long long fib[12] = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233};
        for (int n = 1; n <= 11; ++n)
            CHECK(count_patterns(s, interval_set(0, n - 1)) == BigInt(fib[n]));
    }
    SUBCASE("hard squares") {
        auto s = Subshift::hard_square();
        CHECK(count_patterns(s, groups::grid_set(2, 0, 1)) == 7);
        CHECK(count_patterns(s, groups::grid_set(2, 0, 2)) == 63);
    }
    SUBCASE("empty support counts one") {
        auto empty = FiniteSet::make(groups::GroupDescriptor::int_lattice(1), {});
        CHECK(count_patterns(Subshift::golden_mean(), empty) == 1);
    }
    SUBCASE("distant blocks are independent") {
        auto s = Subshift::golden_mean();
        auto two_blocks = groups::minkowski(
            FiniteSet::make(groups::GroupDescriptor::int_lattice(1),
                            {groups::make_int_element({0}), groups::make_int_element({100})}),
            interval_set(0, 3));
        CHECK(count_patterns(s, two_blocks) == BigInt(8) * 8);
    }
    SUBCASE("product subshift counts factor") {
        auto p = Subshift::product(Subshift::golden_mean(), Subshift::full_shift(2, 1));
        CHECK(count_patterns(p, interval_set(0, 4)) == BigInt(13) * 32);
    }
}

TEST_CASE("counts agree with the brute-force oracle") {
    std::mt19937 rng(11);
    auto s = Subshift::golden_mean();
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<groups::GroupElement> sites;
        for (int i = 0; i < 2 + int(rng() % 4); ++i)
            sites.push_back(groups::make_int_element({(long long)(rng() % 9)}));
        auto f = FiniteSet::make(groups::GroupDescriptor::int_lattice(1), std::move(sites));
        CHECK(count_patterns(s, f) == oracles::brute_count_patterns(s, f));
    }
    auto hs = Subshift::hard_square();
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<groups::GroupElement> sites;
        for (int i = 0; i < 2 + int(rng() % 3); ++i)
            sites.push_back(groups::make_int_element(
                {(long long)(rng() % 3), (long long)(rng() % 3)}));
        auto f = FiniteSet::make(groups::GroupDescriptor::int_lattice(2), std::move(sites));
        CHECK(count_patterns(hs, f) == oracles::brute_count_patterns(hs, f));
    }
}

TEST_CASE("enumeration budget") {
    auto s = Subshift::hard_square();
    CHECK_THROWS_WITH_AS(
        (void)count_patterns(s, groups::grid_set(2, 0, 9), 100),
        doctest::Contains("budget"), std::domain_error);
    CHECK(enumerate_patterns(Subshift::golden_mean(), interval_set(0, 2)).size() == 5);
}

TEST_CASE("sliding block codes") {
    auto full4 = Subshift::full_shift(4, 1);
    auto full2 = Subshift::full_shift(2, 1);
    auto merge = SlidingBlockCode::symbol_map(full4, full2, {0, 0, 1, 1}, "merge");
    auto xnor = SlidingBlockCode::make(full2, full2, interval_set(0, 1), {1, 0, 0, 1}, "xnor");

    SUBCASE("rule validation") {
        CHECK_THROWS_AS(SlidingBlockCode::symbol_map(full4, full2, {0, 0, 1}, "short"),
                        std::invalid_argument);
        CHECK_THROWS_AS(SlidingBlockCode::symbol_map(full4, full2, {0, 0, 1, 2}, "range"),
                        std::invalid_argument);
    }
    SUBCASE("apply uses mixed-radix neighborhood order") {
        CHECK(merge.apply({3}) == 1);
        CHECK(xnor.apply({1, 1}) == 1);
        CHECK(xnor.apply({1, 0}) == 0);
    }
    SUBCASE("composition") {
        auto both = compose(merge, SlidingBlockCode::to_point(full2));
        CHECK(both.target.alphabet == 1);
        auto chained = compose(xnor, xnor);  // neighborhood {0,1,2}
        CHECK(chained.neighborhood.size() == 3);
        CHECK(chained.apply({1, 0, 1}) == chained.target.alphabet - 2 + 1);  // xnor(0,0)=1
        CHECK(chained.apply({1, 0, 0}) == 0);                                 // xnor(0,1)=0
    }
    SUBCASE("fiber covering counts") {
        auto a = interval_set(0, 5);
        // identity: one source pattern per fiber
        CHECK(fiber_cov(SlidingBlockCode::identity(full4), a, Scale{0}) == 1);
        CHECK(fiber_cov(SlidingBlockCode::identity(full4), a, Scale{2}) == 1);
        // collapse to a point: the whole pattern count
        CHECK(fiber_cov(SlidingBlockCode::to_point(full2), a, Scale{0}) == 64);
        // 2-to-1 symbol merge: binary choice per visible site
        CHECK(fiber_cov(merge, a, Scale{0}) == 64);
        CHECK(fiber_cov(merge, a, Scale{1}) == 256);
        // projection from a product: free second component
        auto proj = [&] {
            auto prod = Subshift::product(full2, full2);
            std::vector<int> map(4);
            for (int i = 0; i < 4; ++i) map[i] = i / 2;
            return SlidingBlockCode::symbol_map(prod, full2, map, "proj");
        }();
        CHECK(fiber_cov(proj, a, Scale{0}) == 64);
        // radius-1 xnor: two preimages on an interval (first symbol free)
        CHECK(fiber_cov(xnor, a, Scale{0}) == 2);
    }
    SUBCASE("fast path and sweep agree on a symbol map") {
        auto gm_merge = SlidingBlockCode::symbol_map(Subshift::golden_mean(), full2, {0, 1},
                                                     "gm-id-symbols");
        auto sparse = FiniteSet::make(groups::GroupDescriptor::int_lattice(1),
                                      {groups::make_int_element({0}),
                                       groups::make_int_element({1}),
                                       groups::make_int_element({4})});
        for (int r = 0; r <= 1; ++r) {
            BigInt fast = fiber_cov(gm_merge, sparse, Scale{r});
            BigInt slow = fiber_cov(gm_merge, sparse, Scale{r}, /*budget=*/1u << 22);
            CHECK(fast == slow);
        }
    }
    SUBCASE("surjectivity probe") {
        CHECK(surjective_on_window(merge, 2));
        auto constant = SlidingBlockCode::symbol_map(full2, full2, {0, 0}, "constant");
        CHECK_FALSE(surjective_on_window(constant, 1));
    }
}

TEST_CASE("metric space validation") {
    CHECK_THROWS_AS(FiniteMetricSpace::make({{Rational(0), Rational(1)}}),
                    std::invalid_argument);  // not square
    CHECK_THROWS_AS(FiniteMetricSpace::make({{Rational(0), Rational(1)},
                                             {Rational(2), Rational(0)}}),
                    std::invalid_argument);  // asymmetric
    CHECK_NOTHROW(FiniteMetricSpace::make({{Rational(0), Rational(5)},
                                           {Rational(5), Rational(0)}}));
    CHECK_THROWS_AS(FiniteMetricSpace::make({{Rational(0), Rational(1), Rational(5)},
                                             {Rational(1), Rational(0), Rational(1)},
                                             {Rational(5), Rational(1), Rational(0)}}),
                    std::invalid_argument);  // triangle violation
}

TEST_CASE("sep, spa and cov match exhaustive search") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + rng() % 6;
        std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                d[i][j] = d[j][i] = Rational(8 + (long long)(rng() % 9), 8);  // [1,2]
        auto m = FiniteMetricSpace::make(std::move(d));
        for (const Rational& eps :
             {Rational(1), Rational(5, 4), Rational(3, 2), Rational(7, 4), Rational(2)}) {
            auto s = sep(m, eps), p = spa(m, eps), c = cov_metric(m, eps);
            CHECK(s.exact);
            CHECK(p.exact);
            CHECK(c.exact);
            CHECK(s.value == BigInt(oracles::brute_sep(m, eps)));
            CHECK(p.value == BigInt(oracles::brute_spa(m, eps)));
            CHECK(c.value == BigInt(oracles::brute_cov(m, eps)));
        }
    }
}

TEST_CASE("cylinder spaces collapse the chain to the pattern count") {
    auto s = Subshift::golden_mean();
    auto a = interval_set(0, 4);
    auto m = cylinder_space(s, a, Scale{0});
    CHECK(m.size() == 13);
    CHECK(sep(m, 1).value == 13);
    CHECK(spa(m, 1).value == 13);
    CHECK(cov_metric(m, 1).value == 13);
    CHECK(cov(s, a, Scale{0}) == 13);
}
