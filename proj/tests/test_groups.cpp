#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "owlet/boundary.hpp"
#include "owlet/vanhove.hpp"

using namespace owlet;
using namespace owlet::groups;

TEST_CASE("group element algebra") {
    auto z2 = GroupDescriptor::int_lattice(2);
    auto x = make_int_element({3, -1});
    auto y = make_int_element({-2, 5});
    CHECK(op(z2, x, y) == make_int_element({1, 4}));
    CHECK(op(z2, x, inverse(z2, x)) == identity(z2));

    auto h = GroupDescriptor::heisenberg();
    auto a = make_heis_element(1, 0, 0);
    auto b = make_heis_element(0, 1, 0);
    // ab and ba differ by the central element: non-commutative
    CHECK_FALSE(op(h, a, b) == op(h, b, a));
    auto c = make_heis_element(2, -1, 3);
    CHECK(op(h, op(h, a, b), c) == op(h, a, op(h, b, c)));
    CHECK(op(h, c, inverse(h, c)) == identity(h));

    auto qp = GroupDescriptor::padic(2, 3);
    CHECK_NOTHROW(validate_element(qp, make_padic_element(qp, Rational(3, 8))));
    CHECK_THROWS_AS(validate_element(qp, make_padic_element(qp, Rational(1, 16))),
                    std::domain_error);
    CHECK_THROWS_AS(validate_element(qp, make_padic_element(qp, Rational(1, 3))),
                    std::invalid_argument);
}

TEST_CASE("finite sets and minkowski products") {
    auto a = interval_set(0, 2);
    auto b = interval_set(0, 2);
    CHECK(minkowski(a, b).size() == 5);  // {0..4}
    CHECK(minkowski_inverse(a) == interval_set(-2, 0));

    auto g = grid_set(2, -1, 1);
    CHECK(g.size() == 9);
    CHECK(minkowski(g, g).size() == 25);

    // duplicates collapse
    auto s = FiniteSet::make(GroupDescriptor::int_lattice(1),
                             {make_int_element({1}), make_int_element({1})});
    CHECK(s.size() == 1);
}

TEST_CASE("haar measures of the region kinds") {
    auto box = CompactRegion::make_box({{Rational(-2), Rational(3)}, {Rational(0), Rational(1)}});
    CHECK(haar_measure(box) == Rational(5));

    auto ibox = CompactRegion::make_int_box({{-2, 3}, {0, 1}});
    CHECK(haar_measure(ibox) == Rational(12));

    auto qp = GroupDescriptor::padic(3, 4);
    CHECK(haar_measure(CompactRegion::make_padic_ball(qp, 0, 2)) == Rational(9));
    CHECK(haar_measure(CompactRegion::make_padic_ball(qp, 0, -2)) == Rational(1, 9));

    auto prod = CompactRegion::make_product({box, ibox});
    CHECK(haar_measure(prod) == Rational(60));

    auto shell = CompactRegion::make_box_shell({{Rational(-2), Rational(2)}},
                                               {{Rational(-1), Rational(1)}});
    CHECK(haar_measure(shell) == Rational(2));
}

TEST_CASE("K-boundary closed forms") {
    SUBCASE("real boxes, d=1") {
        auto K = CompactRegion::make_box({{Rational(-1), Rational(1)}});
        for (long long n = 2; n <= 10; ++n) {
            auto A = CompactRegion::make_box({{Rational(-n), Rational(n)}});
            CHECK(k_boundary_measure(K, A) == Rational(4));
        }
    }
    SUBCASE("real boxes, d=2") {
        auto K = CompactRegion::make_box({{Rational(-1), Rational(1)}, {Rational(-1), Rational(1)}});
        for (long long n = 2; n <= 10; ++n) {
            auto A = CompactRegion::make_box(
                {{Rational(-n), Rational(n)}, {Rational(-n), Rational(n)}});
            Rational outer = (2 * n + 2) * (2 * n + 2), inner = (2 * n - 2) * (2 * n - 2);
            CHECK(k_boundary_measure(K, A) == outer - inner);
        }
    }
    SUBCASE("integer cubes") {
        for (int d = 1; d <= 2; ++d) {
            auto K = CompactRegion::make_int_box(
                std::vector<std::pair<long long, long long>>(d, {-1, 1}));
            for (long long n = 2; n <= 8; ++n) {
                auto A = CompactRegion::make_int_box(
                    std::vector<std::pair<long long, long long>>(d, {-n, n}));
                Rational outer = 1, inner = 1;
                for (int ax = 0; ax < d; ++ax) outer *= 2 * n + 3, inner *= 2 * n - 1;
                CHECK(k_boundary_measure(K, A) == outer - inner);
            }
        }
    }
    SUBCASE("p-adic clopen ball has empty boundary") {
        auto qp = GroupDescriptor::padic(2, 5);
        auto K = CompactRegion::make_padic_ball(qp, 0, -3);  // small subgroup 8 Z_2
        auto A = CompactRegion::make_padic_ball(qp, 0, 1);
        CHECK(k_boundary_measure(K, A) == 0);
    }
}

TEST_CASE("van hove diagnostics") {
    SUBCASE("boxes pass with exact shell ratios") {
        auto seq = boxes_sequence(1);
        auto K = CompactRegion::make_box({{Rational(-1), Rational(1)}});
        auto diag = van_hove_diagnostic(seq, K, 20, /*tolerance=*/0.15);
        CHECK(diag.pass);
        for (const auto& row : diag.rows) {
            long long n = row.index;
            CHECK(row.ratio == Rational(4, 2 * n));
        }
    }
    SUBCASE("constant sequence fails") {
        auto K = CompactRegion::make_box({{Rational(-1), Rational(1)}});
        auto diag = van_hove_diagnostic(constant_interval_sequence(), K, 10);
        CHECK_FALSE(diag.pass);
        for (const auto& row : diag.rows) CHECK(row.ratio == Rational(3));
    }
    SUBCASE("p-adic clopen subgroups give ratio zero") {
        auto seq = padic_ball_sequence(2, 6);
        auto qp = seq.group;
        auto K = CompactRegion::make_padic_ball(qp, 0, 0);  // Z_p itself
        auto diag = van_hove_diagnostic(seq, K, 5);
        CHECK(diag.pass);
        for (const auto& row : diag.rows) CHECK(row.ratio == 0);
    }
    SUBCASE("dilated sequence ratio tends to one") {
        auto K = CompactRegion::make_box({{Rational(-1), Rational(1)}});
        auto dil = dilated_sequence(K, boxes_sequence(1), 20);
        CHECK(to_double(dil.ratio.back().second) == doctest::Approx(1.0).epsilon(0.11));
        CHECK(haar_measure(dil.sequence.at(5)) == Rational(12));  // [-6,6]
    }
}

TEST_CASE("lattice discretization sandwich sets") {
    SUBCASE("unit interval") {
        auto disc = lattice_discretize(CompactRegion::make_box({{Rational(0), Rational(1)}}),
                                       Rational(1));
        CHECK(disc.f_check.size() == 1);  // {0}
        CHECK(disc.f_hat.size() == 3);    // {-1,0,1}
    }
    SUBCASE("closed-form ratio on centered boxes") {
        for (int d = 1; d <= 2; ++d) {
            for (long long n = 1; n <= 12; ++n) {
                auto box = CompactRegion::make_box(
                    std::vector<Interval>(d, {Rational(-n), Rational(n)}));
                auto disc = lattice_discretize(box, Rational(1));
                std::size_t inner = 1, outer = 1;
                for (int ax = 0; ax < d; ++ax) inner *= 2 * n, outer *= 2 * n + 2;
                CHECK(disc.f_check.size() == inner);
                CHECK(disc.f_hat.size() == outer);
                CHECK(disc.f_check.subset_of(disc.f_hat));
            }
        }
    }
    SUBCASE("fractional spacing") {
        auto disc = lattice_discretize(CompactRegion::make_box({{Rational(0), Rational(2)}}),
                                       Rational(1, 2));
        CHECK(disc.f_check.size() == 4);  // cells [0,1/2)..[3/2,2)
        CHECK(disc.f_hat.size() == 6);
    }
}
