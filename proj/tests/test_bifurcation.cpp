#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "cylstab/bifurcation.hpp"
#include "cylstab/geometry.hpp"

using namespace cylstab;
using Catch::Approx;

TEST_CASE("periodic eigenvalues") {
    const auto g = cylinder_geometry_from_r(1.0);
    // lambda_{0,0} = -varpi for every period.
    CHECK(periodic_lambda(g, 3.0, 0, 0) == Approx(-0.5).epsilon(1e-15));
    // The first longitudinal mode vanishes exactly at the stable threshold.
    CHECK(periodic_lambda(g, 2.0 * pi, 1, 0) == Approx(0.0).margin(1e-15));
    CHECK(periodic_lambda(g, 2.0 * pi * 0.9, 1, 0) > 0.0);
    CHECK(periodic_lambda(g, 2.0 * pi * 1.1, 1, 0) < 0.0);
    // Rotational modes n >= 1 never go negative along the family.
    for (double T : {1.0, 10.0, 100.0})
        for (int m : {0, 1, 2, 5}) CHECK(periodic_lambda(g, T, m, 1) >= 0.0);
    CHECK_THROWS_AS(periodic_lambda(g, 0.0, 1, 0), std::domain_error);
}

TEST_CASE("periodic spectrum listing") {
    const auto g = cylinder_geometry_from_r(1.0);
    const auto entries = periodic_spectrum(g, 4.0 * pi, 3, 2);
    REQUIRE(entries.size() == 4u * 3u);
    CHECK(entries.front().lambda == Approx(-0.5).epsilon(1e-14));
    CHECK(entries.front().m == 0);
    // At T = 4 pi the m = 1 mode is already negative and m = 2 sits on zero.
    int negatives = 0;
    for (const auto& e : entries)
        if (e.lambda < -1e-12) ++negatives;
    CHECK(negatives == 2);  // (0,0) and (1,0)
}

TEST_CASE("kernel periods land on multiples of the stable threshold") {
    for (double r : {0.5, 1.0, 2.0}) {
        const auto g = cylinder_geometry_from_r(r);
        const auto pts = find_bifurcation_points(g, 1e-3, 5.0 * 2.0 * pi * r);
        REQUIRE(pts.size() == 5);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(pts[i].m == static_cast<int>(i) + 1);
            CHECK(pts[i].T0 == Approx((i + 1) * 2.0 * pi * r).epsilon(1e-15));
        }
        // The first kernel period is the stable length bound, bit for bit.
        CHECK(pts[0].T0 == critical_length(g, CriticalKind::Stable));
    }
    const auto g = cylinder_geometry_from_r(1.0);
    CHECK(find_bifurcation_points(g, 6.0, 12.0).size() == 1);  // only m = 1 inside
    CHECK_THROWS_AS(find_bifurcation_points(g, -1.0, 5.0), std::domain_error);
}

TEST_CASE("bisection confirms the closed-form kernel periods") {
    for (double r : {0.5, 1.0, 2.0})
        for (int m : {1, 2}) {
            const auto g = cylinder_geometry_from_r(r);
            const double located = locate_kernel_period(g, m);
            CHECK(located == Approx(2.0 * pi * m * r).epsilon(1e-9));
        }
    CHECK_THROWS_AS(locate_kernel_period(cylinder_geometry_from_r(1.0), 0),
                    std::domain_error);
}

TEST_CASE("crossing conditions at the first kernel period") {
    for (double r : {0.5, 1.0, 2.0}) {
        const auto g = cylinder_geometry_from_r(r);
        const double T0 = critical_length(g, CriticalKind::Stable);
        const auto cr = check_cr_conditions(g, 1, T0);
        CHECK(cr.kernel_dim == 2);
        CHECK(cr.kernel_dim_even == 1);
        CHECK(cr.transversality == Approx(2.0 * pi / (1.0 + r * r)).epsilon(1e-12));
        CHECK(cr.slope < 0.0);
        // d lambda_{1,0}/dT = -8 pi^2 / (T0^3 (1+r^2)).
        const double expected = -8.0 * pi * pi / (T0 * T0 * T0 * (1.0 + r * r));
        CHECK(cr.slope == Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("crossing conditions at a higher kernel period") {
    const auto g = cylinder_geometry_from_r(1.0);
    const double T0 = 2.0 * (2.0 * pi);
    const auto cr = check_cr_conditions(g, 2, T0);
    CHECK(cr.transversality == Approx(pi).epsilon(1e-12));
    const double expected = -8.0 * pi * pi * 4.0 / (T0 * T0 * T0 * 2.0);
    CHECK(cr.slope == Approx(expected).epsilon(1e-6));
}

TEST_CASE("crossing conditions reject an off-kernel period") {
    const auto g = cylinder_geometry_from_r(1.0);
    CHECK_THROWS_AS(check_cr_conditions(g, 1, 2.0 * pi * 1.1), std::domain_error);
}
