#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "cylstab/geometry.hpp"

using namespace cylstab;
using Catch::Approx;

TEST_CASE("cylinder quantities at r = 1") {
    const CylinderGeometry g = cylinder_geometry_from_r(1.0);
    CHECK(g.r == 1.0);
    CHECK(g.R == Approx(0.88137358701954303).epsilon(1e-15));
    CHECK(g.varpi == Approx(0.5).margin(1e-15));
    CHECK(g.H == Approx(1.0606601717798213).epsilon(1e-15));
    CHECK(g.kappa1 == Approx(1.414213562373095).epsilon(1e-15));
    CHECK(g.A2 == Approx(2.5).epsilon(1e-15));
}

TEST_CASE("cylinder quantities at r = 0.5 and r = 2") {
    const CylinderGeometry a = cylinder_geometry_from_r(0.5);
    CHECK(a.varpi == Approx(3.2).epsilon(1e-15));
    CHECK(a.H == Approx(1.3416407864998738).epsilon(1e-15));
    CHECK(a.A2 == Approx(5.2).epsilon(1e-15));
    const CylinderGeometry b = cylinder_geometry_from_r(2.0);
    CHECK(b.varpi == Approx(0.05).epsilon(1e-15));
    CHECK(b.H == Approx(1.0062305898749054).epsilon(1e-15));
    CHECK(b.A2 == Approx(2.05).epsilon(1e-15));
}

TEST_CASE("the two radius constructors agree") {
    const CylinderGeometry a = cylinder_geometry(0.88137358701954303);
    const CylinderGeometry b = cylinder_geometry_from_r(1.0);
    CHECK(a.r == Approx(b.r).epsilon(1e-14));
    CHECK(a.varpi == Approx(b.varpi).epsilon(1e-13));
    // from_r keeps the given radius bit for bit, so thresholds derived from
    // it reproduce exactly.
    CHECK(cylinder_geometry_from_r(0.5).r == 0.5);
    CHECK(cylinder_geometry_from_r(2.0).r == 2.0);
}

TEST_CASE("potential identity |A|^2 - 2 = varpi") {
    // kappa1 kappa2 = 1, so |A|^2 - 2 = (kappa1 - kappa2)^2 = varpi.
    for (double r = 0.01; r < 130.0; r *= 1.7) {
        const CylinderGeometry g = cylinder_geometry_from_r(r);
        CHECK(g.kappa1 * g.kappa2 == Approx(1.0).epsilon(1e-14));
        // Subtracting 2 from A2 cancels down to eps-level absolute error when
        // r is large, so allow an absolute floor alongside the relative band.
        CHECK(g.A2 - 2.0 == Approx(g.varpi).epsilon(1e-12).margin(2e-15));
        CHECK(2.0 * g.H == Approx(std::tanh(g.R) + 1.0 / std::tanh(g.R)).epsilon(1e-13));
    }
}

TEST_CASE("cylinder constructor rejects bad input") {
    CHECK_THROWS_AS(cylinder_geometry(0.0), std::domain_error);
    CHECK_THROWS_AS(cylinder_geometry(-1.0), std::domain_error);
    CHECK_THROWS_AS(cylinder_geometry(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(cylinder_geometry_from_r(0.0), std::domain_error);
    CHECK_THROWS_AS(cylinder_geometry_from_r(-2.0), std::domain_error);
}

TEST_CASE("ball geometry at H0 = 2, rho = 2, r = 0.5") {
    const BallGeometry b = ball_geometry(2.0, 2.0, 0.5);
    CHECK(b.alpha == Approx(0.5).epsilon(1e-15));
    CHECK(b.beta == Approx(1.6).epsilon(1e-15));
    CHECK(b.t_minus == Approx(0.87546873735389994).epsilon(1e-14));
    CHECK(b.t_plus == Approx(1.3862943611198906).epsilon(1e-14));
    CHECK(b.T == Approx(0.51082562376599068).epsilon(1e-14));
    CHECK(b.sigma == Approx(4.0).epsilon(1e-15));
    CHECK(b.c == Approx(4.0).epsilon(1e-15));
    CHECK(b.T == Approx(b.t_plus - b.t_minus).epsilon(1e-12));
}

TEST_CASE("ball geometry per-radius values") {
    const BallGeometry a = ball_geometry(2.0, 2.0, 0.4);
    CHECK(a.alpha == Approx(0.72111025509279786).epsilon(1e-14));
    CHECK(a.T == Approx(0.75504766430101487).epsilon(1e-14));
    CHECK(a.sigma == Approx(2.7735009811261456).epsilon(1e-14));
    const BallGeometry c = ball_geometry(2.0, 2.0, 0.55);
    CHECK(c.alpha == Approx(0.30413812651491098).epsilon(1e-14));
    CHECK(c.T == Approx(0.30651560024848489).epsilon(1e-14));
    CHECK(c.sigma == Approx(6.5759594922142916).epsilon(1e-14));
}

TEST_CASE("ball pieces satisfy sigma T > 2") {
    // e^T = (sigma+1)/(sigma-1) exactly, so sigma T = sigma log((sigma+1)/(sigma-1))
    // decreases from infinity (sigma -> 1) to 2 (sigma -> infinity); in
    // particular sigma T > 2 > pi/2 for every admissible configuration.  The
    // complementary bound sigma T < pi needs sigma above roughly 1.14 and
    // holds throughout the moderate-curvature range drawn here.
    for (double H0 : {1.2, 1.7, 2.0, 2.8}) {
        const double r_cap = 1.0 / std::sqrt(H0 * H0 - 1.0);
        for (double f : {0.1, 0.5, 0.9}) {
            for (double rho : {0.7, 2.0, 3.5}) {
                const BallGeometry b = ball_geometry(H0, rho, f * r_cap);
                CHECK(b.sigma * b.T > 2.0);
                CHECK(b.sigma * b.T < pi);
                CHECK(std::exp(b.T) ==
                      Approx((b.sigma + 1.0) / (b.sigma - 1.0)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("ball geometry rejects impossible configurations") {
    CHECK_THROWS_AS(ball_geometry(1.0, 2.0, 0.5), std::domain_error);   // H0 <= 1
    CHECK_THROWS_AS(ball_geometry(0.5, 2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(ball_geometry(2.0, 0.0, 0.5), std::domain_error);   // rho <= 0
    CHECK_THROWS_AS(ball_geometry(2.0, 2.0, 0.0), std::domain_error);   // r <= 0
    // r beyond 1/sqrt(H0^2 - 1): the cylinder misses the sphere.
    CHECK_THROWS_AS(ball_geometry(2.0, 2.0, 0.6), std::domain_error);
    // exact tangency
    CHECK_THROWS_AS(ball_geometry(2.0, 2.0, 1.0 / std::sqrt(3.0)), std::domain_error);
}

TEST_CASE("equidistant coefficient") {
    CHECK(equidistant_theta(0.6, 1.0) == Approx(0.4685212856658182).epsilon(1e-15));
    for (double H0 : {0.1, 0.5, 0.9}) {
        for (double r : {0.3, 1.0, 4.0}) {
            const double th = equidistant_theta(H0, r);
            CHECK(th > 0.0);
            CHECK(th < H0);  // the root shrinks the coefficient
        }
    }
}

TEST_CASE("scenario constructors validate their inputs") {
    CHECK_THROWS_AS(SupportScenario::dirichlet(0.0), std::domain_error);
    CHECK_THROWS_AS(SupportScenario::dirichlet(-3.0), std::domain_error);
    CHECK_THROWS_AS(SupportScenario::equidistant(1.0, 2.0), std::domain_error);  // H0 < 1 required
    CHECK_THROWS_AS(SupportScenario::equidistant(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(SupportScenario::ball(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(SupportScenario::slab_horosphere(0.0, 1.0), std::domain_error);
    CHECK_NOTHROW(SupportScenario::equidistant(0.6, 2.0));
    CHECK_NOTHROW(SupportScenario::ball(2.0, 2.0));
}

TEST_CASE("scenario names") {
    CHECK(std::string(scenario_name(ScenarioKind::Dirichlet)) == "dirichlet");
    CHECK(std::string(scenario_name(ScenarioKind::GeodesicSpheres)) == "geodesic-spheres");
    CHECK(std::string(scenario_name(ScenarioKind::Horospheres)) == "horospheres");
    CHECK(std::string(scenario_name(ScenarioKind::HalfGeodesicPlane)) ==
          "half-geodesic-plane");
    CHECK(std::string(scenario_name(ScenarioKind::HalfHorosphere)) == "half-horosphere");
    CHECK(std::string(scenario_name(ScenarioKind::Equidistant)) == "equidistant");
    CHECK(std::string(scenario_name(ScenarioKind::Ball)) == "ball");
    CHECK(std::string(scenario_name(ScenarioKind::SlabHorosphere)) == "slab-horosphere");
}

TEST_CASE("end conditions per scenario") {
    const CylinderGeometry g = cylinder_geometry_from_r(1.0);

    SECTION("fixed boundary") {
        const auto s = SupportScenario::dirichlet(2.0);
        CHECK(robin_coefficient(s, End::Lower, g).dirichlet);
        CHECK(robin_coefficient(s, End::Upper, g).dirichlet);
    }
    SECTION("geodesic spheres are free ends") {
        const auto s = SupportScenario::geodesic_spheres(2.0);
        const auto lo = robin_coefficient(s, End::Lower, g);
        const auto hi = robin_coefficient(s, End::Upper, g);
        CHECK_FALSE(lo.dirichlet);
        CHECK(lo.a == 0.0);
        CHECK(hi.a == 0.0);
        CHECK(lo.q == 0.0);
    }
    SECTION("horospheres carry opposite signed coefficients") {
        const auto s = SupportScenario::horospheres(2.0);
        const auto lo = robin_coefficient(s, End::Lower, g);
        const auto hi = robin_coefficient(s, End::Upper, g);
        CHECK(lo.a == Approx(1.0).epsilon(1e-15));
        CHECK(hi.a == Approx(-1.0).epsilon(1e-15));
        CHECK(lo.q == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(hi.q == Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    }
    SECTION("half cylinder over a horosphere") {
        const auto s = SupportScenario::half_horosphere(2.0);
        CHECK(robin_coefficient(s, End::Lower, g).a == Approx(1.0).epsilon(1e-15));
        CHECK(robin_coefficient(s, End::Upper, g).dirichlet);
    }
    SECTION("half cylinder over a geodesic plane") {
        const auto s = SupportScenario::half_geodesic_plane(2.0);
        const auto lo = robin_coefficient(s, End::Lower, g);
        CHECK_FALSE(lo.dirichlet);
        CHECK(lo.a == 0.0);
        CHECK(robin_coefficient(s, End::Upper, g).dirichlet);
    }
    SECTION("equidistant support uses Theta") {
        const auto s = SupportScenario::equidistant(0.6, 2.0);
        const auto lo = robin_coefficient(s, End::Lower, g);
        CHECK(lo.a == Approx(0.4685212856658182).epsilon(1e-14));
        CHECK(lo.q == Approx(0.4685212856658182 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(robin_coefficient(s, End::Upper, g).dirichlet);
    }
    SECTION("ball uses sigma at both ends") {
        const CylinderGeometry gb = cylinder_geometry_from_r(0.5);
        const auto s = SupportScenario::ball(2.0, 2.0);
        const auto lo = robin_coefficient(s, End::Lower, gb);
        const auto hi = robin_coefficient(s, End::Upper, gb);
        CHECK(lo.a == Approx(4.0).epsilon(1e-14));
        CHECK(hi.a == Approx(4.0).epsilon(1e-14));
        // q = H0 / (alpha sqrt(1+r^2))
        CHECK(lo.q == Approx(2.0 / (0.5 * std::sqrt(1.25))).epsilon(1e-14));
    }
    SECTION("strip walls are fixed") {
        const auto s = SupportScenario::slab_horosphere(1.0, 2.0);
        CHECK(robin_coefficient(s, End::Lower, g).dirichlet);
        CHECK(robin_coefficient(s, End::Upper, g).dirichlet);
    }
}

TEST_CASE("critical lengths") {
    const CylinderGeometry g = cylinder_geometry_from_r(1.0);
    CHECK(critical_length(g, CriticalKind::Strong) == Approx(pi).epsilon(1e-15));
    CHECK(critical_length(g, CriticalKind::Stable) == Approx(2.0 * pi).epsilon(1e-15));
    CHECK(critical_length(g, CriticalKind::HalfPlaneStable) ==
          Approx(1.5 * pi).epsilon(1e-15));
    // The stable bound is exactly twice the strong bound at any radius.
    for (double r : {0.3, 0.5, 1.0, 2.0, 7.5}) {
        const CylinderGeometry gg = cylinder_geometry_from_r(r);
        CHECK(critical_length(gg, CriticalKind::Stable) ==
              2.0 * critical_length(gg, CriticalKind::Strong));
    }
}
