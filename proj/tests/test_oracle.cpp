#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "cylstab/geometry.hpp"
#include "cylstab/oracle.hpp"
#include "cylstab/spectra.hpp"

using namespace cylstab;
using Catch::Approx;

TEST_CASE("assembled operator structure") {
    SECTION("fixed ends drop their nodes") {
        ModeProblem p;
        p.T = 2.0;
        p.lower = Bc::dirichlet();
        p.upper = Bc::dirichlet();
        p.grid_n = 100;
        const auto op = assemble(p);
        const double h = 2.0 / 100.0;
        REQUIRE(op.diag.size() == 99);
        CHECK(op.h == Approx(h).epsilon(1e-15));
        CHECK(op.off == Approx(-1.0 / (h * h)).epsilon(1e-15));
        for (double d : op.diag) CHECK(d == Approx(2.0 / (h * h)).epsilon(1e-15));
        for (double w : op.weight) CHECK(w == 1.0);
    }
    SECTION("Robin ends keep their nodes with corner rows") {
        ModeProblem p;
        p.T = 1.0;
        p.lower = Bc::robin(1.0);
        p.upper = Bc::robin(-1.0);
        p.grid_n = 50;
        const auto op = assemble(p);
        const double h = 1.0 / 50.0;
        REQUIRE(op.diag.size() == 51);
        CHECK(op.diag.front() == Approx((1.0 - h * 1.0) / (h * h)).epsilon(1e-15));
        CHECK(op.diag.back() == Approx((1.0 + h * 1.0) / (h * h)).epsilon(1e-15));
        CHECK(op.weight.front() == 0.5);
        CHECK(op.weight.back() == 0.5);
        CHECK(op.weight[1] == 1.0);
    }
    SECTION("rejects a grid that is too coarse") {
        ModeProblem p;
        p.T = 1.0;
        p.grid_n = 8;
        CHECK_THROWS_AS(assemble(p), std::domain_error);
    }
}

TEST_CASE("discrete eigenvalues of the fixed chain are exact") {
    // With both nodes dropped the pencil is the classical (2, -1)/h^2 matrix,
    // whose eigenvalues are 4/h^2 sin^2(k pi / (2N)).
    ModeProblem p;
    p.T = 2.0;
    p.lower = Bc::dirichlet();
    p.upper = Bc::dirichlet();
    p.grid_n = 200;
    const auto op = assemble(p);
    const auto mus = lowest_mu(op, 4);
    REQUIRE(mus.size() == 4);
    const double h = op.h;
    for (int k = 1; k <= 4; ++k) {
        const double s = std::sin(k * pi / (2.0 * 200));
        const double exact = 4.0 / (h * h) * s * s;
        CHECK(mus[k - 1] == Approx(exact).epsilon(1e-8));
    }
    // Sturm count and bisection agree on both sides of an eigenvalue.
    CHECK(count_below_mu(op, mus[2] * 1.0001) == 3);
    CHECK(count_below_mu(op, mus[2] * 0.9999) == 2);
}

TEST_CASE("discrete eigenvalues of the free chain are exact") {
    // Half weights at the kept end nodes make cos(k pi j / N) an exact
    // eigenvector with mu = 2 (1 - cos(k pi / N)) / h^2, including mu = 0.
    ModeProblem p;
    p.T = 1.0;
    p.lower = Bc::neumann();
    p.upper = Bc::neumann();
    p.grid_n = 100;
    const auto op = assemble(p);
    const auto mus = lowest_mu(op, 3);
    REQUIRE(mus.size() == 3);
    CHECK(std::abs(mus[0]) < 1e-6);
    const double h = op.h;
    for (int k = 1; k <= 2; ++k) {
        const double exact = 2.0 * (1.0 - std::cos(k * pi / 100.0)) / (h * h);
        CHECK(mus[k] == Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("mode problems carry the scenario data") {
    const auto g = cylinder_geometry_from_r(1.0);
    SECTION("horosphere ends translate to signed Robin data") {
        const auto p = cylinder_mode(SupportScenario::horospheres(2.0), g, 0, 100);
        CHECK(p.lower.type == BcType::Robin);
        CHECK(p.lower.a == Approx(1.0));
        CHECK(p.upper.a == Approx(-1.0));
        CHECK(p.scale == Approx(0.5));
        CHECK(p.offset == Approx(-0.5));
    }
    SECTION("spherical cap derives its own length") {
        const auto g2 = cylinder_geometry_from_r(0.5);
        const auto p = cylinder_mode(SupportScenario::ball(2.0, 2.0), g2, 1, 100);
        CHECK(p.T == Approx(0.51082562376599068).epsilon(1e-14));
        CHECK(p.lower.a == Approx(4.0));
        CHECK(p.upper.a == Approx(4.0));
        CHECK(p.offset == Approx(4.0 - 3.2).epsilon(1e-13));
    }
    SECTION("strip modes are fully fixed with the pi^2 n^2 shift") {
        const auto p = slab_mode(2.0, 3.0, 1, 100);
        CHECK(p.lower.type == BcType::Dirichlet);
        CHECK(p.scale == Approx(4.0));
        CHECK(p.offset == Approx(4.0 * pi * pi).epsilon(1e-14));
    }
    CHECK_THROWS_AS(cylinder_mode(SupportScenario::dirichlet(1.0), g, 0, 8),
                    std::domain_error);
    CHECK_THROWS_AS(cylinder_mode(SupportScenario::slab_horosphere(1.0, 1.0), g, 0, 100),
                    std::domain_error);
}

TEST_CASE("solver reproduces the horosphere exponential eigenvalue") {
    const auto g = cylinder_geometry_from_r(1.0);
    const auto p = cylinder_mode(SupportScenario::horospheres(2.0), g, 0, 2000);
    const auto op = assemble(p);
    const auto lams = lowest_eigenvalues(op, 1);
    REQUIRE(lams.size() == 1);
    CHECK(lams[0] == Approx(-1.0).margin(1e-4));
}

TEST_CASE("solver reproduces the strip ground state") {
    const auto p = slab_mode(1.0, 1.0, 0, 2000);
    const auto lams = lowest_eigenvalues(assemble(p), 1);
    REQUIRE(lams.size() == 1);
    CHECK(lams[0] == Approx(pi * pi).epsilon(1e-5));
    CHECK(lams[0] > 0.0);
}

TEST_CASE("independent count matches the catalogue for fixed ends") {
    const auto g = cylinder_geometry_from_r(1.0);
    for (double T : {0.5, 2.0, 4.0, 7.0, 10.0}) {
        const auto s = SupportScenario::dirichlet(T);
        const auto rep = index_report(s, g);
        const auto oi = oracle_index(s, g, 1000);
        CHECK(oi.count == rep.counted_index);
        CHECK(oi.converged);
        CHECK(oi.count_coarse == oi.count_fine);
    }
}

TEST_CASE("independent count: horosphere ends add one to fixed ends") {
    for (double T : {0.5, 2.0, 6.0}) {
        const auto g = cylinder_geometry_from_r(1.0);
        const int fixed = oracle_index(SupportScenario::dirichlet(T), g, 1000).count;
        const int horo = oracle_index(SupportScenario::horospheres(T), g, 1000).count;
        CHECK(horo == fixed + 1);
    }
    // Barely supercritical piece at r = 2: the first lattice mode is negative
    // by 3e-4, well beyond the guard band.
    const auto g2 = cylinder_geometry_from_r(2.0);
    const auto oi = oracle_index(SupportScenario::horospheres(6.3), g2, 2000);
    CHECK(oi.count == 2);
    CHECK(oi.converged);
}

TEST_CASE("independent count handles the geodesic sphere constant mode") {
    const auto g = cylinder_geometry_from_r(1.0);
    const auto s = SupportScenario::geodesic_spheres(7.0);
    const auto rep = index_report(s, g);
    const auto oi = oracle_index(s, g, 1000);
    CHECK(oi.count == rep.counted_index);
    CHECK(oi.converged);
}

TEST_CASE("independent count confirms the half cylinder distinctions") {
    const auto g = cylinder_geometry_from_r(1.0);
    SECTION("horosphere base") {
        CHECK(oracle_index(SupportScenario::half_horosphere(2.0), g, 1000).count == 1);
        CHECK(oracle_index(SupportScenario::half_horosphere(0.5), g, 1000).count == 0);
    }
    SECTION("short horosphere base at small radius sides with the count") {
        // The printed formula yields 0 here; the solver agrees with the
        // direct count of 1 instead.
        const auto g4 = cylinder_geometry_from_r(0.25);
        const auto s = SupportScenario::half_horosphere(0.5);
        const auto oi = oracle_index(s, g4, 1000);
        CHECK(oi.count == 1);
        CHECK(oi.converged);
        CHECK(oi.count == index_report(s, g4).counted_index);
    }
    SECTION("geodesic plane base") {
        CHECK(oracle_index(SupportScenario::half_geodesic_plane(3.0), g, 1000).count == 1);
        CHECK(oracle_index(SupportScenario::half_geodesic_plane(5.0), g, 1000).count == 2);
        CHECK(oracle_index(SupportScenario::half_geodesic_plane(1.0), g, 1000).count == 0);
    }
    SECTION("equidistant base") {
        CHECK(oracle_index(SupportScenario::equidistant(0.6, 3.0), g, 1000).count == 1);
        CHECK(oracle_index(SupportScenario::equidistant(0.6, 0.5), g, 1000).count == 0);
    }
}

TEST_CASE("independent count of the strip is zero") {
    const auto oi =
        oracle_index(SupportScenario::slab_horosphere(1.0, 1.0), std::nullopt, 1000);
    CHECK(oi.count == 0);
    CHECK(oi.converged);
}

TEST_CASE("spherical cap: solver count exceeds the catalogue by the extra rate") {
    // The end conditions admit a second exponential rate delta > sigma whose
    // eigenvalues the enumeration omits; adding them reconciles the counts.
    for (double r : {0.4, 0.5, 0.55}) {
        const auto g = cylinder_geometry_from_r(r);
        const auto s = SupportScenario::ball(2.0, 2.0);
        const auto rep = index_report(s, g);
        const BallGeometry b = ball_geometry(2.0, 2.0, r);
        const double d2 = ball_boundary_layer_root(b);
        int extras = 0;
        for (int n : {0, 1})
            if (lambda_hyperbolic(g, d2, n) < 0.0) ++extras;
        CHECK(extras == 2);
        const auto oi = oracle_index(s, g, 2000);
        CHECK(oi.converged);
        CHECK(oi.count == rep.counted_index + extras);
    }
}

TEST_CASE("catalogue and solver eigenvalues agree below the cap") {
    const auto g = cylinder_geometry_from_r(1.0);
    SECTION("fixed ends") {
        const auto rep = crosscheck(SupportScenario::dirichlet(7.0), g);
        CHECK(rep.pass);
        CHECK(rep.max_deviation < 1e-3);
        CHECK(rep.unmatched_oracle.empty());
        CHECK(rep.order_samples > 0);
        CHECK(rep.median_order == Approx(2.0).margin(0.3));
        REQUIRE_FALSE(rep.matched.empty());
    }
    SECTION("horosphere ends") {
        const auto rep = crosscheck(SupportScenario::horospheres(2.0), g);
        CHECK(rep.pass);
        CHECK(rep.unmatched_oracle.empty());
    }
    SECTION("equidistant base") {
        const auto rep = crosscheck(SupportScenario::equidistant(0.6, 3.0), g);
        CHECK(rep.pass);
        CHECK(rep.unmatched_oracle.empty());
    }
    SECTION("strip") {
        const auto rep =
            crosscheck(SupportScenario::slab_horosphere(1.0, 1.0), std::nullopt);
        CHECK(rep.pass);
        CHECK(rep.unmatched_oracle.empty());
    }
}

TEST_CASE("spherical cap crosscheck lists exactly the omitted pair") {
    const auto g = cylinder_geometry_from_r(0.5);
    const auto rep = crosscheck(SupportScenario::ball(2.0, 2.0), g);
    CHECK(rep.pass);  // matched entries agree; the extras are listed, not scored
    REQUIRE(rep.unmatched_oracle.size() == 2);
    auto extras = rep.unmatched_oracle;
    std::sort(extras.begin(), extras.end());
    CHECK(extras[0] == Approx(-21.384624451736715).margin(1e-4));
    CHECK(extras[1] == Approx(-17.384624451736715).margin(1e-4));
}

TEST_CASE("solver argument validation") {
    const auto g = cylinder_geometry_from_r(1.0);
    CHECK_THROWS_AS(oracle_index(SupportScenario::dirichlet(1.0), std::nullopt, 1000),
                    std::domain_error);
    CHECK_THROWS_AS(oracle_index(SupportScenario::dirichlet(1.0), g, 8),
                    std::domain_error);
    CHECK_THROWS_AS(crosscheck(SupportScenario::dirichlet(1.0), g, 32), std::domain_error);
    ModeProblem p;
    p.T = 1.0;
    p.grid_n = 100;
    const auto op = assemble(p);
    CHECK_THROWS_AS(lowest_mu(op, 0), std::domain_error);
}

TEST_CASE("half circle modes start at the first sine") {
    const auto g = cylinder_geometry_from_r(1.0);
    auto s = SupportScenario::dirichlet(7.0);
    s.angular_domain = AngularDomain::HalfCircleDirichlet;
    const auto oi = oracle_index(s, g, 1000);
    CHECK(oi.count == 0);
    CHECK(oi.converged);
}
