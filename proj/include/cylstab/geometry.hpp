#pragma once

// Geometric data for Killing cylinders in the upper half-space model of
// hyperbolic 3-space, together with the boundary data induced by each
// supported configuration of support surfaces.
//
// A Killing cylinder of hyperbolic radius R is the cone through the circles
// e^t (r cos theta, r sin theta, 1) with r = sinh R.  Every scalar invariant
// needed by the spectral modules is collected here, as well as the reduced
// Robin coefficients entering the one-dimensional eigenvalue problems.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cylstab {

inline constexpr double pi = std::numbers::pi_v<double>;

/// Scalar invariants of the Killing cylinder of hyperbolic radius R.
struct CylinderGeometry {
    double R;       ///< hyperbolic radius, R > 0
    double r;       ///< Euclidean model radius, r = sinh R
    double varpi;   ///< Jacobi potential |A|^2 - 2 = 1 / (r^2 (1 + r^2))
    double H;       ///< mean curvature, (tanh R + coth R) / 2
    double A2;      ///< |A|^2, squared norm of the second fundamental form
    double kappa1;  ///< principal curvature along the meridian, sqrt(1+r^2)/r
    double kappa2;  ///< principal curvature along the parallel, r/sqrt(1+r^2)
};

namespace detail {

inline CylinderGeometry make_cylinder(double R, double r) {
    CylinderGeometry g;
    g.R = R;
    g.r = r;
    const double r2 = r * r;
    const double c2 = 1.0 + r2;  // cosh^2 R
    g.varpi = 1.0 / (r2 * c2);
    g.kappa1 = std::sqrt(c2) / r;
    g.kappa2 = r / std::sqrt(c2);
    g.H = 0.5 * (g.kappa1 + g.kappa2);
    g.A2 = g.kappa1 * g.kappa1 + g.kappa2 * g.kappa2;
    return g;
}

}  // namespace detail

/// Builds the cylinder invariants from the hyperbolic radius R.
inline CylinderGeometry cylinder_geometry(double R) {
    if (!std::isfinite(R) || R <= 0.0)
        throw std::domain_error("cylinder_geometry: R must be positive and finite");
    return detail::make_cylinder(R, std::sinh(R));
}

/// Builds the cylinder invariants from the model radius r = sinh R.  The
/// given r is stored verbatim so that thresholds computed from it (such as
/// 2*pi*r) are exact in the user's parametrization.
inline CylinderGeometry cylinder_geometry_from_r(double r) {
    if (!std::isfinite(r) || r <= 0.0)
        throw std::domain_error("cylinder_geometry_from_r: r must be positive and finite");
    return detail::make_cylinder(std::asinh(r), r);
}

/// The eight supported boundary configurations.
enum class ScenarioKind {
    Dirichlet,          ///< compact piece with fixed boundary circles
    GeodesicSpheres,    ///< free boundary on two concentric geodesic spheres
    Horospheres,        ///< free boundary on two horospheres
    HalfGeodesicPlane,  ///< half cylinder over a geodesic plane, piece of length T
    HalfHorosphere,     ///< half cylinder over a horosphere, piece of length T
    Equidistant,        ///< half cylinder over an equidistant surface, 0 < H0 < 1
    Ball,               ///< piece cut out by a geodesic ball (Euclidean sphere)
    SlabHorosphere      ///< horosphere strip between parallel walls
};

/// Angular domain of the perturbations: the full circle, or the half circle
/// with Dirichlet conditions on the two straight sides.
enum class AngularDomain { FullCircle, HalfCircleDirichlet };

/// Tagged parameter bundle for one boundary configuration.
struct SupportScenario {
    ScenarioKind kind = ScenarioKind::Dirichlet;
    double T = 0.0;    ///< length of the t-interval (all bounded scenarios)
    double H0 = 0.0;   ///< support mean curvature: Equidistant (0,1), Ball (>1)
    double rho = 0.0;  ///< Euclidean radius of the supporting sphere (Ball)
    double tau = 0.0;  ///< height of the horosphere strip (SlabHorosphere)
    AngularDomain angular_domain = AngularDomain::FullCircle;

    static SupportScenario dirichlet(double T) {
        require_length(T);
        SupportScenario s;
        s.kind = ScenarioKind::Dirichlet;
        s.T = T;
        return s;
    }
    static SupportScenario geodesic_spheres(double T) {
        require_length(T);
        SupportScenario s;
        s.kind = ScenarioKind::GeodesicSpheres;
        s.T = T;
        return s;
    }
    static SupportScenario horospheres(double T) {
        require_length(T);
        SupportScenario s;
        s.kind = ScenarioKind::Horospheres;
        s.T = T;
        return s;
    }
    static SupportScenario half_geodesic_plane(double T) {
        require_length(T);
        SupportScenario s;
        s.kind = ScenarioKind::HalfGeodesicPlane;
        s.T = T;
        return s;
    }
    static SupportScenario half_horosphere(double T) {
        require_length(T);
        SupportScenario s;
        s.kind = ScenarioKind::HalfHorosphere;
        s.T = T;
        return s;
    }
    static SupportScenario equidistant(double H0, double T) {
        require_length(T);
        if (!std::isfinite(H0) || H0 <= 0.0 || H0 >= 1.0)
            throw std::domain_error("equidistant: H0 must lie in (0, 1)");
        SupportScenario s;
        s.kind = ScenarioKind::Equidistant;
        s.H0 = H0;
        s.T = T;
        return s;
    }
    static SupportScenario ball(double H0, double rho) {
        if (!std::isfinite(H0) || H0 <= 1.0)
            throw std::domain_error("ball: H0 must exceed 1");
        if (!std::isfinite(rho) || rho <= 0.0)
            throw std::domain_error("ball: rho must be positive");
        SupportScenario s;
        s.kind = ScenarioKind::Ball;
        s.H0 = H0;
        s.rho = rho;
        return s;
    }
    static SupportScenario slab_horosphere(double tau, double T) {
        require_length(T);
        if (!std::isfinite(tau) || tau <= 0.0)
            throw std::domain_error("slab_horosphere: tau must be positive");
        SupportScenario s;
        s.kind = ScenarioKind::SlabHorosphere;
        s.tau = tau;
        s.T = T;
        return s;
    }

  private:
    static void require_length(double T) {
        if (!std::isfinite(T) || T <= 0.0)
            throw std::domain_error("scenario: T must be positive and finite");
    }
};

inline const char* scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::Dirichlet: return "dirichlet";
        case ScenarioKind::GeodesicSpheres: return "geodesic-spheres";
        case ScenarioKind::Horospheres: return "horospheres";
        case ScenarioKind::HalfGeodesicPlane: return "half-geodesic-plane";
        case ScenarioKind::HalfHorosphere: return "half-horosphere";
        case ScenarioKind::Equidistant: return "equidistant";
        case ScenarioKind::Ball: return "ball";
        case ScenarioKind::SlabHorosphere: return "slab-horosphere";
    }
    return "unknown";
}

/// Data of the cylinder piece cut out by the sphere x^2+y^2+(z-c)^2 = rho^2
/// with c = H0 * rho.  The piece occupies t in [t_minus, t_plus].
struct BallGeometry {
    double H0;      ///< mean curvature of the supporting sphere, H0 > 1
    double rho;     ///< Euclidean radius of the sphere
    double c;       ///< height of the sphere center, c = H0 * rho
    double alpha;   ///< sqrt(1 - r^2 (H0^2 - 1)), in (0, 1]
    double beta;    ///< rho / (1 + r^2)
    double t_minus; ///< lower end, e^{t-} = beta (H0 - alpha)
    double t_plus;  ///< upper end, e^{t+} = beta (H0 + alpha)
    double T;       ///< t_plus - t_minus = log((H0+alpha)/(H0-alpha))
    double sigma;   ///< H0 / alpha, the reduced Robin coefficient
};

/// Intersection data of the cylinder of model radius r with the ball support.
/// Requires r < 1/sqrt(H0^2-1); configurations within 1e-10 of tangency are
/// rejected as degenerate.
inline BallGeometry ball_geometry(double H0, double rho, double r) {
    if (!std::isfinite(H0) || H0 <= 1.0)
        throw std::domain_error("ball_geometry: H0 must exceed 1");
    if (!std::isfinite(rho) || rho <= 0.0)
        throw std::domain_error("ball_geometry: rho must be positive");
    if (!std::isfinite(r) || r <= 0.0)
        throw std::domain_error("ball_geometry: r must be positive");
    const double disc = 1.0 - r * r * (H0 * H0 - 1.0);
    if (disc <= 0.0)
        throw std::domain_error(
            "ball_geometry: cylinder misses the sphere, need r < 1/sqrt(H0^2-1)");
    BallGeometry b;
    b.H0 = H0;
    b.rho = rho;
    b.c = H0 * rho;
    b.alpha = std::sqrt(disc);
    if (b.alpha < 1e-10)
        throw std::domain_error("ball_geometry: tangent configuration (alpha below 1e-10)");
    b.beta = rho / (1.0 + r * r);
    b.t_minus = std::log(b.beta * (H0 - b.alpha));
    b.t_plus = std::log(b.beta * (H0 + b.alpha));
    b.T = std::log((H0 + b.alpha) / (H0 - b.alpha));
    b.sigma = H0 / b.alpha;
    return b;
}

/// Reduced Robin coefficient of the equidistant support of mean curvature H0,
/// Theta = H0 / sqrt(1 + r^2 (1 - H0^2)), in (0, 1).
inline double equidistant_theta(double H0, double r) {
    if (!std::isfinite(H0) || H0 <= 0.0 || H0 >= 1.0)
        throw std::domain_error("equidistant_theta: H0 must lie in (0, 1)");
    if (!std::isfinite(r) || r <= 0.0)
        throw std::domain_error("equidistant_theta: r must be positive");
    return H0 / std::sqrt(1.0 + r * r * (1.0 - H0 * H0));
}

enum class End { Lower, Upper };

/// Boundary data for one end of the reduced problem on [0, T].  With the
/// factor 1/sqrt(1+r^2) of the conormal derivative divided out, the boundary
/// conditions read
///
///     f'(0) + a * f(0) = 0   at the lower end,
///     f'(T) - a * f(T) = 0   at the upper end,
///
/// and q = a / sqrt(1+r^2) is the coefficient at the surface level.  A
/// Dirichlet end carries no coefficient.
struct RobinCoefficient {
    bool dirichlet = false;
    double a = 0.0;
    double q = 0.0;
};

/// Signed reduced Robin coefficient for the given scenario and end.
///
/// The horosphere pair deserves a note: both circles satisfy f' + f = 0, so
/// under the sign convention above the lower end carries a = +1 and the upper
/// end a = -1.  The ball support gives f'+sigma*f = 0 below and
/// f'-sigma*f = 0 above, hence a = +sigma at both ends.
inline RobinCoefficient robin_coefficient(const SupportScenario& scenario, End end,
                                          const CylinderGeometry& geom) {
    const double root = std::sqrt(1.0 + geom.r * geom.r);
    RobinCoefficient rc;
    auto robin = [&](double a) {
        rc.dirichlet = false;
        rc.a = a;
        rc.q = a / root;
        return rc;
    };
    auto dirichlet = [&]() {
        rc.dirichlet = true;
        return rc;
    };
    switch (scenario.kind) {
        case ScenarioKind::Dirichlet:
        case ScenarioKind::SlabHorosphere:
            return dirichlet();
        case ScenarioKind::GeodesicSpheres:
            return robin(0.0);
        case ScenarioKind::Horospheres:
            return robin(end == End::Lower ? 1.0 : -1.0);
        case ScenarioKind::HalfGeodesicPlane:
            return end == End::Lower ? robin(0.0) : dirichlet();
        case ScenarioKind::HalfHorosphere:
            return end == End::Lower ? robin(1.0) : dirichlet();
        case ScenarioKind::Equidistant:
            return end == End::Lower ? robin(equidistant_theta(scenario.H0, geom.r))
                                     : dirichlet();
        case ScenarioKind::Ball: {
            const BallGeometry b = ball_geometry(scenario.H0, scenario.rho, geom.r);
            return robin(b.sigma);
        }
    }
    throw std::logic_error("robin_coefficient: unhandled scenario");
}

/// Stability thresholds of the cylinder in the t-length.
enum class CriticalKind {
    Strong,          ///< loss of strong stability, pi * sinh R
    Stable,          ///< loss of stability, 2 pi * sinh R
    HalfPlaneStable  ///< loss of stability over a geodesic plane, 3 pi sinh R / 2
};

inline double critical_length(const CylinderGeometry& geom, CriticalKind kind) {
    const double base = pi * geom.r;
    switch (kind) {
        case CriticalKind::Strong: return base;
        case CriticalKind::Stable: return 2.0 * base;
        case CriticalKind::HalfPlaneStable: return 1.5 * base;
    }
    throw std::logic_error("critical_length: unhandled kind");
}

}  // namespace cylstab
