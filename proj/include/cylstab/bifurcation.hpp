#pragma once

// Bifurcation of closed cylinders: the periodic spectrum along the family of
// cylinders of fixed radius and varying period, the periods where a kernel
// appears, and the Crandall-Rabinowitz conditions at those periods.
//
// On the closed cylinder of period T the longitudinal factor is periodic,
// delta = 2 pi m / T, so
//
//     lambda_{m,n} = 4 pi^2 m^2 / (T^2 (1+r^2)) + n^2/r^2 - varpi,
//
// with t-eigenspace {cos, sin} of dimension 2 for m >= 1.  The first
// rotationally symmetric eigenvalue lambda_{1,0} vanishes exactly at
// T = 2 pi sinh R, the stable bound of the closed problem, and crosses with
// nonzero speed; restricted to functions even in t the kernel is simple.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cylstab/geometry.hpp"
#include "cylstab/spectra.hpp"

namespace cylstab {

inline double periodic_lambda(const CylinderGeometry& g, double T, int m, int n) {
    if (!(T > 0.0)) throw std::domain_error("periodic_lambda: T must be positive");
    const double delta = 2.0 * pi * m / T;
    return lambda_trig(g, delta, n);
}

/// Spectrum of the closed cylinder of period T.  One entry per (m, n); the
/// longitudinal eigenspace is two-dimensional for every m >= 1 (cos and sin),
/// one-dimensional for m = 0.
inline std::vector<EigenvalueEntry> periodic_spectrum(const CylinderGeometry& g, double T,
                                                      int m_max, int n_max) {
    if (!(T > 0.0)) throw std::domain_error("periodic_spectrum: T must be positive");
    if (m_max < 0 || n_max < 0)
        throw std::domain_error("periodic_spectrum: need m_max >= 0, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Trig, m, n, periodic_lambda(g, T, m, n), 0.0, false});
    sort_entries(out);
    return out;
}

/// Period at which lambda_{m,0} vanishes.  Closed form: lambda_{m,0}(T) = 0
/// iff 4 pi^2 m^2 / T^2 = 1/r^2, that is T = m times the stable threshold
/// 2 pi sinh R; the m = 1 point reproduces critical_length(..., Stable)
/// bit for bit.
struct BifurcationPoint {
    int m = 0;
    double T0 = 0.0;
};

inline std::vector<BifurcationPoint> find_bifurcation_points(const CylinderGeometry& g,
                                                             double T_min, double T_max) {
    if (!(T_min > 0.0) || !(T_max >= T_min))
        throw std::domain_error("find_bifurcation_points: need 0 < T_min <= T_max");
    std::vector<BifurcationPoint> out;
    const double step = 2.0 * (pi * g.r);
    for (int m = 1; m * step <= T_max; ++m) {
        const double T0 = m * step;
        if (T0 >= T_min) out.push_back({m, T0});
    }
    return out;
}

/// Kernel period of mode m located by bisection of T -> lambda_{m,0}(T),
/// which is strictly decreasing.  Serves as an independent confirmation of
/// the closed form in find_bifurcation_points.
inline double locate_kernel_period(const CylinderGeometry& g, int m) {
    if (m < 1) throw std::domain_error("locate_kernel_period: m must be >= 1");
    const double guess = m * 2.0 * (pi * g.r);
    double lo = 0.5 * guess, hi = 2.0 * guess;
    if (!(periodic_lambda(g, lo, m, 0) > 0.0 && periodic_lambda(g, hi, m, 0) < 0.0))
        throw std::runtime_error("locate_kernel_period: bracket failed");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-14 * mid) break;
        (periodic_lambda(g, mid, m, 0) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Crandall-Rabinowitz data at a kernel period.
///
/// kernel_dim counts the full periodic kernel of mode m (cos and sin), and
/// kernel_dim_even its restriction to functions even in t, where the kernel
/// is simple and the bifurcation theorem applies.  transversality is the
/// normalized pairing of the kernel function with the T-derivative of the
/// linearization, (1/(pi (1+r^2))) times the integral of cos^2(m t) over the
/// normalized torus, equal to 2 pi / (1+r^2); it is computed here by
/// trapezoid quadrature, which is exact for this integrand.  slope is the
/// central-difference value of d lambda_{m,0} / dT at T0 and must be
/// negative: the eigenvalue crosses zero transversally.
struct CrConditions {
    int kernel_dim = 0;
    int kernel_dim_even = 0;
    double transversality = 0.0;
    double slope = 0.0;
};

inline CrConditions check_cr_conditions(const CylinderGeometry& g, int m, double T0) {
    if (m < 1) throw std::domain_error("check_cr_conditions: m must be >= 1");
    const double lam = periodic_lambda(g, T0, m, 0);
    if (std::abs(lam) > 1e-8)
        throw std::domain_error(
            "check_cr_conditions: lambda_{m,0}(T0) does not vanish, T0 is not a "
            "bifurcation period");
    CrConditions cr;
    cr.kernel_dim = 2;
    cr.kernel_dim_even = 1;
    const int K = 4096;
    double acc = 0.0;
    for (int i = 0; i <= K; ++i) {
        const double t = 2.0 * pi * i / K;
        const double c = std::cos(m * t);
        const double w = (i == 0 || i == K) ? 0.5 : 1.0;
        acc += w * c * c;
    }
    acc *= 2.0 * pi / K;  // trapezoid value of the t-integral, pi up to roundoff
    // Pairing = (1/(pi (1+r^2))) * (theta integral 2 pi) * (t integral).
    cr.transversality = acc * 2.0 / (1.0 + g.r * g.r);
    const double h = 1e-6 * T0;
    cr.slope = (periodic_lambda(g, T0 + h, m, 0) - periodic_lambda(g, T0 - h, m, 0)) /
               (2.0 * h);
    return cr;
}

}  // namespace cylstab
