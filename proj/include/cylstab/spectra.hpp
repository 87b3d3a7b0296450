#pragma once

// Closed-form eigenvalue families of the reduced problems, one routine per
// boundary configuration, and the index report aggregating negative counts,
// nullity, and the printed index formulas.
//
// Separation of variables reduces the stability operator on a cylinder piece
// to the family of problems
//
//     f'' + (1 + r^2) (varpi - n^2/r^2 + lambda) f = 0  on [0, T],
//
// indexed by the angular mode n.  Writing the bracket as +-delta^2 or 0
// yields the trigonometric, hyperbolic, and linear branches below, with
//
//     trig:        lambda =  delta^2/(1+r^2) + n^2/r^2 - varpi,
//     hyperbolic:  lambda = -delta^2/(1+r^2) + n^2/r^2 - varpi,
//     linear:      lambda =                    n^2/r^2 - varpi.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "cylstab/geometry.hpp"
#include "cylstab/roots.hpp"

namespace cylstab {

enum class Branch { Trig, Hyperbolic, Linear };

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::Trig: return "trig";
        case Branch::Hyperbolic: return "hyperbolic";
        case Branch::Linear: return "linear";
    }
    return "unknown";
}

/// One eigenvalue family member.  For branches parametrized by a root of a
/// transcendental equation (and for the fixed hyperbolic solutions) delta is
/// genuine data and has_delta is set; lattice values such as m pi / T are
/// implied by (branch, m) and carry has_delta = false.
struct EigenvalueEntry {
    Branch branch = Branch::Trig;
    int m = 0;
    int n = 0;
    double lambda = 0.0;
    double delta = 0.0;
    bool has_delta = false;
};

inline double lambda_trig(const CylinderGeometry& g, double delta, int n) {
    const double r2 = g.r * g.r;
    return delta * delta / (1.0 + r2) + static_cast<double>(n) * n / r2 - g.varpi;
}

inline double lambda_hyperbolic(const CylinderGeometry& g, double delta, int n) {
    const double r2 = g.r * g.r;
    return -delta * delta / (1.0 + r2) + static_cast<double>(n) * n / r2 - g.varpi;
}

inline double lambda_flat(const CylinderGeometry& g, int n) {
    return static_cast<double>(n) * n / (g.r * g.r) - g.varpi;
}

/// Ascending by lambda; ties broken by (branch, m, n) so repeated runs list
/// entries in one canonical order.
inline void sort_entries(std::vector<EigenvalueEntry>& entries) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const EigenvalueEntry& a, const EigenvalueEntry& b) {
                         if (a.lambda != b.lambda) return a.lambda < b.lambda;
                         return std::tuple(static_cast<int>(a.branch), a.m, a.n) <
                                std::tuple(static_cast<int>(b.branch), b.m, b.n);
                     });
}

namespace detail {

/// Smallest angular mode: 1 on the half circle with Dirichlet sides (sine
/// modes only), 0 otherwise.
inline int first_mode(AngularDomain dom) {
    return dom == AngularDomain::HalfCircleDirichlet ? 1 : 0;
}

/// Longitudinal coverage guaranteeing that every negative trig eigenvalue of
/// a lattice family delta = m pi / T appears: lambda_{m,0} < 0 iff
/// m pi / T < 1/r.
inline int lattice_coverage(double T, double r) {
    return static_cast<int>(std::floor(T / (pi * r))) + 1;
}

/// Root search ceiling covering both the negativity test (delta < 1/r) and
/// the listing depth (intervals up to m_max).
inline double root_ceiling(double T, double r, int m_max) {
    const double for_count = 1.0 / r + pi / T;
    const double for_listing = (2.0 * m_max + 1.0) * pi / (2.0 * T);
    return std::max(for_count, for_listing);
}

}  // namespace detail

/// Fixed boundary circles.  Eigenvalues lambda_{m,n} with delta = m pi / T,
/// m >= 1.  On the half circle with Dirichlet sides only the sine modes
/// n >= 1 remain and the spectrum is positive for every T.
inline std::vector<EigenvalueEntry> dirichlet_spectrum(
    const CylinderGeometry& g, double T, int m_max, int n_max,
    AngularDomain dom = AngularDomain::FullCircle) {
    if (!(T > 0.0)) throw std::domain_error("dirichlet_spectrum: T must be positive");
    if (m_max < 1 || n_max < 0)
        throw std::domain_error("dirichlet_spectrum: need m_max >= 1, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    const int M = std::max(m_max, detail::lattice_coverage(T, g.r));
    for (int m = 1; m <= M; ++m)
        for (int n = detail::first_mode(dom); n <= n_max; ++n)
            out.push_back({Branch::Trig, m, n, lambda_trig(g, m * pi / T, n), 0.0, false});
    sort_entries(out);
    return out;
}

/// Free boundary on two concentric geodesic spheres (Neumann ends).  The
/// cosine lattice m >= 1 plus the branch constant in t, which the catalogue
/// lists for n >= 1 only.
inline std::vector<EigenvalueEntry> spheres_spectrum(const CylinderGeometry& g, double T,
                                                     int m_max, int n_max) {
    if (!(T > 0.0)) throw std::domain_error("spheres_spectrum: T must be positive");
    if (m_max < 1 || n_max < 0)
        throw std::domain_error("spheres_spectrum: need m_max >= 1, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    for (int n = 1; n <= n_max; ++n)
        out.push_back({Branch::Trig, 0, n, lambda_flat(g, n), 0.0, false});
    const int M = std::max(m_max, detail::lattice_coverage(T, g.r));
    for (int m = 1; m <= M; ++m)
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Trig, m, n, lambda_trig(g, m * pi / T, n), 0.0, false});
    sort_entries(out);
    return out;
}

/// Free boundary on two horospheres.  Both circles impose f' + f = 0, which
/// selects the exponential solution with delta = 1 (lambda_n = (n^2-1)/r^2)
/// on top of the sine lattice m >= 1.
inline std::vector<EigenvalueEntry> horospheres_spectrum(const CylinderGeometry& g,
                                                         double T, int m_max, int n_max) {
    if (!(T > 0.0)) throw std::domain_error("horospheres_spectrum: T must be positive");
    if (m_max < 1 || n_max < 0)
        throw std::domain_error("horospheres_spectrum: need m_max >= 1, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    for (int n = 0; n <= n_max; ++n)
        out.push_back({Branch::Hyperbolic, 0, n, lambda_hyperbolic(g, 1.0, n), 1.0, true});
    const int M = std::max(m_max, detail::lattice_coverage(T, g.r));
    for (int m = 1; m <= M; ++m)
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Trig, m, n, lambda_trig(g, m * pi / T, n), 0.0, false});
    sort_entries(out);
    return out;
}

/// Piece cut out by a geodesic ball.  The Robin pair f' + sigma f = 0,
/// f' - sigma f = 0 admits the exponential solution delta = 1 and the trig
/// roots of tan(T delta) = 2 sigma delta / (sigma^2 - delta^2); the linear
/// branch has no solution for any admissible configuration.
inline std::vector<EigenvalueEntry> ball_spectrum(const BallGeometry& b,
                                                  const CylinderGeometry& g, int m_max,
                                                  int n_max) {
    if (m_max < 1 || n_max < 0)
        throw std::domain_error("ball_spectrum: need m_max >= 1, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    for (int n = 0; n <= n_max; ++n)
        out.push_back({Branch::Hyperbolic, 0, n, lambda_hyperbolic(g, 1.0, n), 1.0, true});
    const auto eq = TranscendentalEq::tan_ball(b.T, b.sigma);
    const auto roots = solve_all_below(eq, detail::root_ceiling(b.T, g.r, m_max));
    for (const Root& root : roots.roots)
        for (int n = 0; n <= n_max; ++n)
            out.push_back(
                {Branch::Trig, root.m, n, lambda_trig(g, root.delta, n), root.delta, true});
    sort_entries(out);
    return out;
}

/// Second exponential solution of the ball's Robin pair.  The end conditions
/// admit nontrivial coefficients exactly when
///
///     e^{2 delta T} (sigma - delta)^2 = (sigma + delta)^2,
///
/// which splits into e^{delta T}(sigma - delta) = sigma + delta on
/// delta < sigma (solved by delta = 1) and
/// e^{delta T}(delta - sigma) = sigma + delta on delta > sigma, whose unique
/// root this routine returns.  The classical enumeration reproduced by
/// ball_spectrum keeps only the first branch, so the mode returned here is
/// deliberately absent from the catalogue; the finite-difference solver
/// confirms it is a genuine eigenvalue.  See the index tests for the
/// reconciliation of the two counts.
inline double ball_boundary_layer_root(const BallGeometry& b) {
    const double sigma = b.sigma;
    const double T = b.T;
    auto G = [&](double d) { return d * T - std::log((d + sigma) / (d - sigma)); };
    double lo = sigma * (1.0 + 1e-9);
    double hi = 3.0 * sigma;  // G(3 sigma) = 3 sigma T - log 2 > 0 since sigma T > pi/2
    while (G(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-15 * mid) break;
        (G(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Half cylinder over a horosphere, piece of length T: f' + f = 0 below,
/// f(T) = 0 above.  The exponential branch solves tanh(T delta) = delta
/// (a root exists iff T > 1), the trig branch tan(T delta) = delta, and at
/// T = 1 exactly the linear branch contributes.
inline std::vector<EigenvalueEntry> half_horosphere_spectrum(const CylinderGeometry& g,
                                                             double T, int m_max,
                                                             int n_max) {
    if (!(T > 0.0))
        throw std::domain_error("half_horosphere_spectrum: T must be positive");
    if (m_max < 1 || n_max < 0)
        throw std::domain_error("half_horosphere_spectrum: need m_max >= 1, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    if (auto root = solve_in_interval(TranscendentalEq::tanh_linear(T), 0))
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Hyperbolic, 0, n, lambda_hyperbolic(g, root->delta, n),
                           root->delta, true});
    if (std::abs(T - 1.0) < 1e-12)
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Linear, 0, n, lambda_flat(g, n), 0.0, false});
    const auto eq = TranscendentalEq::tan_linear(T);
    const auto roots = solve_all_below(eq, detail::root_ceiling(T, g.r, m_max));
    for (const Root& root : roots.roots)
        for (int n = 0; n <= n_max; ++n)
            out.push_back(
                {Branch::Trig, root.m, n, lambda_trig(g, root.delta, n), root.delta, true});
    sort_entries(out);
    return out;
}

/// Half cylinder over a geodesic plane: f'(0) = 0, f(T) = 0, giving the
/// lattice delta = (2m+1) pi / (2T), m >= 0.
inline std::vector<EigenvalueEntry> half_plane_spectrum(const CylinderGeometry& g,
                                                        double T, int m_max, int n_max) {
    if (!(T > 0.0)) throw std::domain_error("half_plane_spectrum: T must be positive");
    if (m_max < 0 || n_max < 0)
        throw std::domain_error("half_plane_spectrum: need m_max >= 0, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    const int cover =
        static_cast<int>(std::floor(std::max(0.0, (2.0 * T / (pi * g.r) - 1.0) / 2.0))) + 1;
    const int M = std::max(m_max, cover);
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Trig, m, n,
                           lambda_trig(g, (2.0 * m + 1.0) * pi / (2.0 * T), n), 0.0, false});
    sort_entries(out);
    return out;
}

/// Half cylinder over an equidistant surface of mean curvature H0 in (0,1):
/// f' + Theta f = 0 below, f(T) = 0 above, with
/// Theta = H0 / sqrt(1 + r^2 (1 - H0^2)).  Structure mirrors the horosphere
/// half cylinder with tanh(T delta) = delta/Theta, tan(T delta) = delta/Theta,
/// and the linear branch exactly at T Theta = 1.
inline std::vector<EigenvalueEntry> equidistant_spectrum(const CylinderGeometry& g,
                                                         double T, double H0, int m_max,
                                                         int n_max) {
    if (!(T > 0.0)) throw std::domain_error("equidistant_spectrum: T must be positive");
    if (m_max < 1 || n_max < 0)
        throw std::domain_error("equidistant_spectrum: need m_max >= 1, n_max >= 0");
    const double theta = equidistant_theta(H0, g.r);
    std::vector<EigenvalueEntry> out;
    if (auto root = solve_in_interval(TranscendentalEq::tanh_scaled(T, theta), 0))
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Hyperbolic, 0, n, lambda_hyperbolic(g, root->delta, n),
                           root->delta, true});
    if (std::abs(T * theta - 1.0) < 1e-12)
        for (int n = 0; n <= n_max; ++n)
            out.push_back({Branch::Linear, 0, n, lambda_flat(g, n), 0.0, false});
    const auto eq = TranscendentalEq::tan_scaled(T, theta);
    const auto roots = solve_all_below(eq, detail::root_ceiling(T, g.r, m_max));
    for (const Root& root : roots.roots)
        for (int n = 0; n <= n_max; ++n)
            out.push_back(
                {Branch::Trig, root.m, n, lambda_trig(g, root.delta, n), root.delta, true});
    sort_entries(out);
    return out;
}

/// Horosphere strip of height tau between parallel walls at normalized half
/// width 1, cut to length T: lambda_{m,n} = tau^2 ((m pi / T)^2 + n^2 pi^2),
/// m >= 1, n >= 0.  Everything is positive, the piece is strongly stable,
/// and the wedge variant yields the identical list.
inline std::vector<EigenvalueEntry> slab_horosphere_spectrum(double tau, double T,
                                                             int m_max, int n_max) {
    if (!(tau > 0.0) || !(T > 0.0))
        throw std::domain_error("slab_horosphere_spectrum: tau and T must be positive");
    if (m_max < 1 || n_max < 0)
        throw std::domain_error("slab_horosphere_spectrum: need m_max >= 1, n_max >= 0");
    std::vector<EigenvalueEntry> out;
    for (int m = 1; m <= m_max; ++m)
        for (int n = 0; n <= n_max; ++n) {
            const double mu = m * pi / T;
            const double lam = tau * tau * (mu * mu + static_cast<double>(n) * n * pi * pi);
            out.push_back({Branch::Trig, m, n, lam, 0.0, false});
        }
    sort_entries(out);
    return out;
}

/// Dispatch to the scenario's spectrum routine.  The cylinder geometry is
/// required for every scenario except the horosphere strip.
inline std::vector<EigenvalueEntry> scenario_spectrum(
    const SupportScenario& s, const std::optional<CylinderGeometry>& geom, int m_max,
    int n_max) {
    if (s.kind != ScenarioKind::SlabHorosphere && !geom.has_value())
        throw std::domain_error("scenario_spectrum: scenario requires a cylinder radius");
    if (s.angular_domain == AngularDomain::HalfCircleDirichlet &&
        s.kind != ScenarioKind::Dirichlet)
        throw std::domain_error(
            "scenario_spectrum: the half circle domain is supported for the fixed "
            "boundary scenario only");
    switch (s.kind) {
        case ScenarioKind::Dirichlet:
            return dirichlet_spectrum(*geom, s.T, m_max, n_max, s.angular_domain);
        case ScenarioKind::GeodesicSpheres:
            return spheres_spectrum(*geom, s.T, m_max, n_max);
        case ScenarioKind::Horospheres:
            return horospheres_spectrum(*geom, s.T, m_max, n_max);
        case ScenarioKind::HalfGeodesicPlane:
            return half_plane_spectrum(*geom, s.T, m_max, n_max);
        case ScenarioKind::HalfHorosphere:
            return half_horosphere_spectrum(*geom, s.T, m_max, n_max);
        case ScenarioKind::Equidistant:
            return equidistant_spectrum(*geom, s.T, s.H0, m_max, n_max);
        case ScenarioKind::Ball: {
            const BallGeometry b = ball_geometry(s.H0, s.rho, geom->r);
            return ball_spectrum(b, *geom, m_max, n_max);
        }
        case ScenarioKind::SlabHorosphere:
            return slab_horosphere_spectrum(s.tau, s.T, m_max, n_max);
    }
    throw std::logic_error("scenario_spectrum: unhandled scenario");
}

/// Negative count, nullity, and formula comparison for one configuration.
///
/// counted_index is the direct count of negative eigenvalues and is the
/// authoritative value; paper_index evaluates the published counting formula
/// for the scenario, which for the half cylinders over geodesic planes,
/// horospheres, and equidistant surfaces can disagree with the count (the
/// formulas take a maximum over mode labels starting at 0 where the direct
/// count sees one negative eigenvalue per label).  Disagreements are flagged,
/// never corrected.
struct IndexReport {
    int counted_index = 0;
    int nullity = 0;
    int paper_index = 0;
    bool agrees = true;
    int weak_lower = 0;  ///< counted_index - 1 clipped at 0
    int weak_upper = 0;  ///< counted_index
    double lambda_min = 0.0;
    std::vector<EigenvalueEntry> negatives;
};

struct IndexOptions {
    int m_max = 8;
    int n_max = 3;
    double zero_tol = 1e-9;  ///< relative tolerance for nullity detection
};

namespace detail {

/// max{m in N : m < T/(pi r)}, 0 when the set is empty.
inline int eta_threshold(double T, double r) {
    const double q = T / (pi * r);
    const int eta = static_cast<int>(std::ceil(q)) - 1;
    return std::max(eta, 0);
}

/// max{m >= 0 : 2m+1 < q}, -1 when the set is empty.
inline int eta_odd_threshold(double q) {
    if (q <= 1.0) return -1;
    return static_cast<int>(std::ceil((q - 1.0) / 2.0)) - 1;
}

/// Largest interval label among the trig roots below 1/r, 0 when none; the
/// published counting formulas for the half cylinders are stated through
/// this quantity.
inline int eta_from_roots(const std::vector<EigenvalueEntry>& entries, double r) {
    int eta = 0;
    for (const auto& e : entries)
        if (e.branch == Branch::Trig && e.has_delta && e.n == 0 && e.delta < 1.0 / r)
            eta = std::max(eta, e.m);
    return eta;
}

inline int paper_index_for(const SupportScenario& s,
                           const std::optional<CylinderGeometry>& geom,
                           const std::vector<EigenvalueEntry>& entries, int counted) {
    switch (s.kind) {
        case ScenarioKind::Dirichlet:
            if (s.angular_domain == AngularDomain::HalfCircleDirichlet) return 0;
            return eta_threshold(s.T, geom->r);
        case ScenarioKind::GeodesicSpheres:
            return eta_threshold(s.T, geom->r);
        case ScenarioKind::Horospheres:
            return eta_threshold(s.T, geom->r) + 1;
        case ScenarioKind::HalfGeodesicPlane: {
            const int eta = eta_odd_threshold(2.0 * s.T / (pi * geom->r));
            return std::max(eta, 0);
        }
        case ScenarioKind::HalfHorosphere: {
            const int eta = eta_from_roots(entries, geom->r);
            return s.T < 1.0 ? eta : 1 + eta;
        }
        case ScenarioKind::Equidistant: {
            const double theta = equidistant_theta(s.H0, geom->r);
            const int eta = eta_from_roots(entries, geom->r);
            return s.T * theta < 1.0 ? eta : 1 + eta;
        }
        case ScenarioKind::Ball:
            // No printed counting formula exists; the catalogue count stands in.
            return counted;
        case ScenarioKind::SlabHorosphere:
            return 0;
    }
    throw std::logic_error("paper_index_for: unhandled scenario");
}

}  // namespace detail

inline IndexReport index_report(const SupportScenario& s,
                                const std::optional<CylinderGeometry>& geom,
                                const IndexOptions& opts = {}) {
    const auto entries = scenario_spectrum(s, geom, opts.m_max, opts.n_max);
    IndexReport rep;
    double lambda_scale = 1.0;
    for (const auto& e : entries) lambda_scale = std::max(lambda_scale, std::abs(e.lambda));
    const double zero = opts.zero_tol * lambda_scale;
    for (const auto& e : entries) {
        if (e.lambda < -zero) {
            ++rep.counted_index;
            rep.negatives.push_back(e);
        } else if (std::abs(e.lambda) <= zero) {
            const bool doubled = e.n >= 1 && s.angular_domain == AngularDomain::FullCircle;
            rep.nullity += doubled ? 2 : 1;
        }
    }
    rep.lambda_min = entries.empty() ? 0.0 : entries.front().lambda;
    rep.paper_index = detail::paper_index_for(s, geom, entries, rep.counted_index);
    rep.agrees = rep.paper_index == rep.counted_index;
    rep.weak_lower = std::max(rep.counted_index - 1, 0);
    rep.weak_upper = rep.counted_index;
    return rep;
}

}  // namespace cylstab
