#pragma once

// Bracketed root finding for the transcendental eigenvalue equations of the
// reduced problems.  All tan-family equations are solved in cleared
// denominator form, which is entire in delta, so bisection never meets a
// pole.  The hyperbolic equations are solved through tanh, which is bounded.
//
// Roots are organized by the interval family
//
//     I_0 = (0, pi/(2T)),   I_m = ((2m-1) pi/(2T), (2m+1) pi/(2T)),  m >= 1,
//
// whose endpoints are the poles of tan(T delta).  Each equation in the
// family has at most one root per interval.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cylstab/geometry.hpp"

namespace cylstab {

enum class EqKind {
    TanLinear,   ///< tan(T x) = x
    TanScaled,   ///< tan(T x) = x / Theta
    TanBall,     ///< tan(T x) = 2 sigma x / (sigma^2 - x^2)
    TanhLinear,  ///< tanh(T x) = x
    TanhScaled   ///< tanh(T x) = x / Theta
};

struct TranscendentalEq {
    EqKind kind = EqKind::TanLinear;
    double T = 0.0;
    double theta = 0.0;  ///< TanScaled / TanhScaled only
    double sigma = 0.0;  ///< TanBall only

    static TranscendentalEq tan_linear(double T) {
        require_positive(T, "T");
        return {EqKind::TanLinear, T, 0.0, 0.0};
    }
    static TranscendentalEq tan_scaled(double T, double theta) {
        require_positive(T, "T");
        require_positive(theta, "theta");
        return {EqKind::TanScaled, T, theta, 0.0};
    }
    static TranscendentalEq tan_ball(double T, double sigma) {
        require_positive(T, "T");
        require_positive(sigma, "sigma");
        return {EqKind::TanBall, T, 0.0, sigma};
    }
    static TranscendentalEq tanh_linear(double T) {
        require_positive(T, "T");
        return {EqKind::TanhLinear, T, 0.0, 0.0};
    }
    static TranscendentalEq tanh_scaled(double T, double theta) {
        require_positive(T, "T");
        require_positive(theta, "theta");
        return {EqKind::TanhScaled, T, theta, 0.0};
    }

  private:
    static void require_positive(double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::domain_error(std::string("TranscendentalEq: ") + name +
                                    " must be positive and finite");
    }
};

/// One bracketing interval of the family I_m.
struct Interval {
    int m = 0;
    double lo = 0.0;
    double hi = 0.0;
};

/// I_0 through I_{m_max}; pairwise disjoint, the shared endpoints are the
/// poles of tan(T delta).
inline std::vector<Interval> bracket_intervals(double T, int m_max) {
    if (!std::isfinite(T) || T <= 0.0)
        throw std::domain_error("bracket_intervals: T must be positive");
    if (m_max < 0) throw std::domain_error("bracket_intervals: m_max must be >= 0");
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(m_max) + 1);
    const double half = pi / (2.0 * T);
    out.push_back({0, 0.0, half});
    for (int m = 1; m <= m_max; ++m)
        out.push_back({m, (2.0 * m - 1.0) * half, (2.0 * m + 1.0) * half});
    return out;
}

/// Bracketing interval of the single root of a tanh equation: (0, 1) for
/// tanh(Tx)=x and (0, Theta) for tanh(Tx)=x/Theta, since tanh < 1.
inline Interval hyperbolic_interval(const TranscendentalEq& eq) {
    switch (eq.kind) {
        case EqKind::TanhLinear: return {0, 0.0, 1.0};
        case EqKind::TanhScaled: return {0, 0.0, eq.theta};
        default:
            throw std::domain_error("hyperbolic_interval: equation is not of tanh kind");
    }
}

/// Cleared-denominator form F(delta); F = 0 exactly at the equation's roots
/// away from the tan poles, and F is finite everywhere.
inline double eval_f(const TranscendentalEq& eq, double x) {
    switch (eq.kind) {
        case EqKind::TanLinear:
            return std::sin(eq.T * x) - x * std::cos(eq.T * x);
        case EqKind::TanScaled:
            return eq.theta * std::sin(eq.T * x) - x * std::cos(eq.T * x);
        case EqKind::TanBall:
            return (eq.sigma * eq.sigma - x * x) * std::sin(eq.T * x) -
                   2.0 * eq.sigma * x * std::cos(eq.T * x);
        case EqKind::TanhLinear:
            return std::tanh(eq.T * x) - x;
        case EqKind::TanhScaled:
            return eq.theta * std::tanh(eq.T * x) - x;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

inline double eval_df(const TranscendentalEq& eq, double x) {
    const double Tx = eq.T * x;
    switch (eq.kind) {
        case EqKind::TanLinear:
            return (eq.T - 1.0) * std::cos(Tx) + eq.T * x * std::sin(Tx);
        case EqKind::TanScaled:
            return (eq.theta * eq.T - 1.0) * std::cos(Tx) + eq.T * x * std::sin(Tx);
        case EqKind::TanBall: {
            const double s2 = eq.sigma * eq.sigma;
            return (2.0 * eq.sigma * x * eq.T - 2.0 * x) * std::sin(Tx) +
                   ((s2 - x * x) * eq.T - 2.0 * eq.sigma) * std::cos(Tx);
        }
        case EqKind::TanhLinear: {
            const double c = std::cosh(Tx);
            return eq.T / (c * c) - 1.0;
        }
        case EqKind::TanhScaled: {
            const double c = std::cosh(Tx);
            return eq.theta * eq.T / (c * c) - 1.0;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

/// Relative residual |lhs - rhs| / (|lhs| + |rhs|) of the cleared form, which
/// measures cancellation rather than raw magnitude.
inline double residual(const TranscendentalEq& eq, double x) {
    double lhs = 0.0, rhs = 0.0;
    switch (eq.kind) {
        case EqKind::TanLinear:
            lhs = std::sin(eq.T * x);
            rhs = x * std::cos(eq.T * x);
            break;
        case EqKind::TanScaled:
            lhs = eq.theta * std::sin(eq.T * x);
            rhs = x * std::cos(eq.T * x);
            break;
        case EqKind::TanBall:
            lhs = (eq.sigma * eq.sigma - x * x) * std::sin(eq.T * x);
            rhs = 2.0 * eq.sigma * x * std::cos(eq.T * x);
            break;
        case EqKind::TanhLinear:
            lhs = std::tanh(eq.T * x);
            rhs = x;
            break;
        case EqKind::TanhScaled:
            lhs = eq.theta * std::tanh(eq.T * x);
            rhs = x;
            break;
    }
    const double denom = std::abs(lhs) + std::abs(rhs);
    if (denom < std::numeric_limits<double>::min()) return std::abs(lhs - rhs);
    return std::abs(lhs - rhs) / denom;
}

/// Whether the equation has a root in the interval indexed by m, decided
/// analytically where the slope comparison at 0 settles it.
///   tanh(Tx) = x        has its nonzero root iff T > 1;
///   tanh(Tx) = x/Theta  iff T Theta > 1;
///   tan(Tx) = x         has a root in I_0 iff T < 1;
///   tan(Tx) = x/Theta   has a root in I_0 iff T Theta < 1.
/// Intervals I_m, m >= 1, of the tan equations always hold exactly one root
/// for the linear and scaled kinds; the ball kind is settled by scanning.
inline std::optional<bool> existence_by_slope(const TranscendentalEq& eq, int m) {
    switch (eq.kind) {
        case EqKind::TanhLinear:
            return m == 0 ? std::optional<bool>(eq.T > 1.0) : std::optional<bool>(false);
        case EqKind::TanhScaled:
            return m == 0 ? std::optional<bool>(eq.T * eq.theta > 1.0)
                          : std::optional<bool>(false);
        case EqKind::TanLinear:
            if (m == 0) return eq.T < 1.0;
            return std::nullopt;
        case EqKind::TanScaled:
            if (m == 0) return eq.T * eq.theta < 1.0;
            return std::nullopt;
        case EqKind::TanBall:
            return std::nullopt;
    }
    return std::nullopt;
}

struct Root {
    int m = 0;           ///< index of the bracketing interval
    double delta = 0.0;
    double residual = 0.0;
    bool near_sigma = false;  ///< TanBall root within 1e-6 of the pole at sigma
};

struct RootSet {
    TranscendentalEq eq;
    std::vector<Root> roots;
};

/// Counts strict sign changes of F over a uniform grid on [lo, hi].  Serves
/// as an independent check on the per-interval root counts.
inline int sign_scan_count(const TranscendentalEq& eq, double lo, double hi, int points) {
    if (points < 2) throw std::domain_error("sign_scan_count: need at least 2 points");
    int changes = 0;
    double prev = eval_f(eq, lo);
    for (int i = 1; i < points; ++i) {
        const double x = lo + (hi - lo) * (static_cast<double>(i) / (points - 1));
        const double cur = eval_f(eq, x);
        if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) ++changes;
        if (cur != 0.0) prev = cur;
    }
    return changes;
}

namespace detail {

/// Bisection on [lo, hi] (F changes sign there), then a few guarded Newton
/// steps that must stay inside the bracket and decrease |F|.
inline double refine_root(const TranscendentalEq& eq, double lo, double hi, double flo,
                          double tol) {
    double a = lo, b = hi, fa = flo;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        if (b - a < tol * std::max(1.0, std::abs(mid))) break;
        const double fm = eval_f(eq, mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    double x = 0.5 * (a + b);
    double fx = eval_f(eq, x);
    for (int it = 0; it < 5; ++it) {
        const double dfx = eval_df(eq, x);
        if (dfx == 0.0) break;
        const double cand = x - fx / dfx;
        if (!(cand > lo && cand < hi)) break;
        const double fc = eval_f(eq, cand);
        if (std::abs(fc) >= std::abs(fx)) break;
        x = cand;
        fx = fc;
    }
    return x;
}

/// Checks a candidate against the original pole-bearing equation; used to
/// re-examine candidates that land within the rejection margin of an
/// interval endpoint, where clearing denominators can manufacture roots.
inline bool satisfies_original(const TranscendentalEq& eq, double x) {
    double lhs = std::tan(eq.T * x);
    double rhs = 0.0;
    switch (eq.kind) {
        case EqKind::TanLinear: rhs = x; break;
        case EqKind::TanScaled: rhs = x / eq.theta; break;
        case EqKind::TanBall: {
            const double denom = eq.sigma * eq.sigma - x * x;
            if (denom == 0.0) return false;
            rhs = 2.0 * eq.sigma * x / denom;
            break;
        }
        case EqKind::TanhLinear: lhs = std::tanh(eq.T * x); rhs = x; break;
        case EqKind::TanhScaled: lhs = std::tanh(eq.T * x); rhs = x / eq.theta; break;
    }
    const double denom = std::abs(lhs) + std::abs(rhs);
    if (denom < std::numeric_limits<double>::min()) return true;
    return std::abs(lhs - rhs) / denom < 1e-6;
}

}  // namespace detail

/// The unique root of the equation inside interval m, if one exists.
///
/// The interior is scanned for sign changes of the cleared form, each change
/// is refined by bisection (at most 80 halvings) and then at most 5 guarded
/// Newton steps.  Candidates within 1e-8 interval widths of an endpoint are
/// kept only if they satisfy the original equation, since denominator
/// clearing can otherwise promote a tan pole to a root.
inline std::optional<Root> solve_in_interval(const TranscendentalEq& eq, int m,
                                             double tol = 1e-13) {
    if (m < 0) throw std::domain_error("solve_in_interval: m must be >= 0");
    if (!(tol > 0.0)) throw std::domain_error("solve_in_interval: tol must be positive");

    if (auto known = existence_by_slope(eq, m); known.has_value() && !*known)
        return std::nullopt;

    Interval iv;
    if (eq.kind == EqKind::TanhLinear || eq.kind == EqKind::TanhScaled) {
        if (m != 0) return std::nullopt;
        iv = hyperbolic_interval(eq);
    } else {
        const double half = pi / (2.0 * eq.T);
        iv = {m, m == 0 ? 0.0 : (2.0 * m - 1.0) * half, (2.0 * m + 1.0) * half};
    }

    const double width = iv.hi - iv.lo;
    const double pad = 1e-12 * std::max(width, 1.0);
    const double lo = iv.lo + pad;
    const double hi = iv.hi - pad;
    if (!(hi > lo)) return std::nullopt;

    const int panels = 512;
    double prev_x = lo;
    double prev_f = eval_f(eq, prev_x);
    std::optional<Root> best;
    for (int i = 1; i <= panels; ++i) {
        const double x = lo + width * (static_cast<double>(i) / panels);
        const double fx = eval_f(eq, std::min(x, hi));
        const bool change = (prev_f < 0.0 && fx > 0.0) || (prev_f > 0.0 && fx < 0.0) ||
                            prev_f == 0.0;
        if (change) {
            const double root =
                prev_f == 0.0
                    ? prev_x
                    : detail::refine_root(eq, prev_x, std::min(x, hi), prev_f, tol);
            const double margin = 1e-8 * width;
            const bool near_end = (root - iv.lo) < margin || (iv.hi - root) < margin;
            if (!near_end || detail::satisfies_original(eq, root)) {
                Root r;
                r.m = m;
                r.delta = root;
                r.residual = residual(eq, root);
                r.near_sigma = eq.kind == EqKind::TanBall &&
                               std::abs(root - eq.sigma) < 1e-6 * std::max(1.0, eq.sigma);
                if (!best || r.delta < best->delta) best = r;
            }
        }
        if (fx != 0.0) {
            prev_f = fx;
            prev_x = std::min(x, hi);
        }
    }
    if (best && best->residual > 1e-8)
        throw std::runtime_error("solve_in_interval: refinement did not converge in [" +
                                 std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + "]");
    return best;
}

/// All roots with delta < delta_max, gathered interval by interval.
inline RootSet solve_all_below(const TranscendentalEq& eq, double delta_max,
                               double tol = 1e-13) {
    if (!(delta_max > 0.0))
        throw std::domain_error("solve_all_below: delta_max must be positive");
    RootSet out;
    out.eq = eq;
    if (eq.kind == EqKind::TanhLinear || eq.kind == EqKind::TanhScaled) {
        if (auto r = solve_in_interval(eq, 0, tol); r && r->delta < delta_max)
            out.roots.push_back(*r);
        return out;
    }
    const double half = pi / (2.0 * eq.T);
    for (int m = 0;; ++m) {
        const double lo = m == 0 ? 0.0 : (2.0 * m - 1.0) * half;
        if (lo >= delta_max) break;
        if (auto r = solve_in_interval(eq, m, tol); r && r->delta < delta_max)
            out.roots.push_back(*r);
    }
    return out;
}

}  // namespace cylstab
