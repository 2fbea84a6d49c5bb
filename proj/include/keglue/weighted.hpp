#pragma once

#include <vector>

#include "keglue/preglued.hpp"

namespace keglue {

// ---------------------------------------------------------------------------
// the weight function rho_t: delta near the cycle, |w|^{1/2} on the neck,
// 1 outside, with monotone cubic Hermite bridges in log-log coordinates
// ---------------------------------------------------------------------------

namespace detail {
inline double hermite(double x, double x0, double y0, double m0, double x1, double y1,
                      double m1) {
    const double h = x1 - x0, u = (x - x0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * m0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * m1;
}
}  // namespace detail

inline double weight_rho(double absw, double delta) {
    if (!(absw >= 0.0)) throw OutOfRangeError("weight_rho: negative radius");
    const double d2 = delta * delta;
    if (absw <= 2.0 * d2) return delta;
    if (absw < 3.0 * d2) {
        const double y = detail::hermite(std::log(absw), std::log(2.0 * d2), std::log(delta),
                                         0.0, std::log(3.0 * d2), 0.5 * std::log(3.0 * d2), 0.5);
        return std::exp(y);
    }
    if (absw <= 0.5) return std::sqrt(absw);
    if (absw < 1.0) {
        const double y = detail::hermite(std::log(absw), std::log(0.5), 0.5 * std::log(0.5),
                                         0.5, 0.0, 0.0, 0.0);
        return std::exp(y);
    }
    return 1.0;
}

// ---------------------------------------------------------------------------
// annulus sampling
// ---------------------------------------------------------------------------

/// Deterministic samples on the annulus {delta^alpha <= |w| <= 2 delta^alpha},
/// radii log-uniform, directions from the Halton SO(3) stream.
inline std::vector<SurfacePoint> annulus_samples(double alpha, const GluingParams& gp,
                                                 int count, unsigned long long seed_offset = 0) {
    if (count < 1) throw EmptySampleError("annulus_samples: count must be positive");
    if (alpha < 0.0 || alpha > 2.0)
        throw OutOfRangeError("annulus_samples: alpha must lie in [0, 2]");
    const double rlo = std::pow(gp.delta, alpha), rhi = 2.0 * rlo;
    std::vector<SurfacePoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double fr = (count == 1) ? 0.5 : double(i) / double(count - 1);
        const double r = rlo * std::pow(rhi / rlo, fr);
        out.push_back(surface_sample(r, frame_sample(seed_offset + i), gp.t()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// weighted norms of radial scalar fields, measured against the pre-glued
// metric at representative points
// ---------------------------------------------------------------------------

using RadialScalar = std::function<Jet(double s)>;

/// sum_{j<=k} sup_r rho^{-(beta-j)} |nabla^j phi| over the given radii
inline double weighted_sup_norm(const GluedModel& M, const RadialScalar& field,
                                const std::vector<double>& radii, double beta, int k) {
    if (radii.empty()) throw EmptySampleError("weighted_sup_norm: no sample radii");
    double total = 0.0;
    for (int j = 0; j <= k; ++j) {
        double sup = 0.0;
        for (double r : radii) {
            const double s = r * r;
            const RadialFrame rf = M.frame(s);
            const double nj = radial_scalar_norm(rf, field(s), j);
            sup = std::max(sup, std::pow(weight_rho(r, M.gp.delta), -(beta - j)) * nj);
        }
        total += sup;
    }
    return total;
}

/// Hoelder-type seminorm: pairs of nearby representative points (r, r(1+eps)),
/// difference quotient of |nabla^k phi| against metric distance, weighted by
/// the smaller of the two weights at exponent -(beta-k-gamma).
inline double weighted_holder_seminorm(const GluedModel& M, const RadialScalar& field,
                                       const std::vector<double>& radii, double beta,
                                       double gamma, int k, double eps = 0.05) {
    if (radii.empty()) throw EmptySampleError("weighted_holder_seminorm: no sample radii");
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw OutOfRangeError("weighted_holder_seminorm: gamma outside (0,1)");
    double sup = 0.0;
    for (double r : radii) {
        const double r2 = r * (1.0 + eps);
        const double sa = r * r, sb = r2 * r2;
        const RadialFrame fa = M.frame(sa), fb = M.frame(sb);
        const double na = radial_scalar_norm(fa, field(sa), k);
        const double nb = radial_scalar_norm(fb, field(sb), k);
        // metric distance between the radii (midpoint rule on d rho/ds)
        const RadialFrame fm = M.frame(0.5 * (sa + sb));
        const double drho_ds =
            std::sqrt(fm.g1.value() / (4.0 * std::max(fm.b2.value(), 1e-300)));
        const double d = drho_ds * (sb - sa);
        if (d <= 0.0) continue;
        const double wmin = std::min(std::pow(weight_rho(r, M.gp.delta), -(beta - k - gamma)),
                                     std::pow(weight_rho(r2, M.gp.delta), -(beta - k - gamma)));
        sup = std::max(sup, wmin * std::abs(na - nb) / std::pow(d, gamma));
    }
    return sup;
}

// ---------------------------------------------------------------------------
// decay fits
// ---------------------------------------------------------------------------

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares fit of log(value) = intercept + slope * log(delta).
inline DecayFit decay_fit(const std::vector<double>& deltas, const std::vector<double>& values) {
    if (deltas.size() != values.size() || deltas.size() < 2)
        throw DegenerateDataError("decay_fit: need at least two matched samples");
    const int n = int(deltas.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        if (!(deltas[i] > 0.0) || !(values[i] > 0.0))
            throw DegenerateDataError("decay_fit: nonpositive sample");
        const double x = std::log(deltas[i]), y = std::log(values[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14) throw DegenerateDataError("decay_fit: degenerate abscissae");
    DecayFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy * sxx - sx * sxy) / det;
    const double ssr = syy - sy * sy / n;
    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = std::log(values[i]);
        const double yh = f.intercept + f.slope * std::log(deltas[i]);
        sse += (y - yh) * (y - yh);
    }
    f.r2 = (ssr > 0.0) ? 1.0 - sse / ssr : 1.0;
    return f;
}

/// log-spaced radii in [rlo, rhi]
inline std::vector<double> log_radii(double rlo, double rhi, int n) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i)
        r[i] = rlo * std::pow(rhi / rlo, (n == 1) ? 0.5 : double(i) / (n - 1));
    return r;
}

/// sup of |nabla^k field| over radii (unweighted), representative points
inline double sup_radial_norm(const GluedModel& M, const RadialScalar& field,
                              const std::vector<double>& radii, int k) {
    double sup = 0.0;
    for (double r : radii) {
        const RadialFrame rf = M.frame(r * r);
        sup = std::max(sup, radial_scalar_norm(rf, field(r * r), k));
    }
    return sup;
}

/// default delta sweep 2^-3 .. 2^-8
inline std::vector<double> default_sweep() {
    return {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
}

}  // namespace keglue
