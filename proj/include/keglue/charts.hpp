#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>

#include "keglue/params.hpp"

namespace keglue {

using Vec3c = Eigen::Vector3cd;
using Vec2c = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;

/// Identification of an affine chart on V_t = {w1^2+w2^2+w3^2 = t}:
/// coordinate `solved` in {0,1,2} is expressed through the other two,
/// w_solved = sign * principal_sqrt(t - u1^2 - u2^2).
struct ChartId {
    int solved = 2;
    int sign = +1;  // +1 / -1 branch of the square root

    bool operator==(const ChartId& o) const { return solved == o.solved && sign == o.sign; }
};

/// The two free coordinate indices of a chart, in cyclic order
/// (so the chart frame du1 ^ du2 matches the cyclic volume form).
inline std::array<int, 2> free_indices(const ChartId& c) {
    return {(c.solved + 1) % 3, (c.solved + 2) % 3};
}

/// Lift chart coordinates to the ambient quadric.  Throws BranchCutError
/// if t - u1^2 - u2^2 lands on the principal branch cut (negative real
/// axis), where the two sign branches collide; callers switch chart.
inline Vec3c chart_lift(const Vec2c& u, const ChartId& chart, double t) {
    const cplx q = t - u(0) * u(0) - u(1) * u(1);
    if (q.imag() == 0.0 && q.real() < 0.0)
        throw BranchCutError("chart_lift: argument on the principal branch cut");
    const cplx ws = double(chart.sign) * std::sqrt(q);
    Vec3c w;
    const auto fi = free_indices(chart);
    w(chart.solved) = ws;
    w(fi[0]) = u(0);
    w(fi[1]) = u(1);
    return w;
}

/// A point of V_t together with the chart it is described in.
struct SurfacePoint {
    Vec3c w;        // ambient coordinates, satisfy sum w_i^2 = t
    ChartId chart;  // |w_solved|^2 >= |w|^2/3 by chart selection
    double t = 0.0;

    Vec2c coords() const {
        const auto fi = free_indices(chart);
        return Vec2c(w(fi[0]), w(fi[1]));
    }
    cplx solved_value() const { return w(chart.solved); }
    /// ambient |w|^2, the radial coordinate s
    double s() const { return w.squaredNorm(); }
    double absw() const { return std::sqrt(s()); }
};

inline double ambient_norm2(const Vec3c& w) { return w.squaredNorm(); }

/// Residual of the defining equation sum w_i^2 - t.
inline cplx defining_residual(const Vec3c& w, double t) {
    return w(0) * w(0) + w(1) * w(1) + w(2) * w(2) - t;
}

/// Build a SurfacePoint from ambient coordinates, selecting the chart that
/// solves for the coordinate of maximal modulus (keeps |w_solved|^2 >= s/3).
inline SurfacePoint make_point(const Vec3c& w, double t) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(w(i)) > std::abs(w(k))) k = i;
    if (std::abs(w(k)) == 0.0)
        throw DegenerateChartError("make_point: all coordinates vanish");
    // pick the sign branch that reproduces w_k via the principal sqrt
    const cplx q = t - (w((k + 1) % 3) * w((k + 1) % 3) + w((k + 2) % 3) * w((k + 2) % 3));
    const cplx r = std::sqrt(q);
    const int sign = (std::abs(r - w(k)) <= std::abs(r + w(k))) ? +1 : -1;
    return SurfacePoint{w, ChartId{k, sign}, t};
}

/// Re-express a point in another chart (coordinates are just the ambient
/// projections, so this only checks the chart is usable there).
inline SurfacePoint in_chart(const SurfacePoint& p, const ChartId& chart, double degeneracy_tol) {
    if (std::abs(p.w(chart.solved)) < degeneracy_tol)
        throw DegenerateChartError("in_chart: solved coordinate too small");
    const cplx q = std::sqrt(p.w(chart.solved) * p.w(chart.solved));
    const int sign = (std::abs(q - p.w(chart.solved)) <= std::abs(q + p.w(chart.solved))) ? +1 : -1;
    return SurfacePoint{p.w, ChartId{chart.solved, sign}, p.t};
}

/// Coefficient of the holomorphic volume form Omega_t = dw_{k+1} ^ dw_{k+2} / (2 w_k)
/// in the chart frame du1 ^ du2.
inline cplx holomorphic_volume_form(const SurfacePoint& p) {
    const cplx ws = p.solved_value();
    const double floor = 1e-8 * std::max(p.absw(), std::sqrt(std::max(p.t, 0.0)));
    if (std::abs(ws) < floor)
        throw DegenerateChartError("holomorphic_volume_form: chart degenerate at this point");
    return 1.0 / (2.0 * ws);
}

/// |Omega|^2 relative to the chart frame, i.e. the density Omega ^ bar-Omega
/// divided by the coordinate volume.
inline double volume_form_density(const SurfacePoint& p) {
    const cplx c = holomorphic_volume_form(p);
    return std::norm(c);
}

// ---------------------------------------------------------------------------
// deterministic low-discrepancy sampling
// ---------------------------------------------------------------------------

inline double halton(unsigned long long i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * double(i % base);
        i /= base;
    }
    return r;
}

/// Orthonormal frame (x, y) in R^3 from a unit quaternion built with
/// Shoemake's map on a Halton triple; index-deterministic.
struct Frame3 {
    Eigen::Vector3d x, y;
};

inline Frame3 frame_sample(unsigned long long idx) {
    const double u1 = halton(idx + 1, 2), u2 = halton(idx + 1, 3), u3 = halton(idx + 1, 5);
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double qw = a * std::sin(2 * M_PI * u2), qx = a * std::cos(2 * M_PI * u2);
    const double qy = b * std::sin(2 * M_PI * u3), qz = b * std::cos(2 * M_PI * u3);
    Eigen::Quaterniond q(qw, qx, qy, qz);
    const Eigen::Matrix3d R = q.normalized().toRotationMatrix();
    return Frame3{R.col(0), R.col(1)};
}

/// Exact point of V_t at ambient radius |w| = r (s = r^2 >= t required):
/// w = a x + i b y with a^2 = (s+t)/2, b^2 = (s-t)/2 and (x, y) orthonormal.
/// The defining equation holds to rounding.
inline SurfacePoint surface_sample(double r, const Frame3& fr, double t) {
    const double s = r * r;
    if (s < t * (1.0 - 1e-12))
        throw CollapsedLocusError("surface_sample: radius below the vanishing cycle");
    const double a = std::sqrt(0.5 * (s + t));
    const double b = std::sqrt(std::max(0.0, 0.5 * (s - t)));
    Vec3c w;
    for (int i = 0; i < 3; ++i) w(i) = cplx(a * fr.x(i), b * fr.y(i));
    return make_point(w, t);
}

}  // namespace keglue
