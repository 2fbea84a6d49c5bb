#pragma once

#include <Eigen/Dense>
#include <functional>

#include "keglue/charts.hpp"
#include "keglue/jet.hpp"

namespace keglue {

/// A rotation-invariant potential on V_t, given as a jet-valued function of
/// s = |w|^2.  Feeding Jet::variable(s) yields value and four s-derivatives.
using RadialPotential = std::function<Jet(const Jet&)>;

inline Jet eval_radial(const RadialPotential& f, double s) { return f(Jet::variable(s)); }

// ---------------------------------------------------------------------------
// complex Hessians on V_t
// ---------------------------------------------------------------------------

/// Analytic complex Hessian of a radial potential in the chart of p:
///   H_{i jbar} = f'(s) (delta_ij + u_i conj(u_j)/|q|) + f''(s) v_i conj(v_j),
/// with q = w_solved^2 and v_i = conj(u_i) - u_i conj(q)/|q|.
inline Mat2c complex_hessian_radial(const RadialPotential& f, const SurfacePoint& p) {
    const Jet fj = eval_radial(f, p.s());
    const double f1 = fj.d1(), f2 = fj.d2();
    const Vec2c u = p.coords();
    const cplx q = p.solved_value() * p.solved_value();
    const double aq = std::abs(q);
    if (aq == 0.0) throw DegenerateChartError("complex_hessian_radial: chart degenerate");
    Vec2c v;
    for (int i = 0; i < 2; ++i) v(i) = std::conj(u(i)) - u(i) * std::conj(q) / aq;
    Mat2c H = Mat2c::Identity() * f1;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            H(i, j) += f1 * u(i) * std::conj(u(j)) / aq;
            H(i, j) += f2 * v(i) * std::conj(v(j));
        }
    return H;
}

/// Holomorphic chart gradient (partial phi / partial u_i) of a radial potential.
inline Vec2c chart_gradient_radial(const RadialPotential& f, const SurfacePoint& p) {
    const Jet fj = eval_radial(f, p.s());
    const Vec2c u = p.coords();
    const cplx q = p.solved_value() * p.solved_value();
    const double aq = std::abs(q);
    Vec2c v;
    for (int i = 0; i < 2; ++i) v(i) = std::conj(u(i)) - u(i) * std::conj(q) / aq;
    return fj.d1() * v;
}

/// Finite-difference complex Hessian of an arbitrary potential given as a
/// function on the surface.  Displacements move the chart coordinates and
/// re-lift to V_t, so the potential is differentiated along the surface.
inline Mat2c complex_hessian_fd(const std::function<double(const SurfacePoint&)>& phi,
                                const SurfacePoint& p, double h) {
    if (h < 1e-12) throw StepUnderflowError("complex_hessian_fd: step underflow");
    const Vec2c u0 = p.coords();
    auto at = [&](double dx0, double dy0, double dx1, double dy1) {
        Vec2c u = u0;
        u(0) += cplx(dx0, dy0);
        u(1) += cplx(dx1, dy1);
        const Vec3c w = chart_lift(u, p.chart, p.t);
        return phi(SurfacePoint{w, p.chart, p.t});
    };
    // real 4x4 Hessian in (x1, y1, x2, y2) by central second differences
    double A[4][4];
    auto disp = [&](int a, double step, std::array<double, 4>& d) { d[a] += step; };
    const double f0 = at(0, 0, 0, 0);
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            std::array<double, 4> dp{}, dm{}, dpm{}, dmp{};
            if (a == b) {
                disp(a, h, dp);
                disp(a, -h, dm);
                const double fp = at(dp[0], dp[1], dp[2], dp[3]);
                const double fm = at(dm[0], dm[1], dm[2], dm[3]);
                A[a][a] = (fp - 2.0 * f0 + fm) / (h * h);
            } else {
                std::array<double, 4> dpp{}, dmm{};
                disp(a, h, dpp); disp(b, h, dpp);
                disp(a, -h, dmm); disp(b, -h, dmm);
                disp(a, h, dpm); disp(b, -h, dpm);
                disp(a, -h, dmp); disp(b, h, dmp);
                const double fpp = at(dpp[0], dpp[1], dpp[2], dpp[3]);
                const double fmm = at(dmm[0], dmm[1], dmm[2], dmm[3]);
                const double fpm = at(dpm[0], dpm[1], dpm[2], dpm[3]);
                const double fmp = at(dmp[0], dmp[1], dmp[2], dmp[3]);
                A[a][b] = A[b][a] = (fpp + fmm - fpm - fmp) / (4.0 * h * h);
            }
        }
    // H_{i jbar} = 1/4 [(A_xx + A_yy) + i (A_xy - A_yx)] with x_i = Re u_i, y_i = Im u_i
    Mat2c H;
    const int X[2] = {0, 2}, Y[2] = {1, 3};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            H(i, j) = 0.25 * cplx(A[X[i]][X[j]] + A[Y[i]][Y[j]], A[X[i]][Y[j]] - A[Y[i]][X[j]]);
    return H;
}

/// Default finite-difference step at a point.
inline double fd_step(const SurfacePoint& p, const GluingParams& gp) {
    return 1e-3 * std::max(p.absw(), gp.sqrt_t());
}

// ---------------------------------------------------------------------------
// pointwise algebra of 2x2 Hermitian forms
// ---------------------------------------------------------------------------

/// Exact 2x2 Monge-Ampere ratio det(g+h)/det(g) = 1 + tr(g^-1 h) + det(h)/det(g).
inline double ma_ratio(const Mat2c& g, const Mat2c& h) {
    const double dg = g.determinant().real();
    if (dg <= 0.0) throw NotPositiveError("ma_ratio: reference form not positive");
    const double tr = (g.inverse() * h).trace().real();
    const double dh = h.determinant().real();
    return 1.0 + tr + dh / dg;
}

/// Complex Laplacian tr(g^-1 H_phi); half the Riemannian Laplacian.
inline double laplacian(const Mat2c& g, const Mat2c& hess) {
    return (g.inverse() * hess).trace().real();
}

/// Raw volume ratio (omega^2 density) / (Omega ^ bar-Omega density) in the
/// chart of p; chart-invariant.  For the Eguchi-Hanson metric it equals 1/2
/// identically, which is how the normalization constant is fixed.
inline double vol_ratio_raw(const Mat2c& g, const SurfacePoint& p) {
    const double dg = g.determinant().real();
    if (dg <= 0.0) throw NotPositiveError("vol_ratio_raw: form not positive");
    return dg / volume_form_density(p);
}

inline double min_eigenvalue(const Mat2c& g) {
    Eigen::SelfAdjointEigenSolver<Mat2c> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

/// Squared Riemannian length of the chart displacement du at metric form g.
inline double riem_len2(const Mat2c& g, const Vec2c& du) {
    return 2.0 * (du.adjoint() * g * du)(0).real();
}

/// Frobenius norm of g^{-1/2} h g^{-1/2} for Hermitian h (metric norm of a
/// (1,1)-form relative to g).
inline double form_norm(const Mat2c& g, const Mat2c& h) {
    const Mat2c m = g.inverse() * h;
    return std::sqrt(std::max(0.0, (m * m).trace().real()));
}

// ---------------------------------------------------------------------------
// representative-point reduction: everything SO(3)-invariant is a function of
// s alone, evaluated at w = (a, ib, 0), a^2 = (s+t)/2, b^2 = (s-t)/2, where
// the chart metric of a radial potential is diag(g1, g2):
//   g1 = f'(s) 2s/(s+t) + 2(s-t) f''(s),   g2 = f'(s)
// ---------------------------------------------------------------------------

struct RadialFrame {
    double t;
    Jet s;    // the variable
    Jet b2;   // (s-t)/2
    Jet g1, g2;             // metric coefficients as jets in s
    Jet vol_raw;            // det(g)/|Omega|^2 = 4 f'(s f' + (s^2-t^2) f'')
};

inline RadialFrame radial_frame(const RadialPotential& f, double s, double t) {
    RadialFrame rf;
    rf.t = t;
    rf.s = Jet::variable(s);
    rf.b2 = (rf.s - t) * 0.5;
    const Jet F = f(rf.s);
    const Jet F1 = F.d(), F2 = F1.d();
    rf.g1 = F1 * (2.0 * rf.s / (rf.s + t)) + 2.0 * (rf.s - t) * F2;
    rf.g2 = F1;
    rf.vol_raw = 4.0 * F1 * (rf.s * F1 + (rf.s * rf.s - t * t) * F2);
    return rf;
}

/// Raw volume ratio of the radial metric as a jet in s (two usable orders).
inline Jet vol_ratio_raw_jet(const RadialPotential& f, double s, double t) {
    return radial_frame(f, s, t).vol_raw;
}

/// d/d(geodesic radius) applied to a radial scalar jet:  |grad s|_g d/ds,
/// |grad s|^2 = 4 b^2 / g1.
inline Jet radial_derivative(const RadialFrame& rf, const Jet& c) {
    return 2.0 * jet_sqrt(rf.b2 / rf.g1) * c.d();
}

/// Metric norms |nabla^k F| of a radial scalar at the representative point,
/// k = 0, 1, 2, with the Hessian measured as the Frobenius norm of g^-1 H_F.
inline double radial_scalar_norm(const RadialFrame& rf, const Jet& F, int k) {
    if (k == 0) return std::abs(F.value());
    const double s = rf.s.value(), t = rf.t;
    const double F1 = F.d1(), F2 = F.d2();
    if (k == 1) {
        const double gs2 = 4.0 * rf.b2.value() / rf.g1.value();
        return std::abs(F1) * std::sqrt(std::max(0.0, gs2));
    }
    if (k == 2) {
        const double h1 = F1 * 2.0 * s / (s + t) + 2.0 * (s - t) * F2;
        const double h2 = F1;
        const double r1 = h1 / rf.g1.value(), r2 = h2 / rf.g2.value();
        return std::sqrt(r1 * r1 + r2 * r2);
    }
    throw OutOfRangeError("radial_scalar_norm: k must be 0, 1 or 2");
}

/// Norm proxy |nabla^k T| for a radial (1,1)-form T with chart components
/// diag(h1, h2) relative to metric g: k = 0 Frobenius of g^-1 T, k >= 1
/// geodesic-radial derivatives of the normalized components.
inline double radial_form_norm(const RadialFrame& rf, const Jet& h1, const Jet& h2, int k) {
    Jet c1 = h1 / rf.g1, c2 = h2 / rf.g2;
    for (int i = 0; i < k; ++i) {
        c1 = radial_derivative(rf, c1);
        c2 = radial_derivative(rf, c2);
    }
    return std::sqrt(c1.value() * c1.value() + c2.value() * c2.value());
}

/// Chart Hessian components diag(h1, h2) of a radial scalar at the
/// representative point, as jets.
inline std::pair<Jet, Jet> radial_hessian_components(const RadialFrame& rf, const Jet& F) {
    const Jet F1 = F.d(), F2 = F1.d();
    Jet h1 = F1 * (2.0 * rf.s / (rf.s + rf.t)) + 2.0 * (rf.s - rf.t) * F2;
    return {h1, F1};
}

}  // namespace keglue
