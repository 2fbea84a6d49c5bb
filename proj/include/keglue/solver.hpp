#pragma once

#include <nlohmann/json.hpp>
#include <random>

#include "keglue/weighted.hpp"

namespace keglue {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Radial (cohomogeneity-one) reduction of the complex Monge-Ampere operator
/// on the glued model. Fields live on a graded grid reaching the vanishing
/// cycle: uniform in xi = asinh(sqrt(s - t) / sqrt(t)), which resolves the
/// cycle boundary layer at scale sqrt(t) and is logarithmic in |w| far from
/// it. Node 0 sits on the cycle where radial fields are even (reflection
/// closure); the last node carries the Dirichlet condition at r = 2.
struct RadialGrid {
    GluingParams gp;
    int n = 256;   // total nodes including the Dirichlet node at r = 2
    double uref;   // grading scale sqrt(t) = delta^2
    std::vector<double> xi, s, r;

    explicit RadialGrid(const GluingParams& g, int nodes = 256)
        : gp(g), n(nodes), uref(g.sqrt_t()) {
        if (n < 64) throw OutOfRangeError("RadialGrid: need at least 64 nodes");
        const double t = gp.t();
        const double xi_max = std::asinh(std::sqrt(4.0 - t) / uref);
        xi.resize(n); s.resize(n); r.resize(n);
        for (int i = 0; i < n; ++i) {
            xi[i] = xi_max * double(i) / double(n - 1);
            const double u = uref * std::sinh(xi[i]);
            s[i] = t + u * u;
            r[i] = std::sqrt(s[i]);
        }
    }
    int unknowns() const { return n - 1; }  // last node pinned to zero
    double h() const { return xi[1] - xi[0]; }
    // ds/dxi and d2s/dxi2 for the chain rule; ds/dxi vanishes at the cycle
    double sprime(int i) const { return uref * uref * std::sinh(2.0 * xi[i]); }
    double sprime2(int i) const { return 2.0 * uref * uref * std::cosh(2.0 * xi[i]); }
};

/// Geometry and source data frozen on the grid.
struct RadialProblem {
    RadialGrid grid;
    std::vector<double> g1, g2, coefA, coefB, f, ef, rho;

    explicit RadialProblem(const GluedModel& M, int nodes = 256) : grid(M.gp, nodes) {
        if (M.gp.has_ph())
            throw UnregisteredRadialError(
                "RadialProblem: radial reduction needs vanishing pluriharmonic coefficients");
        const int n = grid.n;
        g1.resize(n); g2.resize(n); coefA.resize(n); coefB.resize(n);
        f.resize(n); ef.resize(n); rho.resize(n);
        const double t = M.gp.t();
        for (int i = 0; i < n; ++i) {
            const double si = grid.s[i];
            const RadialFrame rf = M.frame(si);
            g1[i] = rf.g1.value();
            g2[i] = rf.g2.value();
            if (g1[i] <= 0.0 || g2[i] <= 0.0)
                throw NotPositiveError("RadialProblem: pre-glued metric not positive at r = " +
                                       std::to_string(grid.r[i]));
            coefA[i] = 2.0 * si / (si + t);
            coefB[i] = 2.0 * (si - t);
            f[i] = M.ricci_jet(si).value();
            ef[i] = std::exp(f[i]);
            rho[i] = weight_rho(grid.r[i], M.gp.delta);
        }
    }

    int m() const { return grid.unknowns(); }

    /// second-order central stencil derivatives in xi; phi has m entries, the
    /// Dirichlet node value is 0 and node 0 uses the even reflection
    /// phi(-xi) = phi(xi) through the vanishing cycle.
    void derivs(const Vec& phi, Vec& phx, Vec& phxx) const {
        const int mm = m();
        const double hh = grid.h();
        auto val = [&](int i) { return (i < mm) ? phi(i) : 0.0; };
        phx.resize(mm); phxx.resize(mm);
        for (int i = 0; i < mm; ++i) {
            if (i == 0) {
                phx(i) = 0.0;  // even reflection
                phxx(i) = 2.0 * (val(1) - val(0)) / (hh * hh);
            } else {
                phx(i) = (val(i + 1) - val(i - 1)) / (2.0 * hh);
                phxx(i) = (val(i + 1) - 2.0 * val(i) + val(i - 1)) / (hh * hh);
            }
        }
    }

    /// Hessian components h1, h2 of the perturbation along the grid. At the
    /// cycle node both components equal the even limit phi_xixi / s''(0).
    void hess_components(const Vec& phi, Vec& h1, Vec& h2) const {
        Vec phx, phxx;
        derivs(phi, phx, phxx);
        const int mm = m();
        h1.resize(mm); h2.resize(mm);
        for (int i = 0; i < mm; ++i) {
            if (i == 0) {
                const double ps = phxx(0) / grid.sprime2(0);
                h1(0) = ps;
                h2(0) = ps;
                continue;
            }
            const double sp = grid.sprime(i), spp = grid.sprime2(i);
            const double ps = phx(i) / sp;                               // d phi / ds
            const double pss = (phxx(i) - phx(i) * spp / sp) / (sp * sp);  // d2 phi / ds2
            h1(i) = coefA[i] * ps + coefB[i] * pss;
            h2(i) = ps;
        }
    }

    /// full Monge-Ampere residual E[phi] = (omega~ + i ddbar phi)^2/omega~^2 - e^{f-phi}
    Vec E_op(const Vec& phi) const {
        Vec h1, h2, out(m());
        hess_components(phi, h1, h2);
        for (int i = 0; i < m(); ++i)
            out(i) = (g1[i] + h1(i)) * (g2[i] + h2(i)) / (g1[i] * g2[i]) -
                     ef[i] * std::exp(-phi(i));
        return out;
    }

    /// linearization at 0: D[phi] = Delta phi + e^f phi
    Vec D_op(const Vec& phi) const {
        Vec h1, h2, out(m());
        hess_components(phi, h1, h2);
        for (int i = 0; i < m(); ++i)
            out(i) = h1(i) / g1[i] + h2(i) / g2[i] + ef[i] * phi(i);
        return out;
    }

    /// quadratic remainder R[phi] = det(h)/det(g) - e^f (phi - 1 + e^-phi)
    Vec R_op(const Vec& phi) const {
        Vec h1, h2, out(m());
        hess_components(phi, h1, h2);
        for (int i = 0; i < m(); ++i)
            out(i) = h1(i) * h2(i) / (g1[i] * g2[i]) -
                     ef[i] * (phi(i) - 1.0 + std::exp(-phi(i)));
        return out;
    }

    bool positive(const Vec& phi) const {
        Vec h1, h2;
        hess_components(phi, h1, h2);
        for (int i = 0; i < m(); ++i)
            if (g1[i] + h1(i) <= 0.0 || g2[i] + h2(i) <= 0.0) return false;
        return true;
    }

    /// weighted sup norms on the grid
    double norm_domain(const Vec& phi, double beta) const {
        double v = 0.0;
        for (int i = 0; i < m(); ++i)
            v = std::max(v, std::pow(rho[i], -beta) * std::abs(phi(i)));
        return v;
    }

    /// weighted C^2 domain norm: sup rho^-beta |phi| + sup rho^{1-beta} |grad|
    /// + sup rho^{2-beta} |hess|, all in the pre-glued metric
    double norm_domain_c2(const Vec& phi, double beta) const {
        Vec phx, phxx, h1, h2;
        derivs(phi, phx, phxx);
        hess_components(phi, h1, h2);
        const double t = grid.gp.t();
        double v0 = 0.0, v1 = 0.0, v2 = 0.0;
        for (int i = 0; i < m(); ++i) {
            v0 = std::max(v0, std::pow(rho[i], -beta) * std::abs(phi(i)));
            // |grad phi| = |phi_s| sqrt(4 b^2 / g1), 4 b^2 = 2 (s - t)
            const double grad = std::abs(h2(i)) *
                                std::sqrt(2.0 * (grid.s[i] - t) / g1[i]);
            v1 = std::max(v1, std::pow(rho[i], 1.0 - beta) * grad);
            const double a = h1(i) / g1[i], b = h2(i) / g2[i];
            v2 = std::max(v2, std::pow(rho[i], 2.0 - beta) * std::sqrt(a * a + b * b));
        }
        return v0 + v1 + v2;
    }
    double norm_codomain(const Vec& e, double beta) const {
        double v = 0.0;
        for (int i = 0; i < m(); ++i)
            v = std::max(v, std::pow(rho[i], 2.0 - beta) * std::abs(e(i)));
        return v;
    }

    /// pointwise sup of the metric norm of i ddbar phi over the grid
    double hess_sup(const Vec& phi) const {
        Vec h1, h2;
        hess_components(phi, h1, h2);
        double v = 0.0;
        for (int i = 0; i < m(); ++i) {
            const double a = h1(i) / g1[i], b = h2(i) / g2[i];
            v = std::max(v, std::sqrt(a * a + b * b));
        }
        return v;
    }

    /// dense Jacobian of E at phi
    Mat jacobian(const Vec& phi) const {
        const int mm = m();
        const double hh = grid.h();
        Vec h1, h2;
        hess_components(phi, h1, h2);
        Mat D1 = Mat::Zero(mm, mm), D2 = Mat::Zero(mm, mm);
        auto add = [&](Mat& Mx, int i, int j, double vv) {
            if (j < mm) Mx(i, j) += vv;
        };
        for (int i = 0; i < mm; ++i) {
            if (i == 0) {  // even reflection stencils
                add(D2, i, 0, -2.0 / (hh * hh)); add(D2, i, 1, 2.0 / (hh * hh));
            } else {
                add(D1, i, i - 1, -1.0 / (2 * hh)); add(D1, i, i + 1, 1.0 / (2 * hh));
                add(D2, i, i - 1, 1.0 / (hh * hh)); add(D2, i, i, -2.0 / (hh * hh));
                add(D2, i, i + 1, 1.0 / (hh * hh));
            }
        }
        Mat J = Mat::Zero(mm, mm);
        for (int i = 0; i < mm; ++i) {
            const double dE_dh1 = (g2[i] + h2(i)) / (g1[i] * g2[i]);
            const double dE_dh2 = (g1[i] + h1(i)) / (g1[i] * g2[i]);
            double cx, cxx;
            if (i == 0) {
                // h1 = h2 = phi_xixi / s''(0)
                cx = 0.0;
                cxx = (dE_dh1 + dE_dh2) / grid.sprime2(0);
            } else {
                const double sp = grid.sprime(i), spp = grid.sprime2(i);
                const double dE_dps = dE_dh1 * coefA[i] + dE_dh2;
                const double dE_dpss = dE_dh1 * coefB[i];
                cx = dE_dps / sp - dE_dpss * spp / (sp * sp * sp);
                cxx = dE_dpss / (sp * sp);
            }
            J.row(i) = cx * D1.row(i) + cxx * D2.row(i);
            J(i, i) += ef[i] * std::exp(-phi(i));
        }
        return J;
    }

    /// Jacobian of the linearization D at 0 (equals jacobian(0))
    Mat linear_matrix() const { return jacobian(Vec::Zero(m())); }
};

// ---------------------------------------------------------------------------
// uniform invertibility proxy and the quantitative IFT gate
// ---------------------------------------------------------------------------

/// Reciprocal smallest singular value of the weighted-scaled linearization
/// diag(rho^{2-beta}) J diag(rho^beta): operator from C^0_beta to C^0_{beta-2}.
inline double inverse_norm_estimate(const RadialProblem& P, double beta) {
    Mat M = P.linear_matrix();
    for (int i = 0; i < P.m(); ++i) {
        const double rc = std::pow(P.rho[i], 2.0 - beta);
        M.row(i) *= rc;
    }
    for (int j = 0; j < P.m(); ++j) M.col(j) *= std::pow(P.rho[j], beta);
    Eigen::JacobiSVD<Mat> svd(M);
    const double smin = svd.singularValues()(P.m() - 1);
    if (smin <= 0.0) throw DegenerateDataError("inverse_norm_estimate: singular linearization");
    return 1.0 / smin;
}

/// Weighted sup-operator norm of the inverse, max abs row sum of
/// diag(rho^-beta) J^{-1} diag(rho^{beta-2}); the discrete counterpart of the
/// C^0_{beta-2} -> C^0_beta bound.
inline double inverse_sup_norm_estimate(const RadialProblem& P, double beta) {
    Mat Ji = P.linear_matrix().inverse();
    double best = 0.0;
    for (int i = 0; i < P.m(); ++i) {
        double rs = 0.0;
        for (int j = 0; j < P.m(); ++j)
            rs += std::abs(Ji(i, j)) * std::pow(P.rho[j], beta - 2.0);
        best = std::max(best, rs * std::pow(P.rho[i], -beta));
    }
    return best;
}

/// Empirical Lipschitz constant of the quadratic remainder R between the
/// weighted C^2 domain norm and the weighted sup codomain norm, sampled over
/// random small smooth radial field pairs:
///   L = max ||R(a)-R(b)||_{beta-2} / (||a-b||_X (||a||_X + ||b||_X)).
inline double lipschitz_estimate(const RadialProblem& P, double beta, double amplitude,
                                 int samples = 12, unsigned seed = 20260826) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    const int mm = P.m();
    auto random_field = [&]() {
        // smooth low-frequency profile in x, pinned at the outer boundary
        Vec v(mm);
        double a[4], ph[4];
        for (int k = 0; k < 4; ++k) { a[k] = un(rng); ph[k] = un(rng) * M_PI; }
        const double x0 = P.grid.xi.front(), x1 = P.grid.xi.back();
        for (int i = 0; i < mm; ++i) {
            const double u = (P.grid.xi[i] - x0) / (x1 - x0);
            double w = 0.0;
            for (int k = 0; k < 4; ++k) w += a[k] * std::sin((k + 1) * M_PI * u + ph[k]) ;
            v(i) = w * (1.0 - u);  // vanish at the Dirichlet end
        }
        const double nb = P.norm_domain_c2(v, beta);
        return Vec((amplitude / std::max(nb, 1e-300)) * v);
    };
    double L = 0.0;
    for (int it = 0; it < samples; ++it) {
        const Vec a = random_field(), b = random_field();
        const double na = P.norm_domain_c2(a, beta), nb = P.norm_domain_c2(b, beta);
        const double nd = P.norm_domain_c2(a - b, beta);
        if (nd < 1e-300) continue;
        const double q = P.norm_codomain(P.R_op(a) - P.R_op(b), beta) / (nd * (na + nb));
        L = std::max(L, q);
    }
    if (L <= 0.0) throw DegenerateDataError("lipschitz_estimate: no usable samples");
    return L;
}

struct IftGate {
    double err0 = 0.0;   // ||E(0)||_{beta-2}
    double C = 0.0;      // inverse bound
    double L = 0.0;      // Lipschitz constant of R
    double r0 = 0.0;     // a-priori radius (metric positivity)
    double r = 0.0;      // certified radius 2 C err0
    bool accepted = false;
};

/// Quantitative IFT: if r = 2 C err0 < min(r0, 1/(2LC)) there is a unique
/// solution in the ball of radius r.
inline IftGate ift_gate(double err0, double C, double L, double r0) {
    IftGate g;
    g.err0 = err0; g.C = C; g.L = L; g.r0 = r0;
    g.r = 2.0 * C * err0;
    g.accepted = (g.r < r0) && (g.r < 1.0 / (2.0 * L * C));
    return g;
}

// ---------------------------------------------------------------------------
// damped Newton iteration
// ---------------------------------------------------------------------------

struct SolveReport {
    double delta = 0.0, beta = 0.0;
    int grid_nodes = 0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history;  // sup norms, strictly decreasing
    double final_residual = 0.0;
    double initial_error_norm = 0.0;   // ||E(0)||_{beta-2}
    double solution_norm = 0.0;        // ||phi||_beta (weighted sup)
    double solution_norm_c2 = 0.0;     // ||phi||_{C^2_beta} (weighted through 2nd derivatives)
    double hess_sup_measured = 0.0;    // sup ||i ddbar phi||_{omega~}
    double hess_bound = 0.0;           // delta^{beta-2} ||phi||_{C^2_beta} (certified chain)
    double inverse_norm = 0.0;
    double lipschitz = 0.0;
    IftGate gate;
    double einstein_defect = 0.0;      // sup |e^{f-phi} omega~^2 / omega_phi^2 - 1|

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["delta"] = delta;
        j["beta"] = beta;
        j["grid_nodes"] = grid_nodes;
        j["converged"] = converged;
        j["iterations"] = iterations;
        j["residual_history"] = residual_history;
        j["final_residual"] = final_residual;
        j["initial_error_norm"] = initial_error_norm;
        j["solution_norm"] = solution_norm;
        j["solution_norm_c2"] = solution_norm_c2;
        j["hess_sup_measured"] = hess_sup_measured;
        j["hess_bound"] = hess_bound;
        j["inverse_norm"] = inverse_norm;
        j["lipschitz"] = lipschitz;
        j["einstein_defect"] = einstein_defect;
        j["ift"] = {{"err0", gate.err0}, {"C", gate.C},   {"L", gate.L},
                    {"r0", gate.r0},     {"r", gate.r},   {"accepted", gate.accepted}};
        return j;
    }
};

struct SolveOptions {
    int max_iterations = 50;
    double tolerance = 1e-11;  // sup-norm residual target
    bool run_gate = true;
    double r0_factor = 1.0;    // r0 = factor * delta^{2-beta}
};

inline SolveReport newton_solve(const GluedModel& M, double beta, int nodes = 256,
                                const SolveOptions& opt = {}) {
    RadialProblem P(M, nodes);
    SolveReport rep;
    rep.delta = M.gp.delta;
    rep.beta = beta;
    rep.grid_nodes = nodes;

    Vec phi = Vec::Zero(P.m());
    Vec E = P.E_op(phi);
    double res = E.lpNorm<Eigen::Infinity>();
    rep.residual_history.push_back(res);
    rep.initial_error_norm = P.norm_codomain(E, beta);

    for (int it = 0; it < opt.max_iterations && res > opt.tolerance; ++it) {
        const Mat J = P.jacobian(phi);
        const Vec d = J.partialPivLu().solve(-E);
        double step = 1.0;
        bool accepted = false;
        while (step > 1e-9) {
            const Vec cand = phi + step * d;
            if (P.positive(cand)) {
                const Vec Ec = P.E_op(cand);
                const double rc = Ec.lpNorm<Eigen::Infinity>();
                if (rc < (1.0 - 1e-4 * step) * res) {
                    phi = cand; E = Ec; res = rc;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        rep.iterations = it + 1;
        if (!accepted) break;
        rep.residual_history.push_back(res);
    }
    rep.final_residual = res;
    rep.converged = res <= opt.tolerance;
    rep.solution_norm = P.norm_domain(phi, beta);
    rep.solution_norm_c2 = P.norm_domain_c2(phi, beta);
    rep.hess_sup_measured = P.hess_sup(phi);
    rep.hess_bound = std::pow(M.gp.delta, beta - 2.0) * rep.solution_norm_c2;

    // Einstein defect of the solved metric: e^{f-phi} omega~^2/omega_phi^2 - 1
    {
        Vec h1, h2;
        P.hess_components(phi, h1, h2);
        double worst = 0.0;
        for (int i = 0; i < P.m(); ++i) {
            const double ratio = (P.g1[i] + h1(i)) * (P.g2[i] + h2(i)) / (P.g1[i] * P.g2[i]);
            worst = std::max(worst, std::abs(P.ef[i] * std::exp(-phi(i)) / ratio - 1.0));
        }
        rep.einstein_defect = worst;
    }

    if (opt.run_gate) {
        rep.inverse_norm = inverse_norm_estimate(P, beta);
        const double r0 = opt.r0_factor * std::pow(M.gp.delta, 2.0 - beta);
        rep.lipschitz = lipschitz_estimate(P, beta, rep.initial_error_norm * rep.inverse_norm);
        rep.gate = ift_gate(rep.initial_error_norm, rep.inverse_norm, rep.lipschitz, r0);
    }
    return rep;
}

}  // namespace keglue
