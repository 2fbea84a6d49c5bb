#pragma once

#include "keglue/gh.hpp"
#include "keglue/report.hpp"

namespace keglue {

// ---------------------------------------------------------------------------
// identity checks
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    double value = 0.0;  // measured defect
    double tol = 0.0;
    bool pass = false;
};

/// Structural identities checked at random sample points: exact Ricci-flatness
/// of the core model, the decomposition of the Monge-Ampere residual into
/// source + linear + quadratic parts, analytic-vs-finite-difference Hessians,
/// smoothing-map round trips, and continuity of the pre-glued potential across
/// the cut-off seams.
inline std::vector<CheckResult> verify_identities(const GluingParams& gp0,
                                                  int n_points = 200,
                                                  unsigned seed = 7) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> un(0.0, 1.0);
    GluingParams gp = gp0;
    gp.validate();
    const double t = gp.t();
    GluedModel M(gp);

    auto record = [&](const std::string& name, double defect, double tol) {
        out.push_back({name, defect, tol, defect <= tol});
    };

    // 1. core model volume ratio is exactly the reference constant: the
    //    Eguchi-Hanson potential sqrt(s + t) has det(g)/|Omega|^2 constant.
    {
        double worst = 0.0;
        RadialPotential eh = M.eh();
        for (int i = 0; i < n_points; ++i) {
            const double r = gp.sqrt_t() * std::pow(2.0 / gp.sqrt_t(), un(rng));
            SurfacePoint p = surface_sample(r, frame_sample(unsigned(rng() % 4096) + 1), t);
            const Mat2c g = complex_hessian_radial(eh, p);
            const double ratio = vol_ratio_raw(g, p) / M.Craw;
            worst = std::max(worst, std::abs(ratio - 1.0));
        }
        record("core_model_ricci_flat", worst, 1e-6);
    }

    // 2. residual decomposition E = (1 - e^f) + D + R on random radial fields
    {
        double worst = 0.0;
        RadialProblem P(M, 128);
        std::normal_distribution<double> gs(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            Vec phi(P.m());
            double a1 = gs(rng), a2 = gs(rng), a3 = gs(rng);
            const double x0 = P.grid.xi.front(), x1 = P.grid.xi.back();
            for (int i = 0; i < P.m(); ++i) {
                const double u = (P.grid.xi[i] - x0) / (x1 - x0);
                phi(i) = 1e-3 * (a1 * std::sin(M_PI * u) + a2 * std::sin(2 * M_PI * u) +
                                 a3 * u * (1.0 - u)) * (1.0 - u);
            }
            Vec lhs = P.E_op(phi);
            Vec rhs = P.D_op(phi) + P.R_op(phi);
            for (int i = 0; i < P.m(); ++i) rhs(i) += 1.0 - P.ef[i];
            worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
        }
        record("residual_decomposition", worst, 1e-10);
    }

    // 3. analytic radial Hessian vs central finite differences
    {
        double worst = 0.0;
        RadialPotential pot = M.blend();
        for (int i = 0; i < 24; ++i) {
            const double r = 3.0 * gp.sqrt_t() * std::pow(0.5 / gp.sqrt_t(), un(rng));
            SurfacePoint p = surface_sample(r, frame_sample(unsigned(rng() % 4096) + 1), t);
            const Mat2c ga = complex_hessian_radial(pot, p);
            const Mat2c gf = complex_hessian_fd([&](const SurfacePoint& q) {
                return pot(Jet::variable(q.s())).value();
            }, p, fd_step(p, gp));
            worst = std::max(worst, (ga - gf).norm() / std::max(ga.norm(), 1e-300));
        }
        record("hessian_fd_agreement", worst, 1e-5);
    }

    // 4. smoothing map and its inverse round-trip on the surface
    {
        double worst = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const double r = 2.0 * gp.sqrt_t() * std::pow(1.0 / gp.sqrt_t(), un(rng));
            SurfacePoint p = surface_sample(r, frame_sample(unsigned(rng() % 4096) + 1), t);
            const Vec3c z = inverse_smoothing_map(p.w, t);
            const Vec3c back = smoothing_map(z, t);
            worst = std::max(worst, (back - p.w).norm() / p.absw());
            // z must lie on the singular fiber
            cplx q = z(0) * z(0) + z(1) * z(1) + z(2) * z(2);
            worst = std::max(worst, std::abs(q) / (z.norm() * z.norm()));
        }
        record("smoothing_map_roundtrip", worst, 1e-9);
    }

    // 5. continuity of the pre-glued potential and Ricci potential across the
    //    cut-off seams (values straddling r = delta^{4/3}, 2 delta^{4/3}, 1, 2)
    {
        double worst = 0.0;
        const double seams[4] = {gp.glue_lo(), gp.glue_hi(), 1.0, 2.0};
        for (double seam : seams) {
            const double eps = 1e-7 * seam;
            const double sm = (seam - eps) * (seam - eps), sp = (seam + eps) * (seam + eps);
            // jump estimate corrected for the smooth first-order variation
            auto jump = [&](auto&& field) {
                const Jet a = field(sm);
                const Jet b = field(sp);
                return std::abs(b.value() - a.value() - a.deriv(1) * (sp - sm));
            };
            worst = std::max(worst, jump([&](double s) { return M.blend_jet(Jet::variable(s)); }));
            worst = std::max(worst, jump([&](double s) { return M.ricci_jet(s); }));
        }
        record("seam_continuity", worst, 1e-9);
    }

    // 6. metric positivity of the pre-glued form across the whole range,
    //    including the largest admissible delta
    {
        double worst_min = 1e300;
        for (const double dd : {gp.delta, kDeltaMax}) {
            GluingParams g2 = gp;
            g2.delta = dd;
            GluedModel M2(g2);
            for (int i = 0; i < 200; ++i) {
                const double u = double(i) / 199.0;
                const double s = g2.t() * std::pow(4.0 / g2.t(), u);
                const RadialFrame rf = M2.frame(s);
                worst_min = std::min({worst_min, rf.g1.value(), rf.g2.value()});
            }
        }
        record("preglued_positivity", worst_min > 0.0 ? 0.0 : 1.0, 0.5);
    }

    // 7. chart independence of scalar invariants where charts overlap
    {
        double worst = 0.0;
        RadialPotential pot = M.blend();
        for (int i = 0; i < 32; ++i) {
            const double r = 3.0 * gp.sqrt_t() * std::pow(0.5 / gp.sqrt_t(), un(rng));
            SurfacePoint p = surface_sample(r, frame_sample(unsigned(rng() % 4096) + 1), t);
            double vr_ref = 0.0;
            bool first = true;
            for (int solved = 0; solved < 3; ++solved) {
                {
                    SurfacePoint q = p;
                    try {
                        q = in_chart(p, ChartId{solved, +1}, 1e-8 * p.absw());
                    } catch (const DegenerateChartError&) {
                        continue;
                    }
                    const Mat2c g = complex_hessian_radial(pot, q);
                    const double vr = vol_ratio_raw(g, q);
                    if (first) { vr_ref = vr; first = false; }
                    else worst = std::max(worst, std::abs(vr - vr_ref) /
                                                     std::max(std::abs(vr_ref), 1e-300));
                }
            }
        }
        record("chart_independence", worst, 1e-8);
    }

    return out;
}

// ---------------------------------------------------------------------------
// decay sweeps
// ---------------------------------------------------------------------------

struct SweepRow {
    double delta;
    double value;
};

struct SweepResult {
    std::string region;
    int k = 0;
    std::vector<SweepRow> rows;
    DecayFit fit;
};

namespace detail {

inline std::pair<double, double> region_annulus(const std::string& region,
                                                const GluingParams& gp) {
    auto ann = [&](double alpha) {
        return std::pair<double, double>{std::pow(gp.delta, alpha),
                                         2.0 * std::pow(gp.delta, alpha)};
    };
    if (region == "core53") return ann(5.0 / 3.0);
    if (region == "core2") return ann(2.0);
    if (region == "glue") return ann(4.0 / 3.0);
    if (region == "neck12") return ann(0.5);
    if (region == "neck1") return ann(1.0);
    if (region == "outer") return {1.0, 2.0};
    if (region == "model-mismatch") return ann(4.0 / 3.0);
    throw OutOfRangeError("unknown sweep region: " + region);
}

}  // namespace detail

/// Sup of the k-th covariant derivative norm of a radial scalar over a log
/// annulus, measured in the pre-glued metric.
inline double annulus_sup(const GluedModel& M, const RadialScalar& field, double rlo,
                          double rhi, int k, int n_samples = 80) {
    return sup_radial_norm(M, field, log_radii(rlo, rhi, n_samples), k);
}

/// delta-sweep of a region sup norm; region selects both the annulus and the
/// field (Ricci potential for metric regions, the central-model mismatch
/// phi1 - phi2 for "model-mismatch").
inline SweepResult sweep_decay(const std::string& region, int k,
                               const std::vector<double>& deltas, double c2 = 0.05,
                               int n_samples = 80) {
    SweepResult res;
    res.region = region;
    res.k = k;
    std::vector<double> vals;
    for (double d : deltas) {
        GluingParams gp;
        gp.delta = d;
        gp.c2 = c2;
        gp.validate();
        GluedModel M(gp);
        auto [rlo, rhi] = detail::region_annulus(region, gp);
        RadialScalar field;
        if (region == "model-mismatch")
            field = [&M](double s) {
                Jet sj = Jet::variable(s);
                return M.phi1_jet(sj) - M.phi2_jet(sj);
            };
        else
            field = [&M](double s) { return M.ricci_jet(s); };
        const double v = annulus_sup(M, field, rlo, rhi, k, n_samples);
        res.rows.push_back({d, v});
        vals.push_back(v);
    }
    res.fit = decay_fit(deltas, vals);
    return res;
}

// ---------------------------------------------------------------------------
// solve sweep and the weighted-norm slope chain
// ---------------------------------------------------------------------------

struct SolveSweepRow {
    double delta;
    SolveReport rep;
};

inline std::vector<SolveSweepRow> solve_sweep(const std::vector<double>& deltas,
                                              double beta, int nodes = 256,
                                              double c2 = 0.05,
                                              const SolveOptions& opt = {}) {
    std::vector<SolveSweepRow> rows;
    for (double d : deltas) {
        GluingParams gp;
        gp.delta = d;
        gp.beta = beta;
        gp.c2 = c2;
        gp.validate();
        GluedModel M(gp);
        rows.push_back({d, newton_solve(M, beta, nodes, opt)});
    }
    return rows;
}

}  // namespace keglue
