#include <catch_amalgamated.hpp>

#include "keglue/preglued.hpp"

using namespace keglue;

TEST_CASE("cutoff profile: range, flat ends, monotone") {
    REQUIRE(cutoff_profile(0.5)[0] == 0.0);
    REQUIRE(cutoff_profile(1.0)[0] == 0.0);
    REQUIRE(cutoff_profile(2.0)[0] == 1.0);
    REQUIRE(cutoff_profile(3.0)[0] == 1.0);
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.8 + 1.4 * i / 200.0;
        const auto v = cutoff_profile(x);
        REQUIRE(v[0] >= 0.0);
        REQUIRE(v[0] <= 1.0);
        REQUIRE(v[0] >= prev - 1e-15);
        prev = v[0];
    }
    // exponential flatness: derivatives negligible just inside the endpoints
    // (analytically ~1e-40 there; rounding noise dominates what we can see)
    REQUIRE(std::abs(cutoff_profile(1.01)[1]) < 1e-12);
    REQUIRE(std::abs(cutoff_profile(1.99)[1]) < 1e-12);
}

TEST_CASE("smoothing map: surface to surface, exact inverse") {
    const double t = 1e-6;
    for (int i = 1; i <= 40; ++i) {
        // sample the singular fiber V_0 and push forward
        const double r = 0.001 * std::pow(2000.0, i / 40.0);
        const SurfacePoint z0 = surface_sample(r, frame_sample(i), 0.0);
        const Vec3c w = smoothing_map(z0.w, t);
        REQUIRE(std::abs(defining_residual(w, t)) < 1e-12 * std::max(1.0, r * r));
        const Vec3c back = inverse_smoothing_map(w, t);
        REQUIRE((back - z0.w).norm() < 1e-10 * r);
    }
    Vec3c small = Vec3c::Zero();
    small(0) = cplx(1e-4, 0.0);
    REQUIRE_THROWS_AS(smoothing_map(small, 1e-6), CollapsedLocusError);
}

TEST_CASE("zeta2_jet matches the inverse smoothing map radius") {
    const double t = 1e-6;
    for (double r : {2e-3, 0.05, 0.7}) {
        const SurfacePoint p = surface_sample(r, frame_sample(9), t);
        const Vec3c z = inverse_smoothing_map(p.w, t);
        const double z2 = zeta2_jet(Jet::variable(p.s()), t).value();
        REQUIRE(z2 == Catch::Approx(z.squaredNorm()).epsilon(1e-10));
    }
    REQUIRE_THROWS_AS(zeta2_jet(Jet::variable(0.5e-6), 1e-6), CollapsedLocusError);
}

TEST_CASE("blend equals the core model inside, the pulled-back model outside") {
    GluingParams gp;
    gp.delta = 1.0 / 16.0;
    GluedModel M(gp);
    // inside the gluing annulus the potential is exactly Eguchi-Hanson
    for (double r : {gp.sqrt_t(), 0.5 * gp.glue_lo(), 0.999 * gp.glue_lo()}) {
        const Jet s = Jet::variable(r * r);
        REQUIRE(M.blend_jet(s).value() == Catch::Approx(M.phi2_jet(s).value()).epsilon(1e-14));
    }
    // beyond it (and before the outer seam) it is the pulled-back central model
    for (double r : {1.001 * gp.glue_hi(), 0.3, 0.9, 1.5, 3.0}) {
        const Jet s = Jet::variable(r * r);
        REQUIRE(M.blend_jet(s).value() == Catch::Approx(M.phi1_jet(s).value()).epsilon(1e-12));
    }
}

TEST_CASE("pre-glued metric is positive through the whole admissible range") {
    for (double delta : {1.0 / 128.0, 1.0 / 16.0, kDeltaMax}) {
        GluingParams gp;
        gp.delta = delta;
        GluedModel M(gp);
        for (int i = 0; i <= 300; ++i) {
            const double u = double(i) / 300.0;
            const double s = gp.t() * std::pow(4.0 / gp.t(), u);
            const RadialFrame rf = M.frame(s);
            REQUIRE(rf.g1.value() > 0.0);
            REQUIRE(rf.g2.value() > 0.0);
        }
    }
}

TEST_CASE("pluriharmonic correction has vanishing complex Hessian") {
    GluingParams gp;
    gp.delta = 1.0 / 16.0;
    gp.ph_coeffs = {cplx(0.2, -0.1), cplx(0.0, 0.3), cplx(-0.15, 0.05)};
    const double t = gp.t();
    const SurfacePoint p = surface_sample(0.4, frame_sample(2), t);
    auto field = [&](const SurfacePoint& q) {
        return pluriharmonic_correction(q.w, gp.ph_coeffs);
    };
    const Mat2c H = complex_hessian_fd(field, p, fd_step(p, gp));
    REQUIRE(H.norm() < 1e-5);  // pure second-order finite-difference noise
}

TEST_CASE("Ricci potential decays in the matching region") {
    GluingParams gp;
    gp.delta = 1.0 / 32.0;
    GluedModel M(gp);
    // exact outer form: f = -log1p(t^2 / (2 P (s + P))) = O(t^2 / s^2)
    const double t = gp.t();
    for (double r : {1.0, 1.5, 2.0}) {
        const double s = r * r;
        const double f = M.ricci_jet(s).value();
        REQUIRE(std::abs(f) < 2.0 * t * t / (s * s));
    }
}
