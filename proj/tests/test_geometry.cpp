#include <catch_amalgamated.hpp>

#include "keglue/preglued.hpp"

using namespace keglue;

namespace {
GluingParams params() {
    GluingParams gp;
    gp.delta = 1.0 / 16.0;
    return gp;
}
}  // namespace

TEST_CASE("Eguchi-Hanson volume ratio is constant and equals one half") {
    const GluingParams gp = params();
    const double t = gp.t();
    auto eh = [&](const Jet& s) { return eh_potential_jet(s, t); };
    for (double s : {2.0 * t, 1e-3, 0.04, 1.0, 4.0}) {
        const Jet v = vol_ratio_raw_jet(eh, s, t);
        REQUIRE(v.value() == Catch::Approx(0.5).epsilon(1e-12));
        REQUIRE(std::abs(v.d1()) < 1e-12);
    }
}

TEST_CASE("analytic radial Hessian matches finite differences at O(h^2)") {
    const GluingParams gp = params();
    const double t = gp.t();
    GluedModel M(gp);
    RadialPotential pot = M.blend();
    auto phi_pt = [&](const SurfacePoint& q) { return pot(Jet::variable(q.s())).value(); };

    const SurfacePoint p = surface_sample(0.07, frame_sample(5), t);
    const Mat2c ga = complex_hessian_radial(pot, p);
    const double h = fd_step(p, gp);
    const double e1 = (complex_hessian_fd(phi_pt, p, h) - ga).norm();
    const double e2 = (complex_hessian_fd(phi_pt, p, h / 2.0) - ga).norm();
    REQUIRE(e1 / ga.norm() < 1e-5);
    // second-order stencil: halving the step divides the error by about 4
    REQUIRE(e2 < 0.35 * e1);
}

TEST_CASE("scalar invariants are chart independent") {
    const GluingParams gp = params();
    const double t = gp.t();
    GluedModel M(gp);
    RadialPotential pot = M.blend();
    for (int i = 1; i <= 16; ++i) {
        const SurfacePoint p = surface_sample(0.2, frame_sample(i), t);
        double ref = 0.0;
        bool first = true;
        for (int solved = 0; solved < 3; ++solved) {
            SurfacePoint q = p;
            try {
                q = in_chart(p, ChartId{solved, +1}, 1e-8 * p.absw());
            } catch (const DegenerateChartError&) {
                continue;
            }
            const double vr = vol_ratio_raw(complex_hessian_radial(pot, q), q);
            if (first) { ref = vr; first = false; }
            else REQUIRE(vr == Catch::Approx(ref).epsilon(1e-8));
        }
        REQUIRE_FALSE(first);
    }
}

TEST_CASE("representative-point metric coefficients match the chart Hessian") {
    const GluingParams gp = params();
    const double t = gp.t();
    GluedModel M(gp);
    RadialPotential pot = M.blend();
    const double s = 0.09;
    // representative point w = (a, i b, 0)
    const double a = std::sqrt(0.5 * (s + t)), b = std::sqrt(0.5 * (s - t));
    Vec3c w;
    w << cplx(a, 0.0), cplx(0.0, b), cplx(0.0, 0.0);
    SurfacePoint p = make_point(w, t);
    // force the chart solving for w1 so the free coordinates are (w2, w3),
    // where the Hessian is diag(g1, g2)
    p = in_chart(p, ChartId{0, +1}, 1e-12);
    const Mat2c H = complex_hessian_radial(pot, p);
    const RadialFrame rf = M.frame(s);
    REQUIRE(H(0, 0).real() == Catch::Approx(rf.g1.value()).epsilon(1e-10));
    REQUIRE(H(1, 1).real() == Catch::Approx(rf.g2.value()).epsilon(1e-10));
    REQUIRE(std::abs(H(0, 1)) < 1e-12);
    // the raw volume ratio built from (g1, g2) agrees with the chart one
    REQUIRE(vol_ratio_raw(H, p) == Catch::Approx(rf.vol_raw.value()).epsilon(1e-10));
}

TEST_CASE("exact 2x2 Monge-Ampere ratio identity") {
    Mat2c g, h;
    g << cplx(2.0, 0.0), cplx(0.3, 0.1), cplx(0.3, -0.1), cplx(1.5, 0.0);
    h << cplx(0.4, 0.0), cplx(-0.1, 0.2), cplx(-0.1, -0.2), cplx(0.7, 0.0);
    const double lhs = ((g + h).determinant().real()) / g.determinant().real();
    REQUIRE(ma_ratio(g, h) == Catch::Approx(lhs).epsilon(1e-14));
    Mat2c bad;  // indefinite, det < 0
    bad << cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(-1.0, 0.0);
    REQUIRE_THROWS_AS(ma_ratio(bad, h), NotPositiveError);
}

TEST_CASE("radial scalar norms: constants and linear fields") {
    const GluingParams gp = params();
    GluedModel M(gp);
    const RadialFrame rf = M.frame(0.25);
    REQUIRE(radial_scalar_norm(rf, Jet::constant(3.0), 0) == Catch::Approx(3.0));
    REQUIRE(radial_scalar_norm(rf, Jet::constant(3.0), 1) == Catch::Approx(0.0).margin(1e-300));
    REQUIRE_THROWS_AS(radial_scalar_norm(rf, Jet::constant(1.0), 3), OutOfRangeError);
    // |grad s|^2 = 4 b^2 / g1
    const double expect =
        std::sqrt(4.0 * rf.b2.value() / rf.g1.value());
    REQUIRE(radial_scalar_norm(rf, rf.s, 1) == Catch::Approx(expect).epsilon(1e-12));
}
