#include <catch_amalgamated.hpp>

#include "keglue/charts.hpp"

using namespace keglue;

TEST_CASE("chart_lift lands on the surface") {
    const double t = 1e-4;
    const Vec2c u(cplx(0.3, 0.1), cplx(-0.2, 0.45));
    for (int solved = 0; solved < 3; ++solved)
        for (int sign : {+1, -1}) {
            const Vec3c w = chart_lift(u, ChartId{solved, sign}, t);
            REQUIRE(std::abs(defining_residual(w, t)) < 1e-14);
        }
}

TEST_CASE("chart_lift rejects the branch cut") {
    // t - u1^2 - u2^2 = -4 is on the negative real axis where the branches meet
    const Vec2c u(cplx(2.0, 0.0), cplx(0.0, 0.0));
    REQUIRE_THROWS_AS(chart_lift(u, ChartId{2, +1}, 0.0), BranchCutError);
}

TEST_CASE("make_point selects a non-degenerate chart and round-trips") {
    const double t = 1e-6;
    for (int i = 1; i <= 24; ++i) {
        const SurfacePoint p = surface_sample(0.3, frame_sample(i), t);
        // solved coordinate dominates, |w_solved|^2 >= s/3
        REQUIRE(std::norm(p.solved_value()) >= p.s() / 3.0 - 1e-12);
        // re-lift the chart coordinates, recover the ambient point
        const Vec3c w2 = chart_lift(p.coords(), p.chart, t);
        REQUIRE((w2 - p.w).norm() < 1e-12 * p.absw());
    }
    REQUIRE_THROWS_AS(make_point(Vec3c::Zero(), 0.0), DegenerateChartError);
}

TEST_CASE("surface_sample hits the prescribed radius on the surface") {
    const double t = 1e-8;
    for (double r : {2e-4, 1e-2, 0.5, 1.9}) {
        const SurfacePoint p = surface_sample(r, frame_sample(3), t);
        REQUIRE(p.absw() == Catch::Approx(r).epsilon(1e-12));
        REQUIRE(std::abs(defining_residual(p.w, t)) < 1e-14 * std::max(1.0, r * r));
    }
    REQUIRE_THROWS_AS(surface_sample(0.5 * std::sqrt(t), frame_sample(1), t),
                      CollapsedLocusError);
}

TEST_CASE("frame_sample gives orthonormal frames, deterministically") {
    for (unsigned long long i = 1; i <= 50; ++i) {
        const Frame3 f = frame_sample(i);
        REQUIRE(f.x.norm() == Catch::Approx(1.0).epsilon(1e-12));
        REQUIRE(f.y.norm() == Catch::Approx(1.0).epsilon(1e-12));
        REQUIRE(std::abs(f.x.dot(f.y)) < 1e-12);
    }
    const Frame3 a = frame_sample(7), b = frame_sample(7);
    REQUIRE((a.x - b.x).norm() == 0.0);
    REQUIRE((a.y - b.y).norm() == 0.0);
}

TEST_CASE("halton sequence base 2 prefix") {
    REQUIRE(halton(1, 2) == Catch::Approx(0.5));
    REQUIRE(halton(2, 2) == Catch::Approx(0.25));
    REQUIRE(halton(3, 2) == Catch::Approx(0.75));
    REQUIRE(halton(4, 2) == Catch::Approx(0.125));
    REQUIRE(halton(1, 3) == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("holomorphic volume form is chart independent as a density") {
    const double t = 1e-6;
    const SurfacePoint p = surface_sample(0.4, frame_sample(11), t);
    // the density |Omega|^2 relative to each usable chart frame differs by the
    // Jacobian |d(u,v)|^2 of the chart change; check the invariant combination
    // det(H) / |Omega|^2 for a radial potential instead (covered in geometry
    // tests); here just check the form is finite and scales like 1/w_solved
    const cplx c = holomorphic_volume_form(p);
    REQUIRE(std::abs(c - 1.0 / (2.0 * p.solved_value())) < 1e-15);
    REQUIRE(volume_form_density(p) == Catch::Approx(std::norm(c)));
}
