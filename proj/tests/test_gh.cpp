#include <catch_amalgamated.hpp>

#include "keglue/gh.hpp"

using namespace keglue;

namespace {
GluedModel model(double delta, double c2 = 0.05) {
    GluingParams gp;
    gp.delta = delta;
    gp.c2 = c2;
    return GluedModel(gp);
}
}  // namespace

TEST_CASE("cone apex distance: exact for the pure cone") {
    REQUIRE(cone_apex_distance(0.0, 0.25) == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(cone_apex_distance(0.0, 1.0) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("radial distance: additive and positive") {
    GluedModel M = model(1.0 / 32.0);
    const double d1 = radial_distance(M, std::sqrt(M.gp.t()), 0.5);
    const double d2 = radial_distance(M, 0.5, 1.7);
    const double d3 = radial_distance(M, std::sqrt(M.gp.t()), 1.7);
    REQUIRE(d1 > 0.0);
    REQUIRE(d2 > 0.0);
    REQUIRE(d3 == Catch::Approx(d1 + d2).epsilon(1e-9));
    REQUIRE(radial_distance(M, 0.4, 0.4) == 0.0);
    REQUIRE_THROWS_AS(radial_distance(M, 0.1 * std::sqrt(M.gp.t()), 1.0), OutOfRangeError);
}

TEST_CASE("radial distance far from the cycle matches the cone value") {
    // beyond the gluing annulus the potential is the pulled-back central
    // model; at c2 = 0 the cone distance between radii is 2 (sqrt(r2) - sqrt(r1))
    GluedModel M = model(1.0 / 128.0, 0.0);
    const double d = radial_distance(M, 0.5, 2.0);
    REQUIRE(d == Catch::Approx(2.0 * (std::sqrt(2.0) - std::sqrt(0.5))).epsilon(1e-4));
}

TEST_CASE("vanishing cycle diameter scales linearly in delta") {
    const double d1 = vanishing_cycle_diameter(model(1.0 / 16.0));
    const double d2 = vanishing_cycle_diameter(model(1.0 / 64.0));
    const double slope = std::log(d1 / d2) / std::log(4.0);
    REQUIRE(slope == Catch::Approx(1.0).margin(0.01));
    // the constant: a round sphere of radius R has diameter pi R, and the
    // Eguchi-Hanson cycle radius is 2^{-1/4} delta (graph diameter slightly
    // below the continuum value)
    const double expect = M_PI * std::pow(2.0, -0.25) / 16.0;
    REQUIRE(d1 == Catch::Approx(expect).epsilon(0.02));
}

TEST_CASE("metric graph distances: chain oracle and disconnection guard") {
    MetricGraph G(4);
    G.add_edge(0, 1, 1.0);
    G.add_edge(1, 2, 2.0);
    G.add_edge(0, 2, 5.0);
    G.add_edge(2, 3, 0.5);
    const auto d = G.dijkstra(0);
    REQUIRE(d[2] == Catch::Approx(3.0));  // through node 1, not the direct 5.0 edge
    REQUIRE(d[3] == Catch::Approx(3.5));
    MetricGraph H(3);
    H.add_edge(0, 1, 1.0);
    REQUIRE_THROWS_AS(H.all_pairs(), DegenerateDataError);
}

TEST_CASE("matched graph metrics satisfy the triangle inequality") {
    GhOptions opt;
    opt.n_shells = 8;
    opt.n_dirs = 12;
    const MatchedSamples S = matched_samples(model(1.0 / 32.0), opt);
    const int n = int(S.d_cone.rows());
    for (int i = 0; i < n; i += 7)
        for (int j = 0; j < n; j += 5)
            for (int k = 0; k < n; k += 11) {
                REQUIRE(S.d_cone(i, j) <= S.d_cone(i, k) + S.d_cone(k, j) + 1e-12);
                REQUIRE(S.d_smooth(i, j) <= S.d_smooth(i, k) + S.d_smooth(k, j) + 1e-12);
            }
}

TEST_CASE("distance bound decreases along the sweep") {
    GhOptions opt;
    opt.n_shells = 10;
    opt.n_dirs = 16;
    const auto rows = gh_sweep({1.0 / 8, 1.0 / 32, 1.0 / 128}, 0.05, opt);
    REQUIRE(rows.size() == 3);
    REQUIRE(rows[1].gh_bound < rows[0].gh_bound);
    REQUIRE(rows[2].gh_bound < rows[1].gh_bound);
    for (const auto& r : rows) {
        REQUIRE(r.gh_bound >= 3.0 * r.collapse_defect);
        REQUIRE(r.distortion >= 0.0);
    }
}

TEST_CASE("solved displacement bound") {
    REQUIRE(solved_displacement_bound(4.0, 0.25) == Catch::Approx(2.0));
    REQUIRE_THROWS_AS(solved_displacement_bound(4.0, -1.0), OutOfRangeError);
}
