#include <catch_amalgamated.hpp>
#include <cmath>

#include "keglue/jet.hpp"

using namespace keglue;

namespace {
constexpr double kTight = 1e-12;
}

TEST_CASE("jet arithmetic reproduces closed-form derivatives") {
    const double x = 1.7;
    const Jet s = Jet::variable(x);

    SECTION("polynomial") {
        // f = s^3 - 2 s + 5
        const Jet f = s * s * s - 2.0 * s + 5.0;
        REQUIRE(f.value() == Catch::Approx(x * x * x - 2 * x + 5).epsilon(kTight));
        REQUIRE(f.d1() == Catch::Approx(3 * x * x - 2).epsilon(kTight));
        REQUIRE(f.d2() == Catch::Approx(6 * x).epsilon(kTight));
        REQUIRE(f.d3() == Catch::Approx(6.0).epsilon(kTight));
        REQUIRE(f.d4() == Catch::Approx(0.0).margin(kTight));
    }

    SECTION("quotient") {
        // f = 1 / (1 + s^2), derivatives by direct formulas
        const Jet f = 1.0 / (1.0 + s * s);
        const double d = 1.0 + x * x;
        REQUIRE(f.value() == Catch::Approx(1.0 / d).epsilon(kTight));
        REQUIRE(f.d1() == Catch::Approx(-2 * x / (d * d)).epsilon(kTight));
        REQUIRE(f.d2() == Catch::Approx((6 * x * x - 2) / (d * d * d)).epsilon(kTight));
    }

    SECTION("sqrt and log agree with exp/2 identities") {
        const Jet a = jet_sqrt(s);
        const Jet b = jet_exp(0.5 * jet_log(s));
        for (int k = 0; k < Jet::N; ++k)
            REQUIRE(a.c[k] == Catch::Approx(b.c[k]).epsilon(1e-12).margin(1e-14));
    }

    SECTION("log1p matches log at moderate arguments") {
        const Jet a = jet_log1p(s);
        const Jet b = jet_log(1.0 + s);
        for (int k = 0; k < Jet::N; ++k)
            REQUIRE(a.c[k] == Catch::Approx(b.c[k]).epsilon(1e-12).margin(1e-14));
    }
}

TEST_CASE("jet derivative operator shifts coefficients") {
    const Jet s = Jet::variable(0.9);
    const Jet f = jet_exp(s * 2.0);
    const Jet fp = f.d();
    // (e^{2s})' = 2 e^{2s}; compare the three usable orders
    for (int k = 0; k <= 2; ++k)
        REQUIRE(fp.deriv(k) == Catch::Approx(2.0 * f.deriv(k)).epsilon(1e-12));
}

TEST_CASE("jet_chain composes correctly") {
    const double x = 0.64;
    const Jet inner = jet_sqrt(Jet::variable(x));          // sqrt(s)
    const Jet outer = jet_log(Jet::variable(inner.value()));
    const Jet chained = jet_chain(outer, inner);            // log(sqrt(s))
    const Jet direct = 0.5 * jet_log(Jet::variable(x));
    for (int k = 0; k < Jet::N; ++k)
        REQUIRE(chained.c[k] == Catch::Approx(direct.c[k]).epsilon(1e-12).margin(1e-14));
}

TEST_CASE("jet recip round trip") {
    const Jet s = Jet::variable(2.3);
    const Jet f = (s * s + 1.0) * jet_recip(s * s + 1.0);
    REQUIRE(f.value() == Catch::Approx(1.0).epsilon(kTight));
    REQUIRE(std::abs(f.d1()) < 1e-13);
    REQUIRE(std::abs(f.d2()) < 1e-13);
}

TEST_CASE("jet guards reject degenerate arguments") {
    REQUIRE_THROWS_AS(jet_sqrt(Jet::constant(-1.0)), DegenerateDataError);
    REQUIRE_THROWS_AS(jet_log(Jet::constant(0.0)), DegenerateDataError);
    REQUIRE_THROWS_AS(jet_log1p(Jet::constant(-1.0)), DegenerateDataError);
    REQUIRE_THROWS_AS(jet_recip(Jet::constant(0.0)), DegenerateDataError);
}
