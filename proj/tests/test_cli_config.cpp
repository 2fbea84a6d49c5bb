#include <catch_amalgamated.hpp>
#include <sstream>

#include "keglue/config.hpp"
#include "keglue/report.hpp"

using namespace keglue;

TEST_CASE("config parsing: sections, comments, overrides") {
    std::istringstream in(
        "top = 1\n"
        "# a comment line\n"
        "[gluing]\n"
        "delta = 0.05   ; trailing comment\n"
        "beta = -1.25\n"
        "delta = 0.0625\n"
        "\n"
        "[solver]\n"
        "grid_nodes = 192\n");
    const Config c = Config::parse(in);
    REQUIRE(c.get_double("top", 0.0) == 1.0);
    REQUIRE(c.get_double("gluing.delta", 0.0) == 0.0625);  // later entry wins
    REQUIRE(c.get_double("gluing.beta", 0.0) == -1.25);
    REQUIRE(c.get_int("solver.grid_nodes", 0) == 192);
    REQUIRE(c.get("missing", "fallback") == "fallback");
    REQUIRE_FALSE(c.has("missing"));
}

TEST_CASE("config parse errors carry line numbers") {
    {
        std::istringstream in("a = 1\nb = 2\nnot a pair\n");
        try {
            Config::parse(in);
            FAIL("expected ConfigParseError");
        } catch (const ConfigParseError& e) {
            REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    {
        std::istringstream in("[unterminated\n");
        try {
            Config::parse(in);
            FAIL("expected ConfigParseError");
        } catch (const ConfigParseError& e) {
            REQUIRE(std::string(e.what()).find("line 1") != std::string::npos);
        }
    }
    {
        std::istringstream in("= value\n");
        REQUIRE_THROWS_AS(Config::parse(in), ConfigParseError);
    }
}

TEST_CASE("typed getters reject malformed values") {
    std::istringstream in("x = 1.5abc\ny = 2.5\n");
    const Config c = Config::parse(in);
    REQUIRE_THROWS_AS(c.get_double("x", 0.0), ConfigParseError);
    REQUIRE_THROWS_AS(c.get_int("y", 0), ConfigParseError);
}

TEST_CASE("gluing parameters are validated on construction") {
    {
        std::istringstream in("[gluing]\nbeta = -2\n");
        const Config c = Config::parse(in);
        REQUIRE_THROWS_AS(c.gluing(), OutOfRangeError);
    }
    {
        std::istringstream in("[gluing]\ndelta = 0.5\n");
        const Config c = Config::parse(in);
        REQUIRE_THROWS_AS(c.gluing(), OutOfRangeError);
    }
    {
        std::istringstream in("[gluing]\ndelta = 0.0625\nph2_im = 0.25\n");
        const Config c = Config::parse(in);
        const GluingParams gp = c.gluing();
        REQUIRE(gp.delta == 0.0625);
        REQUIRE(gp.ph_coeffs[1] == cplx(0.0, 0.25));
        REQUIRE(gp.has_ph());
    }
}

TEST_CASE("CSV writer: deterministic serialization, fixed formatting") {
    CsvWriter a({"delta", "value"});
    a.add_row({0.1, 1.0 / 3.0});
    a.add_row({0.05, 2e-17});
    CsvWriter b({"delta", "value"});
    b.add_row({0.1, 1.0 / 3.0});
    b.add_row({0.05, 2e-17});
    REQUIRE(a.serialize() == b.serialize());
    REQUIRE(a.serialize() ==
            "delta,value\n0.1,0.333333333333\n0.05,2e-17\n");
    REQUIRE_THROWS_AS(a.add_row({1.0}), DegenerateDataError);
}

TEST_CASE("node count bound for admissible nodal surfaces") {
    REQUIRE(node_bound(3) == 4);
    REQUIRE(node_bound(4) == 2);
    REQUIRE(node_bound(1) == 8);
    REQUIRE(node_bound(9) == -8);  // no admissible nodal surface
    REQUIRE_THROWS_AS(node_bound(0), OutOfRangeError);
    REQUIRE_THROWS_AS(node_bound(10), OutOfRangeError);
}
