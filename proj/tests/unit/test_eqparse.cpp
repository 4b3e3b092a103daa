#include <doctest.h>

#include <bbsolve/eqparse.hpp>
#include <bbsolve/error.hpp>

using namespace bbsolve;

TEST_CASE("resolved and raw input forms")
{
    auto a = parse_equation("y'' = 6*y^2");
    CHECK(a.k == 2);
    CHECK(a.resolved.has_value());
    CHECK(canonical_string(a) == "P: p - 6*q^2 ; k=2");

    auto b = parse_equation("y^(3) = y");
    CHECK(b.k == 3);

    auto c = parse_equation("P: p^2 - 4*q^3 + 4*q ; k=1");
    CHECK(c.k == 1);
    CHECK_FALSE(c.resolved.has_value());
    CHECK(c.P.degree_x() == 2);
    CHECK(c.P.degree_y() == 3);

    auto d = parse_equation("y''*y = 1");
    CHECK(d.k == 2);
}

TEST_CASE("canonical round trip")
{
    for (const char* eq : {"y'' = 6*y^2 - 2", "y' = y^2 + 1", "y'' = 4*y^3 + 1/y", "P: p^2 - 4*q^3 + 4*q ; k=1",
                           "y'''' = y^3", "y''*y = 1"}) {
        auto s = parse_equation(eq);
        CHECK(parse_equation(canonical_string(s)) == s);
    }
}

TEST_CASE("k override for raw input")
{
    auto s = parse_equation("P: p - q^2", 2);
    CHECK(s.k == 2);
}

TEST_CASE("rejections carry a position")
{
    CHECK_THROWS_AS(parse_equation("y'' = 6*y^"), ParseError);
    try {
        parse_equation("y'' = 6*y^2 +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() <= 13);
    }
    CHECK_THROWS_AS(parse_equation("y'' = sin(y)"), ParseError);
}
