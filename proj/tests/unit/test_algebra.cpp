#include <doctest.h>

#include <bbsolve/algebra/number.hpp>
#include <bbsolve/algebra/ratfunc.hpp>
#include <bbsolve/algebra/roots.hpp>
#include <bbsolve/algebra/squarefree.hpp>

using namespace bbsolve::algebra;

namespace {
GaussianRational gr(long re, long im = 0)
{
    return {Rational(re), Rational(im)};
}
} // namespace

TEST_CASE("rational parsing and printing")
{
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(parse_rational("0.125") == make_rational(1, 8));
    CHECK(pochhammer(2, 4) == 120);
    CHECK(pochhammer(5, 0) == 1);
    CHECK(factorial(6) == 720);
}

TEST_CASE("Gaussian rational field operations")
{
    GaussianRational a = gr(1, 2), b = gr(3, -1);
    CHECK(a * b == gr(5, 5));
    CHECK((a / b) * b == a);
    CHECK(a.inverse() * a == gr(1));
    CHECK(GaussianRational::imaginary_unit().pow(2) == gr(-1));
    CHECK(GaussianRational(make_rational(1, 2), Rational(3)).to_string() == "(1/2 + 3*i)");
}

TEST_CASE("polynomial division and gcd")
{
    QPoly a{gr(-1), gr(0), gr(1)}; // x^2 - 1
    QPoly b{gr(-1), gr(1)};        // x - 1
    auto [q, r] = divmod(a, b);
    CHECK(q == QPoly{gr(1), gr(1)});
    CHECK(r.is_zero());
    CHECK(gcd(a, QPoly{gr(1), gr(1)}) == QPoly{gr(1), gr(1)});
    CHECK(a(gr(3)) == gr(8));
}

TEST_CASE("squarefree decomposition")
{
    QPoly x1{gr(-1), gr(1)};
    QPoly x2{gr(2), gr(1)};
    QPoly p = x1 * x1 * x1 * x2;
    auto parts = squarefree_decomposition(p);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == x2);
    CHECK(parts[2] == x1);
    CHECK(squarefree_part(p) == x1 * x2);
}

TEST_CASE("exact roots are recognized in Q(i)")
{
    QPoly p{gr(1), gr(0), gr(1)}; // x^2 + 1
    auto roots = distinct_roots(p);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        REQUIRE(r.exact);
        CHECK(r.exact->pow(2) == gr(-1));
    }
    auto q = gaussian_rational_roots(QPoly{gr(-2), gr(0), gr(1)});
    CHECK(q.empty());
}

TEST_CASE("numeric roots carry an error bound containing the true value")
{
    QPoly p{gr(-2), gr(0), gr(1)};
    auto roots = roots_univariate(p, 128);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        double x = r.to_complex().real();
        CHECK(std::abs(std::abs(x) - std::sqrt(2.0)) < 1e-15);
        CHECK(r.err() < 1e-30);
    }
}

TEST_CASE("number arithmetic stays exact until a numeric value enters")
{
    Number a(gr(1, 1));
    Number b = a * a;
    CHECK(b.is_exact());
    CHECK(b.exact() == gr(0, 2));
    auto r = roots_univariate(QPoly{gr(-2), gr(0), gr(1)}, 128);
    Number c = Number(r.back()) * Number(r.back());
    CHECK_FALSE(c.is_exact());
    CHECK(std::abs(c.to_complex() - std::complex<double>(2, 0)) < 1e-15);
    CHECK(c.err() < 1e-30);
}

TEST_CASE("rational functions reduce and integrate")
{
    RatFunc f(QPoly{gr(1)}, QPoly{gr(0), gr(1)}); // 1/q
    RatFunc g = f * RatFunc(QPoly{gr(0), gr(1)});
    CHECK(g.is_constant());
    auto h = hermite_integrate(RatFunc(QPoly{gr(1)}, QPoly{gr(0), gr(0), gr(1)})); // 1/q^2
    CHECK(h.rational == RatFunc(QPoly{gr(-1)}, QPoly{gr(0), gr(1)}));
    CHECK(h.log_num.is_zero());
}
