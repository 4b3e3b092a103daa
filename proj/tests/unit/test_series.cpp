#include <doctest.h>

#include <bbsolve/series.hpp>

using namespace bbsolve;
using algebra::GaussianRational;

namespace {
std::vector<LaurentSeries> germs(const char* eq, int n, const CMode& mode, int N)
{
    auto s = parse_equation(eq);
    auto br = branches_at_infinity(s.P, 4 * (n + s.k) + 8 + N, s.resolved);
    return enumerate_series(s, br.at(0), n, mode, N);
}
} // namespace

TEST_CASE("y' = y^2 gives -1/z without resonance")
{
    auto g = germs("y' = y^2", 1, CMode::free_parameter(), 10);
    REQUIRE(g.size() == 1);
    CHECK(g[0].resonance == Resonance::None);
    CHECK(g[0].coeffs[0].exact() == GaussianRational(-1));
    for (std::size_t j = 1; j < g[0].coeffs.size(); ++j)
        CHECK(g[0].coeffs[j].is_zero());
}

TEST_CASE("free constant leaves a parametric coefficient")
{
    auto g = germs("y'' = 6*y^2", 2, CMode::free_parameter(), 12);
    REQUIRE(g.size() == 1);
    CHECK(g[0].resonance == Resonance::Free);
    CHECK(g[0].resonance_index() == 6);
    REQUIRE(g[0].param_coeffs.size() > 6);
    CHECK(g[0].param_coeffs[6].degree() == 1);
}

TEST_CASE("pinned resonance follows the first-integral constant")
{
    for (long c : {0L, 14L, -28L}) {
        auto g = germs("y'' = 6*y^2", 2, CMode::fixed(Number(c)), 12);
        REQUIRE(g.size() == 1);
        CHECK(g[0].resonance == Resonance::Pinned);
        CHECK(g[0].coeffs[6].exact() == GaussianRational(-c / 14));
        CHECK(verify_series(parse_equation("y'' = 6*y^2"), g[0]) > 12);
    }
}

TEST_CASE("two leading coefficients for y'' = 2 y^3 + y")
{
    auto g = germs("y'' = 2*y^3 + y", 1, CMode::fixed(Number(0)), 8);
    CHECK(g.size() == 2);
}

TEST_CASE("pinning coefficient spot values")
{
    CHECK(pinning_sum(2, 2) == 14);
    CHECK(pinning_sum(2, 1) == 5);
    CHECK(sgn(recurrence_bracket(2, 2, 6)) == 0);
    CHECK(sgn(recurrence_bracket(3, 2, 7)) != 0);
}

TEST_CASE("first integral of a known series")
{
    // y = z^-2: Phi_2 = y'^2 / 2 = 2 z^-6.
    Laurent<GaussianRational> y;
    y.val = -2;
    y.coeffs = {GaussianRational(1), GaussianRational(0), GaussianRational(0), GaussianRational(0)};
    auto phi = bracket_phi(2, y);
    CHECK(phi.val == -6);
    CHECK(phi.coeffs[0] == GaussianRational(2));
    CHECK_THROWS_AS(bracket_phi(3, y), Error);
}
