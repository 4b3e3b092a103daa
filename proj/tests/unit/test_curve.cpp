#include <doctest.h>

#include "../oracles/partial_fractions.hpp"

#include <bbsolve/curve.hpp>
#include <bbsolve/eqparse.hpp>

#include <random>

using namespace bbsolve;
using algebra::GaussianRational;
using algebra::QPoly;
using algebra::RatFunc;

TEST_CASE("Newton polygon of the Weierstrass curve")
{
    auto s = parse_equation("P: p^2 - 4*q^3 + 4*q ; k=1");
    auto np = newton_polygon(s.P);
    REQUIRE(np.upper_edges.size() == 1);
    CHECK(np.upper_edges[0].kappa == algebra::make_rational(3, 2));
}

TEST_CASE("branch exponents")
{
    auto s = parse_equation("P: p^2 - 4*q^3 + 4*q ; k=1");
    auto br = branches_at_infinity(s.P, 6);
    REQUIRE(br.size() == 1);
    CHECK(br[0].m == 2);
    CHECK(br[0].kappa == algebra::make_rational(3, 2));

    auto t = parse_equation("y'' = 6*y^2");
    auto bt = branches_at_infinity(t.P, 6, t.resolved);
    REQUIRE(bt.size() == 1);
    CHECK(bt[0].kappa == 2);
    CHECK(bt[0].lead().is_exact());
    CHECK(bt[0].lead().exact() == GaussianRational(6));
}

TEST_CASE("residues of 4q^3 + 1/q")
{
    auto s = parse_equation("y'' = 4*y^3 + 1/y");
    auto br = branches_at_infinity(s.P, 12, s.resolved);
    auto v = exactness_check(br, s.resolved);
    CHECK_FALSE(v.exact);
    CHECK(v.global);
    bool zero = false, inf = false;
    for (const auto& e : v.residues) {
        if (e.place == "q = 0")
            zero = e.value.is_exact() && e.value.exact() == GaussianRational(1);
        if (e.place == "q = infinity")
            inf = e.value.is_exact() && e.value.exact() == GaussianRational(-1);
    }
    CHECK(zero);
    CHECK(inf);
}

TEST_CASE("ramified branch has zero residue")
{
    auto s = parse_equation("P: p^2 - 4*q^3 + 4*q ; k=1");
    auto br = branches_at_infinity(s.P, 12);
    auto v = exactness_check(br, std::nullopt);
    REQUIRE(v.residues.size() == 1);
    CHECK(v.residues[0].certified_zero);
}

TEST_CASE("finite residues agree with partial fractions")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<GaussianRational> roots;
        while (roots.size() < 3) {
            GaussianRational r(d(rng), d(rng) % 2);
            if (std::find(roots.begin(), roots.end(), r) == roots.end())
                roots.push_back(r);
        }
        QPoly D = oracle::from_roots(roots);
        QPoly N{GaussianRational(d(rng)), GaussianRational(d(rng)), GaussianRational(d(rng)), GaussianRational(d(rng)),
                GaussianRational(1 + std::abs(d(rng)))};
        GaussianRational expect;
        for (const auto& r : roots)
            expect += oracle::simple_residue(N, D, r);
        RatFunc R(N, D);
        CHECK(finite_residue_sum(R) == expect);
        CHECK(residue_at_infinity(R) == oracle::residue_at_infinity(N, D));
    }
}
