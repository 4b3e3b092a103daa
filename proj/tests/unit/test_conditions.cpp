#include <doctest.h>

#include <bbsolve/conditions.hpp>
#include <bbsolve/eqparse.hpp>
#include <bbsolve/error.hpp>

using namespace bbsolve;

namespace {
ConditionsReport conditions(const char* eq)
{
    auto s = parse_equation(eq);
    return check_theorem_d(s.k, branches_at_infinity(s.P, 8, s.resolved));
}
} // namespace

TEST_CASE("admissible pole orders")
{
    auto a = conditions("y'' = 6*y^2");
    CHECK(a.screening == Screening::Passed);
    CHECK(a.admissible_n == std::vector<int>{2});
    CHECK(a.exactness_required);

    auto b = conditions("P: p^2 - 4*q^3 + 4*q ; k=1");
    CHECK(b.admissible_n == std::vector<int>{2});

    auto c = conditions("y' = y^2");
    CHECK(c.admissible_n == std::vector<int>{1});
}

TEST_CASE("screening outcomes")
{
    CHECK(conditions("y'' = y^4").screening == Screening::EntireOnly);
    auto c = conditions("y''' = y");
    CHECK(c.screening == Screening::EntireOnly);
    CHECK(c.kappa_one_count == 1);
}

TEST_CASE("residue screen")
{
    auto s = parse_equation("y'' = 4*y^3 + 1/y");
    auto br = branches_at_infinity(s.P, 12, s.resolved);
    auto rep = residue_screen(check_theorem_d(2, br), exactness_check(br, s.resolved), 2);
    CHECK(rep.screening == Screening::NoneWithPole);
    CHECK(rep.exactness_satisfied == false);

    auto odd = parse_equation("y' = y^2");
    auto bo = branches_at_infinity(odd.P, 8, odd.resolved);
    CHECK_THROWS_AS(residue_screen(check_theorem_d(1, bo), exactness_check(bo, odd.resolved), 1), Error);
}

TEST_CASE("degree bound")
{
    CHECK(degree_bound({{2, 1}}) == 2);
    CHECK(degree_bound({{1, 2}, {2, 1}}) == 4);
    CHECK_THROWS_AS(degree_bound({}), Error);
}
