#include <doctest.h>

#include "../oracles/agm.hpp"

#include <bbsolve/classify.hpp>

#include <random>

using namespace bbsolve;
using algebra::GaussianRational;
using algebra::QPoly;

namespace {

// Theta applied k times by direct differentiation: Theta f = w f'.
QPoly theta_direct(QPoly f, int k)
{
    for (int i = 0; i < k; ++i)
        f = QPoly{GaussianRational(0), GaussianRational(1)} * f.derivative();
    return f;
}

LaurentSeries first_germ(const EquationSpec& spec, int N = 40)
{
    auto probe = branches_at_infinity(spec.P, 8, spec.resolved);
    auto cond = check_theorem_d(spec.k, probe);
    int n = cond.admissible_n.at(0);
    auto br = branches_at_infinity(spec.P, required_depth(probe.at(0), n, N) + 2, spec.resolved);
    auto mode = spec.k % 2 == 0 ? CMode::fixed(Number(0)) : CMode::free_parameter();
    return enumerate_series(spec, br.at(0), n, mode, N).at(0);
}

} // namespace

TEST_CASE("Stirling expansion of Theta^k equals repeated w d/dw")
{
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(5, 3) == 25);
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int k = 1; k <= 7; ++k) {
        std::vector<GaussianRational> c(7);
        for (auto& x : c)
            x = GaussianRational(d(rng));
        QPoly f(c);
        CHECK(theta_power(f, k) == theta_direct(f, k));
    }
}

TEST_CASE("monomial matches")
{
    auto a = match_monomial(parse_equation("y'' = y^2"));
    REQUIRE(a.size() == 1);
    CHECK(a[0].exact == GaussianRational(6));
    CHECK(a[0].verified);
    CHECK(match_monomial(parse_equation("y'' = 6*y^2 - 2")).empty());
    auto b = match_monomial(parse_equation("y'' = 4*y^3"));
    REQUIRE(b.size() == 2);
    CHECK(b[1].defining == b[0].defining);
    CHECK(b[0].defining == (QPoly{GaussianRational(algebra::make_rational(-1, 2)), GaussianRational(0), GaussianRational(1)}));
}

TEST_CASE("exponential matches back-substitute exactly")
{
    auto spec = parse_equation("y'' = 2*y^3 + y");
    auto got = match_exponential(spec, 4);
    REQUIRE(got.matches.size() == 1);
    const auto& e = got.matches[0];
    CHECK(e.verified);
    CHECK(exponential_residual(spec, e.lambda, e.num, e.den).is_zero());
    CHECK(e.a_values.size() == 2);

    auto none = match_exponential(parse_equation("y' = y^2"), 3);
    CHECK(none.matches.empty());

    auto lin = match_exponential(parse_equation("y'' = y"), 2);
    REQUIRE(lin.matches.size() == 1);
    CHECK(lin.matches[0].num == (QPoly{GaussianRational(0), GaussianRational(1)}));
}

TEST_CASE("reduced basis of a lattice")
{
    auto [t1, t2] = reduce_basis({1.0, 0.0}, {5.0, 1.0});
    CHECK(std::abs(t1) == doctest::Approx(1.0));
    CHECK(std::abs(t2 - cplx(0, 1)) < 1e-12);
    CHECK((t2 / t1).imag() > 0);
}

TEST_CASE("one period from poles on a line")
{
    std::vector<PoleEvent> poles;
    for (int j = 0; j < 3; ++j) {
        PoleEvent e;
        e.z = cplx(0, 2 * M_PI * j);
        e.order = 1;
        poles.push_back(e);
    }
    auto r = detect_periods(poles, 1e-6);
    REQUIRE(r.rank == 1);
    CHECK(std::abs(r.periods[0] - cplx(0, 2 * M_PI)) < 1e-9);

    CHECK_THROWS_AS(detect_periods({poles[0]}, 1e-6), Error);
}

TEST_CASE("trajectory of y' = y^2 follows -1/z")
{
    auto spec = parse_equation("y' = y^2");
    auto seed = first_germ(spec, 20);
    auto t = continue_trajectory(spec, seed, {cplx(0.3, 0.1), cplx(2.0, 1.0), cplx(3.0, -2.0)});
    for (cplx z : {cplx(1.0, 0.5), cplx(2.5, -0.5)}) {
        auto st = t.state_at(z);
        REQUIRE(st.has_value());
        CHECK(std::abs((*st)[0] + 1.0 / z) < 1e-9);
    }
    CHECK(t.max_defect < 1e-9);
}

TEST_CASE("square lattice for the lemniscatic curve")
{
    auto spec = parse_equation("P: p^2 - 4*q^3 + 4*q ; k=1");
    auto seed = first_germ(spec);
    auto res = sweep_for_periods(spec, seed, {seed});
    REQUIRE(res.periods.rank == 2);
    auto lat = oracle::weierstrass_real_roots(1, 0, -1);
    for (const auto& t : res.periods.periods)
        CHECK(oracle::fit(t, lat.real_period, lat.imag_period).residual < 1e-6);
}

TEST_CASE("verdict priority and monotonicity")
{
    ConditionsReport screened;
    screened.screening = Screening::EntireOnly;
    ClassifyInputs in;
    in.conditions = &screened;
    CHECK(assemble_verdict(in).label == Label::EntireOnly);

    auto spec = parse_equation("y'' = 6*y^2");
    auto seed = first_germ(spec, 20);
    auto monos = match_monomial(spec);
    ConditionsReport passed;
    passed.degree_bound = 2;
    ClassifyInputs exact;
    exact.conditions = &passed;
    exact.monomials = &monos;
    exact.seed = &seed;
    auto v = assemble_verdict(exact);
    CHECK(v.label == Label::Rational);
    CHECK(v.confidence == Confidence::Exact);
    CHECK(v.degree_bound == 2);

    // A numeric sweep result added on top does not downgrade the exact verdict.
    SweepResult sweep;
    sweep.periods.rank = 2;
    sweep.periods.periods = {cplx(1, 0), cplx(0, 1)};
    sweep.periods.errors = {1e-9, 1e-9};
    exact.sweep = &sweep;
    auto w = assemble_verdict(exact);
    CHECK(w.label == Label::Rational);
    CHECK(w.confidence == Confidence::Exact);

    ClassifyInputs numeric;
    numeric.conditions = &passed;
    numeric.sweep = &sweep;
    auto u = assemble_verdict(numeric);
    CHECK(u.label == Label::Elliptic);
    CHECK(u.confidence == Confidence::Numeric);
}

TEST_CASE("pole locations are stable under halved steps and extended precision")
{
    auto spec = parse_equation("y'' = 6*y^2 - 2");
    auto seed = first_germ(spec);
    SweepOptions base;
    SweepOptions fine;
    fine.trajectory.step_factor = base.trajectory.step_factor / 2;
    fine.trajectory.extended = true;
    auto a = sweep_for_periods(spec, seed, {seed}, base);
    auto b = sweep_for_periods(spec, seed, {seed}, fine);
    REQUIRE(a.trajectory.poles.size() == b.trajectory.poles.size());
    for (const auto& p : a.trajectory.poles) {
        double best = 1e300;
        for (const auto& q : b.trajectory.poles)
            best = std::min(best, std::abs(p.z - q.z));
        CHECK(best < 10 * base.trajectory.tol);
    }
}
