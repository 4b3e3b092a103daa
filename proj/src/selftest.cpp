#include <bbsolve/kernels/kernels.hpp>
#include <bbsolve/report.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>

namespace bbsolve {

namespace {

using algebra::GaussianRational;
using algebra::QPoly;
using algebra::RatFunc;

bool first_integral()
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int k = 2; k <= 8; k += 2)
        for (int trial = 0; trial < 5; ++trial) {
            Laurent<GaussianRational> y;
            y.val = -trial - 1;
            for (int i = 0; i < 16; ++i)
                y.coeffs.emplace_back(algebra::make_rational(d(rng), 1 + (d(rng) + 9) % 5));
            auto lhs = derivative(bracket_phi(k, y));
            auto rhs = derivative(y, k) * derivative(y);
            auto diff = lhs - rhs;
            for (const auto& c : diff.coeffs)
                if (!c.is_zero())
                    return false;
        }
    return true;
}

bool resonance()
{
    for (int k = 1; k <= 10; ++k)
        for (int n = 1; n <= 12; ++n)
            for (long j = 1; j <= 2 * n + k + 20; ++j) {
                bool zero = sgn(recurrence_bracket(k, n, j)) == 0;
                bool expect = k % 2 == 0 && j == 2 * n + k;
                if (zero != expect)
                    return false;
            }
    return true;
}

bool pinning()
{
    for (int k = 2; k <= 12; k += 2)
        for (int n = 1; n <= 12; ++n)
            if (sgn(pinning_sum(k, n)) <= 0)
                return false;
    return pinning_sum(2, 2) == 14 && pinning_sum(2, 1) == 5;
}

bool residues()
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<GaussianRational> num, den;
        for (int i = 0; i <= 4; ++i)
            num.emplace_back(algebra::make_rational(d(rng)));
        for (int i = 0; i <= 3; ++i)
            den.emplace_back(algebra::make_rational(d(rng)));
        den[3] = GaussianRational(1);
        RatFunc R{QPoly(num), QPoly(den)};
        if (!(finite_residue_sum(R) + residue_at_infinity(R)).is_zero())
            return false;
    }
    return true;
}

bool stirling_operator()
{
    for (int k = 1; k <= 6; ++k)
        for (int j = 0; j <= 5; ++j) {
            QPoly w = QPoly::monomial(GaussianRational(1), static_cast<std::size_t>(j));
            QPoly expect = QPoly::monomial(GaussianRational(static_cast<long>(std::pow(j, k))), static_cast<std::size_t>(j));
            if (!(theta_power(w, k) == expect))
                return false;
        }
    return true;
}

bool kernel_equivalence()
{
    std::mt19937 rng(3);
    std::normal_distribution<double> d;
    for (std::size_t n : {0u, 1u, 3u, 7u, 16u, 33u}) {
        std::vector<kernels::cd> a(n), b(n), y1(n), y2(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = {d(rng), d(rng)};
            b[i] = {d(rng), d(rng)};
            y1[i] = y2[i] = {d(rng), d(rng)};
        }
        double scale = 1e-13 * (1.0 + static_cast<double>(n));
        if (std::abs(kernels::dot(a.data(), b.data(), n) - kernels::scalar::dot(a.data(), b.data(), n)) > scale)
            return false;
        if (std::abs(kernels::dot_reversed(a.data(), b.data(), n) -
                     kernels::scalar::dot_reversed(a.data(), b.data(), n)) > scale)
            return false;
        kernels::axpy({0.5, -1.5}, a.data(), y1.data(), n);
        kernels::scalar::axpy({0.5, -1.5}, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(y1[i] - y2[i]) > 1e-14)
                return false;
    }
    return true;
}

bool worked_germ()
{
    AnalysisOptions opt;
    opt.N = 12;
    auto rep = analyze_series("y'' = 6*y^2", opt);
    if (rep.series.size() != 1)
        return false;
    const auto& s = rep.series[0];
    if (!(s.coeffs[0].is_exact() && s.coeffs[0].exact().is_one()))
        return false;
    for (int j = 1; j <= 12; ++j)
        if (!s.coeffs[static_cast<std::size_t>(j)].is_zero())
            return false;
    return rep.series_residual_order[0] > 12;
}

bool exact_matches()
{
    auto check = [](const char* eq) {
        auto spec = parse_equation(eq);
        for (const auto& m : match_monomial(spec))
            if (!m.verified)
                return false;
        for (const auto& e : match_exponential(spec, 4).matches)
            if (!e.verified || !exponential_residual(spec, e.lambda, e.num, e.den).is_zero())
                return false;
        return true;
    };
    return check("y'' = 6*y^2") && check("y''' = y") && check("y'' = 2*y^3 + y") && check("y' = y^2 + 1");
}

} // namespace

bool run_selftest(std::ostream& os)
{
    struct Suite {
        const char* name;
        std::function<bool()> run;
    };
    const Suite suites[] = {
        {"first integral identity", first_integral},
        {"resonance index", resonance},
        {"pinning sum positivity", pinning},
        {"residue sum over all places", residues},
        {"Theta power operator", stirling_operator},
        {"kernel equivalence", kernel_equivalence},
        {"worked germ y'' = 6*y^2", worked_germ},
        {"exact closed forms back-substitute", exact_matches},
    };
    bool all = true;
    for (const auto& s : suites) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string err;
        try {
            ok = s.run();
        } catch (const std::exception& e) {
            err = e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        os << (ok ? "PASS " : "FAIL ") << s.name;
        if (!err.empty())
            os << ": " << err;
        os << " (" << static_cast<long>(ms) << " ms)\n";
        all = all && ok;
    }
    os << "kernels: " << kernels::to_string(kernels::active_isa()) << "\n";
    return all;
}

} // namespace bbsolve
