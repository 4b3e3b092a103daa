#pragma once

#include <bbsolve/algebra/poly.hpp>

#include <optional>
#include <vector>

// Laurent solutions of D(y) y^(k) = N(y) by undetermined coefficients, with its own series arithmetic.
namespace oracle {

using bbsolve::algebra::GaussianRational;
using bbsolve::algebra::QPoly;

using Coeffs = std::vector<GaussianRational>;

// y = z^-n sum_j c[j] z^j; returns d^k y / dz^k in the form z^(-n-k) sum_j out[j] z^j.
inline Coeffs kth_derivative(const Coeffs& c, int n, int k)
{
    Coeffs out(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        GaussianRational f(1);
        long e = static_cast<long>(j) - n;
        for (int i = 0; i < k; ++i)
            f *= GaussianRational(e - i);
        out[j] = c[j] * f;
    }
    return out;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b)
{
    Coeffs r(std::min(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; i + j < r.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// Coefficient of z^(L0 + j) of D(y) y^(k) - N(y), where L0 is the common leading exponent.
inline GaussianRational equation_coeff(const QPoly& N, const QPoly& D, int k, int n, const Coeffs& c, std::size_t j)
{
    const int dn = N.degree();
    const int dd = D.degree();
    const std::size_t len = j + 1;
    Coeffs y(c.begin(), c.begin() + static_cast<long>(len));
    // Powers y^i = z^(-n i) sum pw_i.
    std::vector<Coeffs> pw(static_cast<std::size_t>(std::max(dn, dd) + 1));
    pw[0] = Coeffs(len);
    pw[0][0] = GaussianRational(1);
    for (std::size_t i = 1; i < pw.size(); ++i)
        pw[i] = mul(pw[i - 1], y);
    // Leading exponents: D(y) y^(k) ~ z^(-n dd - n - k), N(y) ~ z^(-n dn); both equal L0.
    const long L0 = -static_cast<long>(n) * dn;
    auto term = [&](const QPoly& p, int deg, long extra, const Coeffs* times) {
        GaussianRational acc;
        for (int i = 0; i <= deg; ++i) {
            if (p[static_cast<std::size_t>(i)].is_zero())
                continue;
            Coeffs s = pw[static_cast<std::size_t>(i)];
            if (times)
                s = mul(s, *times);
            // exponent of s[t] is -n i + extra + t
            long t = L0 + static_cast<long>(j) + static_cast<long>(n) * i - extra;
            if (t >= 0 && t < static_cast<long>(s.size()))
                acc += p[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(t)];
        }
        return acc;
    };
    Coeffs yk = kth_derivative(y, n, k);
    return term(D, dd, -n - k, &yk) - term(N, dn, 0, nullptr);
}

struct Solution {
    Coeffs c;
    bool consistent = true; // the compatibility condition at a vanishing slope held
    int free_index = -1;
};

// Forward solve through relative order J with leading coefficient c0; `free_value` is used for a
// coefficient whose equation does not involve it.
inline Solution solve(const QPoly& N, const QPoly& D, int k, int n, const GaussianRational& c0, std::size_t J,
                      const GaussianRational& free_value)
{
    Solution s;
    s.c.assign(J + 1, GaussianRational());
    s.c[0] = c0;
    for (std::size_t j = 1; j <= J; ++j) {
        s.c[j] = GaussianRational(0);
        GaussianRational e0 = equation_coeff(N, D, k, n, s.c, j);
        s.c[j] = GaussianRational(1);
        GaussianRational e1 = equation_coeff(N, D, k, n, s.c, j);
        GaussianRational slope = e1 - e0;
        if (slope.is_zero()) {
            if (!e0.is_zero())
                s.consistent = false;
            s.free_index = static_cast<int>(j);
            s.c[j] = free_value;
        } else {
            s.c[j] = -e0 / slope;
        }
    }
    return s;
}

} // namespace oracle
