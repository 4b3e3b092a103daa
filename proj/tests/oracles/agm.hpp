#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

inline long double agm(long double a, long double b)
{
    for (int i = 0; i < 64 && std::fabs(a - b) > 1e-19L * std::fabs(a); ++i) {
        long double m = (a + b) / 2;
        b = std::sqrt(a * b);
        a = m;
    }
    return (a + b) / 2;
}

// Period lattice of y'^2 = 4 (y - e1)(y - e2)(y - e3) with real roots e1 > e2 > e3:
// real period pi / agm(sqrt(e1 - e3), sqrt(e1 - e2)), imaginary period i pi / agm(sqrt(e1 - e3), sqrt(e2 - e3)).
struct Lattice {
    std::complex<double> real_period;
    std::complex<double> imag_period;
};

inline Lattice weierstrass_real_roots(long double e1, long double e2, long double e3)
{
    const long double pi = std::numbers::pi_v<long double>;
    long double wr = pi / agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
    long double wi = pi / agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3));
    return {{static_cast<double>(wr), 0.0}, {0.0, static_cast<double>(wi)}};
}

// Integer coordinates of t in the basis (w1, w2) and the distance to the nearest lattice vector.
struct LatticeFit {
    long a = 0;
    long b = 0;
    double residual = 0.0;
};

inline LatticeFit fit(std::complex<double> t, std::complex<double> w1, std::complex<double> w2)
{
    double det = w1.real() * w2.imag() - w1.imag() * w2.real();
    double x = (t.real() * w2.imag() - t.imag() * w2.real()) / det;
    double y = (w1.real() * t.imag() - w1.imag() * t.real()) / det;
    LatticeFit f;
    f.a = std::lround(x);
    f.b = std::lround(y);
    f.residual = std::abs(t - static_cast<double>(f.a) * w1 - static_cast<double>(f.b) * w2);
    return f;
}

} // namespace oracle
