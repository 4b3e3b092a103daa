#include <bbsolve/kernels/kernels.hpp>

namespace bbsolve::kernels::scalar {

// Explicit real arithmetic: std::complex multiplication carries NaN-recovery branches.
cd dot(const cd* a, const cd* b, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

cd dot_reversed(const cd* a, const cd* b, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cd& c = b[n - 1 - i];
        re += a[i].real() * c.real() - a[i].imag() * c.imag();
        im += a[i].real() * c.imag() + a[i].imag() * c.real();
    }
    return {re, im};
}

void axpy(cd alpha, const cd* x, cd* y, std::size_t n)
{
    double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i)
        y[i] = {y[i].real() + ar * x[i].real() - ai * x[i].imag(), y[i].imag() + ar * x[i].imag() + ai * x[i].real()};
}

} // namespace bbsolve::kernels::scalar
