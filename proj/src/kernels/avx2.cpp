#include <bbsolve/kernels/kernels.hpp>

#if defined(BBSOLVE_BUILD_AVX2)
#include <immintrin.h>
#endif

namespace bbsolve::kernels::avx2 {

#if defined(BBSOLVE_BUILD_AVX2)

namespace {

inline cd horizontal(__m256d acc_re, __m256d acc_sw)
{
    // even lanes: re*re - im*im, odd lanes: im*re + re*im
    __m256d v = _mm256_addsub_pd(acc_re, acc_sw);
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

} // namespace

bool compiled()
{
    return true;
}

cd dot(const cd* a, const cd* b, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc1 = _mm256_fmadd_pd(va, _mm256_movedup_pd(vb), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), _mm256_permute_pd(vb, 0xF), acc2);
    }
    cd r = horizontal(acc1, acc2);
    for (; i < n; ++i)
        r += cd(a[i].real() * b[i].real() - a[i].imag() * b[i].imag(),
                a[i].real() * b[i].imag() + a[i].imag() * b[i].real());
    return r;
}

cd dot_reversed(const cd* a, const cd* b, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        // b[n-2-i], b[n-1-i] swapped into b[n-1-i], b[n-2-i]
        __m256d vb = _mm256_loadu_pd(pb + 2 * (n - 2 - i));
        vb = _mm256_permute2f128_pd(vb, vb, 0x01);
        acc1 = _mm256_fmadd_pd(va, _mm256_movedup_pd(vb), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), _mm256_permute_pd(vb, 0xF), acc2);
    }
    cd r = horizontal(acc1, acc2);
    for (; i < n; ++i) {
        const cd& c = b[n - 1 - i];
        r += cd(a[i].real() * c.real() - a[i].imag() * c.imag(), a[i].real() * c.imag() + a[i].imag() * c.real());
    }
    return r;
}

void axpy(cd alpha, const cd* x, cd* y, std::size_t n)
{
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    __m256d are = _mm256_set1_pd(alpha.real());
    __m256d aim = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        __m256d prod = _mm256_fmaddsub_pd(vx, are, _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), aim));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i)
        y[i] = {y[i].real() + alpha.real() * x[i].real() - alpha.imag() * x[i].imag(),
                y[i].imag() + alpha.real() * x[i].imag() + alpha.imag() * x[i].real()};
}

#else

bool compiled()
{
    return false;
}

cd dot(const cd* a, const cd* b, std::size_t n)
{
    return scalar::dot(a, b, n);
}

cd dot_reversed(const cd* a, const cd* b, std::size_t n)
{
    return scalar::dot_reversed(a, b, n);
}

void axpy(cd alpha, const cd* x, cd* y, std::size_t n)
{
    scalar::axpy(alpha, x, y, n);
}

#endif

} // namespace bbsolve::kernels::avx2
