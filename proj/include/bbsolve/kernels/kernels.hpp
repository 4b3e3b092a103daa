#pragma once

#include <complex>
#include <cstddef>

namespace bbsolve::kernels {

using cd = std::complex<double>;

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

// Best instruction set available on this CPU and compiled into the binary.
Isa detected_isa();
// Instruction set used by the dispatching entry points. BBSOLVE_KERNELS=scalar forces Scalar.
Isa active_isa();
// Overrides the dispatch choice (tests and benchmarks); falls back to Scalar if unsupported.
void set_isa(Isa isa);

// sum a[i] * b[i]
cd dot(const cd* a, const cd* b, std::size_t n);
// sum a[i] * b[n - 1 - i]: the Cauchy-product coefficient of two truncated series.
cd dot_reversed(const cd* a, const cd* b, std::size_t n);
// y[i] += alpha * x[i]
void axpy(cd alpha, const cd* x, cd* y, std::size_t n);

namespace scalar {
cd dot(const cd* a, const cd* b, std::size_t n);
cd dot_reversed(const cd* a, const cd* b, std::size_t n);
void axpy(cd alpha, const cd* x, cd* y, std::size_t n);
} // namespace scalar

namespace avx2 {
bool compiled();
cd dot(const cd* a, const cd* b, std::size_t n);
cd dot_reversed(const cd* a, const cd* b, std::size_t n);
void axpy(cd alpha, const cd* x, cd* y, std::size_t n);
} // namespace avx2

} // namespace bbsolve::kernels
