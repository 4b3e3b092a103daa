#include <bbsolve/kernels/kernels.hpp>

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace bbsolve::kernels {

namespace {

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa initial_isa()
{
    const char* env = std::getenv("BBSOLVE_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0)
        return Isa::Scalar;
    return detected_isa();
}

std::atomic<Isa>& current()
{
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

} // namespace

const char* to_string(Isa isa)
{
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

Isa detected_isa()
{
    static const Isa isa = avx2::compiled() && cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    return isa;
}

Isa active_isa()
{
    return current().load(std::memory_order_relaxed);
}

void set_isa(Isa isa)
{
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2)
        isa = Isa::Scalar;
    current().store(isa, std::memory_order_relaxed);
}

cd dot(const cd* a, const cd* b, std::size_t n)
{
    return active_isa() == Isa::Avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

cd dot_reversed(const cd* a, const cd* b, std::size_t n)
{
    return active_isa() == Isa::Avx2 ? avx2::dot_reversed(a, b, n) : scalar::dot_reversed(a, b, n);
}

void axpy(cd alpha, const cd* x, cd* y, std::size_t n)
{
    if (active_isa() == Isa::Avx2)
        avx2::axpy(alpha, x, y, n);
    else
        scalar::axpy(alpha, x, y, n);
}

} // namespace bbsolve::kernels
