#include <doctest.h>

#include <bbsolve/kernels/kernels.hpp>

#include <random>
#include <vector>

using namespace bbsolve::kernels;

namespace {

struct Data {
    std::vector<cd> a, b, y;
};

Data make(std::size_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> d;
    Data r;
    for (std::size_t i = 0; i < n; ++i) {
        r.a.emplace_back(d(rng), d(rng));
        r.b.emplace_back(d(rng), d(rng));
        r.y.emplace_back(d(rng), d(rng));
    }
    return r;
}

} // namespace

TEST_CASE("scalar kernels against a naive loop")
{
    auto v = make(13, 1);
    cd dot_ref = 0, rev_ref = 0;
    for (std::size_t i = 0; i < 13; ++i) {
        dot_ref += v.a[i] * v.b[i];
        rev_ref += v.a[i] * v.b[12 - i];
    }
    CHECK(std::abs(scalar::dot(v.a.data(), v.b.data(), 13) - dot_ref) < 1e-13);
    CHECK(std::abs(scalar::dot_reversed(v.a.data(), v.b.data(), 13) - rev_ref) < 1e-13);
}

TEST_CASE("AVX2 kernels agree with scalar")
{
    if (!avx2::compiled() || detected_isa() != Isa::Avx2) {
        MESSAGE("AVX2 path not available on this machine");
        return;
    }
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 17u, 64u, 101u}) {
        auto v = make(n, static_cast<unsigned>(n) + 7);
        double tol = 1e-14 * (1.0 + static_cast<double>(n));
        CHECK(std::abs(avx2::dot(v.a.data(), v.b.data(), n) - scalar::dot(v.a.data(), v.b.data(), n)) < tol);
        CHECK(std::abs(avx2::dot_reversed(v.a.data(), v.b.data(), n) -
                       scalar::dot_reversed(v.a.data(), v.b.data(), n)) < tol);
        auto y1 = v.y, y2 = v.y;
        avx2::axpy({0.25, -2.0}, v.a.data(), y1.data(), n);
        scalar::axpy({0.25, -2.0}, v.a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) < 1e-14);
    }
}

TEST_CASE("dispatch honours set_isa")
{
    Isa before = active_isa();
    set_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    set_isa(before);
    CHECK(active_isa() == before);
}
