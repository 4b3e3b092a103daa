#pragma once

#include <bbsolve/algebra/poly.hpp>

#include <algorithm>
#include <vector>

namespace bbsolve::algebra {

// Truncated power series helpers on dense coefficient vectors; `len` is the number of
// coefficients kept.

template <class T> std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b, std::size_t len)
{
    std::vector<T> out(len, T{});
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (structural_zero(a[i]))
            continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            if (!structural_zero(b[j]))
                out[i + j] += a[i] * b[j];
    }
    return out;
}

template <class T> std::vector<T> series_div(const std::vector<T>& a, const std::vector<T>& b, std::size_t len)
{
    if (b.empty() || structural_zero(b[0]))
        throw Error(ErrorKind::DegenerateInput, "power series division by a series with zero constant term");
    std::vector<T> out(len, T{});
    T inv = T(1) / b[0];
    for (std::size_t n = 0; n < len; ++n) {
        T acc = n < a.size() ? a[n] : T{};
        for (std::size_t j = 1; j <= n && j < b.size(); ++j)
            if (!structural_zero(b[j]) && !structural_zero(out[n - j]))
                acc -= b[j] * out[n - j];
        out[n] = acc * inv;
    }
    return out;
}

template <class T> std::vector<T> series_truncate(std::vector<T> a, std::size_t len)
{
    a.resize(len, T{});
    return a;
}

} // namespace bbsolve::algebra
