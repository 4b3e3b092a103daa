#pragma once

#include <bbsolve/algebra/poly.hpp>

#include <optional>
#include <vector>

namespace bbsolve::algebra {

// Gauss-Jordan elimination over an exact field. Returns one solution of A x = b (free
// variables set to zero) or nullopt when the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve_linear(std::vector<std::vector<T>> a, std::vector<T> b, std::size_t unknowns)
{
    std::size_t rows = a.size();
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < unknowns && r < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!structural_zero(a[i][col])) {
                piv = i;
                break;
            }
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        T inv = T(1) / a[r][col];
        for (std::size_t j = col; j < unknowns; ++j)
            a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || structural_zero(a[i][col]))
                continue;
            T f = a[i][col];
            for (std::size_t j = col; j < unknowns; ++j)
                a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!structural_zero(b[i]))
            return std::nullopt;
    std::vector<T> x(unknowns, T{});
    for (std::size_t i = 0; i < r; ++i)
        x[static_cast<std::size_t>(pivot_col[i])] = b[i];
    return x;
}

} // namespace bbsolve::algebra
