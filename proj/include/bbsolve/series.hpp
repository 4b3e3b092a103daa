#pragma once

#include <bbsolve/curve.hpp>
#include <bbsolve/eqparse.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bbsolve {

// Truncated Laurent series sum_{i < coeffs.size()} coeffs[i] z^(val + i); terms past the
// end are unknown, not zero.
template <class T> struct Laurent {
    long val = 0;
    std::vector<T> coeffs;

    long end() const { return val + static_cast<long>(coeffs.size()); }
    T at(long e) const
    {
        if (e < val || e >= end())
            return T{};
        return coeffs[static_cast<std::size_t>(e - val)];
    }
};

template <class T> Laurent<T> derivative(const Laurent<T>& a)
{
    Laurent<T> r;
    r.val = a.val - 1;
    r.coeffs.reserve(a.coeffs.size());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        r.coeffs.push_back(a.coeffs[i] * T(a.val + static_cast<long>(i)));
    return r;
}

template <class T> Laurent<T> derivative(const Laurent<T>& a, int times)
{
    Laurent<T> r = a;
    for (int i = 0; i < times; ++i)
        r = derivative(r);
    return r;
}

// Product valid on the common relative range.
template <class T> Laurent<T> operator*(const Laurent<T>& a, const Laurent<T>& b)
{
    Laurent<T> r;
    r.val = a.val + b.val;
    std::size_t len = std::min(a.coeffs.size(), b.coeffs.size());
    r.coeffs.assign(len, T{});
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; i + j < len; ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return r;
}

template <class T> Laurent<T> scale(Laurent<T> a, const T& s)
{
    for (auto& c : a.coeffs)
        c *= s;
    return a;
}

// Sum over the common valid range (up to the smaller end).
template <class T> Laurent<T> operator+(const Laurent<T>& a, const Laurent<T>& b)
{
    Laurent<T> r;
    r.val = std::min(a.val, b.val);
    long end = std::min(a.end(), b.end());
    for (long e = r.val; e < end; ++e)
        r.coeffs.push_back(a.at(e) + b.at(e));
    return r;
}

template <class T> Laurent<T> operator-(const Laurent<T>& a, const Laurent<T>& b)
{
    Laurent<T> r;
    r.val = std::min(a.val, b.val);
    long end = std::min(a.end(), b.end());
    for (long e = r.val; e < end; ++e)
        r.coeffs.push_back(a.at(e) - b.at(e));
    return r;
}

// Phi_k(y) = y^(k-1) y' - y^(k-2) y'' + ... +- (1/2) (y^(k/2))^2, so that d/dz Phi_k = y^(k) y'.
// Throws OddOrder for odd k.
template <class T> Laurent<T> bracket_phi(int k, const Laurent<T>& y)
{
    if (k % 2 != 0 || k < 2)
        throw Error(ErrorKind::OddOrder, "the first integral needs an even order k");
    std::vector<Laurent<T>> d(static_cast<std::size_t>(k));
    d[0] = y;
    for (int i = 1; i < k; ++i)
        d[static_cast<std::size_t>(i)] = derivative(d[static_cast<std::size_t>(i - 1)]);
    int h = k / 2;
    Laurent<T> mid = d[static_cast<std::size_t>(h)] * d[static_cast<std::size_t>(h)];
    Laurent<T> acc = scale(mid, T(h % 2 == 1 ? 1 : -1) / T(2));
    for (int r = 1; r < h; ++r) {
        Laurent<T> term = d[static_cast<std::size_t>(k - r)] * d[static_cast<std::size_t>(r)];
        acc = r % 2 == 1 ? acc + term : acc - term;
    }
    return acc;
}

enum class Resonance { None, Pinned, Free };

const char* to_string(Resonance r);

// Fixed first-integral constant c, or c left free (the resonant coefficient becomes a parameter b).
struct CMode {
    std::optional<Number> c;
    bool free() const { return !c.has_value(); }
    static CMode fixed(Number value) { return {std::move(value)}; }
    static CMode free_parameter() { return {}; }
};

struct LaurentSeries {
    int n = 1;
    int k = 1;
    // y = sum_j coeffs[j] z^(j - n), j = 0..N. In free mode these are the values at b = 0.
    std::vector<Number> coeffs;
    // Free mode: coeffs as polynomials in the resonant parameter b = c_{2n+k}.
    std::vector<algebra::NPoly> param_coeffs;
    int N = 0;
    Resonance resonance = Resonance::None;
    std::optional<Number> c;
    int branch_id = 0;
    int root_index = 0;
    Number rho; // chosen m-th root of c0 consistent with the branch

    int resonance_index() const { return resonance == Resonance::None ? -1 : 2 * n + k; }
    Laurent<Number> as_laurent() const;
};

struct LeadingRoot {
    Number rho;
    Number c0;
};

// All c0 with D0 c0 = A0 c0^(1+k/n), D0 = (-1)^k (n)_k, as rho^e = D0/A0 with c0 = rho^m and
// e = m k / n. Throws NoRoots when the branch cannot carry poles of order n.
std::vector<LeadingRoot> leading_roots(int k, int n, const PuiseuxBranch& branch,
                                       mpfr_prec_t prec = algebra::default_precision);
std::vector<Number> leading_coefficients(int k, int n, const PuiseuxBranch& branch,
                                         mpfr_prec_t prec = algebra::default_precision);

// c0 * sum_{m=0}^{k-1} (n+m)! (n+k)! / ((n+m+1)! (n-1)!).
Number pinning_coefficient(int k, int n, const Number& c0);
algebra::Rational pinning_sum(int k, int n);

// D_j - (1 + k/n) D0, the factor multiplying c_j in the order-j recurrence.
algebra::Rational recurrence_bracket(int k, int n, long j);

struct SeriesDiagnostics {
    std::vector<std::string> notes;
};

// Laurent series with a pole of order n at 0 fed by `branch`. Throws DepthTooSmall when the
// branch has too few terms; InconsistentResonance is recorded per root in `diag` and skipped.
std::vector<LaurentSeries> enumerate_series(const EquationSpec& spec, const PuiseuxBranch& branch, int n,
                                            const CMode& mode, int N, SeriesDiagnostics* diag = nullptr,
                                            mpfr_prec_t prec = algebra::default_precision);

// First relative order (0-based from the lowest exponent of P(y^(k), y)) at which the residual is
// not zero; N + 1 when it vanishes through the truncation.
int verify_series(const EquationSpec& spec, const LaurentSeries& series);

// Branch-local s(y) = integral of p dq, as a Laurent series in z for y = series (log term skipped).
Laurent<Number> antiderivative_series(const PuiseuxBranch& branch, const LaurentSeries& series, long up_to_exponent);

// Smallest branch depth that enumerate_series needs for this (n, N).
int required_depth(const PuiseuxBranch& branch, int n, int N);

} // namespace bbsolve
