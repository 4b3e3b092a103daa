#pragma once

#include <bbsolve/algebra/poly.hpp>

#include <vector>

// Residues of N/D dq when D splits into distinct known linear factors.
namespace oracle {

using bbsolve::algebra::GaussianRational;
using bbsolve::algebra::QPoly;

inline QPoly from_roots(const std::vector<GaussianRational>& roots)
{
    QPoly d(GaussianRational(1));
    for (const auto& r : roots)
        d = d * QPoly{-r, GaussianRational(1)};
    return d;
}

// Residue at a simple root r of D: N(r) / D'(r).
inline GaussianRational simple_residue(const QPoly& N, const QPoly& D, const GaussianRational& r)
{
    return N(r) / D.derivative()(r);
}

// Residue at infinity: minus the coefficient of 1/q in the expansion of N/D at infinity, from
// the long division N = Q D + Rem: it is -lead(Rem x^(deg D - 1) part) / lead(D).
inline GaussianRational residue_at_infinity(const QPoly& N, const QPoly& D)
{
    auto rem = bbsolve::algebra::divmod(N, D).second;
    int dd = D.degree();
    return -rem[static_cast<std::size_t>(dd - 1)] / D.lead();
}

} // namespace oracle
