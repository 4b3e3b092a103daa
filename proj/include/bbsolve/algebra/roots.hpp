#pragma once

#include <bbsolve/algebra/poly.hpp>

#include <optional>
#include <vector>

namespace bbsolve::algebra {

// A group of root approximations whose inclusion discs overlap. The group contains exactly
// `count` roots of the exact polynomial, each within center.err() of center.
struct RootCluster {
    BigComplex center;
    int count = 1;
};

struct Root {
    BigComplex value;
    int multiplicity = 1;
    std::optional<GaussianRational> exact;
};

// All roots listed with multiplicity, ordered by (rounded real, rounded imaginary part).
// Throws DegenerateInput for the zero polynomial; a nonzero constant has no roots.
std::vector<BigComplex> roots_univariate(const NPoly& poly, mpfr_prec_t prec = default_precision);
std::vector<BigComplex> roots_univariate(const QPoly& poly, mpfr_prec_t prec = default_precision);

// Roots of a polynomial with possibly inexact coefficients, grouped by overlapping inclusion discs.
std::vector<RootCluster> root_clusters(const NPoly& poly, mpfr_prec_t prec = default_precision);

// Distinct roots of an exact polynomial with multiplicities; exact values where Gaussian rational.
std::vector<Root> distinct_roots(const QPoly& poly, mpfr_prec_t prec = default_precision);

// Gaussian rational roots, each listed once, in the same deterministic order.
std::vector<GaussianRational> gaussian_rational_roots(const QPoly& poly, mpfr_prec_t prec = default_precision);

// Tries to identify `approx` as an exact root of `poly` in Q(i).
std::optional<GaussianRational> recognize_root(const QPoly& poly, const BigComplex& approx);

// Deterministic order used for every root list.
bool root_order_less(const BigComplex& a, const BigComplex& b);
bool root_order_less(const std::complex<double>& a, const std::complex<double>& b);

} // namespace bbsolve::algebra
