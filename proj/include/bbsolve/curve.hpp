#pragma once

#include <bbsolve/algebra/bipoly.hpp>
#include <bbsolve/algebra/ratfunc.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bbsolve {

using algebra::Number;
using algebra::Rational;

struct NewtonEdge {
    std::pair<int, int> from; // (deg_p, deg_q), smaller deg_p first
    std::pair<int, int> to;
    Rational slope;           // (to.q - from.q) / (to.p - from.p)
    Rational kappa;           // -slope: branches with p ~ A q^kappa as q -> infinity
    int length() const { return to.first - from.first; }
};

struct NewtonPolygon {
    std::vector<std::pair<int, int>> support;
    std::vector<NewtonEdge> upper_edges;
};

// Upper hull of the support of P in the (deg_p, deg_q) plane. Throws DegenerateInput when
// P is constant in p or in q.
NewtonPolygon newton_polygon(const algebra::QBiPoly& P);

// One place of P(p, q) = 0 over q = infinity. With q = u^(-m) the branch is
// p = sum_i coeffs[i] u^(i - m kappa), i.e. p = sum_i coeffs[i] q^(kappa - i/m).
struct PuiseuxBranch {
    int id = 0;
    int m = 1;
    Rational kappa;
    std::vector<Number> coeffs;
    // The expansion is complete: every coefficient past coeffs.size() is zero.
    bool terminating = false;
    // Every coefficient is exact (Gaussian rational).
    bool exact = false;

    const Number& lead() const { return coeffs.front(); }
    bool p_finite() const { return kappa <= 0; }
    // Coefficient A_i; zero past the end of a terminating expansion. Throws InsufficientDepth.
    Number coeff(std::size_t i) const;
    // Exponent of q carried by coeffs[i].
    Rational exponent(std::size_t i) const;
};

// Newton-Puiseux expansion of all places over q = infinity, `depth` coefficients each.
// Conjugate branches of a ramified place are stored once. When `resolved` is given the single
// branch is the expansion of R at infinity.
std::vector<PuiseuxBranch> branches_at_infinity(const algebra::QBiPoly& P, int depth,
                                                const std::optional<algebra::RatFunc>& resolved = std::nullopt,
                                                mpfr_prec_t prec = algebra::default_precision);

// Residue of p dq at the place: -m * A_{m(kappa+1)}. Throws InsufficientDepth.
Number residue_pdq(const PuiseuxBranch& branch);

// Index of the coefficient that determines the residue, or -1 when no such term exists.
long residue_index(const PuiseuxBranch& branch);

struct ResidueEntry {
    std::string place;                // "branch 0", "q = infinity", "q = 0", "q = 1/2 + i", ...
    int branch_id = -1;               // -1 for a finite pole of R
    std::optional<Number> location;   // finite poles only
    Number value;
    bool certified_zero = false;
};

struct ExactnessVerdict {
    std::vector<ResidueEntry> residues;
    bool exact = false;
    // Resolved mode: every place of the rational curve was checked.
    bool global = false;
    // s with ds = R dq, resolved mode only and only when exact.
    std::optional<algebra::RatFunc> antiderivative;
    std::vector<std::string> notes;
};

ExactnessVerdict exactness_check(const std::vector<PuiseuxBranch>& branches,
                                 const std::optional<algebra::RatFunc>& resolved,
                                 mpfr_prec_t prec = algebra::default_precision);

// Sum of the residues of R dq over the finite poles, computed as a trace over the roots of the
// squarefree log denominator (no root approximation involved).
algebra::GaussianRational finite_residue_sum(const algebra::RatFunc& R);

// Residue of R dq at q = infinity.
algebra::GaussianRational residue_at_infinity(const algebra::RatFunc& R);

} // namespace bbsolve
