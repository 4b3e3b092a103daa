#pragma once

#include <bbsolve/conditions.hpp>
#include <bbsolve/series.hpp>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace bbsolve {

// ---- exact closed forms ----------------------------------------------------------------------

// y = c z^(-n) for every root c of `defining` (squarefree, monic, c = 0 excluded).
struct MonomialSolution {
    int n = 1;
    algebra::QPoly defining;
    Number c;                                    // one root; exact when it lies in Q(i)
    std::optional<algebra::GaussianRational> exact;
    // Every exponent group of P(c (-1)^k (n)_k z^(-n-k), c z^(-n)) reduces to 0 modulo `defining`.
    bool verified = false;
};

// Candidate orders default to the admissible n of the conditions check.
std::vector<MonomialSolution> match_monomial(const EquationSpec& spec,
                                             std::optional<std::vector<int>> candidate_n = std::nullopt,
                                             mpfr_prec_t prec = algebra::default_precision);

// y = R(w), w = exp(a z), with a^k = lambda. R = num/den is normalized by R(0) = y0, R'(0) = 1.
struct ExponentialSolution {
    algebra::GaussianRational y0;
    algebra::GaussianRational lambda;
    std::vector<Number> a_values; // the k roots of a^k = lambda
    algebra::QPoly num;
    algebra::QPoly den;
    bool verified = false;
    std::string describe() const;
};

struct ExponentialSearch {
    std::vector<ExponentialSolution> matches;
    std::vector<std::string> notes; // CapExceeded and skipped equilibria
};

ExponentialSearch match_exponential(const EquationSpec& spec, int degree_cap,
                                    mpfr_prec_t prec = algebra::default_precision);

// Theta^k f with Theta = w d/dw, expanded as sum_j S(k, j) w^j f^(j) (Stirling numbers of the
// second kind).
algebra::QPoly theta_power(const algebra::QPoly& f, int k);
algebra::Integer stirling2(int k, int j);

// Exact back substitution of y = num/den (w) with y^(k) = lambda Theta^k y into P; returns the
// numerator of the residual (zero when R solves the equation).
algebra::QPoly exponential_residual(const EquationSpec& spec, const algebra::GaussianRational& lambda,
                                    const algebra::QPoly& num, const algebra::QPoly& den);

// ---- numeric continuation ------------------------------------------------------------------

using cplx = std::complex<double>;

struct TrajectoryOptions {
    double tol = 1e-10;      // consistency defect
    int order = 32;          // Taylor order
    double step_factor = 0.3; // step as a fraction of the estimated convergence radius
    bool extended = false;   // long double arithmetic instead of double
    // Poles are passed on arcs of this radius (fraction of the germ radius) in the y chart.
    double avoid_radius = 0.15;
    // Step through poles in the 1/y chart instead (well conditioned for k = 1 only).
    bool invert_poles = false;
    double switch_abs = 0.0; // |y| threshold for the 1/y chart; 0 picks it from the seed
    int max_steps = 20000;
};

enum class Chart { Y, U };

struct TrajectoryStep {
    cplx z;
    Chart chart = Chart::Y;
    // Taylor coefficients at z of y (chart Y) or u = 1/y (chart U).
    std::vector<cplx> taylor;
    double radius = 0.0; // estimated convergence radius of `taylor`
    double defect = 0.0; // relative |P(p, y)| before projection
};

struct PoleEvent {
    cplx z;
    int order = 0;
    cplx c0;
    int germ = -1; // index into the seed list, -1 when no germ matches
    double err = 0.0;
};

struct Trajectory {
    int k = 1;
    std::vector<TrajectoryStep> steps;
    std::vector<PoleEvent> poles;
    double max_defect = 0.0;

    // (y, y', ..., y^(k-1), y^(k)) at z from the nearest step whose disc contains z.
    std::optional<std::vector<cplx>> state_at(cplx z) const;
};

// Germ evaluated at z: (y, y', ..., y^(k)).
std::vector<cplx> germ_state(const LaurentSeries& seed, cplx z);

// Convergence radius estimate of the germ at its pole (distance to the nearest other singularity).
double germ_radius(const LaurentSeries& seed);

// Follows the solution fixed by `seed` along the polyline path (path[0] must lie near the pole
// of the seed). Throws SingularEncounter or ToleranceLoss.
Trajectory continue_trajectory(const EquationSpec& spec, const LaurentSeries& seed, const std::vector<cplx>& path,
                               const TrajectoryOptions& opt = {}, const std::vector<LaurentSeries>& germs = {});

// ---- periods -------------------------------------------------------------------------------

struct PeriodResult {
    int rank = 0; // 0, 1 or 2
    std::vector<cplx> periods;
    std::vector<double> errors;
    int verified_points = 0;
    std::vector<std::string> notes;
    std::optional<cplx> ratio() const
    {
        if (rank < 2)
            return std::nullopt;
        return periods[1] / periods[0];
    }
};

// Lattice fit on the pole set, candidates verified by state comparison on `trajectory` when given.
// Throws Inconclusive for fewer than two poles.
PeriodResult detect_periods(const std::vector<PoleEvent>& poles, double tol, const Trajectory* trajectory = nullptr);

// Reduced basis: |T1| minimal, then |T2| minimal with Im(T2 / T1) > 0.
std::pair<cplx, cplx> reduce_basis(cplx t1, cplx t2);

struct SweepOptions {
    TrajectoryOptions trajectory;
    int rings = 5;
    double ring_spacing = 0.5;  // in units of the germ radius
    double rotation = 0.2317;   // keeps the sweep off lattice symmetry lines
    double period_tol = 1e-4;
};

struct SweepResult {
    Trajectory trajectory;
    PeriodResult periods;
    double scale = 0.0;
    std::vector<std::string> notes;
};

// Concentric rectangle sweep around the pole of `seed`, locating poles and fitting a lattice.
SweepResult sweep_for_periods(const EquationSpec& spec, const LaurentSeries& seed,
                              const std::vector<LaurentSeries>& germs, const SweepOptions& opt = {});

// ---- verdict -------------------------------------------------------------------------------

enum class Label { Rational, RationalInExponential, Elliptic, EntireOnly, NoneWithPole, Undetermined };
enum class Confidence { Exact, Numeric, Heuristic };

const char* to_string(Label label);
const char* to_string(Confidence confidence);

struct ClassificationVerdict {
    Label label = Label::Undetermined;
    Confidence confidence = Confidence::Heuristic;
    std::vector<std::string> evidence;
    std::optional<int> degree_bound;
};

struct ClassifyInputs {
    const ConditionsReport* conditions = nullptr;
    const std::vector<LaurentSeries>* series = nullptr;
    const std::vector<MonomialSolution>* monomials = nullptr;
    const ExponentialSearch* exponentials = nullptr;
    const SweepResult* sweep = nullptr;
    // The germ that was continued; exact matches compatible with it decide the label.
    const LaurentSeries* seed = nullptr;
};

ClassificationVerdict assemble_verdict(const ClassifyInputs& in);

// True when the monomial solution is the germ (same order, c0 and vanishing tail).
bool monomial_matches_germ(const MonomialSolution& m, const LaurentSeries& germ);
// True when some pole of R(exp(a z)) carries the germ (numeric comparison of leading terms).
bool exponential_matches_germ(const ExponentialSolution& e, const LaurentSeries& germ);

} // namespace bbsolve
