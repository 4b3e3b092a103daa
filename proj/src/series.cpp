#include <bbsolve/series.hpp>
#include <bbsolve/algebra/roots.hpp>

#include <algorithm>

namespace bbsolve {

using algebra::BigComplex;
using algebra::GaussianRational;
using algebra::NPoly;
using algebra::QPoly;

const char* to_string(Resonance r)
{
    switch (r) {
    case Resonance::None:
        return "none";
    case Resonance::Pinned:
        return "pinned";
    case Resonance::Free:
        return "free";
    }
    return "?";
}

namespace {

Number num(const Rational& r)
{
    return GaussianRational(r);
}

algebra::Integer falling(long x, int k)
{
    algebra::Integer r = 1;
    for (int l = 0; l < k; ++l)
        r *= x - l;
    return r;
}

algebra::Integer d0(int k, int n)
{
    algebra::Integer p = algebra::pochhammer(n, k);
    return k % 2 == 0 ? p : algebra::Integer(-p);
}

bool maybe_zero(const Number& x)
{
    return x.maybe_zero();
}

bool maybe_zero(const NPoly& x)
{
    return std::all_of(x.coeffs().begin(), x.coeffs().end(), [](const Number& c) { return c.maybe_zero(); });
}

// Miller's recurrence for (1 + w)^alpha: coefficient t from g_1..g_t and f_0..f_{t-1}.
template <class T>
T miller_step(const Rational& alpha, const std::vector<T>& g, const std::vector<T>& f, std::size_t t)
{
    T acc{};
    Rational a1 = alpha + 1;
    for (std::size_t l = 1; l <= t; ++l) {
        if (algebra::structural_zero(g[l]) || algebra::structural_zero(f[t - l]))
            continue;
        Rational w = (a1 * Rational(static_cast<long>(l)) - Rational(static_cast<long>(t))) / Rational(static_cast<long>(t));
        if (sgn(w) == 0)
            continue;
        acc += g[l] * f[t - l] * T(num(w));
    }
    return acc;
}

struct BranchData {
    int m;
    int np;
    Rational kappa;
    std::vector<Number> B;
    std::vector<Rational> alpha;
};

BranchData branch_data(const PuiseuxBranch& br, int n, const Number& rho, int max_index)
{
    BranchData d;
    d.m = br.m;
    d.np = n / br.m;
    d.kappa = br.kappa;
    long mk = Rational(Rational(br.m) * br.kappa).get_num().get_si();
    for (int i = 0; i <= max_index; ++i) {
        Number a;
        try {
            a = br.coeff(static_cast<std::size_t>(i));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InsufficientDepth)
                throw Error(ErrorKind::DepthTooSmall, std::string("branch expansion too short for this truncation: ") + e.what());
            throw;
        }
        d.B.push_back(a.is_zero() ? Number() : a * rho.pow(mk - i));
        d.alpha.push_back(br.kappa - algebra::make_rational(i, br.m));
    }
    return d;
}

// s(y) for y = c0 z^-n (1 + w), w from g[1..len-1]; Laurent from z^(-2n-k), len terms.
Laurent<Number> s_series(const BranchData& d, const Number& c0, const std::vector<Number>& g, int n, int k,
                         std::size_t len)
{
    Laurent<Number> s;
    s.val = -2L * n - k;
    s.coeffs.assign(len, Number());
    for (std::size_t i = 0; i < d.B.size(); ++i) {
        std::size_t shift = i * static_cast<std::size_t>(d.np);
        if (shift >= len || d.B[i].is_zero())
            continue;
        Rational a1 = d.alpha[i] + 1;
        if (sgn(a1) == 0)
            continue; // log term of p dq
        std::size_t hl = len - shift;
        std::vector<Number> h(hl);
        h[0] = Number(1);
        for (std::size_t t = 1; t < hl; ++t)
            h[t] = miller_step(a1, g, h, t);
        Number f = d.B[i] * c0 / num(a1);
        for (std::size_t t = 0; t < hl; ++t)
            s.coeffs[shift + t] += f * h[t];
    }
    return s;
}

Laurent<Number> y_laurent(const std::vector<Number>& c, int n)
{
    Laurent<Number> y;
    y.val = -n;
    y.coeffs = c;
    return y;
}

template <class T> T lift(const Number& x);
template <> Number lift<Number>(const Number& x) { return x; }
template <> NPoly lift<NPoly>(const Number& x) { return NPoly(x); }

// Solves the recurrence for one choice of rho. Free mode (T = NPoly) leaves c_{2n+k} = b.
template <class T>
std::vector<T> run_recurrence(const PuiseuxBranch& br, int k, int n, const Number& rho, const Number& c0, int N,
                              const CMode& mode)
{
    int np = n / br.m;
    int I = N / np;
    BranchData d = branch_data(br, n, rho, I);
    Rational kappa = br.kappa;
    Rational D0 = Rational(d0(k, n));
    std::vector<T> c(static_cast<std::size_t>(N + 1));
    std::vector<T> g(static_cast<std::size_t>(N + 1));
    c[0] = lift<T>(c0);
    Number inv_c0 = Number(1) / c0;
    std::vector<std::vector<T>> f(static_cast<std::size_t>(I + 1));
    for (int i = 0; i <= I; ++i) {
        f[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(N - i * np + 1), T{});
        f[static_cast<std::size_t>(i)][0] = lift<T>(Number(1));
    }
    for (int j = 1; j <= N; ++j) {
        T K{};
        for (int i = 0; i <= I; ++i) {
            int t = j - i * np;
            if (t < 0)
                break;
            auto& fi = f[static_cast<std::size_t>(i)];
            if (t >= 1)
                fi[static_cast<std::size_t>(t)] = miller_step(d.alpha[static_cast<std::size_t>(i)], g, fi, static_cast<std::size_t>(t));
            if (!d.B[static_cast<std::size_t>(i)].is_zero())
                K += fi[static_cast<std::size_t>(t)] * lift<T>(d.B[static_cast<std::size_t>(i)]);
        }
        Rational bracket = Rational(falling(j - n, k)) - (1 + Rational(k) / n) * D0;
        T cj;
        if (sgn(bracket) == 0) {
            if (!maybe_zero(K))
                throw Error(ErrorKind::InconsistentResonance,
                            "nonzero known term at the resonant index " + std::to_string(j));
            if constexpr (std::is_same_v<T, NPoly>) {
                cj = NPoly::x();
            } else {
                // Pin b = c_j from the z^0 coefficient of Phi_k(y) - s(y) = c.
                std::vector<Number> partial(c.begin(), c.begin() + j + 1);
                partial[static_cast<std::size_t>(j)] = Number();
                Laurent<Number> phi = bracket_phi(k, y_laurent(partial, n));
                Laurent<Number> s = s_series(d, c0, g, n, k, static_cast<std::size_t>(j + 1));
                Number kpin = phi.at(0) - s.at(0);
                cj = (kpin - *mode.c) / pinning_coefficient(k, n, c0);
            }
        } else {
            cj = K * lift<T>(Number(1) / num(bracket));
        }
        c[static_cast<std::size_t>(j)] = cj;
        g[static_cast<std::size_t>(j)] = cj * lift<T>(inv_c0);
        f[0][static_cast<std::size_t>(j)] += g[static_cast<std::size_t>(j)] * lift<T>(num(d.alpha[0]));
    }
    return c;
}

bool same_series(const LaurentSeries& a, const LaurentSeries& b)
{
    if (a.n != b.n || a.coeffs.size() != b.coeffs.size())
        return false;
    for (std::size_t j = 0; j < a.coeffs.size(); ++j)
        if (!(a.coeffs[j] - b.coeffs[j]).maybe_zero())
            return false;
    for (std::size_t j = 0; j < a.param_coeffs.size() && j < b.param_coeffs.size(); ++j)
        if (!maybe_zero(a.param_coeffs[j] - b.param_coeffs[j]))
            return false;
    return true;
}

} // namespace

Laurent<Number> LaurentSeries::as_laurent() const
{
    return y_laurent(coeffs, n);
}

algebra::Rational pinning_sum(int k, int n)
{
    if (k < 1 || n < 1)
        throw Error(ErrorKind::PreconditionViolation, "pinning sum needs k >= 1 and n >= 1");
    Rational sum;
    for (int m = 0; m < k; ++m)
        sum += Rational(algebra::factorial(n + m) * algebra::factorial(n + k)) /
               Rational(algebra::factorial(n + m + 1) * algebra::factorial(n - 1));
    return sum;
}

Number pinning_coefficient(int k, int n, const Number& c0)
{
    if (k % 2 != 0)
        throw Error(ErrorKind::PreconditionViolation, "pinning coefficient needs even k");
    if (c0.is_zero())
        throw Error(ErrorKind::PreconditionViolation, "pinning coefficient needs c0 != 0");
    return c0 * num(pinning_sum(k, n));
}

algebra::Rational recurrence_bracket(int k, int n, long j)
{
    Rational D0 = Rational(d0(k, n));
    return Rational(falling(j - n, k)) - (1 + Rational(k) / n) * D0;
}

std::vector<LeadingRoot> leading_roots(int k, int n, const PuiseuxBranch& branch, mpfr_prec_t prec)
{
    if (k < 1 || n < 1)
        throw Error(ErrorKind::PreconditionViolation, "leading coefficients need k >= 1 and n >= 1");
    if (branch.kappa != 1 + Rational(k) / n)
        throw Error(ErrorKind::PreconditionViolation, "branch kappa is not 1 + k/n for this n");
    if (n % branch.m != 0)
        throw Error(ErrorKind::PreconditionViolation, "ramification m = " + std::to_string(branch.m) +
                                                          " does not divide n = " + std::to_string(n) +
                                                          ": exponents would not be integers");
    int e = branch.m * k / n;
    Number target = Number(GaussianRational(Rational(d0(k, n)))) / branch.lead();
    std::vector<Number> rhos;
    if (target.is_exact()) {
        QPoly f = QPoly::monomial(GaussianRational(1), static_cast<std::size_t>(e)) - QPoly(target.exact());
        for (auto& r : algebra::distinct_roots(f, prec))
            rhos.push_back(r.exact ? Number(*r.exact) : Number(r.value));
    } else {
        BigComplex base = target.numeric().nth_root(static_cast<unsigned long>(e));
        for (int j = 0; j < e; ++j)
            rhos.emplace_back(base * BigComplex::unit_root(static_cast<unsigned long>(e), static_cast<unsigned long>(j),
                                                           base.precision()));
        std::sort(rhos.begin(), rhos.end(), [](const Number& a, const Number& b) {
            return algebra::root_order_less(a.to_complex(), b.to_complex());
        });
    }
    std::vector<LeadingRoot> out;
    for (auto& r : rhos)
        out.push_back({r, r.pow(branch.m)});
    if (out.empty())
        throw Error(ErrorKind::NoRoots, "no nonzero leading coefficient");
    return out;
}

std::vector<Number> leading_coefficients(int k, int n, const PuiseuxBranch& branch, mpfr_prec_t prec)
{
    std::vector<Number> out;
    for (const auto& r : leading_roots(k, n, branch, prec)) {
        bool dup = std::any_of(out.begin(), out.end(), [&](const Number& c) { return (c - r.c0).maybe_zero(); });
        if (!dup)
            out.push_back(r.c0);
    }
    std::sort(out.begin(), out.end(), [](const Number& a, const Number& b) {
        return algebra::root_order_less(a.to_complex(), b.to_complex());
    });
    return out;
}

int required_depth(const PuiseuxBranch& branch, int n, int N)
{
    int np = std::max(1, n / branch.m);
    return N / np + 1;
}

std::vector<LaurentSeries> enumerate_series(const EquationSpec& spec, const PuiseuxBranch& branch, int n,
                                            const CMode& mode, int N, SeriesDiagnostics* diag, mpfr_prec_t prec)
{
    int k = spec.k;
    if (N < 2 * n + k)
        throw Error(ErrorKind::PreconditionViolation,
                    "truncation N = " + std::to_string(N) + " is below 2n + k = " + std::to_string(2 * n + k));
    if (!branch.terminating && static_cast<int>(branch.coeffs.size()) < required_depth(branch, n, N))
        throw Error(ErrorKind::DepthTooSmall, "branch has " + std::to_string(branch.coeffs.size()) +
                                                  " terms; " + std::to_string(required_depth(branch, n, N)) +
                                                  " needed");
    bool even = k % 2 == 0;
    std::vector<LeadingRoot> roots = leading_roots(k, n, branch, prec);
    std::vector<LaurentSeries> out;
    for (std::size_t r = 0; r < roots.size(); ++r) {
        LaurentSeries s;
        s.n = n;
        s.k = k;
        s.N = N;
        s.branch_id = branch.id;
        s.root_index = static_cast<int>(r);
        s.rho = roots[r].rho;
        try {
            if (even && mode.free()) {
                s.param_coeffs = run_recurrence<NPoly>(branch, k, n, roots[r].rho, roots[r].c0, N, mode);
                for (const auto& pc : s.param_coeffs)
                    s.coeffs.push_back(pc[0]);
                s.resonance = Resonance::Free;
            } else {
                s.coeffs = run_recurrence<Number>(branch, k, n, roots[r].rho, roots[r].c0, N,
                                                  even ? mode : CMode::fixed(Number()));
                if (even) {
                    s.resonance = Resonance::Pinned;
                    s.c = mode.c;
                }
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InconsistentResonance)
                throw;
            if (diag)
                diag->notes.push_back("branch " + std::to_string(branch.id) + ", n = " + std::to_string(n) +
                                      ", root " + std::to_string(r) + ": " + e.what());
            continue;
        }
        bool dup = std::any_of(out.begin(), out.end(), [&](const LaurentSeries& o) { return same_series(o, s); });
        if (!dup)
            out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(), [](const LaurentSeries& a, const LaurentSeries& b) {
        return algebra::root_order_less(a.coeffs[0].to_complex(), b.coeffs[0].to_complex());
    });
    return out;
}

int verify_series(const EquationSpec& spec, const LaurentSeries& series)
{
    int n = series.n;
    int k = spec.k;
    int N = static_cast<int>(series.coeffs.size()) - 1;
    Laurent<Number> y = series.as_laurent();
    Laurent<Number> p = derivative(y, k);
    int da = spec.P.degree_x();
    int db = spec.P.degree_y();
    std::vector<Laurent<Number>> yp(static_cast<std::size_t>(db + 1)), pp(static_cast<std::size_t>(da + 1));
    long span = static_cast<long>(da) * (n + k) + static_cast<long>(db) * n + N + 2;
    Laurent<Number> one;
    one.coeffs.assign(static_cast<std::size_t>(span), Number());
    one.coeffs[0] = Number(1);
    yp[0] = one;
    pp[0] = one;
    for (int b = 1; b <= db; ++b)
        yp[static_cast<std::size_t>(b)] = b == 1 ? y : yp[static_cast<std::size_t>(b - 1)] * y;
    for (int a = 1; a <= da; ++a)
        pp[static_cast<std::size_t>(a)] = a == 1 ? p : pp[static_cast<std::size_t>(a - 1)] * p;
    long emin = 0;
    for (const auto& [key, c] : spec.P.terms())
        emin = std::min(emin, -static_cast<long>(key.first) * (n + k) - static_cast<long>(key.second) * n);
    std::vector<Number> residual(static_cast<std::size_t>(N + 1));
    for (const auto& [key, c] : spec.P.terms()) {
        Laurent<Number> term = pp[static_cast<std::size_t>(key.first)] * yp[static_cast<std::size_t>(key.second)];
        Number cc(c);
        for (int t = 0; t <= N; ++t) {
            long e = emin + t;
            if (e < term.val)
                continue;
            residual[static_cast<std::size_t>(t)] += cc * term.at(e);
        }
    }
    for (int t = 0; t <= N; ++t)
        if (!residual[static_cast<std::size_t>(t)].maybe_zero())
            return t;
    return N + 1;
}

Laurent<Number> antiderivative_series(const PuiseuxBranch& branch, const LaurentSeries& series, long up_to_exponent)
{
    int n = series.n;
    int k = series.k;
    long len = up_to_exponent + 2L * n + k + 1;
    if (len < 1)
        return {};
    len = std::min<long>(len, static_cast<long>(series.coeffs.size()));
    int np = n / branch.m;
    BranchData d = branch_data(branch, n, series.rho, static_cast<int>(len - 1) / np);
    std::vector<Number> g(static_cast<std::size_t>(len));
    Number inv_c0 = Number(1) / series.coeffs[0];
    for (long j = 1; j < len; ++j)
        g[static_cast<std::size_t>(j)] = series.coeffs[static_cast<std::size_t>(j)] * inv_c0;
    return s_series(d, series.coeffs[0], g, n, k, static_cast<std::size_t>(len));
}

} // namespace bbsolve
