#include <bbsolve/classify.hpp>
#include <bbsolve/algebra/squarefree.hpp>

#include <bbsolve/algebra/linsolve.hpp>
#include <bbsolve/algebra/ratfunc.hpp>
#include <bbsolve/algebra/roots.hpp>

#include <sstream>

namespace bbsolve {

using algebra::GaussianRational;
using algebra::QPoly;
using algebra::RatFunc;

algebra::Integer stirling2(int k, int j)
{
    if (k < 0 || j < 0 || j > k)
        return 0;
    std::vector<algebra::Integer> row(static_cast<std::size_t>(k + 1), 0);
    row[0] = 1;
    for (int n = 1; n <= k; ++n) {
        for (int t = n; t >= 1; --t)
            row[static_cast<std::size_t>(t)] = t * row[static_cast<std::size_t>(t)] + row[static_cast<std::size_t>(t - 1)];
        row[0] = 0;
    }
    return row[static_cast<std::size_t>(j)];
}

QPoly theta_power(const QPoly& f, int k)
{
    QPoly acc;
    QPoly d = f;
    for (int j = 0; j <= k; ++j) {
        if (j > 0)
            d = d.derivative();
        algebra::Integer s = stirling2(k, j);
        if (s != 0)
            acc += QPoly::monomial(GaussianRational(Rational(s)), static_cast<std::size_t>(j)) * d;
    }
    return acc;
}

namespace {

// Theta^k of a rational function via the Stirling expansion.
RatFunc theta_power(const RatFunc& f, int k)
{
    RatFunc acc;
    RatFunc d = f;
    for (int j = 0; j <= k; ++j) {
        if (j > 0)
            d = d.derivative();
        algebra::Integer s = stirling2(k, j);
        if (s != 0)
            acc += RatFunc(QPoly::monomial(GaussianRational(Rational(s)), static_cast<std::size_t>(j))) * d;
    }
    return acc;
}

using Series = std::vector<GaussianRational>;

Series series_mul(const Series& a, const Series& b)
{
    std::size_t len = std::min(a.size(), b.size());
    Series r(len);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; i + j < len; ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// Coefficient `idx` of P(lambda Theta^k R, R) for the truncated series R.
GaussianRational residual_coeff(const EquationSpec& spec, const GaussianRational& lambda, const Series& r, std::size_t idx)
{
    std::size_t len = idx + 1;
    Series y(r.begin(), r.begin() + static_cast<long>(len));
    Series p(len);
    for (std::size_t l = 0; l < len; ++l)
        p[l] = lambda * y[l] * GaussianRational(static_cast<long>(l)).pow(spec.k);
    int dx = spec.P.degree_x();
    int dy = spec.P.degree_y();
    std::vector<Series> pp(static_cast<std::size_t>(dx + 1)), py(static_cast<std::size_t>(dy + 1));
    Series one(len);
    one[0] = GaussianRational(1);
    pp[0] = py[0] = one;
    for (int i = 1; i <= dx; ++i)
        pp[static_cast<std::size_t>(i)] = series_mul(pp[static_cast<std::size_t>(i - 1)], p);
    for (int j = 1; j <= dy; ++j)
        py[static_cast<std::size_t>(j)] = series_mul(py[static_cast<std::size_t>(j - 1)], y);
    GaussianRational acc;
    for (const auto& [key, a] : spec.P.terms()) {
        const Series& s1 = pp[static_cast<std::size_t>(key.first)];
        const Series& s2 = py[static_cast<std::size_t>(key.second)];
        GaussianRational c;
        for (std::size_t t = 0; t <= idx; ++t)
            c += s1[t] * s2[idx - t];
        acc += a * c;
    }
    return acc;
}

std::optional<std::pair<QPoly, QPoly>> pade(const Series& r, int L, int M)
{
    std::vector<std::vector<GaussianRational>> a;
    std::vector<GaussianRational> b;
    for (int l = L + 1; l <= L + M; ++l) {
        std::vector<GaussianRational> row(static_cast<std::size_t>(M));
        for (int t = 1; t <= M; ++t)
            if (l - t >= 0)
                row[static_cast<std::size_t>(t - 1)] = r[static_cast<std::size_t>(l - t)];
        a.push_back(std::move(row));
        b.push_back(-r[static_cast<std::size_t>(l)]);
    }
    std::vector<GaussianRational> q(1, GaussianRational(1));
    if (M > 0) {
        auto sol = algebra::solve_linear(a, b, static_cast<std::size_t>(M));
        if (!sol)
            return std::nullopt;
        q.insert(q.end(), sol->begin(), sol->end());
    }
    std::vector<GaussianRational> num(static_cast<std::size_t>(L + 1));
    for (int i = 0; i <= L; ++i)
        for (int t = 0; t <= std::min(i, M); ++t)
            num[static_cast<std::size_t>(i)] += q[static_cast<std::size_t>(t)] * r[static_cast<std::size_t>(i - t)];
    return std::make_pair(QPoly(std::move(num)), QPoly(std::move(q)));
}

// num/den reproduces every known term of r.
bool reproduces(const Series& r, const QPoly& num, const QPoly& den)
{
    Series q(r.size());
    const GaussianRational& d0 = den.coeffs().front();
    for (std::size_t i = 0; i < r.size(); ++i) {
        GaussianRational acc = num[i];
        for (std::size_t j = 1; j <= i && j < den.coeffs().size(); ++j)
            acc -= den.coeffs()[j] * q[i - j];
        q[i] = acc / d0;
        if (!(q[i] == r[i]))
            return false;
    }
    return true;
}

} // namespace

QPoly exponential_residual(const EquationSpec& spec, const GaussianRational& lambda, const QPoly& num, const QPoly& den)
{
    RatFunc y(num, den);
    RatFunc p = RatFunc(QPoly(lambda)) * theta_power(y, spec.k);
    RatFunc acc;
    for (const auto& [key, a] : spec.P.terms())
        acc += RatFunc(QPoly(a)) * p.pow(key.first) * y.pow(key.second);
    return acc.num();
}

std::string ExponentialSolution::describe() const
{
    RatFunc r(num, den);
    std::ostringstream os;
    os << "y = R(exp(a*z)), R(w) = ";
    if (r.is_polynomial())
        os << to_string(r.num(), "w");
    else
        os << "(" << to_string(r.num(), "w") << ")/(" << to_string(r.den(), "w") << ")";
    os << ", a^" << a_values.size() << " = " << lambda.to_string();
    return os.str();
}

ExponentialSearch match_exponential(const EquationSpec& spec, int degree_cap, mpfr_prec_t prec)
{
    ExponentialSearch out;
    if (degree_cap < 1)
        degree_cap = 1;
    QPoly f0 = spec.P.coeff_x(0);
    QPoly f1 = spec.P.coeff_x(1);
    if (f0.is_zero()) {
        out.notes.push_back("every constant is an equilibrium; exponential search skipped");
        return out;
    }
    auto equilibria = algebra::gaussian_rational_roots(f0, prec);
    if (static_cast<int>(equilibria.size()) < std::max(algebra::squarefree_part(f0).degree(), 0))
        out.notes.push_back("equilibria outside Q(i) are not searched");
    QPoly df0 = f0.derivative();
    for (const auto& y0 : equilibria) {
        GaussianRational pp = f1(y0);
        GaussianRational pq = df0(y0);
        if (pp.is_zero() || pq.is_zero()) {
            out.notes.push_back("equilibrium y = " + y0.to_string() + " is degenerate; skipped");
            continue;
        }
        GaussianRational lambda = -pq / pp;
        // Four terms beyond what the largest approximant consumes screen candidates cheaply.
        std::size_t terms = static_cast<std::size_t>(2 * degree_cap + 5);
        Series r(terms);
        r[0] = y0;
        r[1] = GaussianRational(1);
        for (std::size_t i = 2; i < terms; ++i) {
            GaussianRational lin = pq * (GaussianRational(1) - GaussianRational(static_cast<long>(i)).pow(spec.k));
            r[i] = -residual_coeff(spec, lambda, r, i) / lin;
        }
        std::optional<ExponentialSolution> found;
        for (int deg = 1; deg <= degree_cap && !found; ++deg) {
            for (int M = 0; M <= deg && !found; ++M) {
                for (int L = 0; L <= deg && !found; ++L) {
                    if (std::max(L, M) != deg)
                        continue;
                    auto nd = pade(r, L, M);
                    if (!nd || nd->second(GaussianRational(0)).is_zero() || !reproduces(r, nd->first, nd->second))
                        continue;
                    if (!exponential_residual(spec, lambda, nd->first, nd->second).is_zero())
                        continue;
                    RatFunc reduced(nd->first, nd->second);
                    ExponentialSolution s;
                    s.y0 = y0;
                    s.lambda = lambda;
                    s.num = reduced.num();
                    s.den = reduced.den();
                    s.verified = true;
                    QPoly apoly = QPoly::monomial(GaussianRational(1), static_cast<std::size_t>(spec.k)) - QPoly(lambda);
                    for (const auto& root : algebra::distinct_roots(apoly, prec))
                        s.a_values.push_back(root.exact ? Number(*root.exact) : Number(root.value));
                    found = std::move(s);
                }
            }
        }
        if (found)
            out.matches.push_back(std::move(*found));
        else
            out.notes.push_back("CapExceeded: no R of degree <= " + std::to_string(degree_cap) +
                                " through equilibrium y = " + y0.to_string());
    }
    return out;
}

namespace {

using CSeries = std::vector<cplx>;

CSeries cmul(const CSeries& a, const CSeries& b)
{
    CSeries r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

CSeries compose(const QPoly& poly, const CSeries& w)
{
    CSeries acc(w.size());
    for (int i = poly.degree(); i >= 0; --i) {
        acc = cmul(acc, w);
        acc[0] += algebra::to_complex(poly.coeffs()[static_cast<std::size_t>(i)]);
    }
    return acc;
}

} // namespace

bool exponential_matches_germ(const ExponentialSolution& e, const LaurentSeries& germ)
{
    if (e.den.degree() < 1 || germ.coeffs.empty())
        return false;
    const std::size_t terms = 8;
    const std::size_t len = terms + static_cast<std::size_t>(germ.n) + 2;
    auto poles = algebra::roots_univariate(e.den, 128);
    for (const auto& a_num : e.a_values) {
        cplx a = a_num.to_complex();
        for (const auto& wp_big : poles) {
            cplx wp = wp_big.to_complex();
            CSeries w(len);
            cplx term = wp;
            for (std::size_t l = 0; l < len; ++l) {
                w[l] = term;
                term *= a / static_cast<double>(l + 1);
            }
            CSeries num = compose(e.num, w);
            CSeries den = compose(e.den, w);
            double scale = 0.0;
            for (auto c : den)
                scale = std::max(scale, std::abs(c));
            std::size_t s = 0;
            while (s < len && std::abs(den[s]) < 1e-10 * scale)
                ++s;
            if (static_cast<int>(s) != germ.n)
                continue;
            // y = num / (t^s * rest)
            CSeries rest(den.begin() + static_cast<long>(s), den.end());
            rest.resize(len - s);
            CSeries q(rest.size());
            for (std::size_t i = 0; i < rest.size(); ++i) {
                cplx acc = num[i];
                for (std::size_t j = 1; j <= i; ++j)
                    acc -= rest[j] * q[i - j];
                q[i] = acc / rest[0];
            }
            bool ok = true;
            std::size_t upto = std::min(terms, germ.coeffs.size());
            for (std::size_t i = 0; i < upto && ok; ++i) {
                cplx g = germ.coeffs[i].to_complex();
                if (std::abs(g - q[i]) > 1e-8 * (1.0 + std::abs(g)))
                    ok = false;
            }
            if (ok)
                return true;
        }
    }
    return false;
}

} // namespace bbsolve
