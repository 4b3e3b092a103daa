#include <bbsolve/algebra/roots.hpp>
#include <bbsolve/algebra/squarefree.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bbsolve::algebra {

namespace {

BigComplex horner(const std::vector<BigComplex>& coeffs, const BigComplex& z)
{
    BigComplex acc(z.precision());
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * z + coeffs[i];
    return acc;
}

// Value and derivative without error tracking.
std::pair<BigComplex, BigComplex> horner_with_derivative(const std::vector<BigComplex>& coeffs, const BigComplex& z)
{
    BigComplex p(z.precision()), dp(z.precision());
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        dp = (dp * z + p).center();
        p = (p * z + coeffs[i]).center();
    }
    return {p, dp};
}

std::int64_t order_key(double x)
{
    return std::llround(std::ldexp(x, 32));
}

struct Approximations {
    std::vector<BigComplex> z;
    std::vector<double> radius;
};

// Aberth-Ehrlich iteration on a polynomial of degree >= 1 with nonzero constant term.
std::vector<BigComplex> aberth(const std::vector<BigComplex>& coeffs, mpfr_prec_t wp)
{
    int d = static_cast<int>(coeffs.size()) - 1;
    std::vector<BigComplex> c;
    c.reserve(coeffs.size());
    for (const auto& a : coeffs)
        c.push_back(a.center().with_precision(wp));

    double lead = c.back().abs_upper();
    double bound = 0.0;
    for (int i = 0; i < d; ++i)
        bound = std::max(bound, c[static_cast<std::size_t>(i)].abs_upper() / lead);
    bound = 1.0 + bound;

    std::vector<BigComplex> z;
    z.reserve(static_cast<std::size_t>(d));
    BigFloat two_pi = BigFloat::pi(wp) * BigFloat(2.0, wp);
    for (int j = 0; j < d; ++j) {
        BigFloat theta = two_pi * BigFloat(make_rational(j, d), wp) + BigFloat(0.7, wp);
        BigFloat r(bound * (0.5 + 0.5 / (1.0 + j)), wp);
        z.emplace_back(r * BigFloat::cos(theta), r * BigFloat::sin(theta));
    }

    double tol = std::ldexp(1.0, -static_cast<int>(wp) + 12);
    int max_iter = 400 + 20 * d;
    int stalled = 0;
    double best = INFINITY;
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            auto& zi = z[static_cast<std::size_t>(i)];
            auto [p, dp] = horner_with_derivative(c, zi);
            if (p.abs_upper() == 0.0)
                continue;
            if (dp.abs_upper() == 0.0) {
                zi = (zi + BigComplex(BigFloat(tol * 16.0 * (1.0 + bound), wp), BigFloat(0.0, wp))).center();
                worst = INFINITY;
                continue;
            }
            BigComplex ratio = (p / dp).center();
            BigComplex sum(wp);
            bool collided = false;
            for (int j = 0; j < d; ++j) {
                if (j == i)
                    continue;
                BigComplex diff = (zi - z[static_cast<std::size_t>(j)]).center();
                if (diff.abs_upper() == 0.0) {
                    collided = true;
                    break;
                }
                sum = (sum + (BigComplex(GaussianRational(1), wp).center() / diff)).center();
            }
            if (collided) {
                zi = (zi + BigComplex(BigFloat(tol * 64.0 * (1.0 + bound), wp), BigFloat(tol * 32.0, wp))).center();
                worst = INFINITY;
                continue;
            }
            BigComplex denom = (BigComplex(GaussianRational(1), wp).center() - (ratio * sum).center()).center();
            BigComplex step = denom.abs_upper() == 0.0 ? ratio : (ratio / denom).center();
            zi = (zi - step).center();
            double rel = step.abs_upper() / std::max(1.0, zi.abs_upper());
            worst = std::max(worst, rel);
        }
        if (worst <= tol)
            break;
        if (worst < best * 0.5) {
            best = worst;
            stalled = 0;
        } else if (++stalled > 60) {
            break;
        }
    }
    return z;
}

// Inclusion radii d |W_i| with W_i the Weierstrass corrections, enlarged to cover the
// coefficient errors.
std::vector<double> inclusion_radii(const std::vector<BigComplex>& coeffs, const std::vector<BigComplex>& z)
{
    int d = static_cast<int>(z.size());
    double lead_low = coeffs.back().abs_lower();
    std::vector<double> radius(static_cast<std::size_t>(d), INFINITY);
    if (!(lead_low > 0.0))
        return radius;
    for (int i = 0; i < d; ++i) {
        BigComplex p = horner(coeffs, z[static_cast<std::size_t>(i)]);
        double num = round_up(p.abs_upper() + p.err());
        double den = 1.0;
        bool ok = true;
        for (int j = 0; j < d; ++j) {
            if (j == i)
                continue;
            BigComplex diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            double low = diff.abs_lower();
            if (!(low > 0.0)) {
                ok = false;
                break;
            }
            den *= low * (1.0 - 0x1p-50);
        }
        if (ok && den > 0.0)
            radius[static_cast<std::size_t>(i)] = round_up(static_cast<double>(d) * num / (lead_low * den));
    }
    return radius;
}

std::vector<RootCluster> cluster(const std::vector<BigComplex>& z, const std::vector<double>& radius)
{
    std::size_t d = z.size();
    std::vector<std::size_t> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    std::vector<std::complex<double>> zc(d);
    for (std::size_t i = 0; i < d; ++i)
        zc[i] = z[i].to_complex();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            double dist = std::abs(zc[i] - zc[j]);
            if (dist <= (radius[i] + radius[j]) * (1.0 + 1e-9) + 1e-300 || !std::isfinite(radius[i]) || !std::isfinite(radius[j]))
                parent[find(i)] = find(j);
        }
    std::vector<RootCluster> out;
    std::vector<int> seen(d, -1);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t r = find(i);
        if (seen[r] >= 0)
            continue;
        seen[r] = static_cast<int>(out.size());
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < d; ++j)
            if (find(j) == r)
                members.push_back(j);
        double diam = 0.0;
        for (std::size_t j : members)
            diam += 2.0 * radius[j];
        BigComplex center = z[members.front()];
        if (members.size() > 1) {
            mpfr_prec_t wp = center.precision();
            BigComplex sum(wp);
            for (std::size_t j : members)
                sum = (sum + z[j]).center();
            center = (sum / BigComplex(GaussianRational(static_cast<long>(members.size())), wp)).center();
            double spread = 0.0;
            for (std::size_t j : members)
                spread = std::max(spread, std::abs(zc[j] - center.to_complex()));
            diam += spread * (1.0 + 1e-9);
        } else {
            diam = radius[members.front()];
        }
        center = center.center();
        center.widen(diam);
        out.push_back({center, static_cast<int>(members.size())});
    }
    return out;
}

std::vector<RootCluster> clusters_of(const std::vector<BigComplex>& coeffs, mpfr_prec_t wp)
{
    std::vector<BigComplex> z = aberth(coeffs, wp);
    return cluster(z, inclusion_radii(coeffs, z));
}

std::vector<BigComplex> coefficients_of(const NPoly& poly, mpfr_prec_t wp)
{
    std::vector<BigComplex> c;
    for (const auto& a : poly.coeffs())
        c.push_back(a.to_big(wp).with_precision(wp));
    return c;
}

// Continued fraction convergent with the smallest denominator inside [x - tol, x + tol].
std::optional<Rational> simplest_within(const Rational& x, const Rational& tol)
{
    Rational lo = x - tol, hi = x + tol;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Rational r = x;
    for (int iter = 0; iter < 200; ++iter) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
        Rational conv(h2, k2);
        conv.canonicalize();
        if (conv >= lo && conv <= hi)
            return conv;
        Rational frac = r - Rational(a);
        if (sgn(frac) == 0)
            return std::nullopt;
        r = 1 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    return std::nullopt;
}

std::vector<BigComplex> expand(const std::vector<RootCluster>& clusters)
{
    std::vector<BigComplex> out;
    for (const auto& c : clusters)
        for (int i = 0; i < c.count; ++i)
            out.push_back(c.center);
    std::sort(out.begin(), out.end(), [](const BigComplex& a, const BigComplex& b) { return root_order_less(a, b); });
    return out;
}

} // namespace

bool root_order_less(const std::complex<double>& a, const std::complex<double>& b)
{
    auto ka = std::make_pair(order_key(a.real()), order_key(a.imag()));
    auto kb = std::make_pair(order_key(b.real()), order_key(b.imag()));
    return ka < kb;
}

bool root_order_less(const BigComplex& a, const BigComplex& b)
{
    return root_order_less(a.to_complex(), b.to_complex());
}

std::vector<RootCluster> root_clusters(const NPoly& poly, mpfr_prec_t prec)
{
    if (poly.is_zero())
        throw Error(ErrorKind::DegenerateInput, "root finding on the zero polynomial");
    std::vector<RootCluster> out;
    int v = poly.valuation();
    if (v > 0)
        out.push_back({BigComplex(prec), v});
    std::vector<Number> rest(poly.coeffs().begin() + v, poly.coeffs().end());
    NPoly q(std::move(rest));
    if (q.degree() >= 1) {
        mpfr_prec_t wp = prec + 32;
        std::vector<BigComplex> coeffs = coefficients_of(q, wp);
        if (q.degree() == 1) {
            BigComplex r = -(coeffs[0] / coeffs[1]);
            out.push_back({r, 1});
        } else {
            auto cl = clusters_of(coeffs, wp);
            out.insert(out.end(), cl.begin(), cl.end());
        }
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        return root_order_less(a.center, b.center);
    });
    return out;
}

std::vector<BigComplex> roots_univariate(const NPoly& poly, mpfr_prec_t prec)
{
    bool exact = std::all_of(poly.coeffs().begin(), poly.coeffs().end(), [](const Number& c) { return c.is_exact(); });
    if (exact)
        return roots_univariate(poly.map([](const Number& c) { return c.exact(); }), prec);
    return expand(root_clusters(poly, prec));
}

std::vector<Root> distinct_roots(const QPoly& poly, mpfr_prec_t prec)
{
    if (poly.is_zero())
        throw Error(ErrorKind::DegenerateInput, "root finding on the zero polynomial");
    std::vector<Root> out;
    std::vector<QPoly> factors = squarefree_decomposition(poly);
    double target = std::ldexp(1.0, -static_cast<int>(prec / 2));
    for (std::size_t mult = 1; mult <= factors.size(); ++mult) {
        const QPoly& f = factors[mult - 1];
        if (f.degree() < 1)
            continue;
        QPoly g = f;
        if (g[0].is_zero()) {
            Root r{BigComplex(prec), static_cast<int>(mult), GaussianRational()};
            out.push_back(r);
            g = divmod(g, QPoly::x()).first;
        }
        if (g.degree() < 1)
            continue;
        std::vector<RootCluster> cl;
        for (mpfr_prec_t wp = prec + 32;; wp *= 2) {
            if (g.degree() == 1) {
                GaussianRational r = -g[0] / g[1];
                cl = {{BigComplex(r, wp), 1}};
            } else {
                cl = clusters_of(coefficients_of(to_number_poly(g), wp), wp);
            }
            bool separated = std::all_of(cl.begin(), cl.end(), [&](const RootCluster& c) {
                return c.count == 1 && c.center.err() <= target;
            });
            if (separated || wp > 16 * prec)
                break;
        }
        for (auto& c : cl) {
            Root r{c.center, static_cast<int>(mult) * c.count, recognize_root(g, c.center)};
            if (r.exact)
                r.value = BigComplex(*r.exact, prec);
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return root_order_less(a.value, b.value); });
    return out;
}

std::vector<BigComplex> roots_univariate(const QPoly& poly, mpfr_prec_t prec)
{
    std::vector<BigComplex> out;
    for (const auto& r : distinct_roots(poly, prec))
        for (int i = 0; i < r.multiplicity; ++i)
            out.push_back(r.value);
    return out;
}

std::vector<GaussianRational> gaussian_rational_roots(const QPoly& poly, mpfr_prec_t prec)
{
    std::vector<GaussianRational> out;
    for (const auto& r : distinct_roots(poly, prec))
        if (r.exact)
            out.push_back(*r.exact);
    return out;
}

std::optional<GaussianRational> recognize_root(const QPoly& poly, const BigComplex& approx)
{
    double tol_d = std::max(approx.err(), std::ldexp(1.0, -static_cast<int>(approx.precision() / 2))) * 4.0;
    Rational tol(tol_d);
    auto re = simplest_within(approx.real().to_rational(), tol);
    auto im = simplest_within(approx.imag().to_rational(), tol);
    if (!re || !im)
        return std::nullopt;
    GaussianRational candidate(*re, *im);
    if (poly(candidate).is_zero())
        return candidate;
    return std::nullopt;
}

} // namespace bbsolve::algebra
