#include <bbsolve/curve.hpp>
#include <bbsolve/algebra/powerseries.hpp>
#include <bbsolve/algebra/roots.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace bbsolve {

using algebra::BigComplex;
using algebra::BiPoly;
using algebra::GaussianRational;
using algebra::QBiPoly;
using algebra::QPoly;
using algebra::RatFunc;

namespace {

using Point = std::pair<int, int>;

long cross(const Point& o, const Point& a, const Point& b)
{
    return static_cast<long>(a.first - o.first) * (b.second - o.second) -
           static_cast<long>(a.second - o.second) * (b.first - o.first);
}

// Hull of points given one extreme second coordinate per first coordinate; `upper` keeps
// clockwise turns.
std::vector<Point> hull(std::vector<Point> pts, bool upper)
{
    std::sort(pts.begin(), pts.end());
    std::vector<Point> h;
    for (const auto& p : pts) {
        while (h.size() >= 2) {
            long c = cross(h[h.size() - 2], h.back(), p);
            if ((upper && c >= 0) || (!upper && c <= 0))
                h.pop_back();
            else
                break;
        }
        h.push_back(p);
    }
    return h;
}

using NBiPoly = BiPoly<Number>;

struct Partial {
    int ram = 1;
    int offset = 0;
    std::vector<Number> series;
    bool terminating = false;
};

Number binomial(int n, int k)
{
    algebra::Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return GaussianRational(algebra::Rational(r));
}

// Regular solve: G(0,0) = 0, G_X(0,0) != 0. Returns X(s) with X(0) = 0, `need` coefficients.
std::vector<Number> solve_regular(const NBiPoly& G, std::size_t need)
{
    int dx = G.degree_x();
    std::vector<std::vector<Number>> g(static_cast<std::size_t>(dx + 1));
    for (const auto& [key, c] : G.terms()) {
        auto& row = g[static_cast<std::size_t>(key.first)];
        if (row.size() <= static_cast<std::size_t>(key.second))
            row.resize(static_cast<std::size_t>(key.second) + 1);
        row[static_cast<std::size_t>(key.second)] = c;
    }
    auto eval = [&](const std::vector<Number>& x, std::size_t len, bool derivative) {
        std::vector<Number> acc(len);
        for (int i = dx; i >= (derivative ? 1 : 0); --i) {
            acc = algebra::series_mul(acc, x, len);
            std::vector<Number> coeff = algebra::series_truncate(g[static_cast<std::size_t>(i)], len);
            if (derivative)
                for (auto& c : coeff)
                    c *= Number(static_cast<long>(i));
            for (std::size_t j = 0; j < len; ++j)
                acc[j] += coeff[j];
        }
        return acc;
    };
    std::vector<Number> x(1);
    std::size_t len = 1;
    bool final_pass = false;
    while (true) {
        std::vector<Number> gv = eval(x, len, false);
        std::vector<Number> gx = eval(x, len, true);
        if (gx[0].maybe_zero())
            throw Error(ErrorKind::PrecisionExhausted, "branch separation failed: singular Newton step");
        std::vector<Number> corr = algebra::series_div(gv, gx, len);
        for (std::size_t j = 0; j < len; ++j)
            x[j] -= corr[j];
        x[0] = Number();
        if (final_pass)
            break;
        if (len >= need) {
            final_pass = true;
            continue;
        }
        len = std::min(need, 2 * len);
        x.resize(len);
    }
    x.resize(need);
    return x;
}

Number principal_root(const Number& b, int n, mpfr_prec_t prec)
{
    if (n == 1)
        return b;
    if (b.is_exact()) {
        BigComplex approx = b.to_big(prec).nth_root(static_cast<unsigned long>(n));
        QPoly f = QPoly::monomial(GaussianRational(1), static_cast<std::size_t>(n)) - QPoly(b.exact());
        if (auto r = algebra::recognize_root(f, approx))
            return *r;
        return approx;
    }
    return b.numeric().nth_root(static_cast<unsigned long>(n));
}

struct CharRoot {
    Number value;
    int multiplicity;
};

std::vector<CharRoot> characteristic_roots(const algebra::NPoly& psi, mpfr_prec_t prec)
{
    std::vector<CharRoot> out;
    bool exact = std::all_of(psi.coeffs().begin(), psi.coeffs().end(), [](const Number& c) { return c.is_exact(); });
    if (exact) {
        QPoly q = psi.map([](const Number& c) { return c.exact(); });
        for (auto& r : algebra::distinct_roots(q, prec)) {
            if (r.exact && r.exact->is_zero())
                continue;
            out.push_back({r.exact ? Number(*r.exact) : Number(r.value), r.multiplicity});
        }
    } else {
        for (auto& c : algebra::root_clusters(psi, prec)) {
            if (c.center.maybe_zero())
                continue;
            out.push_back({Number(c.center), c.count});
        }
    }
    return out;
}

std::vector<Partial> expand(const NBiPoly& G, std::size_t need, bool first_level, mpfr_prec_t prec, int level)
{
    if (level > 48)
        throw Error(ErrorKind::PrecisionExhausted, "Newton-Puiseux recursion too deep; raise --precision");
    std::vector<Partial> out;
    std::map<int, int> low;
    for (const auto& [key, c] : G.terms()) {
        auto it = low.find(key.first);
        if (it == low.end() || key.second < it->second)
            low[key.first] = key.second;
    }
    if (low.empty())
        return out;
    int i_min = low.begin()->first;
    if (!first_level && i_min > 0) {
        // X = 0 solves G exactly.
        Partial p;
        p.series = std::vector<Number>(need);
        p.terminating = true;
        out.push_back(p);
    }
    std::vector<Point> pts(low.begin(), low.end());
    std::vector<Point> h = hull(pts, false);
    for (std::size_t e = 0; e + 1 < h.size(); ++e) {
        Point from = h[e], to = h[e + 1];
        int di = to.first - from.first;
        int dj = to.second - from.second;
        // X ~ s^(a/b) with a/b = -dj/di.
        int g = std::gcd(di, std::abs(dj));
        int a = -dj / g;
        int b = di / g;
        if (!first_level && a <= 0)
            continue;
        long mu = static_cast<long>(a) * from.first + static_cast<long>(b) * from.second;
        std::vector<Number> psi_c(static_cast<std::size_t>(di / b + 1));
        for (const auto& [key, c] : G.terms())
            if (static_cast<long>(a) * key.first + static_cast<long>(b) * key.second == mu)
                psi_c[static_cast<std::size_t>((key.first - from.first) / b)] += c;
        for (const auto& root : characteristic_roots(algebra::NPoly(psi_c), prec)) {
            Number A = principal_root(root.value, b, prec);
            int maxdeg = G.degree_x();
            std::vector<Number> apow(static_cast<std::size_t>(maxdeg + 1));
            apow[0] = Number(1);
            for (int i = 1; i <= maxdeg; ++i)
                apow[static_cast<std::size_t>(i)] = apow[static_cast<std::size_t>(i - 1)] * A;
            NBiPoly G1;
            for (const auto& [key, c] : G.terms()) {
                long shift = static_cast<long>(a) * key.first + static_cast<long>(b) * key.second - mu;
                for (int l = 0; l <= key.first; ++l)
                    G1.add_term(l, static_cast<int>(shift),
                                c * binomial(key.first, l) * apow[static_cast<std::size_t>(key.first - l)]);
            }
            // Drop terms indistinguishable from zero; the low X-orders of the s^0 row vanish by
            // construction.
            NBiPoly cleaned;
            for (const auto& [key, c] : G1.terms()) {
                if (key.second == 0 && key.first < root.multiplicity)
                    continue;
                if (!c.maybe_zero())
                    cleaned.add_term(key.first, key.second, c);
            }
            if (root.multiplicity == 1) {
                if (cleaned.coeff(1, 0).maybe_zero())
                    throw Error(ErrorKind::PrecisionExhausted, "branch separation failed; raise --precision");
                Partial p;
                p.ram = b;
                p.offset = a;
                p.series = solve_regular(cleaned, need);
                p.series[0] = A;
                out.push_back(std::move(p));
                continue;
            }
            for (auto& child : expand(cleaned, need, false, prec, level + 1)) {
                Partial p;
                p.ram = b * child.ram;
                p.offset = a * child.ram;
                p.series.assign(need, Number());
                p.series[0] = A;
                for (std::size_t idx = 0; idx < child.series.size(); ++idx) {
                    std::size_t pos = static_cast<std::size_t>(child.offset) + idx;
                    if (pos < need)
                        p.series[pos] = child.series[idx];
                }
                p.terminating = child.terminating;
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

std::string place_name(const algebra::Root& r)
{
    if (r.exact)
        return "q = " + r.exact->to_string();
    return "q = " + r.value.to_string(15);
}

} // namespace

NewtonPolygon newton_polygon(const QBiPoly& P)
{
    if (P.degree_x() < 1)
        throw Error(ErrorKind::DegenerateInput, "P is constant in p");
    if (P.degree_y() < 1)
        throw Error(ErrorKind::DegenerateInput, "P is constant in q");
    NewtonPolygon poly;
    std::map<int, int> high;
    for (const auto& [key, c] : P.terms()) {
        poly.support.push_back(key);
        auto it = high.find(key.first);
        if (it == high.end() || key.second > it->second)
            high[key.first] = key.second;
    }
    std::vector<Point> h = hull(std::vector<Point>(high.begin(), high.end()), true);
    for (std::size_t e = 0; e + 1 < h.size(); ++e) {
        NewtonEdge edge;
        edge.from = h[e];
        edge.to = h[e + 1];
        edge.slope = algebra::make_rational(h[e + 1].second - h[e].second, h[e + 1].first - h[e].first);
        edge.kappa = -edge.slope;
        poly.upper_edges.push_back(edge);
    }
    return poly;
}

Number PuiseuxBranch::coeff(std::size_t i) const
{
    if (i < coeffs.size())
        return coeffs[i];
    if (terminating)
        return Number();
    throw Error(ErrorKind::InsufficientDepth,
                "branch expansion has " + std::to_string(coeffs.size()) + " terms; index " + std::to_string(i) +
                    " requested");
}

Rational PuiseuxBranch::exponent(std::size_t i) const
{
    return kappa - algebra::make_rational(static_cast<long>(i), m);
}

std::vector<PuiseuxBranch> branches_at_infinity(const QBiPoly& P, int depth, const std::optional<RatFunc>& resolved,
                                                mpfr_prec_t prec)
{
    if (depth < 1)
        throw Error(ErrorKind::PreconditionViolation, "depth must be positive");
    std::vector<PuiseuxBranch> out;
    std::size_t need = static_cast<std::size_t>(depth);
    if (resolved) {
        const RatFunc& R = *resolved;
        if (R.is_zero())
            throw Error(ErrorKind::DegenerateInput, "right-hand side is identically zero");
        int dn = R.num().degree();
        int dd = R.den().degree();
        // R(1/t) t^(dn - dd) = rev(N) / rev(D) as a power series in t.
        std::vector<GaussianRational> rn(R.num().coeffs().rbegin(), R.num().coeffs().rend());
        std::vector<GaussianRational> rd(R.den().coeffs().rbegin(), R.den().coeffs().rend());
        std::vector<GaussianRational> s = algebra::series_div(rn, rd, need);
        PuiseuxBranch br;
        br.m = 1;
        br.kappa = Rational(dn - dd);
        for (auto& c : s)
            br.coeffs.emplace_back(c);
        br.terminating = R.is_polynomial() && static_cast<int>(need) > dn;
        br.exact = true;
        out.push_back(std::move(br));
        return out;
    }

    int dq = P.degree_y();
    NBiPoly G;
    for (const auto& [key, c] : P.terms())
        G.add_term(key.first, dq - key.second, Number(c));
    std::vector<Partial> parts = expand(G, need, true, prec, 0);
    for (auto& part : parts) {
        PuiseuxBranch br;
        br.m = part.ram;
        br.kappa = algebra::make_rational(-part.offset, part.ram);
        br.coeffs = std::move(part.series);
        br.terminating = part.terminating;
        br.exact = std::all_of(br.coeffs.begin(), br.coeffs.end(), [](const Number& c) { return c.is_exact(); });
        out.push_back(std::move(br));
    }
    // Deterministic order: kappa descending, then ramification, then leading coefficient.
    std::stable_sort(out.begin(), out.end(), [](const PuiseuxBranch& a, const PuiseuxBranch& b) {
        if (a.kappa != b.kappa)
            return a.kappa > b.kappa;
        if (a.m != b.m)
            return a.m < b.m;
        return algebra::root_order_less(a.lead().to_complex(), b.lead().to_complex());
    });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].id = static_cast<int>(i);
    return out;
}

long residue_index(const PuiseuxBranch& branch)
{
    Rational idx = Rational(branch.m) * (branch.kappa + 1);
    if (idx < 0)
        return -1;
    return idx.get_num().get_si();
}

Number residue_pdq(const PuiseuxBranch& branch)
{
    long idx = residue_index(branch);
    if (idx < 0)
        return Number();
    return Number(-static_cast<long>(branch.m)) * branch.coeff(static_cast<std::size_t>(idx));
}

GaussianRational residue_at_infinity(const RatFunc& R)
{
    return -R.coeff_inverse_at_infinity();
}

GaussianRational finite_residue_sum(const RatFunc& R)
{
    algebra::HermiteResult h = algebra::hermite_integrate(R);
    const QPoly& E = h.log_den;
    int n = E.degree();
    if (n < 1 || h.log_num.is_zero())
        return {};
    // Residue at a root b of E is C(b)/E'(b) = F(b) with F = C * (E')^-1 mod E.
    auto [g, s, t] = algebra::extended_gcd(E.derivative(), E);
    QPoly F = algebra::divmod(h.log_num * s, E).second;
    // Power sums p_j of the roots by Newton's identities.
    std::vector<GaussianRational> a(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        a[static_cast<std::size_t>(i)] = E[static_cast<std::size_t>(n - i)];
    std::vector<GaussianRational> p(static_cast<std::size_t>(n));
    p[0] = GaussianRational(n);
    for (int k = 1; k < n; ++k) {
        GaussianRational acc = GaussianRational(k) * a[static_cast<std::size_t>(k)];
        for (int i = 1; i < k; ++i)
            acc += a[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(k - i)];
        p[static_cast<std::size_t>(k)] = -acc;
    }
    GaussianRational sum;
    for (int j = 0; j <= F.degree(); ++j)
        sum += F[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
    return sum;
}

ExactnessVerdict exactness_check(const std::vector<PuiseuxBranch>& branches, const std::optional<RatFunc>& resolved,
                                 mpfr_prec_t prec)
{
    ExactnessVerdict v;
    if (resolved) {
        const RatFunc& R = *resolved;
        algebra::HermiteResult h = algebra::hermite_integrate(R);
        v.global = true;
        v.exact = h.log_num.is_zero();
        if (v.exact)
            v.antiderivative = h.rational;
        if (h.log_den.degree() >= 1) {
            QPoly dE = h.log_den.derivative();
            for (const auto& r : algebra::distinct_roots(h.log_den, prec)) {
                ResidueEntry e;
                e.place = place_name(r);
                if (r.exact) {
                    e.location = Number(*r.exact);
                    e.value = h.log_num(*r.exact) / dE(*r.exact);
                } else {
                    Number z(r.value);
                    e.location = z;
                    e.value = algebra::to_number_poly(h.log_num).eval(z) / algebra::to_number_poly(dE).eval(z);
                }
                e.certified_zero = e.value.maybe_zero();
                v.residues.push_back(std::move(e));
            }
        }
        ResidueEntry inf;
        inf.place = "q = infinity";
        inf.branch_id = branches.empty() ? 0 : branches.front().id;
        inf.value = residue_at_infinity(R);
        inf.certified_zero = inf.value.is_zero();
        v.residues.push_back(std::move(inf));
        if (!v.exact)
            v.notes.push_back("R dq has a nonzero residue, so p dq is not exact");
        return v;
    }
    v.exact = true;
    for (const auto& br : branches) {
        ResidueEntry e;
        e.place = "branch " + std::to_string(br.id);
        e.branch_id = br.id;
        e.value = residue_pdq(br);
        e.certified_zero = e.value.maybe_zero();
        if (!e.certified_zero)
            v.exact = false;
        v.residues.push_back(std::move(e));
    }
    v.notes.push_back("genus-0 assumed: only the places over q = infinity were checked");
    return v;
}

} // namespace bbsolve
