#include <bbsolve/algebra/squarefree.hpp>

namespace bbsolve::algebra {

std::vector<QPoly> squarefree_decomposition(const QPoly& poly)
{
    if (poly.is_zero())
        throw Error(ErrorKind::DegenerateInput, "squarefree decomposition of the zero polynomial");
    std::vector<QPoly> out;
    if (poly.degree() < 1)
        return out;
    QPoly df = poly.derivative();
    QPoly a = gcd(poly, df);
    QPoly b = divmod(poly, a).first;
    QPoly c = divmod(df, a).first;
    QPoly d = c - b.derivative();
    while (b.degree() >= 1) {
        QPoly ai = gcd(b, d);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = c - b.derivative();
        out.push_back(monic(ai));
    }
    while (!out.empty() && out.back().degree() < 1)
        out.pop_back();
    return out;
}

QPoly squarefree_part(const QPoly& poly)
{
    QPoly r(GaussianRational(1));
    for (const auto& f : squarefree_decomposition(poly))
        r = r * f;
    return r;
}

QPoly content(const Poly<QPoly>& poly)
{
    QPoly g;
    for (const auto& c : poly.coeffs())
        g = gcd(g, c);
    return g;
}

Poly<QPoly> primitive_part(const Poly<QPoly>& poly)
{
    if (poly.is_zero())
        return poly;
    QPoly g = content(poly);
    std::vector<QPoly> c;
    for (const auto& a : poly.coeffs())
        c.push_back(divmod(a, g).first);
    return Poly<QPoly>(std::move(c));
}

namespace {

Poly<QPoly> pseudo_remainder(Poly<QPoly> a, const Poly<QPoly>& b)
{
    const QPoly& lc = b.lead();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        int shift = a.degree() - b.degree();
        QPoly la = a.lead();
        a = a * lc - Poly<QPoly>::monomial(la, static_cast<std::size_t>(shift)) * b;
        a = primitive_part(a);
    }
    return a;
}

} // namespace

bool squarefree_in_p(const QBiPoly& poly)
{
    Poly<QPoly> a = primitive_part(poly.as_poly_in_x());
    if (a.degree() < 1)
        return true;
    Poly<QPoly> b = primitive_part(a.derivative());
    while (!b.is_zero()) {
        Poly<QPoly> r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return a.degree() < 1;
}

} // namespace bbsolve::algebra
