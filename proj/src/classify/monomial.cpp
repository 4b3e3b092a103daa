#include <bbsolve/classify.hpp>

#include <bbsolve/algebra/roots.hpp>
#include <bbsolve/algebra/squarefree.hpp>

#include <map>

namespace bbsolve {

using algebra::GaussianRational;
using algebra::QPoly;

namespace {

std::vector<int> admissible_orders(const EquationSpec& spec, mpfr_prec_t prec)
{
    auto branches = branches_at_infinity(spec.P, 4, spec.resolved, prec);
    bool lead_const = spec.P.coeff_x(spec.P.degree_x()).degree() <= 0;
    return check_theorem_d(spec.k, branches, lead_const).admissible_n;
}

} // namespace

std::vector<MonomialSolution> match_monomial(const EquationSpec& spec, std::optional<std::vector<int>> candidate_n,
                                             mpfr_prec_t prec)
{
    std::vector<int> orders = candidate_n ? *candidate_n : admissible_orders(spec, prec);
    std::vector<MonomialSolution> out;
    for (int n : orders) {
        if (n < 1)
            continue;
        GaussianRational d(Rational(algebra::pochhammer(n, spec.k)));
        if (spec.k % 2 != 0)
            d = -d;
        // exponent of z^-1 -> polynomial in c
        std::map<long, QPoly> groups;
        for (const auto& [key, a] : spec.P.terms()) {
            auto [i, j] = key;
            long e = static_cast<long>(i) * (n + spec.k) + static_cast<long>(j) * n;
            groups[e] += QPoly::monomial(a * d.pow(i), static_cast<std::size_t>(i + j));
        }
        QPoly g;
        for (const auto& [e, poly] : groups)
            g = algebra::gcd(g, poly);
        if (g.is_zero())
            continue;
        int v = g.valuation();
        std::vector<GaussianRational> shifted(g.coeffs().begin() + v, g.coeffs().end());
        QPoly defining = algebra::squarefree_part(QPoly(std::move(shifted)));
        if (defining.degree() < 1)
            continue;
        bool verified = true;
        for (const auto& [e, poly] : groups)
            if (!algebra::divmod(poly, defining).second.is_zero())
                verified = false;
        for (const auto& root : algebra::distinct_roots(defining, prec)) {
            MonomialSolution m;
            m.n = n;
            m.defining = defining;
            m.exact = root.exact;
            m.c = root.exact ? Number(*root.exact) : Number(root.value);
            m.verified = verified;
            out.push_back(std::move(m));
        }
    }
    return out;
}

bool monomial_matches_germ(const MonomialSolution& m, const LaurentSeries& germ)
{
    if (m.n != germ.n || germ.coeffs.empty())
        return false;
    if (!(germ.coeffs[0] - m.c).maybe_zero())
        return false;
    for (std::size_t j = 1; j < germ.coeffs.size(); ++j)
        if (!germ.coeffs[j].maybe_zero())
            return false;
    for (const auto& pc : germ.param_coeffs)
        if (pc.degree() > 0)
            return false;
    return true;
}

} // namespace bbsolve
