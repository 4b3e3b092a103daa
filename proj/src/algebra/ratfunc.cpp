#include <bbsolve/algebra/ratfunc.hpp>
#include <bbsolve/algebra/linsolve.hpp>
#include <bbsolve/algebra/squarefree.hpp>

namespace bbsolve::algebra {

RatFunc::RatFunc(QPoly num, QPoly den)
{
    if (den.is_zero())
        throw Error(ErrorKind::DegenerateInput, "rational function with zero denominator");
    QPoly g = gcd(num, den);
    if (num.is_zero())
        g = den;
    num_ = divmod(num, g).first;
    den_ = divmod(den, g).first;
    GaussianRational inv = den_.lead().inverse();
    num_ *= inv;
    den_ *= inv;
}

RatFunc RatFunc::derivative() const
{
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

GaussianRational RatFunc::operator()(const GaussianRational& x) const
{
    GaussianRational d = den_(x);
    if (d.is_zero())
        throw Error(ErrorKind::DegenerateInput, "rational function evaluated at a pole");
    return num_(x) / d;
}

GaussianRational RatFunc::coeff_inverse_at_infinity() const
{
    QPoly rem = divmod(num_, den_).second;
    if (rem.degree() == den_.degree() - 1 && !rem.is_zero())
        return rem.lead();
    return {};
}

RatFunc& RatFunc::operator+=(const RatFunc& rhs)
{
    return *this = RatFunc(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& rhs)
{
    return *this = RatFunc(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc& RatFunc::operator*=(const RatFunc& rhs)
{
    return *this = RatFunc(num_ * rhs.num_, den_ * rhs.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& rhs)
{
    if (rhs.is_zero())
        throw Error(ErrorKind::DegenerateInput, "division by the zero rational function");
    return *this = RatFunc(num_ * rhs.den_, den_ * rhs.num_);
}

RatFunc RatFunc::pow(long e) const
{
    if (e < 0)
        return RatFunc(QPoly(GaussianRational(1))) / pow(-e);
    return RatFunc(num_.pow(static_cast<unsigned long>(e)), den_.pow(static_cast<unsigned long>(e)));
}

std::string RatFunc::to_string(const std::string& var) const
{
    std::string n = algebra::to_string(num_, var);
    if (is_polynomial())
        return n;
    return "(" + n + ")/(" + algebra::to_string(den_, var) + ")";
}

HermiteResult hermite_integrate(const RatFunc& f)
{
    auto [poly_part, a] = divmod(f.num(), f.den());
    const QPoly& d = f.den();

    // Antiderivative of the polynomial part.
    std::vector<GaussianRational> pc(static_cast<std::size_t>(poly_part.degree() + 2));
    for (int i = 0; i <= poly_part.degree(); ++i)
        pc[static_cast<std::size_t>(i + 1)] = poly_part[static_cast<std::size_t>(i)] / GaussianRational(i + 1);
    RatFunc rational{QPoly(std::move(pc))};

    if (a.is_zero())
        return {rational, QPoly(), QPoly(GaussianRational(1))};

    // Horowitz-Ostrogradsky: a/d = (b/dm)' + c/ds with dm = gcd(d, d'), ds = d/dm.
    QPoly dm = gcd(d, d.derivative());
    QPoly ds = divmod(d, dm).first;
    QPoly h = divmod(ds * dm.derivative(), dm).first;
    int m = dm.degree();
    int n = ds.degree();
    std::size_t unknowns = static_cast<std::size_t>(m + n);
    std::size_t rows = static_cast<std::size_t>(d.degree());
    std::vector<std::vector<GaussianRational>> mat(rows, std::vector<GaussianRational>(unknowns));
    for (int j = 0; j < m; ++j) {
        // column for b_j x^j: j x^(j-1) ds - x^j h
        QPoly col = QPoly::monomial(GaussianRational(j), static_cast<std::size_t>(std::max(j - 1, 0))) * ds;
        if (j == 0)
            col = QPoly();
        col -= QPoly::monomial(GaussianRational(1), static_cast<std::size_t>(j)) * h;
        for (std::size_t r = 0; r < rows; ++r)
            mat[r][static_cast<std::size_t>(j)] = col[r];
    }
    for (int j = 0; j < n; ++j) {
        QPoly col = QPoly::monomial(GaussianRational(1), static_cast<std::size_t>(j)) * dm;
        for (std::size_t r = 0; r < rows; ++r)
            mat[r][static_cast<std::size_t>(m + j)] = col[r];
    }
    std::vector<GaussianRational> rhs(rows);
    for (std::size_t r = 0; r < rows; ++r)
        rhs[r] = a[r];
    auto sol = solve_linear(std::move(mat), std::move(rhs), unknowns);
    if (!sol)
        throw Error(ErrorKind::PreconditionViolation, "Hermite reduction system is singular");
    std::vector<GaussianRational> bc(sol->begin(), sol->begin() + m);
    std::vector<GaussianRational> cc(sol->begin() + m, sol->end());
    rational += RatFunc(QPoly(std::move(bc)), dm);
    return {rational, QPoly(std::move(cc)), ds};
}

} // namespace bbsolve::algebra
