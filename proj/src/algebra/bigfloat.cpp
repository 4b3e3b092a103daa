#include <bbsolve/algebra/bigfloat.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bbsolve::algebra {

namespace {

mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b)
{
    return std::max(a.precision(), b.precision());
}

} // namespace

BigFloat::BigFloat(mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other)
{
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept
{
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat()
{
    mpfr_clear(value_);
}

double BigFloat::abs_upper() const
{
    return std::fabs(mpfr_get_d(value_, mpfr_sgn(value_) >= 0 ? MPFR_RNDU : MPFR_RNDD));
}

Rational BigFloat::to_rational() const
{
    Rational out;
    mpfr_get_q(out.get_mpq_t(), value_);
    return out;
}

std::string BigFloat::to_string(int digits) const
{
    char* buffer = nullptr;
    mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
    std::string out(buffer);
    mpfr_free_str(buffer);
    return out;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a)
{
    BigFloat r(a.precision());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec)
{
    BigFloat r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::hypot(const BigFloat& a, const BigFloat& b)
{
    BigFloat r(max_prec(a, b));
    mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::atan2(const BigFloat& y, const BigFloat& x)
{
    BigFloat r(max_prec(y, x));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::cos(const BigFloat& x)
{
    BigFloat r(x.precision());
    mpfr_cos(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sin(const BigFloat& x)
{
    BigFloat r(x.precision());
    mpfr_sin(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt(const BigFloat& x)
{
    BigFloat r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::rootn(const BigFloat& x, unsigned long n)
{
    BigFloat r(x.precision());
    mpfr_rootn_ui(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

double unit_roundoff(mpfr_prec_t prec)
{
    return std::ldexp(1.0, 1 - static_cast<int>(prec));
}

} // namespace bbsolve::algebra
