#include <bbsolve/algebra/number.hpp>
#include <bbsolve/error.hpp>

#include <algorithm>

namespace bbsolve::algebra {

std::complex<double> to_complex(const GaussianRational& value)
{
    return {value.real().get_d(), value.imag().get_d()};
}

mpfr_prec_t common_precision(const Number& a, const Number& b, mpfr_prec_t fallback)
{
    if (!a.is_exact() && !b.is_exact())
        return std::max(a.numeric().precision(), b.numeric().precision());
    if (!a.is_exact())
        return a.numeric().precision();
    if (!b.is_exact())
        return b.numeric().precision();
    return fallback;
}

double Number::abs_upper() const
{
    if (is_exact())
        return round_up(std::abs(to_complex()));
    return numeric().abs_upper();
}

BigComplex Number::to_big(mpfr_prec_t prec) const
{
    if (is_exact())
        return BigComplex(exact(), prec);
    return numeric();
}

std::complex<double> Number::to_complex() const
{
    return is_exact() ? algebra::to_complex(exact()) : numeric().to_complex();
}

std::string Number::to_string(int digits) const
{
    return is_exact() ? exact().to_string() : numeric().to_string(digits);
}

Number Number::pow(long exponent) const
{
    if (is_exact())
        return exact().pow(exponent);
    return numeric().pow(exponent);
}

Number Number::conj() const
{
    if (is_exact())
        return exact().conj();
    return numeric().conj();
}

Number& Number::operator+=(const Number& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<GaussianRational>(value_) += rhs.exact();
    } else {
        mpfr_prec_t prec = common_precision(*this, rhs);
        value_ = to_big(prec) + rhs.to_big(prec);
    }
    return *this;
}

Number& Number::operator-=(const Number& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<GaussianRational>(value_) -= rhs.exact();
    } else {
        mpfr_prec_t prec = common_precision(*this, rhs);
        value_ = to_big(prec) - rhs.to_big(prec);
    }
    return *this;
}

Number& Number::operator*=(const Number& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<GaussianRational>(value_) *= rhs.exact();
    } else if (is_zero() || rhs.is_zero()) {
        value_ = GaussianRational();
    } else {
        mpfr_prec_t prec = common_precision(*this, rhs);
        value_ = to_big(prec) * rhs.to_big(prec);
    }
    return *this;
}

Number& Number::operator/=(const Number& rhs)
{
    if (rhs.is_zero())
        throw Error(ErrorKind::DegenerateInput, "division by zero");
    if (is_exact() && rhs.is_exact()) {
        std::get<GaussianRational>(value_) /= rhs.exact();
    } else if (is_zero()) {
        // 0 / x stays exactly zero.
    } else {
        mpfr_prec_t prec = common_precision(*this, rhs);
        value_ = to_big(prec) / rhs.to_big(prec);
    }
    return *this;
}

Number operator-(const Number& a)
{
    if (a.is_exact())
        return -a.exact();
    return -a.numeric();
}

} // namespace bbsolve::algebra
