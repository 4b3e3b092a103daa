#include <bbsolve/algebra/bigcomplex.hpp>
#include <bbsolve/error.hpp>

#include <algorithm>
#include <cmath>

namespace bbsolve::algebra {

namespace {

double hypot_upper(const BigFloat& re, const BigFloat& im)
{
    BigFloat h(std::max(re.precision(), im.precision()));
    mpfr_hypot(h.get(), re.get(), im.get(), MPFR_RNDU);
    return mpfr_get_d(h.get(), MPFR_RNDU);
}

double hypot_lower(const BigFloat& re, const BigFloat& im)
{
    BigFloat h(std::max(re.precision(), im.precision()));
    mpfr_hypot(h.get(), re.get(), im.get(), MPFR_RNDD);
    return mpfr_get_d(h.get(), MPFR_RNDD);
}

} // namespace

BigComplex::BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}

BigComplex::BigComplex(BigFloat re, BigFloat im, double err)
    : re_(std::move(re)), im_(std::move(im)), err_(err)
{
}

BigComplex::BigComplex(const GaussianRational& value, mpfr_prec_t prec)
    : re_(value.real(), prec), im_(value.imag(), prec)
{
    if (!value.is_zero())
        err_ = round_up(2.0 * unit_roundoff(prec) * abs_upper());
}

BigComplex BigComplex::with_precision(mpfr_prec_t prec) const
{
    BigFloat re(prec), im(prec);
    mpfr_set(re.get(), re_.get(), MPFR_RNDN);
    mpfr_set(im.get(), im_.get(), MPFR_RNDN);
    BigComplex r(std::move(re), std::move(im), err_);
    if (prec < precision())
        r.err_ = round_up(r.err_ + 2.0 * unit_roundoff(prec) * r.abs_upper());
    return r;
}

double BigComplex::abs_upper() const
{
    return hypot_upper(re_, im_);
}

double BigComplex::abs_lower() const
{
    return hypot_lower(re_, im_) - err_;
}

std::string BigComplex::to_string(int digits) const
{
    // Components inside the error radius print as zero.
    double tiny = std::max(err_, 0.0);
    bool re_zero = std::abs(re_.to_double()) <= tiny;
    bool im_zero = std::abs(im_.to_double()) <= tiny;
    if (im_zero && !re_zero)
        return re_.to_string(digits);
    if (re_zero && !im_zero)
        return im_.to_string(digits) + "*i";
    if (re_zero && im_zero && err_ > 0)
        return "0";
    std::string im = im_.to_string(digits);
    if (im.front() == '-')
        return re_.to_string(digits) + " - " + im.substr(1) + "*i";
    return re_.to_string(digits) + " + " + im + "*i";
}

BigComplex operator+(const BigComplex& a, const BigComplex& b)
{
    BigComplex r(a.re_ + b.re_, a.im_ + b.im_);
    double u = unit_roundoff(r.precision());
    r.err_ = round_up(a.err_ + b.err_ + 2.0 * u * r.abs_upper());
    return r;
}

BigComplex operator-(const BigComplex& a, const BigComplex& b)
{
    BigComplex r(a.re_ - b.re_, a.im_ - b.im_);
    double u = unit_roundoff(r.precision());
    r.err_ = round_up(a.err_ + b.err_ + 2.0 * u * r.abs_upper());
    return r;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b)
{
    BigComplex r(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    double u = unit_roundoff(r.precision());
    double ma = a.abs_upper();
    double mb = b.abs_upper();
    r.err_ = round_up(ma * b.err_ + mb * a.err_ + a.err_ * b.err_ + 6.0 * u * ma * mb);
    return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b)
{
    double blow = b.abs_lower();
    if (!(blow > 0.0))
        throw Error(ErrorKind::PrecisionExhausted, "division by a value not separated from zero");
    BigFloat den = b.re_ * b.re_ + b.im_ * b.im_;
    BigComplex r((a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den);
    double u = unit_roundoff(r.precision());
    double q = r.abs_upper();
    r.err_ = round_up((a.err_ + (q + 16.0 * u * q) * b.err_) / blow + 16.0 * u * q);
    return r;
}

BigComplex BigComplex::pow(long exponent) const
{
    if (exponent < 0)
        return BigComplex(GaussianRational(1), precision()) / pow(-exponent);
    BigComplex result(GaussianRational(1), precision());
    BigComplex base = *this;
    while (exponent > 0) {
        if (exponent & 1)
            result = result * base;
        exponent >>= 1;
        if (exponent > 0)
            base = base * base;
    }
    return result;
}

BigComplex BigComplex::nth_root(unsigned long n) const
{
    if (n == 1)
        return *this;
    double lower = abs_lower();
    if (!(lower > 0.0))
        throw Error(ErrorKind::PrecisionExhausted, "root of a value not separated from zero");
    mpfr_prec_t prec = precision();
    BigFloat mag = BigFloat::rootn(BigFloat::hypot(re_, im_), n);
    BigFloat ang = BigFloat::atan2(im_, re_) / BigFloat(static_cast<double>(n), prec);
    BigComplex r(mag * BigFloat::cos(ang), mag * BigFloat::sin(ang));
    double u = unit_roundoff(prec);
    double m = r.abs_upper();
    // |d z^(1/n)/dz| = |z|^(1/n - 1) / n, maximal on the disc at its smallest modulus.
    double deriv = std::pow(lower, 1.0 / static_cast<double>(n) - 1.0) / static_cast<double>(n);
    r.err_ = round_up(1.01 * deriv * err_ + 32.0 * u * m);
    return r;
}

BigComplex BigComplex::unit_root(unsigned long n, unsigned long j, mpfr_prec_t prec)
{
    if (n == 0)
        throw Error(ErrorKind::PreconditionViolation, "unit_root requires n > 0");
    j %= n;
    if (j == 0)
        return BigComplex(GaussianRational(1), prec);
    if (2 * j == n)
        return BigComplex(GaussianRational(-1), prec);
    if (4 * j == n)
        return BigComplex(GaussianRational::imaginary_unit(), prec);
    if (4 * j == 3 * n)
        return BigComplex(-GaussianRational::imaginary_unit(), prec);
    BigFloat theta = BigFloat::pi(prec) * BigFloat(make_rational(2 * static_cast<long>(j), static_cast<long>(n)), prec);
    BigComplex r(BigFloat::cos(theta), BigFloat::sin(theta));
    r.err_ = round_up(16.0 * unit_roundoff(prec));
    return r;
}

} // namespace bbsolve::algebra
