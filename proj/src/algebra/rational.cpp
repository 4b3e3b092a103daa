#include <bbsolve/algebra/rational.hpp>
#include <bbsolve/error.hpp>

#include <cctype>

namespace bbsolve::algebra {

Integer pochhammer(long n, long k)
{
    if (n < 1 || k < 0) {
        throw Error(ErrorKind::PreconditionViolation, "pochhammer requires n >= 1 and k >= 0");
    }
    Integer out = 1;
    for (long j = 0; j < k; ++j) {
        out *= n + j;
    }
    return out;
}

Integer factorial(long n)
{
    if (n < 0) {
        throw Error(ErrorKind::PreconditionViolation, "factorial of a negative integer");
    }
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

Rational make_rational(long num, long den)
{
    if (den == 0) {
        throw Error(ErrorKind::DegenerateInput, "zero denominator");
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

Rational parse_rational(const std::string& text)
{
    std::string body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body.erase(0, 1);
    }
    Rational out;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        Integer num(body.substr(0, slash));
        Integer den(body.substr(slash + 1));
        if (den == 0) {
            throw Error(ErrorKind::DegenerateInput, "zero denominator in '" + text + "'");
        }
        out = Rational(num, den);
        out.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string whole = body.substr(0, dot);
        std::string frac = body.substr(dot + 1);
        Integer num(whole.empty() ? std::string("0") : whole);
        Integer scale = 1;
        for (char c : frac) {
            num = num * 10 + (c - '0');
            scale *= 10;
        }
        out = Rational(num, scale);
        out.canonicalize();
    } else {
        out = Rational(Integer(body));
    }
    return negative ? Rational(-out) : out;
}

GaussianRational GaussianRational::inverse() const
{
    Rational n = norm();
    if (sgn(n) == 0) {
        throw Error(ErrorKind::DegenerateInput, "division by zero");
    }
    return {re_ / n, -im_ / n};
}

GaussianRational GaussianRational::pow(long exponent) const
{
    if (exponent < 0) {
        return inverse().pow(-exponent);
    }
    GaussianRational result(1);
    GaussianRational base = *this;
    while (exponent > 0) {
        if (exponent & 1) {
            result *= base;
        }
        exponent >>= 1;
        if (exponent > 0) {
            base *= base;
        }
    }
    return result;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& rhs)
{
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& rhs)
{
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& rhs)
{
    if (sgn(im_) == 0 && sgn(rhs.im_) == 0) {
        re_ *= rhs.re_;
        return *this;
    }
    Rational re = re_ * rhs.re_ - im_ * rhs.im_;
    Rational im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& rhs)
{
    if (sgn(rhs.im_) == 0) {
        if (sgn(rhs.re_) == 0) {
            throw Error(ErrorKind::DegenerateInput, "division by zero");
        }
        re_ /= rhs.re_;
        im_ /= rhs.re_;
        return *this;
    }
    return *this *= rhs.inverse();
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b)
{
    int c = cmp(a.re_, b.re_);
    if (c == 0) {
        c = cmp(a.im_, b.im_);
    }
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string GaussianRational::to_string() const
{
    if (sgn(im_) == 0) {
        return re_.get_str();
    }
    std::string imag_part;
    if (im_ == 1) {
        imag_part = "i";
    } else if (im_ == -1) {
        imag_part = "-i";
    } else {
        imag_part = im_.get_str() + "*i";
    }
    if (sgn(re_) == 0) {
        return imag_part;
    }
    std::string out = "(" + re_.get_str();
    if (sgn(im_) < 0) {
        Rational mag = -im_;
        out += " - " + (mag == 1 ? std::string("i") : mag.get_str() + "*i");
    } else {
        out += " + " + (im_ == 1 ? std::string("i") : im_.get_str() + "*i");
    }
    return out + ")";
}

} // namespace bbsolve::algebra
