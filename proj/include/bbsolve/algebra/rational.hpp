#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace bbsolve::algebra {

using Integer = mpz_class;
using Rational = mpq_class;

// Rising factorial n (n+1) ... (n+k-1); the empty product for k = 0 is 1.
// Requires n >= 1 and k >= 0.
Integer pochhammer(long n, long k);

Integer factorial(long n);

Rational make_rational(long num, long den = 1);

// "a" or "a/b", sign on the numerator.
std::string to_string(const Rational& value);

// Parses "a", "-a", "a/b" and decimal literals such as "0.125".
Rational parse_rational(const std::string& text);

// Exact element of Q(i). Coefficient field of every equation handled by the tool.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;
    GaussianRational pow(long exponent) const;

    GaussianRational& operator+=(const GaussianRational& rhs);
    GaussianRational& operator-=(const GaussianRational& rhs);
    GaussianRational& operator*=(const GaussianRational& rhs);
    GaussianRational& operator/=(const GaussianRational& rhs);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Lexicographic (real, then imaginary); only used for deterministic ordering.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

    // Canonical text: "3", "-1/2", "i", "-2*i", "(1/2 + 3*i)".
    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

inline bool is_exact_zero(const GaussianRational& x) { return x.is_zero(); }

} // namespace bbsolve::algebra
