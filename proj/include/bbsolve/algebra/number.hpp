#pragma once

#include <bbsolve/algebra/bigcomplex.hpp>

#include <complex>
#include <string>
#include <variant>

namespace bbsolve::algebra {

// Exact Gaussian rational while every input was exact, BigComplex once a numeric value enters.
class Number {
public:
    Number() = default;
    Number(long value) : value_(GaussianRational(value)) {}
    Number(GaussianRational value) : value_(std::move(value)) {}
    Number(BigComplex value) : value_(std::move(value)) {}

    bool is_exact() const { return std::holds_alternative<GaussianRational>(value_); }
    const GaussianRational& exact() const { return std::get<GaussianRational>(value_); }
    const BigComplex& numeric() const { return std::get<BigComplex>(value_); }

    // Exactly zero. A numeric value is never exactly zero.
    bool is_zero() const { return is_exact() && exact().is_zero(); }
    // Zero or a numeric value whose error disc contains zero.
    bool maybe_zero() const { return is_exact() ? exact().is_zero() : numeric().maybe_zero(); }

    double err() const { return is_exact() ? 0.0 : numeric().err(); }
    double abs_upper() const;
    BigComplex to_big(mpfr_prec_t prec) const;
    std::complex<double> to_complex() const;
    std::string to_string(int digits = 20) const;

    Number pow(long exponent) const;
    Number conj() const;

    Number& operator+=(const Number& rhs);
    Number& operator-=(const Number& rhs);
    Number& operator*=(const Number& rhs);
    Number& operator/=(const Number& rhs);

    friend Number operator+(Number a, const Number& b) { return a += b; }
    friend Number operator-(Number a, const Number& b) { return a -= b; }
    friend Number operator*(Number a, const Number& b) { return a *= b; }
    friend Number operator/(Number a, const Number& b) { return a /= b; }
    friend Number operator-(const Number& a);

private:
    std::variant<GaussianRational, BigComplex> value_;
};

// Working precision of the pair, falling back to `fallback` when both are exact.
mpfr_prec_t common_precision(const Number& a, const Number& b, mpfr_prec_t fallback = default_precision);

std::complex<double> to_complex(const GaussianRational& value);

} // namespace bbsolve::algebra
