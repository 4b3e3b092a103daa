#pragma once

#include <bbsolve/algebra/bigfloat.hpp>

#include <complex>
#include <string>

namespace bbsolve::algebra {

// Multiprecision complex value carrying an absolute error bound: the exact quantity it
// approximates lies within err() of (re, im). Every operation propagates the bound and adds
// its own rounding, so the bound stays rigorous up to the double rounding in round_up().
class BigComplex {
public:
    explicit BigComplex(mpfr_prec_t prec = default_precision);
    BigComplex(BigFloat re, BigFloat im, double err = 0.0);
    BigComplex(const GaussianRational& value, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return re_.precision(); }
    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }
    double err() const { return err_; }
    void widen(double extra) { err_ = round_up(err_ + extra); }
    // Same point with the error bound dropped; used inside iterations that certify separately.
    BigComplex center() const { return {re_, im_, 0.0}; }
    BigComplex with_precision(mpfr_prec_t prec) const;

    // |value| rounded up; does not include err().
    double abs_upper() const;
    // Lower bound on |exact| (may be negative when the value is not separated from 0).
    double abs_lower() const;
    bool maybe_zero() const { return abs_upper() <= err_; }

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
    std::string to_string(int digits) const;

    BigComplex conj() const { return {re_, -im_, err_}; }
    BigComplex pow(long exponent) const;
    // Principal n-th root. The bound refers to the nearest n-th root of the exact value.
    BigComplex nth_root(unsigned long n) const;

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_, a.err_}; }

    // exp(2 pi i j / n)
    static BigComplex unit_root(unsigned long n, unsigned long j, mpfr_prec_t prec);

private:
    BigFloat re_;
    BigFloat im_;
    double err_ = 0.0;
};

} // namespace bbsolve::algebra
