#pragma once

#include <bbsolve/algebra/rational.hpp>

#include <mpfr.h>

#include <string>

namespace bbsolve::algebra {

inline constexpr mpfr_prec_t default_precision = 256;

// RAII wrapper over mpfr_t. Arithmetic rounds to nearest at the larger operand precision.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = default_precision);
    BigFloat(double value, mpfr_prec_t prec);
    BigFloat(const Rational& value, mpfr_prec_t prec);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    // |x| rounded towards +infinity.
    double abs_upper() const;
    Rational to_rational() const;
    std::string to_string(int digits) const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a);

    static BigFloat pi(mpfr_prec_t prec);
    static BigFloat hypot(const BigFloat& a, const BigFloat& b);
    static BigFloat atan2(const BigFloat& y, const BigFloat& x);
    static BigFloat cos(const BigFloat& x);
    static BigFloat sin(const BigFloat& x);
    static BigFloat sqrt(const BigFloat& x);
    static BigFloat rootn(const BigFloat& x, unsigned long n);

private:
    mpfr_t value_;
};

// Unit roundoff bound 2^(1-prec) for the given precision.
double unit_roundoff(mpfr_prec_t prec);

// Inflates a nonnegative double so that a short chain of double operations that produced it
// stays an upper bound.
inline double round_up(double x) { return x * (1.0 + 0x1p-48) + 0x1p-1060; }

} // namespace bbsolve::algebra
