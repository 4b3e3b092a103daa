#pragma once

#include <bbsolve/algebra/poly.hpp>

#include <string>

namespace bbsolve::algebra {

// N(x)/D(x) over Q(i), reduced, with D monic.
class RatFunc {
public:
    RatFunc() : den_(GaussianRational(1)) {}
    explicit RatFunc(QPoly num) : num_(std::move(num)), den_(GaussianRational(1)) {}
    RatFunc(QPoly num, QPoly den);

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }

    RatFunc derivative() const;
    GaussianRational operator()(const GaussianRational& x) const;

    // Coefficient of x^-1 in the expansion at infinity.
    GaussianRational coeff_inverse_at_infinity() const;

    RatFunc& operator+=(const RatFunc& rhs);
    RatFunc& operator-=(const RatFunc& rhs);
    RatFunc& operator*=(const RatFunc& rhs);
    RatFunc& operator/=(const RatFunc& rhs);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc pow(long e) const;
    std::string to_string(const std::string& var = "q") const;

private:
    QPoly num_;
    QPoly den_;
};

// Hermite reduction: integral of f = rational + integral(log_num / log_den), with log_den
// squarefree and monic and deg log_num < deg log_den.
struct HermiteResult {
    RatFunc rational;
    QPoly log_num;
    QPoly log_den;
};

HermiteResult hermite_integrate(const RatFunc& f);

} // namespace bbsolve::algebra
