#pragma once

#include <bbsolve/algebra/number.hpp>
#include <bbsolve/error.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bbsolve::algebra {

template <class T> class Poly;

inline bool structural_zero(const Rational& x) { return sgn(x) == 0; }
inline bool structural_zero(const GaussianRational& x) { return x.is_zero(); }
inline bool structural_zero(const Number& x) { return x.is_zero(); }
inline bool structural_zero(const std::complex<double>& x) { return x == std::complex<double>(); }
template <class T> bool structural_zero(const Poly<T>& x) { return x.is_zero(); }

// Dense univariate polynomial, coefficients in ascending degree. Trailing structural zeros
// are trimmed, so degree() is the index of the last coefficient that is not exactly zero.
template <class T> class Poly {
public:
    Poly() = default;
    explicit Poly(T constant)
    {
        coeffs_.push_back(std::move(constant));
        trim();
    }
    explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

    static Poly monomial(T coeff, std::size_t degree)
    {
        std::vector<T> c(degree + 1, T{});
        c[degree] = std::move(coeff);
        return Poly(std::move(c));
    }
    // x
    static Poly x() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<T>& coeffs() const { return coeffs_; }
    const T& lead() const { return coeffs_.back(); }

    T operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T{}; }

    void set(std::size_t i, T value)
    {
        if (i >= coeffs_.size())
            coeffs_.resize(i + 1, T{});
        coeffs_[i] = std::move(value);
        trim();
    }

    // Lowest degree with a nonzero coefficient; -1 for the zero polynomial.
    int valuation() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!structural_zero(coeffs_[i]))
                return static_cast<int>(i);
        return -1;
    }

    template <class V> V eval(const V& x) const
    {
        V acc{};
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = acc * x + V(coeffs_[i]);
        return acc;
    }
    T operator()(const T& x) const { return eval<T>(x); }

    Poly derivative() const
    {
        if (coeffs_.size() <= 1)
            return {};
        std::vector<T> c(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            c[i - 1] = coeffs_[i] * T(static_cast<long>(i));
        return Poly(std::move(c));
    }

    template <class F> auto map(F&& f) const
    {
        using U = decltype(f(std::declval<const T&>()));
        std::vector<U> c;
        c.reserve(coeffs_.size());
        for (const auto& a : coeffs_)
            c.push_back(f(a));
        return Poly<U>(std::move(c));
    }

    Poly pow(unsigned long e) const
    {
        Poly result(T(1));
        Poly base = *this;
        while (e > 0) {
            if (e & 1)
                result = result * base;
            e >>= 1;
            if (e > 0)
                base = base * base;
        }
        return result;
    }

    // Substitutes another polynomial for x.
    Poly compose(const Poly& inner) const
    {
        Poly acc;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = acc * inner + Poly(coeffs_[i]);
        return acc;
    }

    Poly& operator+=(const Poly& rhs)
    {
        if (rhs.coeffs_.size() > coeffs_.size())
            coeffs_.resize(rhs.coeffs_.size(), T{});
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
            coeffs_[i] += rhs.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& rhs)
    {
        if (rhs.coeffs_.size() > coeffs_.size())
            coeffs_.resize(rhs.coeffs_.size(), T{});
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
            coeffs_[i] -= rhs.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& rhs) { return *this = *this * rhs; }
    Poly& operator*=(const T& s)
    {
        for (auto& a : coeffs_)
            a *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a)
    {
        std::vector<T> c;
        c.reserve(a.coeffs_.size());
        for (const auto& x : a.coeffs_)
            c.push_back(-x);
        return Poly(std::move(c));
    }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T{});
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (structural_zero(a.coeffs_[i]))
                continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    // Descending-degree text, e.g. "x^2 - 3*x + 1/2". `fmt` renders a coefficient.
    std::string to_string(const std::string& var, const std::function<std::string(const T&)>& fmt) const;

private:
    void trim()
    {
        while (!coeffs_.empty() && structural_zero(coeffs_.back()))
            coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

// Euclidean division over a field: a = q b + r with deg r < deg b.
template <class T> std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b)
{
    if (b.is_zero())
        throw Error(ErrorKind::DegenerateInput, "polynomial division by zero");
    std::vector<T> rem = a.coeffs();
    int db = b.degree();
    if (a.degree() < db)
        return {Poly<T>(), a};
    std::vector<T> quo(static_cast<std::size_t>(a.degree() - db + 1), T{});
    T inv_lead = T(1) / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        T f = rem[static_cast<std::size_t>(i)] * inv_lead;
        quo[static_cast<std::size_t>(i - db)] = f;
        if (structural_zero(f))
            continue;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(i)] = T{};
    }
    return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

template <class T> Poly<T> monic(const Poly<T>& a)
{
    if (a.is_zero())
        return a;
    return a * (T(1) / a.lead());
}

// Monic gcd over an exact field.
template <class T> Poly<T> gcd(Poly<T> a, Poly<T> b)
{
    while (!b.is_zero()) {
        Poly<T> r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Extended Euclid: returns (g, s, t) with s a + t b = g, g monic.
template <class T> std::tuple<Poly<T>, Poly<T>, Poly<T>> extended_gcd(Poly<T> a, Poly<T> b)
{
    Poly<T> s0(T(1)), s1, t0, t1(T(1));
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
        Poly<T> s2 = s0 - q * s1;
        Poly<T> t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.is_zero())
        return {a, s0, t0};
    T inv = T(1) / a.lead();
    return {a * inv, s0 * inv, t0 * inv};
}

template <class T>
std::string Poly<T>::to_string(const std::string& var, const std::function<std::string(const T&)>& fmt) const
{
    if (coeffs_.empty())
        return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (structural_zero(coeffs_[i]))
            continue;
        std::string c = fmt(coeffs_[i]);
        bool negative = !c.empty() && c.front() == '-';
        if (negative)
            c.erase(0, 1);
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (mono.empty())
            out += c;
        else if (c == "1")
            out += mono;
        else
            out += c + "*" + mono;
    }
    return out;
}

using QPoly = Poly<GaussianRational>;
using NPoly = Poly<Number>;

inline std::string to_string(const QPoly& p, const std::string& var = "x")
{
    return p.to_string(var, [](const GaussianRational& c) { return c.to_string(); });
}

inline NPoly to_number_poly(const QPoly& p)
{
    return p.map([](const GaussianRational& c) { return Number(c); });
}

} // namespace bbsolve::algebra
