#pragma once

#include <bbsolve/algebra/poly.hpp>

#include <map>
#include <utility>

namespace bbsolve::algebra {

// Sparse polynomial in two variables. A key (i, j) stands for x^i y^j; in equation code x is p
// and y is q. No zero coefficients are stored.
template <class T> class BiPoly {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, T>;

    BiPoly() = default;
    explicit BiPoly(T constant) { add_term(0, 0, std::move(constant)); }

    static BiPoly term(T coeff, int i, int j)
    {
        BiPoly r;
        r.add_term(i, j, std::move(coeff));
        return r;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    T coeff(int i, int j) const
    {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? T{} : it->second;
    }

    void add_term(int i, int j, T coeff)
    {
        if (structural_zero(coeff))
            return;
        auto [it, inserted] = terms_.try_emplace({i, j}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (structural_zero(it->second))
                terms_.erase(it);
        }
    }

    int degree_x() const
    {
        int d = -1;
        for (const auto& [k, c] : terms_)
            d = std::max(d, k.first);
        return d;
    }
    int degree_y() const
    {
        int d = -1;
        for (const auto& [k, c] : terms_)
            d = std::max(d, k.second);
        return d;
    }

    // Coefficient of x^i as a polynomial in y.
    Poly<T> coeff_x(int i) const
    {
        Poly<T> r;
        for (const auto& [k, c] : terms_)
            if (k.first == i)
                r.set(static_cast<std::size_t>(k.second), c);
        return r;
    }
    // Coefficient of y^j as a polynomial in x.
    Poly<T> coeff_y(int j) const
    {
        Poly<T> r;
        for (const auto& [k, c] : terms_)
            if (k.second == j)
                r.set(static_cast<std::size_t>(k.first), c);
        return r;
    }

    // View as a polynomial in x with coefficients in T[y].
    Poly<Poly<T>> as_poly_in_x() const
    {
        std::vector<Poly<T>> c(static_cast<std::size_t>(degree_x() + 1));
        for (int i = 0; i <= degree_x(); ++i)
            c[static_cast<std::size_t>(i)] = coeff_x(i);
        return Poly<Poly<T>>(std::move(c));
    }
    static BiPoly from_poly_in_x(const Poly<Poly<T>>& p)
    {
        BiPoly r;
        for (int i = 0; i <= p.degree(); ++i) {
            const auto& ci = p.coeffs()[static_cast<std::size_t>(i)];
            for (int j = 0; j <= ci.degree(); ++j)
                r.add_term(i, j, ci.coeffs()[static_cast<std::size_t>(j)]);
        }
        return r;
    }

    BiPoly diff_x() const
    {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            if (k.first > 0)
                r.add_term(k.first - 1, k.second, c * T(static_cast<long>(k.first)));
        return r;
    }
    BiPoly diff_y() const
    {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            if (k.second > 0)
                r.add_term(k.first, k.second - 1, c * T(static_cast<long>(k.second)));
        return r;
    }

    template <class F> auto map(F&& f) const
    {
        using U = decltype(f(std::declval<const T&>()));
        BiPoly<U> r;
        for (const auto& [k, c] : terms_)
            r.add_term(k.first, k.second, f(c));
        return r;
    }

    // Evaluates with powers built incrementally; V must be constructible from T.
    template <class V> V eval(const V& x, const V& y) const
    {
        int dx = degree_x();
        int dy = degree_y();
        if (dx < 0)
            return V{};
        std::vector<V> px(static_cast<std::size_t>(dx + 1)), py(static_cast<std::size_t>(dy + 1));
        px[0] = V(T(1));
        py[0] = V(T(1));
        for (int i = 1; i <= dx; ++i)
            px[static_cast<std::size_t>(i)] = px[static_cast<std::size_t>(i - 1)] * x;
        for (int j = 1; j <= dy; ++j)
            py[static_cast<std::size_t>(j)] = py[static_cast<std::size_t>(j - 1)] * y;
        V acc{};
        for (const auto& [k, c] : terms_)
            acc += V(c) * px[static_cast<std::size_t>(k.first)] * py[static_cast<std::size_t>(k.second)];
        return acc;
    }

    BiPoly& operator+=(const BiPoly& rhs)
    {
        for (const auto& [k, c] : rhs.terms_)
            add_term(k.first, k.second, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& rhs)
    {
        for (const auto& [k, c] : rhs.terms_)
            add_term(k.first, k.second, -c);
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator-(const BiPoly& a)
    {
        BiPoly r;
        for (const auto& [k, c] : a.terms_)
            r.terms_.emplace(k, -c);
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b)
    {
        BiPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, const T& s)
    {
        BiPoly r;
        for (const auto& [k, c] : a.terms_)
            r.add_term(k.first, k.second, c * s);
        return r;
    }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    BiPoly pow(unsigned long e) const
    {
        BiPoly result(T(1));
        BiPoly base = *this;
        while (e > 0) {
            if (e & 1)
                result = result * base;
            e >>= 1;
            if (e > 0)
                base = base * base;
        }
        return result;
    }

private:
    Terms terms_;
};

using QBiPoly = BiPoly<GaussianRational>;

// Lex text, x-degree descending then y-degree descending: "p^2 - 4*q^3 + 4*q".
std::string to_string(const QBiPoly& poly, const std::string& x = "p", const std::string& y = "q");

} // namespace bbsolve::algebra
