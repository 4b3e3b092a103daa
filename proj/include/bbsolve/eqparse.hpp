#pragma once

#include <bbsolve/algebra/bipoly.hpp>
#include <bbsolve/algebra/ratfunc.hpp>

#include <optional>
#include <string>

namespace bbsolve {

// P(p, q) = 0 with p = y^(k), q = y. In P, x is p and y is q.
struct EquationSpec {
    algebra::QBiPoly P;
    int k = 1;
    // R(q) with P = D(q) p - N(q), present whenever P has degree 1 in p.
    std::optional<algebra::RatFunc> resolved;
    std::string source_text;

    friend bool operator==(const EquationSpec& a, const EquationSpec& b)
    {
        return a.k == b.k && a.P == b.P && a.resolved == b.resolved;
    }
};

// Accepts "y'' = 6*y^2", "y^(3) = y", "y''*y = 1", "P: p^2 - 4*q^3 + 4*q ; k=1".
// `k_override` supplies k for raw input written without "; k=". Throws ParseError.
EquationSpec parse_equation(const std::string& text, std::optional<int> k_override = std::nullopt);

// "P: p - 6*q^2 ; k=2". parse_equation(canonical_string(s)) == s.
std::string canonical_string(const EquationSpec& spec);

// Builds the canonical spec for a polynomial: content in q removed, lex-leading coefficient 1.
EquationSpec make_spec(const algebra::QBiPoly& P, int k, std::string source_text = {});

// Resolved-form spec y^(k) = R(y).
EquationSpec make_resolved_spec(const algebra::RatFunc& R, int k, std::string source_text = {});

} // namespace bbsolve
