#pragma once

#include <bbsolve/algebra/bipoly.hpp>

#include <vector>

namespace bbsolve::algebra {

// Yun's algorithm: returns monic a_1, ..., a_m with poly = c * a_1 * a_2^2 * ... * a_m^m.
std::vector<QPoly> squarefree_decomposition(const QPoly& poly);

// Squarefree part (product of the a_i), monic.
QPoly squarefree_part(const QPoly& poly);

// Content in x of a polynomial in x over Q(i)[y], as a monic polynomial in y.
QPoly content(const Poly<QPoly>& poly);
Poly<QPoly> primitive_part(const Poly<QPoly>& poly);

// gcd(P, dP/dp) over Q(i)(q) is constant. `poly` uses x = p, y = q.
bool squarefree_in_p(const QBiPoly& poly);

} // namespace bbsolve::algebra
