#include <bbsolve/algebra/bipoly.hpp>

namespace bbsolve::algebra {

namespace {

std::string power(const std::string& var, int e)
{
    if (e == 0)
        return "";
    if (e == 1)
        return var;
    return var + "^" + std::to_string(e);
}

} // namespace

std::string to_string(const QBiPoly& poly, const std::string& x, const std::string& y)
{
    if (poly.is_zero())
        return "0";
    std::string out;
    for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
        const auto& [key, coeff] = *it;
        std::string c = coeff.to_string();
        bool negative = c.front() == '-';
        if (negative)
            c.erase(0, 1);
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono = power(x, key.first);
        std::string ym = power(y, key.second);
        if (!ym.empty())
            mono = mono.empty() ? ym : mono + "*" + ym;
        if (mono.empty())
            out += c;
        else if (c == "1")
            out += mono;
        else
            out += c + "*" + mono;
    }
    return out;
}

} // namespace bbsolve::algebra
