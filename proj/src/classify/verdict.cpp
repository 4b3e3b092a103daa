#include <bbsolve/classify.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bbsolve {

const char* to_string(Label label)
{
    switch (label) {
    case Label::Rational:
        return "rational";
    case Label::RationalInExponential:
        return "rational_in_exponential";
    case Label::Elliptic:
        return "elliptic";
    case Label::EntireOnly:
        return "entire_only";
    case Label::NoneWithPole:
        return "none_with_pole";
    case Label::Undetermined:
        return "undetermined";
    }
    return "?";
}

const char* to_string(Confidence confidence)
{
    switch (confidence) {
    case Confidence::Exact:
        return "exact";
    case Confidence::Numeric:
        return "numeric";
    case Confidence::Heuristic:
        return "heuristic";
    }
    return "?";
}

namespace {

std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0 ? 0.0 : x);
    return buf;
}

// Components below `err` print as zero.
std::string cnum(cplx z, double err = 0.0)
{
    double tiny = std::max(err, 1e-13 * std::abs(z));
    double re = std::abs(z.real()) <= tiny ? 0.0 : z.real();
    double im = std::abs(z.imag()) <= tiny ? 0.0 : z.imag();
    if (im == 0)
        return num(re);
    if (re == 0)
        return num(im) + "*i";
    return num(re) + (im < 0 ? " - " : " + ") + num(std::abs(im)) + "*i";
}

std::string err_num(double e)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", e);
    return buf;
}

std::string describe(const MonomialSolution& m)
{
    std::string c = m.exact ? m.exact->to_string() : "c";
    std::string s = "y = " + (c == "1" ? std::string() : c == "-1" ? std::string("-") : c + "*") + "z^-" +
                    std::to_string(m.n);
    if (!m.exact)
        s += " with " + to_string(m.defining, "c") + " = 0 (c = " + m.c.to_string(15) + ")";
    return s + (m.verified ? ", exact back substitution residual 0" : ", back substitution failed");
}

// Slope of log|y| against log|z| on the outer part of the sweep.
std::optional<double> tail_exponent(const Trajectory& t)
{
    double rmax = 0;
    for (const auto& s : t.steps)
        rmax = std::max(rmax, std::abs(s.z));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& s : t.steps) {
        if (s.chart != Chart::Y || std::abs(s.z) < 0.5 * rmax || s.taylor.empty())
            continue;
        double y = std::abs(s.taylor[0]);
        if (y == 0)
            continue;
        double lx = std::log(std::abs(s.z));
        double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    if (cnt < 4)
        return std::nullopt;
    double den = cnt * sxx - sx * sx;
    if (std::abs(den) < 1e-12)
        return std::nullopt;
    return (cnt * sxy - sx * sy) / den;
}

} // namespace

ClassificationVerdict assemble_verdict(const ClassifyInputs& in)
{
    ClassificationVerdict v;
    if (in.conditions)
        v.degree_bound = in.conditions->degree_bound;
    std::vector<std::string> exact_notes;
    std::optional<Label> exact_label;
    if (in.monomials)
        for (const auto& m : *in.monomials) {
            if (!m.verified)
                continue;
            bool fits = !in.seed || monomial_matches_germ(m, *in.seed);
            exact_notes.push_back("monomial solution " + describe(m) + (fits ? "" : " (not the continued germ)"));
            if (fits && !exact_label)
                exact_label = Label::Rational;
        }
    if (in.exponentials)
        for (const auto& e : in.exponentials->matches) {
            if (!e.verified)
                continue;
            bool fits = !in.seed || exponential_matches_germ(e, *in.seed);
            std::string as;
            for (const auto& a : e.a_values)
                as += (as.empty() ? "" : ", ") + a.to_string(15);
            exact_notes.push_back("exponential solution " + e.describe() + " (a = " + as + ")" +
                                  ", exact back substitution residual 0" + (fits ? "" : " (not the continued germ)"));
            if (fits && !exact_label)
                exact_label = Label::RationalInExponential;
        }

    if (in.conditions && in.conditions->screening != Screening::Passed) {
        v.label = in.conditions->screening == Screening::EntireOnly ? Label::EntireOnly : Label::NoneWithPole;
        v.confidence = Confidence::Exact;
        v.evidence.push_back(std::string("screening: ") + to_string(in.conditions->screening));
        for (const auto& n : in.conditions->notes)
            v.evidence.push_back(n);
        for (const auto& n : exact_notes)
            v.evidence.push_back(n);
        return v;
    }
    for (const auto& n : exact_notes)
        v.evidence.push_back(n);
    if (exact_label) {
        v.label = *exact_label;
        v.confidence = Confidence::Exact;
        if (v.label == Label::Rational && in.seed && in.seed->n == 2 && in.seed->k == 2)
            v.evidence.push_back("degenerate elliptic case: the germ is the monomial limit of the elliptic family");
        return v;
    }
    if (in.sweep) {
        const auto& pr = in.sweep->periods;
        const auto& traj = in.sweep->trajectory;
        v.evidence.push_back(std::to_string(traj.poles.size()) + " poles located, max consistency defect " +
                             err_num(traj.max_defect));
        if (pr.rank == 2) {
            cplx ratio = *pr.ratio();
            if (std::abs(ratio.imag()) > 1e-4 * std::abs(ratio)) {
                v.label = Label::Elliptic;
                v.confidence = Confidence::Numeric;
                v.evidence.push_back("periods T1 = " + cnum(pr.periods[0], pr.errors[0]) + " +- " + err_num(pr.errors[0]) +
                                     ", T2 = " + cnum(pr.periods[1], pr.errors[1]) + " +- " + err_num(pr.errors[1]));
                v.evidence.push_back("period ratio T2/T1 = " + cnum(ratio, 1e-9));
                v.evidence.push_back("periods verified by state comparison at " + std::to_string(pr.verified_points) +
                                     " points");
                return v;
            }
        }
        if (pr.rank >= 1) {
            v.label = Label::RationalInExponential;
            v.confidence = Confidence::Numeric;
            v.evidence.push_back("one period T = " + cnum(pr.periods[0], pr.errors[0]) + " +- " + err_num(pr.errors[0]) +
                                 ", no independent second period within the sweep");
            return v;
        }
        if (traj.poles.size() == 1) {
            auto s = tail_exponent(traj);
            if (s && std::abs(*s - std::round(*s)) < 0.05) {
                v.label = Label::Rational;
                v.confidence = Confidence::Numeric;
                v.evidence.push_back("single pole in the sweep, |y| ~ |z|^" + num(std::round(*s)) + " on the outer rings");
                return v;
            }
        }
        for (const auto& n : pr.notes)
            v.evidence.push_back(n);
        for (const auto& n : in.sweep->notes)
            v.evidence.push_back(n);
    }
    v.label = Label::Undetermined;
    v.confidence = Confidence::Heuristic;
    return v;
}

} // namespace bbsolve
