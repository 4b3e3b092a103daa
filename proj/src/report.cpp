#include <bbsolve/report.hpp>
#include <bbsolve/algebra/squarefree.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace bbsolve {

using json = nlohmann::ordered_json;

const char* tool_version()
{
    return BBSOLVE_VERSION;
}

int AnalysisReport::exit_code() const
{
    if (conditions.screening != Screening::Passed)
        return 2;
    if (verdict && (verdict->label == Label::EntireOnly || verdict->label == Label::NoneWithPole))
        return 2;
    return 0;
}

namespace {

constexpr int digits = 20;

// Rounds to `sig` significant digits so that printed values do not depend on the last bits.
double round_sig(double x, int sig = 15)
{
    if (x == 0 || !std::isfinite(x))
        return x == 0 ? 0.0 : x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", sig - 1, x);
    return std::strtod(buf, nullptr);
}

// Two significant digits, rounded up.
double round_err(double e)
{
    if (e == 0 || !std::isfinite(e))
        return e;
    double unit = std::pow(10.0, std::floor(std::log10(e)) - 1);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1e", std::ceil(e / unit * (1 - 1e-12)) * unit);
    return std::strtod(buf, nullptr);
}

json number_json(const Number& x)
{
    return json{{"value", x.to_string(digits)}, {"err", round_err(x.err())}};
}

json complex_json(cplx z, double err)
{
    return json{{"re", round_sig(z.real())}, {"im", round_sig(z.imag())}, {"err", round_err(err)}};
}

std::string fmt(double x, int sig = 12)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, round_sig(x, sig));
    return buf;
}

std::string fmt(cplx z, int sig = 12)
{
    double re = round_sig(z.real(), sig);
    double im = round_sig(z.imag(), sig);
    if (im == 0)
        return fmt(re, sig);
    if (re == 0)
        return fmt(im, sig) + "*i";
    return fmt(re, sig) + (im < 0 ? " - " : " + ") + fmt(std::abs(im), sig) + "*i";
}

const char* basis(Label label)
{
    switch (label) {
    case Label::Rational:
        return "finitely many poles and a rational tail: y is rational";
    case Label::RationalInExponential:
        return "one period with bounded tails: y = R(exp(a z)) with R rational";
    case Label::Elliptic:
        return "two independent periods: y is elliptic";
    case Label::EntireOnly:
        return "no admissible pole order: solutions, if any, are entire";
    case Label::NoneWithPole:
        return "obstruction: no solution has a pole";
    case Label::Undetermined:
        return "the available evidence does not decide the class";
    }
    return "";
}

CMode make_mode(const AnalysisOptions& opt, int k, std::string& label)
{
    if (opt.c) {
        if (*opt.c == "free") {
            label = "free";
            return CMode::free_parameter();
        }
        algebra::Rational c = algebra::parse_rational(*opt.c);
        label = algebra::to_string(c);
        return CMode::fixed(Number(algebra::GaussianRational(c)));
    }
    if (k % 2 == 0) {
        label = "0";
        return CMode::fixed(Number(0));
    }
    label = "free";
    return CMode::free_parameter();
}

LaurentSeries truncate(const LaurentSeries& s, int N)
{
    LaurentSeries r = s;
    r.N = std::min(N, s.N);
    if (r.coeffs.size() > static_cast<std::size_t>(r.N + 1))
        r.coeffs.resize(static_cast<std::size_t>(r.N + 1));
    if (r.param_coeffs.size() > static_cast<std::size_t>(r.N + 1))
        r.param_coeffs.resize(static_cast<std::size_t>(r.N + 1));
    return r;
}

struct Pipeline {
    AnalysisReport rep;
    std::vector<LaurentSeries> deep; // series at the classification truncation
};

Pipeline run(const std::string& equation, const AnalysisOptions& opt, bool classify)
{
    Pipeline pl;
    AnalysisReport& rep = pl.rep;
    rep.version = tool_version();
    rep.options = opt;
    rep.spec = parse_equation(equation, opt.k);
    const EquationSpec& spec = rep.spec;
    const int k = spec.k;
    rep.polygon = newton_polygon(spec.P);
    rep.assumptions.push_back("irreducibility assumed");
    if (!algebra::squarefree_in_p(spec.P))
        rep.notes.push_back("P is not squarefree in p");

    bool lead_const = spec.P.coeff_x(spec.P.degree_x()).degree() <= 0;
    int floor_depth = std::max(opt.depth.value_or(0), 8);
    auto probe = branches_at_infinity(spec.P, floor_depth, spec.resolved, opt.precision);
    ConditionsReport probe_cond = check_theorem_d(k, probe, lead_const);

    int n_max = probe_cond.admissible_n.empty() ? 0 : probe_cond.admissible_n.back();
    int N_internal = classify ? std::max(opt.N, opt.classify_N) : opt.N;
    int depth = std::max({floor_depth, 4 * (n_max + k) + 8});
    for (const auto& bc : probe_cond.per_branch)
        if (bc.cls == BranchClass::KappaOnePlusKOverN && (!opt.n || *opt.n == bc.n))
            depth = std::max(depth, required_depth(probe[static_cast<std::size_t>(bc.branch_id)], bc.n, N_internal));
    rep.depth = depth;
    rep.branches = depth == floor_depth ? probe : branches_at_infinity(spec.P, depth, spec.resolved, opt.precision);
    rep.conditions = check_theorem_d(k, rep.branches, lead_const);

    try {
        rep.exactness = exactness_check(rep.branches, spec.resolved, opt.precision);
    } catch (const Error& e) {
        rep.notes.push_back(std::string("exactness check skipped: ") + e.what());
    }
    if (!spec.resolved || (rep.exactness && !rep.exactness->global))
        rep.assumptions.push_back("genus-0 assumed");
    if (k % 2 == 0 && rep.exactness) {
        try {
            rep.conditions = residue_screen(rep.conditions, *rep.exactness, k);
        } catch (const Error& e) {
            rep.notes.push_back(std::string("residue screen not applied: ") + e.what());
        }
    }

    CMode mode = make_mode(opt, k, rep.c_mode);
    SeriesDiagnostics diag;
    if (rep.conditions.screening == Screening::Passed) {
        for (const auto& bc : rep.conditions.per_branch) {
            if (bc.cls != BranchClass::KappaOnePlusKOverN || (opt.n && *opt.n != bc.n))
                continue;
            try {
                auto got = enumerate_series(spec, rep.branches[static_cast<std::size_t>(bc.branch_id)], bc.n, mode,
                                            N_internal, &diag, opt.precision);
                for (auto& s : got)
                    pl.deep.push_back(std::move(s));
            } catch (const Error& e) {
                rep.series_notes.push_back("branch " + std::to_string(bc.branch_id) + ", n = " +
                                           std::to_string(bc.n) + ": " + e.what());
            }
        }
    }
    for (const auto& s : diag.notes)
        rep.series_notes.push_back(s);
    for (const auto& s : pl.deep) {
        rep.series.push_back(truncate(s, opt.N));
        rep.series_residual_order.push_back(verify_series(spec, rep.series.back()));
    }

    std::map<int, int> inventory;
    for (const auto& s : rep.series)
        ++inventory[s.n];
    if (!inventory.empty()) {
        rep.conditions.degree_bound = degree_bound({inventory.begin(), inventory.end()});
        rep.assumptions.push_back("heuristic bound");
        if (mode.free())
            rep.notes.push_back("degree bound counts germs at b = 0 of the free resonant parameter");
    }
    return pl;
}

} // namespace

AnalysisReport analyze_series(const std::string& equation, const AnalysisOptions& opt)
{
    return run(equation, opt, false).rep;
}

AnalysisReport analyze(const std::string& equation, const AnalysisOptions& opt)
{
    Pipeline pl = run(equation, opt, opt.classify);
    AnalysisReport& rep = pl.rep;
    const EquationSpec& spec = rep.spec;
    ClassifyInputs in;
    in.conditions = &rep.conditions;
    in.series = &rep.series;
    const LaurentSeries* seed = pl.deep.empty() ? nullptr : &pl.deep.front();
    in.seed = seed;
    if (opt.classify) {
        std::optional<std::vector<int>> ns;
        if (!rep.conditions.admissible_n.empty())
            ns = rep.conditions.admissible_n;
        rep.monomials = match_monomial(spec, ns, opt.precision);
        in.monomials = &rep.monomials;
        if (rep.conditions.kappa_one_count <= 2 || opt.degree_cap) {
            int cap = opt.degree_cap.value_or(rep.conditions.degree_bound.value_or(6));
            rep.exponentials = match_exponential(spec, cap, opt.precision);
            in.exponentials = &*rep.exponentials;
        }
        bool exact_fit = false;
        if (seed) {
            for (const auto& m : rep.monomials)
                exact_fit = exact_fit || (m.verified && monomial_matches_germ(m, *seed));
            if (rep.exponentials)
                for (const auto& e : rep.exponentials->matches)
                    exact_fit = exact_fit || (e.verified && exponential_matches_germ(e, *seed));
        }
        if (seed && rep.conditions.screening == Screening::Passed) {
            if (exact_fit) {
                rep.notes.push_back("period sweep skipped: the germ is an exact closed-form solution");
            } else {
                SweepOptions so;
                so.trajectory.tol = opt.tol;
                so.period_tol = opt.period_tol;
                try {
                    rep.sweep = sweep_for_periods(spec, *seed, pl.deep, so);
                    in.sweep = &*rep.sweep;
                } catch (const Error& e) {
                    rep.notes.push_back(std::string("period sweep failed: ") + e.what());
                }
            }
        }
    }
    rep.verdict = assemble_verdict(in);
    if (rep.sweep && !opt.keep_trajectory)
        rep.sweep->trajectory.steps.clear();
    return rep;
}

// ---- JSON ----------------------------------------------------------------------------------

namespace {

json settings_json(const AnalysisReport& r)
{
    return json{{"precision_bits", r.options.precision},
                {"trajectory_tol", r.options.tol},
                {"period_tol", r.options.period_tol},
                {"N", r.options.N},
                {"classify_N", r.options.classify_N},
                {"depth", r.depth},
                {"c", r.c_mode}};
}

json input_json(const AnalysisReport& r)
{
    json j{{"text", r.spec.source_text}, {"canonical", canonical_string(r.spec)}, {"k", r.spec.k}};
    j["resolved"] = r.spec.resolved ? json(r.spec.resolved->to_string("q")) : json(nullptr);
    return j;
}

json polygon_json(const NewtonPolygon& np)
{
    json support = json::array();
    for (const auto& [a, b] : np.support)
        support.push_back({a, b});
    json edges = json::array();
    for (const auto& e : np.upper_edges)
        edges.push_back(json{{"from", {e.from.first, e.from.second}},
                             {"to", {e.to.first, e.to.second}},
                             {"slope", algebra::to_string(e.slope)},
                             {"kappa", algebra::to_string(e.kappa)}});
    return json{{"support", support}, {"upper_edges", edges}};
}

json branches_json(const std::vector<PuiseuxBranch>& branches)
{
    json out = json::array();
    for (const auto& b : branches) {
        json coeffs = json::array();
        for (std::size_t i = 0; i < b.coeffs.size() && i < 6; ++i)
            coeffs.push_back(json{{"exponent", algebra::to_string(b.exponent(i))}, {"coeff", number_json(b.coeffs[i])}});
        out.push_back(json{{"id", b.id},
                           {"m", b.m},
                           {"kappa", algebra::to_string(b.kappa)},
                           {"terminating", b.terminating},
                           {"exact", b.exact},
                           {"leading_terms", coeffs}});
    }
    return out;
}

json conditions_json(const ConditionsReport& c)
{
    json per = json::array();
    for (const auto& b : c.per_branch) {
        json e{{"branch", b.branch_id}, {"kappa", algebra::to_string(b.kappa)}, {"class", to_string(b.cls)}};
        e["n"] = b.cls == BranchClass::KappaOnePlusKOverN ? json(b.n) : json(nullptr);
        per.push_back(e);
    }
    json j{{"per_branch", per},
           {"kappa_one_count", c.kappa_one_count},
           {"admissible_n", c.admissible_n},
           {"pole_solutions_possible", c.pole_solutions_possible},
           {"exactness_required", c.exactness_required}};
    j["exactness_satisfied"] = c.exactness_satisfied ? json(*c.exactness_satisfied) : json(nullptr);
    j["transcendental_excluded"] = c.transcendental_excluded;
    j["screening"] = to_string(c.screening);
    if (c.degree_bound)
        j["degree_bound"] = json{{"value", *c.degree_bound}, {"kind", "heuristic bound"}};
    else
        j["degree_bound"] = nullptr;
    j["notes"] = c.notes;
    return j;
}

json exactness_json(const ExactnessVerdict& v)
{
    json rows = json::array();
    for (const auto& e : v.residues) {
        json row{{"place", e.place}};
        row["branch"] = e.branch_id >= 0 ? json(e.branch_id) : json(nullptr);
        row["location"] = e.location ? number_json(*e.location) : json(nullptr);
        row["residue"] = number_json(e.value);
        row["certified_zero"] = e.certified_zero;
        rows.push_back(row);
    }
    json j{{"exact", v.exact}, {"global", v.global}, {"residues", rows}};
    j["antiderivative"] = v.antiderivative ? json(v.antiderivative->to_string("q")) : json(nullptr);
    j["notes"] = v.notes;
    return j;
}

json germ_json(const LaurentSeries& s, int residual_order)
{
    json coeffs = json::array();
    for (std::size_t j = 0; j < s.coeffs.size(); ++j) {
        json e{{"exponent", static_cast<long>(j) - s.n}};
        const auto* pc = j < s.param_coeffs.size() ? &s.param_coeffs[j] : nullptr;
        if (pc && pc->degree() > 0)
            e["symbolic"] = pc->to_string("b", [](const Number& x) { return x.to_string(digits); });
        e["value"] = number_json(s.coeffs[j]);
        coeffs.push_back(e);
    }
    json g{{"n", s.n}, {"branch", s.branch_id}, {"root_index", s.root_index}, {"resonance", to_string(s.resonance)}};
    g["resonance_index"] = s.resonance == Resonance::None ? json(nullptr) : json(s.resonance_index());
    g["c"] = s.c ? number_json(*s.c) : json("free");
    g["N"] = s.N;
    g["coefficients"] = coeffs;
    g["residual_order"] = residual_order;
    g["verified_through_N"] = residual_order > s.N;
    return g;
}

json monomial_json(const MonomialSolution& m)
{
    json j{{"n", m.n}, {"defining_polynomial", to_string(m.defining, "c")}, {"c", number_json(m.c)}};
    j["exact_c"] = m.exact ? json(m.exact->to_string()) : json(nullptr);
    j["verified"] = m.verified;
    return j;
}

json exponential_json(const ExponentialSearch& s)
{
    json matches = json::array();
    for (const auto& e : s.matches) {
        json as = json::array();
        for (const auto& a : e.a_values)
            as.push_back(number_json(a));
        matches.push_back(json{{"y0", e.y0.to_string()},
                               {"lambda", e.lambda.to_string()},
                               {"R", e.describe()},
                               {"numerator", to_string(e.num, "w")},
                               {"denominator", to_string(e.den, "w")},
                               {"a", as},
                               {"verified", e.verified}});
    }
    return json{{"matches", matches}, {"notes", s.notes}};
}

json periods_json(const PeriodResult& p)
{
    json ps = json::array();
    for (std::size_t i = 0; i < p.periods.size(); ++i)
        ps.push_back(complex_json(p.periods[i], i < p.errors.size() ? p.errors[i] : 0.0));
    json j{{"rank", p.rank}, {"periods", ps}};
    if (auto r = p.ratio()) {
        double e = p.errors.size() > 1 ? std::abs(*r) * (p.errors[0] / std::abs(p.periods[0]) + p.errors[1] / std::abs(p.periods[1])) : 0.0;
        j["ratio"] = complex_json(*r, e);
    } else {
        j["ratio"] = nullptr;
    }
    j["verified_points"] = p.verified_points;
    j["notes"] = p.notes;
    return j;
}

json sweep_json(const SweepResult& s)
{
    json poles = json::array();
    for (const auto& p : s.trajectory.poles) {
        json e{{"z", complex_json(p.z, p.err)}, {"order", p.order}, {"c0", complex_json(p.c0, 0.0)}};
        e["germ"] = p.germ >= 0 ? json(p.germ) : json(nullptr);
        poles.push_back(e);
    }
    return json{{"scale", round_sig(s.scale)},
                {"max_defect", round_err(s.trajectory.max_defect)},
                {"poles", poles},
                {"periods", periods_json(s.periods)},
                {"notes", s.notes}};
}

json verdict_body(const ClassificationVerdict& v)
{
    json j{{"label", to_string(v.label)}, {"confidence", to_string(v.confidence)}, {"basis", basis(v.label)}};
    if (v.degree_bound)
        j["degree_bound"] = json{{"value", *v.degree_bound}, {"kind", "heuristic bound"}};
    else
        j["degree_bound"] = nullptr;
    j["evidence"] = v.evidence;
    return j;
}

json series_block(const AnalysisReport& r)
{
    json germs = json::array();
    for (std::size_t i = 0; i < r.series.size(); ++i)
        germs.push_back(germ_json(r.series[i], r.series_residual_order[i]));
    return json{{"c", r.c_mode}, {"germs", germs}, {"notes", r.series_notes}};
}

json header(const AnalysisReport& r)
{
    return json{{"schema", "bbsolve-analysis/1"}, {"version", r.version}, {"input", input_json(r)},
                {"settings", settings_json(r)}};
}

} // namespace

json to_json(const AnalysisReport& r)
{
    json j = header(r);
    j["newton_polygon"] = polygon_json(r.polygon);
    j["branches"] = branches_json(r.branches);
    j["conditions"] = conditions_json(r.conditions);
    j["exactness"] = r.exactness ? exactness_json(*r.exactness) : json(nullptr);
    j["series"] = series_block(r);
    if (r.options.classify) {
        json c;
        json ms = json::array();
        for (const auto& m : r.monomials)
            ms.push_back(monomial_json(m));
        c["monomials"] = ms;
        c["exponentials"] = r.exponentials ? exponential_json(*r.exponentials) : json(nullptr);
        c["sweep"] = r.sweep ? sweep_json(*r.sweep) : json(nullptr);
        j["classification"] = c;
    } else {
        j["classification"] = nullptr;
    }
    j["verdict"] = r.verdict ? verdict_body(*r.verdict) : json(nullptr);
    j["assumptions"] = r.assumptions;
    j["notes"] = r.notes;
    return j;
}

json series_json(const AnalysisReport& r)
{
    json j = header(r);
    j["series"] = series_block(r);
    j["assumptions"] = r.assumptions;
    return j;
}

json residues_json(const AnalysisReport& r)
{
    json j = header(r);
    j["exactness"] = r.exactness ? exactness_json(*r.exactness) : json(nullptr);
    j["assumptions"] = r.assumptions;
    return j;
}

json verdict_json(const AnalysisReport& r)
{
    json j = header(r);
    j["conditions"] = conditions_json(r.conditions);
    j["verdict"] = r.verdict ? verdict_body(*r.verdict) : json(nullptr);
    j["assumptions"] = r.assumptions;
    j["notes"] = r.notes;
    return j;
}

// ---- text ----------------------------------------------------------------------------------

namespace {

void text_header(std::ostream& os, const AnalysisReport& r)
{
    os << "bbsolve " << r.version << "\n";
    os << "equation: " << canonical_string(r.spec) << "\n";
    if (r.spec.resolved)
        os << "resolved: y^(" << r.spec.k << ") = " << r.spec.resolved->to_string("q") << "\n";
    os << "precision: " << r.options.precision << " bits, trajectory tol " << fmt(r.options.tol, 3)
       << ", period tol " << fmt(r.options.period_tol, 3) << "\n";
}

void text_list(std::ostream& os, const char* title, const std::vector<std::string>& items)
{
    if (items.empty())
        return;
    os << title << ":\n";
    for (const auto& s : items)
        os << "  - " << s << "\n";
}

} // namespace

void write_series_text(std::ostream& os, const AnalysisReport& r)
{
    os << "series (c = " << r.c_mode << "): " << r.series.size() << " germ(s)\n";
    for (std::size_t i = 0; i < r.series.size(); ++i) {
        const auto& s = r.series[i];
        os << "  germ " << i << ": n = " << s.n << ", branch " << s.branch_id << ", resonance " << to_string(s.resonance);
        if (s.resonance != Resonance::None)
            os << " at index " << s.resonance_index();
        os << ", residual order " << r.series_residual_order[i] << (r.series_residual_order[i] > s.N ? " (verified)" : "")
           << "\n";
        for (std::size_t j = 0; j < s.coeffs.size(); ++j) {
            const auto* pc = j < s.param_coeffs.size() ? &s.param_coeffs[j] : nullptr;
            os << "    z^" << static_cast<long>(j) - s.n << ": ";
            if (pc && pc->degree() > 0)
                os << pc->to_string("b", [](const Number& x) { return x.to_string(digits); });
            else
                os << s.coeffs[j].to_string(digits);
            if (s.coeffs[j].err() > 0)
                os << "  (+- " << fmt(round_err(s.coeffs[j].err()), 2) << ")";
            os << "\n";
        }
    }
    text_list(os, "series notes", r.series_notes);
}

void write_residues_text(std::ostream& os, const AnalysisReport& r)
{
    if (!r.exactness) {
        os << "residues: not computed\n";
        return;
    }
    const auto& v = *r.exactness;
    os << "residues of p dq:\n";
    for (const auto& e : v.residues) {
        os << "  " << e.place << ": " << e.value.to_string(digits);
        if (e.value.err() > 0)
            os << " (+- " << fmt(round_err(e.value.err()), 2) << ")";
        os << (e.certified_zero ? "  certified zero" : "") << "\n";
    }
    os << "p dq exact: " << (v.exact ? "yes" : "no") << (v.global ? " (all places)" : " (places over q = infinity)")
       << "\n";
    if (v.antiderivative)
        os << "s(q) = " << v.antiderivative->to_string("q") << "\n";
    text_list(os, "notes", v.notes);
}

void write_verdict_text(std::ostream& os, const AnalysisReport& r)
{
    if (!r.verdict)
        return;
    const auto& v = *r.verdict;
    os << "verdict: " << to_string(v.label) << " (" << to_string(v.confidence) << ")\n";
    os << "  basis: " << basis(v.label) << "\n";
    if (v.degree_bound)
        os << "  degree bound: " << *v.degree_bound << " (heuristic bound)\n";
    for (const auto& e : v.evidence)
        os << "  evidence: " << e << "\n";
}

void write_text(std::ostream& os, const AnalysisReport& r)
{
    text_header(os, r);
    os << "branches at q = infinity:\n";
    for (const auto& b : r.branches)
        os << "  branch " << b.id << ": m = " << b.m << ", kappa = " << algebra::to_string(b.kappa)
           << ", lead " << b.lead().to_string(digits) << "\n";
    os << "screening: " << to_string(r.conditions.screening) << "\n";
    os << "admissible pole orders:";
    for (int n : r.conditions.admissible_n)
        os << " " << n;
    os << (r.conditions.admissible_n.empty() ? " none\n" : "\n");
    text_list(os, "conditions", r.conditions.notes);
    write_residues_text(os, r);
    write_series_text(os, r);
    if (r.options.classify) {
        for (const auto& m : r.monomials)
            os << "monomial: y = c*z^-" << m.n << ", " << to_string(m.defining, "c") << " = 0, c = "
               << m.c.to_string(digits) << (m.verified ? " (verified exactly)" : "") << "\n";
        if (r.exponentials) {
            for (const auto& e : r.exponentials->matches)
                os << "exponential: " << e.describe() << (e.verified ? " (verified exactly)" : "") << "\n";
            text_list(os, "exponential search", r.exponentials->notes);
        }
        if (r.sweep) {
            const auto& s = *r.sweep;
            os << "sweep: " << s.trajectory.poles.size() << " poles, max defect " << fmt(s.trajectory.max_defect, 3)
               << ", period rank " << s.periods.rank << "\n";
            for (std::size_t i = 0; i < s.periods.periods.size(); ++i)
                os << "  T" << i + 1 << " = " << fmt(s.periods.periods[i]) << " (+- "
                   << fmt(round_err(s.periods.errors[i]), 2) << ")\n";
            if (auto q = s.periods.ratio())
                os << "  T2/T1 = " << fmt(*q) << "\n";
        }
    }
    write_verdict_text(os, r);
    text_list(os, "assumptions", r.assumptions);
    text_list(os, "notes", r.notes);
}

void write_trajectory_dump(std::ostream& os, const Trajectory& t)
{
    for (const auto& s : t.steps) {
        json state = json::array();
        double f = 1.0;
        for (int j = 0; j <= t.k && j < static_cast<int>(s.taylor.size()); ++j) {
            if (j > 0)
                f *= j;
            cplx v = s.taylor[static_cast<std::size_t>(j)] * f;
            state.push_back({round_sig(v.real()), round_sig(v.imag())});
        }
        json rec{{"z", {round_sig(s.z.real()), round_sig(s.z.imag())}},
                 {"chart", s.chart == Chart::Y ? "y" : "u"},
                 {"state", state},
                 {"defect", round_err(s.defect)}};
        os << rec.dump() << "\n";
    }
    for (const auto& p : t.poles) {
        json rec{{"pole", {round_sig(p.z.real()), round_sig(p.z.imag())}}, {"order", p.order}};
        rec["germ"] = p.germ >= 0 ? json(p.germ) : json(nullptr);
        os << rec.dump() << "\n";
    }
}

} // namespace bbsolve
