#include <bbsolve/conditions.hpp>

#include <algorithm>
#include <set>

namespace bbsolve {

const char* to_string(BranchClass c)
{
    switch (c) {
    case BranchClass::KappaOne:
        return "kappa_one";
    case BranchClass::KappaOnePlusKOverN:
        return "kappa_one_plus_k_over_n";
    case BranchClass::Inadmissible:
        return "inadmissible";
    }
    return "?";
}

const char* to_string(Screening s)
{
    switch (s) {
    case Screening::Passed:
        return "passed";
    case Screening::EntireOnly:
        return "entire_only";
    case Screening::NoneWithPole:
        return "none_with_pole";
    }
    return "?";
}

namespace {

void fail(ConditionsReport& r, Screening s, const std::string& note)
{
    r.pole_solutions_possible = false;
    if (r.screening == Screening::Passed)
        r.screening = s;
    r.notes.push_back(note);
}

} // namespace

ConditionsReport check_theorem_d(int k, const std::vector<PuiseuxBranch>& branches, bool lead_in_p_constant)
{
    if (k < 1)
        throw Error(ErrorKind::PreconditionViolation, "k must be positive");
    ConditionsReport r;
    r.k = k;
    std::set<int> ns;
    bool inadmissible = false;
    for (const auto& br : branches) {
        BranchCondition bc;
        bc.branch_id = br.id;
        bc.kappa = br.kappa;
        if (br.kappa == 1) {
            bc.cls = BranchClass::KappaOne;
            ++r.kappa_one_count;
        } else if (br.kappa > 1) {
            Rational n = Rational(k) / (br.kappa - 1);
            if (n.get_den() == 1) {
                bc.cls = BranchClass::KappaOnePlusKOverN;
                bc.n = static_cast<int>(n.get_num().get_si());
                ns.insert(bc.n);
            }
        }
        if (bc.cls == BranchClass::Inadmissible) {
            inadmissible = true;
            r.notes.push_back("branch " + std::to_string(br.id) + ": kappa = " + algebra::to_string(br.kappa) +
                              " is neither 1 nor 1 + k/n with n a positive integer");
        } else if (bc.cls == BranchClass::KappaOnePlusKOverN) {
            r.notes.push_back("branch " + std::to_string(br.id) + ": kappa = " + algebra::to_string(br.kappa) +
                              " = 1 + " + std::to_string(k) + "/" + std::to_string(bc.n) + ", poles of order " +
                              std::to_string(bc.n));
        } else {
            r.notes.push_back("branch " + std::to_string(br.id) +
                              ": kappa = 1, the corresponding point is an omitted value (no poles there)");
        }
        r.per_branch.push_back(bc);
    }
    r.admissible_n.assign(ns.begin(), ns.end());
    r.pole_solutions_possible = true;
    if (inadmissible)
        fail(r, Screening::EntireOnly, "pole-order condition fails: no meromorphic solution with a pole; solutions, if any, are entire");
    if (r.kappa_one_count > 2)
        fail(r, Screening::NoneWithPole, "more than two places with kappa = 1 (omitted-value bound exceeded)");
    if (r.pole_solutions_possible && r.admissible_n.empty())
        fail(r, Screening::EntireOnly, "no place admits poles: solutions, if any, are entire");
    r.exactness_required = k % 2 == 0 && r.kappa_one_count <= 1;
    if (!lead_in_p_constant) {
        r.transcendental_excluded = true;
        r.notes.push_back("p has poles over finite q: transcendental meromorphic solutions are excluded, "
                          "rational solutions remain possible");
    }
    return r;
}

ConditionsReport residue_screen(ConditionsReport report, const ExactnessVerdict& verdict, int k)
{
    if (k % 2 != 0)
        throw Error(ErrorKind::HypothesisNotMet, "residue screen needs even k");
    if (report.kappa_one_count >= 2)
        throw Error(ErrorKind::HypothesisNotMet, "residue screen needs at most one place with kappa = 1");
    report.exactness_satisfied = verdict.exact;
    if (!verdict.exact) {
        std::string where;
        for (const auto& e : verdict.residues)
            if (!e.certified_zero) {
                where = e.place;
                break;
            }
        fail(report, Screening::NoneWithPole,
             "residue obstruction: p dq has nonzero residue at " + where + ", so no solution with a pole exists");
    } else {
        report.notes.push_back(verdict.global ? "p dq is exact (all residues vanish)"
                                              : "p dq has zero residues at the checked places (genus-0 assumed)");
    }
    return report;
}

int degree_bound(const std::vector<std::pair<int, int>>& inventory)
{
    int total = 0;
    for (const auto& [n, count] : inventory)
        total += n * count;
    if (total == 0)
        throw Error(ErrorKind::EmptyInventory, "no Laurent series: degree bound undefined");
    return total;
}

} // namespace bbsolve
