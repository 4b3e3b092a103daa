#pragma once

#include <bbsolve/curve.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bbsolve {

enum class BranchClass { KappaOne, KappaOnePlusKOverN, Inadmissible };

const char* to_string(BranchClass c);

struct BranchCondition {
    int branch_id = 0;
    Rational kappa;
    BranchClass cls = BranchClass::Inadmissible;
    int n = 0; // pole order when cls == KappaOnePlusKOverN
};

enum class Screening { Passed, EntireOnly, NoneWithPole };

const char* to_string(Screening s);

struct ConditionsReport {
    int k = 1;
    std::vector<BranchCondition> per_branch;
    int kappa_one_count = 0;
    std::vector<int> admissible_n; // sorted, distinct
    bool pole_solutions_possible = false;
    // k even, at most one kappa = 1 branch: a pole-bearing solution forces p dq to be exact.
    bool exactness_required = false;
    std::optional<bool> exactness_satisfied;
    // p has poles over finite q, which rules out transcendental meromorphic solutions.
    bool transcendental_excluded = false;
    Screening screening = Screening::Passed;
    std::optional<int> degree_bound;
    std::vector<std::string> notes;
};

// Classifies every branch by kappa and derives the admissible pole orders.
// `lead_in_p_constant` tells whether the coefficient of the highest power of p is constant in q.
ConditionsReport check_theorem_d(int k, const std::vector<PuiseuxBranch>& branches, bool lead_in_p_constant = true);

// Residue obstruction for even k. Throws HypothesisNotMet when k is odd or two or more branches
// have kappa = 1; callers record a note and keep the report unchanged.
ConditionsReport residue_screen(ConditionsReport report, const ExactnessVerdict& verdict, int k);

// Sum of n over (n, count) pairs, counting each distinct series. Throws EmptyInventory.
int degree_bound(const std::vector<std::pair<int, int>>& inventory);

} // namespace bbsolve
