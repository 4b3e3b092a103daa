#pragma once

#include <bbsolve/classify.hpp>

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bbsolve {

struct AnalysisOptions {
    std::optional<int> k;            // order for raw "P:" input without "; k="
    std::optional<std::string> c;    // first-integral constant: rational text or "free"
    std::optional<int> n;            // restrict series to one pole order
    int N = 12;                      // reported series truncation
    int classify_N = 40;             // truncation of the germ handed to continuation
    std::optional<int> depth;        // Puiseux depth floor
    mpfr_prec_t precision = algebra::default_precision;
    double tol = 1e-10;              // trajectory consistency defect
    double period_tol = 1e-4;
    std::optional<int> degree_cap;   // exponential ansatz cap
    bool classify = true;
    bool keep_trajectory = false;
};

struct AnalysisReport {
    std::string version;
    AnalysisOptions options;
    EquationSpec spec;
    NewtonPolygon polygon;
    std::vector<PuiseuxBranch> branches;
    int depth = 0;
    ConditionsReport conditions;
    std::optional<ExactnessVerdict> exactness;
    std::string c_mode; // "0", "free", ...
    std::vector<LaurentSeries> series;
    std::vector<int> series_residual_order;
    std::vector<std::string> series_notes;
    std::vector<MonomialSolution> monomials;
    std::optional<ExponentialSearch> exponentials;
    std::optional<SweepResult> sweep;
    std::optional<ClassificationVerdict> verdict;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;

    // 2 when screening rules out poles, else 0.
    int exit_code() const;
};

const char* tool_version();

// parse -> curve -> conditions -> series -> classify. Throws on invalid input.
AnalysisReport analyze(const std::string& equation, const AnalysisOptions& opt = {});

// Only the stages needed for the series and residues commands.
AnalysisReport analyze_series(const std::string& equation, const AnalysisOptions& opt = {});

nlohmann::ordered_json to_json(const AnalysisReport& report);
nlohmann::ordered_json series_json(const AnalysisReport& report);
nlohmann::ordered_json residues_json(const AnalysisReport& report);
nlohmann::ordered_json verdict_json(const AnalysisReport& report);

void write_text(std::ostream& os, const AnalysisReport& report);
void write_series_text(std::ostream& os, const AnalysisReport& report);
void write_residues_text(std::ostream& os, const AnalysisReport& report);
void write_verdict_text(std::ostream& os, const AnalysisReport& report);

// JSON lines: one record per step {z, chart, state, defect}, then one per pole {z, order, germ}.
void write_trajectory_dump(std::ostream& os, const Trajectory& trajectory);

// Invariant suites for `bbsolve selftest`; one line per suite, true when all pass.
bool run_selftest(std::ostream& os);

} // namespace bbsolve
