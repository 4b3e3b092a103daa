#include <bbsolve/report.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

struct Flags {
    std::string equation;
    std::optional<int> k;
    std::optional<std::string> c;
    std::optional<int> n;
    std::optional<int> N;
    std::optional<int> depth;
    std::optional<long> precision;
    std::optional<double> tol;
    std::optional<double> period_tol;
    std::optional<int> degree_cap;
    bool no_classify = false;
    std::string format = "text";
    std::string dump;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("equation", f.equation, "equation, e.g. \"y'' = 6*y^2\" or \"P: p^2 - 4*q^3 + 4*q ; k=1\"")
        ->required();
    cmd->add_option("--k", f.k, "order k for raw P input")->check(CLI::PositiveNumber);
    cmd->add_option("--precision", f.precision, "working precision in bits (default 256, env BBSOLVE_PRECISION)")
        ->check(CLI::Range(32L, 1L << 20));
    cmd->add_option("--depth", f.depth, "minimum Puiseux depth")->check(CLI::PositiveNumber);
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json"}));
}

void add_series_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--c", f.c, "first-integral constant (rational) or \"free\"");
    cmd->add_option("--N", f.N, "series truncation")->check(CLI::NonNegativeNumber);
}

void add_classify_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--tol", f.tol, "trajectory consistency tolerance (default 1e-10)")->check(CLI::PositiveNumber);
    cmd->add_option("--period-tol", f.period_tol, "period tolerance (default 1e-4)")->check(CLI::PositiveNumber);
    cmd->add_option("--degree-cap", f.degree_cap, "degree cap of the exponential ansatz")->check(CLI::PositiveNumber);
    cmd->add_option("--dump", f.dump, "write the sweep trajectory as JSON lines to this file");
}

bbsolve::AnalysisOptions options(const Flags& f)
{
    bbsolve::AnalysisOptions o;
    o.k = f.k;
    o.c = f.c;
    o.n = f.n;
    if (f.N)
        o.N = *f.N;
    o.depth = f.depth;
    if (f.precision) {
        o.precision = *f.precision;
    } else if (const char* env = std::getenv("BBSOLVE_PRECISION")) {
        long bits = std::strtol(env, nullptr, 10);
        if (bits < 32)
            throw std::runtime_error("BBSOLVE_PRECISION must be an integer >= 32");
        o.precision = bits;
    }
    if (f.tol)
        o.tol = *f.tol;
    if (f.period_tol)
        o.period_tol = *f.period_tol;
    o.degree_cap = f.degree_cap;
    o.classify = !f.no_classify;
    o.keep_trajectory = !f.dump.empty();
    return o;
}

void emit(const nlohmann::ordered_json& j)
{
    std::cout << j.dump(2) << "\n";
}

void dump_trajectory(const Flags& f, const bbsolve::AnalysisReport& r)
{
    if (f.dump.empty())
        return;
    std::ofstream out(f.dump);
    if (!out)
        throw std::runtime_error("cannot write " + f.dump);
    if (r.sweep)
        bbsolve::write_trajectory_dump(out, r.sweep->trajectory);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bbsolve: meromorphic solutions of P(y^(k), y) = 0"};
    app.set_version_flag("--version", std::string("bbsolve ") + bbsolve::tool_version());
    app.require_subcommand(1);
    Flags f;

    auto* analyze = app.add_subcommand("analyze", "full pipeline report");
    add_common(analyze, f);
    add_series_flags(analyze, f);
    add_classify_flags(analyze, f);
    analyze->add_flag("--no-classify", f.no_classify, "stop after the series stage");

    auto* series = app.add_subcommand("series", "formal Laurent series at a pole");
    add_common(series, f);
    add_series_flags(series, f);
    series->add_option("--n", f.n, "pole order")->check(CLI::PositiveNumber);

    auto* residues = app.add_subcommand("residues", "residues of p dq");
    add_common(residues, f);

    auto* classify = app.add_subcommand("classify", "verdict only");
    add_common(classify, f);
    add_series_flags(classify, f);
    add_classify_flags(classify, f);

    auto* selftest = app.add_subcommand("selftest", "run the invariant suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed())
            return bbsolve::run_selftest(std::cout) ? 0 : 1;
        bool json = f.format == "json";
        bbsolve::AnalysisOptions o = options(f);
        if (analyze->parsed()) {
            auto r = bbsolve::analyze(f.equation, o);
            dump_trajectory(f, r);
            if (json)
                emit(bbsolve::to_json(r));
            else
                bbsolve::write_text(std::cout, r);
            return r.exit_code();
        }
        if (series->parsed()) {
            auto r = bbsolve::analyze_series(f.equation, o);
            if (json)
                emit(bbsolve::series_json(r));
            else
                bbsolve::write_series_text(std::cout, r);
            return 0;
        }
        if (residues->parsed()) {
            auto r = bbsolve::analyze_series(f.equation, o);
            if (json)
                emit(bbsolve::residues_json(r));
            else
                bbsolve::write_residues_text(std::cout, r);
            return 0;
        }
        if (classify->parsed()) {
            auto r = bbsolve::analyze(f.equation, o);
            dump_trajectory(f, r);
            if (json)
                emit(bbsolve::verdict_json(r));
            else
                bbsolve::write_verdict_text(std::cout, r);
            return r.exit_code();
        }
    } catch (const bbsolve::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!f.equation.empty())
            std::cerr << "  " << f.equation << "\n  " << std::string(std::min(e.position(), f.equation.size()), ' ')
                      << "^\n";
        return 1;
    } catch (const bbsolve::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
