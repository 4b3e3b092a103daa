#include <doctest.h>

#include <bbsolve/report.hpp>

#include <sstream>

using namespace bbsolve;

TEST_CASE("report for y'' = 6 y^2")
{
    auto r = analyze("y'' = 6*y^2");
    CHECK(r.exit_code() == 0);
    REQUIRE(r.verdict);
    CHECK(r.verdict->confidence == Confidence::Exact);
    REQUIRE(r.series.size() == 1);
    REQUIRE(r.monomials.size() == 1);
    CHECK(r.monomials[0].n == 2);
    auto j = to_json(r);
    CHECK(j["conditions"]["admissible_n"][0] == 2);
    CHECK(j["exactness"]["exact"] == true);
    CHECK(j["assumptions"][0] == "irreducibility assumed");
}

TEST_CASE("screened equations exit with code 2")
{
    auto r = analyze("y'' = y^4");
    CHECK(r.exit_code() == 2);
    CHECK(r.verdict->label == Label::EntireOnly);
    auto s = analyze("y'' = 4*y^3 + 1/y");
    CHECK(s.exit_code() == 2);
    CHECK(s.verdict->label == Label::NoneWithPole);
}

TEST_CASE("general input records the genus-0 assumption")
{
    AnalysisOptions opt;
    opt.classify = false;
    auto r = analyze("P: p^2 - 4*q^3 + 4*q ; k=1", opt);
    bool genus = false;
    for (const auto& a : r.assumptions)
        genus = genus || a == "genus-0 assumed";
    CHECK(genus);
    CHECK(to_json(r)["classification"].is_null());
}

TEST_CASE("JSON output is reproducible")
{
    auto a = to_json(analyze("y'' = 6*y^2 - 2")).dump(2);
    auto b = to_json(analyze("y'' = 6*y^2 - 2")).dump(2);
    CHECK(a == b);
}

TEST_CASE("series command options")
{
    AnalysisOptions opt;
    opt.c = "free";
    opt.N = 8;
    auto r = analyze_series("y'' = 6*y^2", opt);
    REQUIRE(r.series.size() == 1);
    CHECK(r.series[0].resonance == Resonance::Free);
    CHECK(r.series[0].coeffs.size() == 9);
    std::ostringstream os;
    write_series_text(os, r);
    CHECK(os.str().find("free") != std::string::npos);
}

TEST_CASE("trajectory dump lines")
{
    AnalysisOptions opt;
    opt.keep_trajectory = true;
    auto r = analyze("y' = y^2 + 1", opt);
    // Exact closed form found, so no sweep.
    CHECK_FALSE(r.sweep.has_value());
    auto s = analyze("y'' = 6*y^2 - 2", opt);
    REQUIRE(s.sweep);
    std::ostringstream os;
    write_trajectory_dump(os, s.sweep->trajectory);
    auto text = os.str();
    CHECK(text.find("\"state\"") != std::string::npos);
    CHECK(text.find("\"pole\"") != std::string::npos);
}
