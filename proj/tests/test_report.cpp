#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "qmzv/errors.hpp"
#include "qmzv/report.hpp"
#include "qmzv/suites.hpp"

using namespace qmzv;

namespace {

Params defaults() { return Params(Rat(1, 2), Rat(1, 10), Rat(7, 100)); }

// Drop the wall_time line so two otherwise-identical reports compare equal.
std::string without_wall_time(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.find("\"wall_time\"") == std::string::npos) out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("serialization round-trips losslessly") {
    Params p = defaults();
    Report r;
    r.command = "unit";
    r.params = ParamsSnapshot::of(p, 6, Rat(1, 100));
    r.wall_time = 0.25;

    Residual a;
    a.input = "case a";
    a.lhs = Real(Rat(1, 3), p.prec_bits());
    a.rhs = Real(Rat(1, 3), p.prec_bits()) + Real(parse_rat("1e-40"), p.prec_bits());
    a.residual = abs(a.lhs - a.rhs);
    a.tolerance = Real(Rat(1, 100), p.prec_bits());
    a.pass = true;
    r.cases.push_back(a);

    Residual b;
    b.input = "case b";
    b.lhs = Real(0, p.prec_bits());
    b.rhs = Real(0, p.prec_bits());
    b.residual = Real(0, p.prec_bits());
    b.tolerance = Real(0, p.prec_bits());
    b.pass = false;
    b.error = "BudgetExceeded: synthetic";
    r.cases.push_back(b);

    std::string text = report_to_json(r);
    Report back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    CHECK(back.command == r.command);
    CHECK(back.params.q == "1/2");
    CHECK(back.params.tolerance == "1/100");
    REQUIRE(back.cases.size() == 2);
    CHECK(back.cases[0].lhs == a.lhs);
    CHECK(back.cases[0].residual == a.residual);
    CHECK(back.cases[0].pass);
    CHECK(!back.cases[1].pass);
    CHECK(back.cases[1].error == b.error);
    CHECK(back.wall_time == r.wall_time);

    CHECK(r.passes() == 1);
    CHECK(r.failures() == 1);
}

TEST_CASE("suite runs are deterministic up to wall_time") {
    Params p = defaults();
    SuiteScope scope;
    Report r1 = run_suite("qgauss", p, scope);
    Report r2 = run_suite("qgauss", p, scope);
    CHECK(without_wall_time(report_to_json(r1)) == without_wall_time(report_to_json(r2)));
    CHECK(report_to_json(r1).find("\"wall_time\"") != std::string::npos);
}

TEST_CASE("suite names and unknown-name rejection") {
    const auto& names = suite_names();
    for (const char* expected :
         {"duality", "single-ohno", "double-ohno", "extended", "transport", "initial",
          "qgauss", "key-identity", "alt-connector", "defects", "all"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());

    try {
        run_suite("nope", defaults(), SuiteScope{});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_params);
    }
}

TEST_CASE("duality suite covers the 63 indices and passes") {
    Report r = run_suite("duality", defaults(), SuiteScope{});
    CHECK(r.cases.size() == 63);
    CHECK(r.failures() == 0);
    CHECK(r.passes() == 63);
    CHECK(std::is_sorted(r.cases.begin(), r.cases.end(),
                         [](const Residual& a, const Residual& b) {
                             return a.input < b.input;
                         }));
}

TEST_CASE("per-case errors become failed cases, not exceptions") {
    Params p(Rat(99, 100), Rat(1, 10), Rat(7, 100));
    p.set_max_terms(256);
    Report r = run_suite("initial", p, SuiteScope{});
    REQUIRE(!r.cases.empty());
    CHECK(r.failures() == static_cast<int>(r.cases.size()));
    for (const Residual& c : r.cases) {
        CHECK(!c.pass);
        CHECK(c.error.find("BudgetExceeded") != std::string::npos);
    }
    // Still serializes and round-trips.
    Report back = report_from_json(report_to_json(r));
    CHECK(back.failures() == r.failures());
}

TEST_CASE("all-suite aggregates with prefixed, sorted inputs") {
    Params p = defaults();
    SuiteScope scope;
    scope.max_weight = 3;      // keep the aggregate run small
    scope.random_cases = 2;
    Report r = run_suite("all", p, scope);
    CHECK(r.command == "suite all");
    CHECK(r.failures() == 0);
    bool saw_prefix = false;
    for (const Residual& c : r.cases)
        if (c.input.rfind("qgauss: ", 0) == 0) saw_prefix = true;
    CHECK(saw_prefix);
    CHECK(std::is_sorted(r.cases.begin(), r.cases.end(),
                         [](const Residual& a, const Residual& b) {
                             return a.input < b.input;
                         }));
}
