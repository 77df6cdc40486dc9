#include "qmzv/report.hpp"

#include <json.hpp>

#include "qmzv/errors.hpp"

namespace qmzv {

using ojson = nlohmann::ordered_json;

ParamsSnapshot ParamsSnapshot::of(const Params& p, int lambda_order, const Rat& tolerance) {
    ParamsSnapshot s;
    s.q = rat_str(p.q_rat());
    s.xi = rat_str(p.xi_rat());
    s.eta = rat_str(p.eta_rat());
    s.prec_bits = static_cast<long>(p.prec_bits());
    s.max_terms = p.max_terms();
    s.lambda_order = lambda_order;
    s.tolerance = rat_str(tolerance);
    return s;
}

int Report::passes() const {
    int n = 0;
    for (const auto& c : cases) n += c.pass ? 1 : 0;
    return n;
}

int Report::failures() const { return static_cast<int>(cases.size()) - passes(); }

std::string report_to_json(const Report& r) {
    ojson j;
    j["command"] = r.command;
    j["params"] = {{"q", r.params.q},
                   {"xi", r.params.xi},
                   {"eta", r.params.eta},
                   {"prec_bits", r.params.prec_bits},
                   {"max_terms", r.params.max_terms},
                   {"lambda_order", r.params.lambda_order},
                   {"tolerance", r.params.tolerance}};
    j["cases"] = ojson::array();
    for (const auto& c : r.cases) {
        ojson jc;
        jc["input"] = c.input;
        jc["lhs"] = c.lhs.str();
        jc["rhs"] = c.rhs.str();
        jc["residual"] = c.residual.str();
        jc["tolerance"] = c.tolerance.str();
        jc["pass"] = c.pass;
        if (!c.error.empty()) jc["error"] = c.error;
        j["cases"].push_back(std::move(jc));
    }
    j["summary"] = {{"cases", r.cases.size()}, {"passes", r.passes()}, {"failures", r.failures()}};
    j["wall_time"] = r.wall_time;
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    ojson j = ojson::parse(text);
    Report r;
    r.command = j.at("command").get<std::string>();
    const auto& jp = j.at("params");
    r.params.q = jp.at("q").get<std::string>();
    r.params.xi = jp.at("xi").get<std::string>();
    r.params.eta = jp.at("eta").get<std::string>();
    r.params.prec_bits = jp.at("prec_bits").get<long>();
    r.params.max_terms = jp.at("max_terms").get<long>();
    r.params.lambda_order = jp.at("lambda_order").get<int>();
    r.params.tolerance = jp.at("tolerance").get<std::string>();
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(r.params.prec_bits);
    for (const auto& jc : j.at("cases")) {
        Residual c;
        c.input = jc.at("input").get<std::string>();
        c.lhs = Real::from_str(jc.at("lhs").get<std::string>(), prec);
        c.rhs = Real::from_str(jc.at("rhs").get<std::string>(), prec);
        c.residual = Real::from_str(jc.at("residual").get<std::string>(), prec);
        c.tolerance = Real::from_str(jc.at("tolerance").get<std::string>(), prec);
        c.pass = jc.at("pass").get<bool>();
        if (jc.contains("error")) c.error = jc.at("error").get<std::string>();
        r.cases.push_back(std::move(c));
    }
    r.wall_time = j.at("wall_time").get<double>();
    return r;
}

}  // namespace qmzv
