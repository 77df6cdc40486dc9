// Command-line harness: evaluators, identity verifiers, and named suites,
// all reporting through one deterministic JSON schema.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmzv/connect.hpp"
#include "qmzv/errors.hpp"
#include "qmzv/report.hpp"
#include "qmzv/series.hpp"
#include "qmzv/suites.hpp"
#include "qmzv/words.hpp"

using namespace qmzv;

namespace {

struct Options {
    std::string q = "1/2";
    std::string xi = "1/10";
    std::string eta = "7/100";
    long prec_bits = 192;
    int lambda_order = 6;
    int max_weight = -1;
    long max_terms = 1L << 16;
    std::string tolerance = "1e-10";
    bool tolerance_from_config = false;
    std::string w_expr;
    std::string json_path;

    std::string k_text;
    std::string l_text;
    std::string wp_expr;
    long m = 1;
    long n = 1;
    int e1 = 0;
    int e2 = 0;
    int samples = 100;
};

Params make_params(const Options& o) {
    Params p(parse_rat(o.q), parse_rat(o.xi), parse_rat(o.eta),
             static_cast<mpfr_prec_t>(o.prec_bits));
    p.set_max_terms(o.max_terms);
    return p;
}

Residual value_case(std::string input, const Real& value, const Real& budget) {
    Residual r;
    r.input = std::move(input);
    r.lhs = value;
    r.rhs = value;
    r.residual = Real(0, value.prec());
    r.tolerance = budget;
    r.pass = true;
    return r;
}

int emit(Report rep, const Options& o,
         std::chrono::steady_clock::time_point t0) {
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string text = report_to_json(rep);
    if (!o.json_path.empty()) {
        std::ofstream f(o.json_path);
        f << text;
    }
    std::cout << text;
    return rep.failures() == 0 ? 0 : 1;
}

/// --config JSON is applied as defaults before flags; flags win.
void preload_config(int argc, char** argv, Options& o) {
    std::string path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") path = argv[i + 1];
    if (path.empty()) return;
    std::ifstream f(path);
    if (!f) throw Error(Errc::invalid_params, "cannot open config file '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(f);
    if (j.contains("q")) o.q = j["q"].get<std::string>();
    if (j.contains("xi")) o.xi = j["xi"].get<std::string>();
    if (j.contains("eta")) o.eta = j["eta"].get<std::string>();
    if (j.contains("prec_bits")) o.prec_bits = j["prec_bits"].get<long>();
    if (j.contains("lambda_order")) o.lambda_order = j["lambda_order"].get<int>();
    if (j.contains("max_weight")) o.max_weight = j["max_weight"].get<int>();
    if (j.contains("max_terms")) o.max_terms = j["max_terms"].get<long>();
    if (j.contains("tolerance")) {
        o.tolerance = j["tolerance"].get<std::string>();
        o.tolerance_from_config = true;
    }
    if (j.contains("w_expr")) o.w_expr = j["w_expr"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    try {
        preload_config(argc, argv, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"high-precision evaluator and identity checker for nested q-series"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with the same keys as the flags");
    app.add_option("--q", o.q, "base q as an exact rational in (0,1)");
    app.add_option("--xi", o.xi, "first weight, rational in [0,1)");
    app.add_option("--eta", o.eta, "second weight, rational in [0,1)");
    app.add_option("--prec-bits", o.prec_bits, "working precision in bits");
    app.add_option("--lambda-order", o.lambda_order, "series truncation order N");
    app.add_option("--max-weight", o.max_weight, "index-family weight limit");
    app.add_option("--max-terms", o.max_terms, "hard cap on summation cutoffs");
    app.add_option("--tolerance", o.tolerance, "harness slack (rational)");
    app.add_option("--w-expr", o.w_expr, "expression over x y L R rationals");
    app.add_option("--json", o.json_path, "also write the report to this path");

    CLI::App* eval = app.add_subcommand("eval", "evaluate one quantity");
    eval->require_subcommand(1);
    CLI::App* ev_zeta = eval->add_subcommand("zeta", "nested zeta series");
    ev_zeta->add_option("--k", o.k_text, "index, comma-separated")->required();
    CLI::App* ev_o = eval->add_subcommand("O", "two-parameter generating series");
    ev_o->add_option("--k", o.k_text)->required();
    CLI::App* ev_os = eval->add_subcommand("ohno-sum", "composition-shift sum");
    ev_os->add_option("--k", o.k_text)->required();
    ev_os->add_option("--e1", o.e1);
    ev_os->add_option("--e2", o.e2);
    CLI::App* ev_ow = eval->add_subcommand("O-word", "lambda-extended series of --w-expr");

    CLI::App* verify = app.add_subcommand("verify", "check one identity instance");
    verify->require_subcommand(1);
    CLI::App* vf_tr = verify->add_subcommand("transport", "arrow transport at (k,l)");
    vf_tr->add_option("--k", o.k_text);
    vf_tr->add_option("--l", o.l_text);
    CLI::App* vf_dtr = verify->add_subcommand("double-transport", "two-arrow block moves");
    vf_dtr->add_option("--k", o.k_text);
    vf_dtr->add_option("--l", o.l_text);
    CLI::App* vf_init = verify->add_subcommand("initial", "boundary identity at k");
    vf_init->add_option("--k", o.k_text)->required();
    CLI::App* vf_qg = verify->add_subcommand("qgauss", "closed-form inner sum at m");
    vf_qg->add_option("--m", o.m);
    CLI::App* vf_key = verify->add_subcommand("key-identity", "exact rational kernel");
    vf_key->add_option("--samples", o.samples);
    CLI::App* vf_chain = verify->add_subcommand("dor-chain", "block-move chain to the dual");
    vf_chain->add_option("--k", o.k_text)->required();
    CLI::App* vf_alt = verify->add_subcommand("alt-connector", "reparametrized connector");
    vf_alt->add_option("--m", o.m);
    vf_alt->add_option("--n", o.n);
    CLI::App* vf_tel = verify->add_subcommand("telescope", "telescoping step at (m,n)");
    vf_tel->add_option("--m", o.m);
    vf_tel->add_option("--n", o.n);

    CLI::App* suite = app.add_subcommand("suite", "run a named case family");
    std::string suite_name;
    suite->add_option("name", suite_name, "one of the suite names, or 'all'")->required();

    for (CLI::App* s : {eval, verify, suite, ev_zeta, ev_o, ev_os, ev_ow, vf_tr, vf_dtr,
                        vf_init, vf_qg, vf_key, vf_chain, vf_alt, vf_tel})
        s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    try {
        Params p = make_params(o);
        Rat tol = parse_rat(o.tolerance);

        if (suite->parsed()) {
            SuiteScope scope;
            scope.max_weight = o.max_weight;
            scope.lambda_order = o.lambda_order;
            if (app.count("--tolerance") > 0 || o.tolerance_from_config) scope.tolerance = tol;
            Report rep = run_suite(suite_name, p, scope);
            rep.params = ParamsSnapshot::of(p, o.lambda_order,
                                            scope.tolerance ? *scope.tolerance : parse_rat(rep.params.tolerance));
            return emit(std::move(rep), o, t0);
        }

        Report rep;
        rep.params = ParamsSnapshot::of(p, o.lambda_order, tol);

        if (eval->parsed()) {
            SeriesEngine se{p};
            if (ev_zeta->parsed()) {
                Index k = Index::parse(o.k_text);
                Eval e = se.zeta(k);
                rep.command = "eval zeta";
                rep.cases.push_back(value_case("zeta(" + k.str() + ")", e.value,
                                               e.budget.tail_bound + e.budget.rounding_bound));
            } else if (ev_o->parsed()) {
                Index k = Index::parse(o.k_text);
                Eval e = se.big_o(k);
                rep.command = "eval O";
                rep.cases.push_back(value_case("O(" + k.str() + ")", e.value,
                                               e.budget.tail_bound + e.budget.rounding_bound));
            } else if (ev_os->parsed()) {
                Index k = Index::parse(o.k_text);
                Real v = se.ohno_sum(k, o.e1, o.e2);
                rep.command = "eval ohno-sum";
                rep.cases.push_back(value_case(
                    "ohno-sum(" + k.str() + ";" + std::to_string(o.e1) + "," +
                        std::to_string(o.e2) + ")",
                    v, Real(1000, p.prec_bits()) * p.target_abs_err()));
            } else if (ev_ow->parsed()) {
                if (o.w_expr.empty())
                    throw Error(Errc::invalid_params, "eval O-word needs --w-expr");
                se.validate_epsilon();
                LambdaPoly w = parse_expr(o.w_expr, o.lambda_order);
                WordEval e = se.big_o_word(w);
                rep.command = "eval O-word";
                rep.cases.push_back(value_case("O-word(" + o.w_expr + ")", e.value, e.lambda_tail));
            }
            return emit(std::move(rep), o, t0);
        }

        // verify subcommands
        ConnectEngine ce{p};
        ce.set_slack(tol);
        if (vf_tr->parsed()) {
            rep.command = "verify transport";
            for (auto& r : ce.transport_residuals(Index::parse(o.k_text), Index::parse(o.l_text)))
                rep.cases.push_back(std::move(r));
        } else if (vf_dtr->parsed()) {
            rep.command = "verify double-transport";
            for (auto& r :
                 ce.double_transport_residuals(Index::parse(o.k_text), Index::parse(o.l_text)))
                rep.cases.push_back(std::move(r));
        } else if (vf_init->parsed()) {
            rep.command = "verify initial";
            rep.cases.push_back(ce.initial_value_residual(Index::parse(o.k_text)));
        } else if (vf_qg->parsed()) {
            rep.command = "verify qgauss";
            rep.cases.push_back(ce.qgauss_residual(o.m));
        } else if (vf_key->parsed()) {
            rep.command = "verify key-identity";
            bool ok = ce.key_identity_check(o.samples);
            Residual r;
            r.input = "samples=" + std::to_string(o.samples);
            r.lhs = r.rhs = Real(0, p.prec_bits());
            r.residual = Real(ok ? 0 : 1, p.prec_bits());
            r.tolerance = Real(0, p.prec_bits());
            r.pass = ok;
            rep.cases.push_back(std::move(r));
        } else if (vf_chain->parsed()) {
            rep.command = "verify dor-chain";
            for (auto& r : ce.dor_chain(Index::parse(o.k_text))) rep.cases.push_back(std::move(r));
        } else if (vf_alt->parsed()) {
            rep.command = "verify alt-connector";
            Real a = ce.connector(o.m, o.n);
            Real b = ce.connector_alt(o.m, o.n);
            Residual r;
            r.input = "m=" + std::to_string(o.m) + " n=" + std::to_string(o.n);
            r.lhs = a;
            r.rhs = b;
            r.residual = abs(a - b);
            r.tolerance = Real(tol, p.prec_bits());
            r.pass = r.residual <= r.tolerance;
            rep.cases.push_back(std::move(r));
        } else if (vf_tel->parsed()) {
            rep.command = "verify telescope";
            rep.cases.push_back(ce.telescope_check(o.m, o.n));
        }
        return emit(std::move(rep), o, t0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
