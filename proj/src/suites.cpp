#include "qmzv/suites.hpp"

#include <algorithm>
#include <cstdio>
#include <chrono>
#include <random>

#include "qmzv/connect.hpp"
#include "qmzv/errors.hpp"
#include "qmzv/indices.hpp"
#include "qmzv/series.hpp"
#include "qmzv/words.hpp"

namespace qmzv {

namespace {

Rat pow10_neg(int k) { return Rat(1) / rat_pow(Rat(10), k); }

Residual mk(std::string input, const Real& lhs, const Real& rhs, const Real& budget,
            const Real& slack) {
    Residual r;
    r.input = std::move(input);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = abs(lhs - rhs);
    r.tolerance = budget + slack;
    r.pass = r.residual <= r.tolerance;
    return r;
}

std::string show(const Index& k) { return "(" + k.str() + ")"; }

Real budget_of(const Eval& e) { return e.budget.tail_bound + e.budget.rounding_bound; }

/// Runs one case; an exception becomes a failed case tagged with the error.
template <class F>
void guard(std::vector<Residual>& out, mpfr_prec_t prec, const std::string& input, F&& f) {
    try {
        out.push_back(f());
    } catch (const std::exception& e) {
        Residual r;
        r.input = input;
        r.lhs = r.rhs = r.residual = r.tolerance = Real(0, prec);
        r.pass = false;
        r.error = e.what();
        out.push_back(r);
    }
}

template <class F>
void guard_many(std::vector<Residual>& out, mpfr_prec_t prec, const std::string& input, F&& f) {
    try {
        for (auto& r : f()) out.push_back(std::move(r));
    } catch (const std::exception& e) {
        Residual r;
        r.input = input;
        r.lhs = r.rhs = r.residual = r.tolerance = Real(0, prec);
        r.pass = false;
        r.error = e.what();
        out.push_back(r);
    }
}

Params derive(const Params& p, const Rat& xi, const Rat& eta) {
    Params d(p.q_rat(), xi, eta, p.prec_bits(), p.target_abs_err_rat());
    d.set_max_terms(p.max_terms());
    return d;
}

std::vector<Residual> duality_cases(const Params& p, int W, const Real& slack) {
    SeriesEngine se{p};
    std::vector<Residual> out;
    for (const Index& k : admissible_up_to_weight(W)) {
        Index d = dual(k);
        guard(out, p.prec_bits(), "k=" + show(k), [&] {
            Eval a = se.zeta(k);
            Eval b = se.zeta(d);
            return mk("k=" + show(k) + " dual=" + show(d), a.value, b.value,
                      budget_of(a) + budget_of(b), slack);
        });
    }
    return out;
}

std::vector<Residual> single_ohno_cases(const Params& p, int W, const Real& slack) {
    SeriesEngine se{derive(p, p.xi_rat(), Rat(0))};
    std::vector<Residual> out;
    for (const Index& k : admissible_up_to_weight(W)) {
        Index d = dual(k);
        guard(out, p.prec_bits(), "k=" + show(k), [&] {
            Eval a = se.big_o(k);
            Eval b = se.big_o(d);
            return mk("k=" + show(k) + " dual=" + show(d), a.value, b.value,
                      budget_of(a) + budget_of(b), slack);
        });
    }
    return out;
}

std::vector<Residual> double_ohno_cases(const Params& p, int W, const Real& slack) {
    SeriesEngine se{p};
    const mpfr_prec_t prec = p.prec_bits();
    std::vector<Residual> out;
    Real flat = Real(1000, prec) * p.target_abs_err();
    for (const Index& k : admissible_up_to_weight(W)) {
        if (!is_bbbl(k)) continue;
        Index d = dual(k);
        guard(out, prec, "O k=" + show(k), [&] {
            Eval a = se.big_o(k);
            Eval b = se.big_o(d);
            return mk("O k=" + show(k) + " dual=" + show(d), a.value, b.value,
                      budget_of(a) + budget_of(b), slack);
        });
        for (int e1 = 0; e1 <= 3; ++e1)
            for (int e2 = 0; e1 + e2 <= 3; ++e2) {
                std::string input = "ohno k=" + show(k) + " e1=" + std::to_string(e1) +
                                    " e2=" + std::to_string(e2);
                guard(out, prec, input, [&] {
                    Real a = se.ohno_sum(k, e1, e2);
                    Real b = se.ohno_sum(d, e1, e2);
                    return mk(input, a, b, flat, slack);
                });
            }
    }
    return out;
}

std::vector<Residual> extended_cases(const Params& p, int N, int R, unsigned long seed,
                                     const Real& slack) {
    SeriesEngine se{p};
    se.validate_epsilon();
    const mpfr_prec_t prec = p.prec_bits();
    Real flat = Real(1000, prec) * p.target_abs_err();
    std::vector<std::string> exprs = {"x", "y", "xx", "xyx", "R", "xR", "yRx"};
    std::mt19937_64 rng(seed);
    const char atoms[] = {'x', 'y', 'L', 'R'};
    auto rand_term = [&] {
        std::string t = std::to_string(1 + rng() % 5);
        if (rng() % 2) t += "/" + std::to_string(1 + rng() % 3);
        int natoms = static_cast<int>(rng() % 3);
        for (int i = 0; i < natoms; ++i) t += atoms[rng() % 4];
        return t;
    };
    for (int i = 0; i < R; ++i)
        exprs.push_back(rand_term() + (rng() % 2 ? "+" : "-") + rand_term());
    std::vector<Residual> out;
    for (const std::string& text : exprs) {
        std::string input = "w=" + text;
        guard(out, prec, input, [&] {
            LambdaPoly w = parse_expr(text, N);
            WordEval a = se.big_o_word(w);
            WordEval b = se.big_o_word(tau(w));
            return mk(input, a.value, b.value, a.lambda_tail + b.lambda_tail + flat, slack);
        });
    }
    return out;
}

std::vector<Residual> transport_cases(const Params& p, int R, unsigned long seed, const Rat& tol) {
    ConnectEngine ce{p};
    ce.set_slack(tol);
    std::mt19937_64 rng(seed);
    auto rand_index = [&rng](bool allow_empty) {
        long d = allow_empty ? static_cast<long>(rng() % 4) : 1 + static_cast<long>(rng() % 3);
        std::vector<int> parts;
        for (long i = 0; i < d; ++i) parts.push_back(1 + static_cast<int>(rng() % 3));
        return Index(parts);
    };
    std::vector<Residual> out;
    for (int i = 0; i < R; ++i) {
        Index k = rand_index(true);
        Index l = rand_index(true);
        if (k.empty() && l.empty()) l = rand_index(false);
        std::string input = "pair k=" + show(k) + " l=" + show(l);
        guard_many(out, p.prec_bits(), input, [&] { return ce.transport_residuals(k, l); });
        guard_many(out, p.prec_bits(), input, [&] { return ce.double_transport_residuals(k, l); });
    }
    return out;
}

std::vector<Residual> initial_cases(const Params& p, const Rat& tol) {
    ConnectEngine ce{p};
    ce.set_slack(tol);
    std::vector<Residual> out;
    for (const char* text : {"1", "2", "1,2", "2,1", "1,1,2"}) {
        Index k = Index::parse(text);
        guard(out, p.prec_bits(), "initial k=" + show(k),
              [&] { return ce.initial_value_residual(k); });
    }
    return out;
}

std::vector<Residual> qgauss_cases(const Params& p, const Rat& tol) {
    ConnectEngine ce{p};
    ce.set_slack(tol);
    std::vector<Residual> out;
    for (long m = 1; m <= 10; ++m)
        guard(out, p.prec_bits(), "qgauss m=" + std::to_string(m),
              [&] { return ce.qgauss_residual(m); });
    return out;
}

std::vector<Residual> key_identity_cases(const Params& p, unsigned long seed) {
    ConnectEngine ce{p};
    const mpfr_prec_t prec = p.prec_bits();
    std::vector<Residual> out;
    guard(out, prec, "samples=100", [&] {
        bool ok = ce.key_identity_check(100, seed);
        Residual r;
        r.input = "samples=100";
        r.lhs = Real(0, prec);
        r.rhs = Real(0, prec);
        r.residual = Real(ok ? 0 : 1, prec);
        r.tolerance = Real(0, prec);
        r.pass = ok;
        return r;
    });
    return out;
}

std::vector<Residual> alt_connector_cases(const Params& p, const Rat& tol) {
    ConnectEngine ce{p};
    ce.set_slack(tol);
    const mpfr_prec_t prec = p.prec_bits();
    Real slack(tol, prec);
    std::vector<Residual> out;
    for (long m = 0; m <= 20; ++m)
        for (long n = 0; n <= 20; ++n) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "m=%02ld n=%02ld", m, n);
            std::string input(buf);
            guard(out, prec, input, [&] {
                Real a = ce.connector(m, n);
                Real b = ce.connector_alt(m, n);
                Real rounding = Real(64 * (m + n + 2), prec) *
                                pow_si(Real(2, prec), 1 - static_cast<long>(prec));
                return mk(input, a, b, rounding, slack);
            });
        }
    return out;
}

std::vector<Residual> defect_cases(const Params& p, const Real& slack) {
    SeriesEngine se{p};
    const mpfr_prec_t prec = p.prec_bits();
    Real flat = Real(1000, prec) * p.target_abs_err();
    std::vector<Residual> out;
    Index k({3});
    guard(out, prec, "defect k=(3) e1=1 e2=1", [&] {
        Real defect = se.ohno_defect(k, 1, 1);
        Real rhs = -se.zeta(Index({1, 2, 2})).value;
        return mk("defect k=(3) e1=1 e2=1 vs -zeta(1,2,2)", defect, rhs, flat, slack);
    });
    guard(out, prec, "defect-nonzero k=(3)", [&] {
        Real defect = se.ohno_defect(k, 1, 1);
        bool nonzero = abs(defect) > Real(Rat(1, 10000), prec);
        Residual r;
        r.input = "defect-nonzero k=(3) threshold=1/10000";
        r.lhs = abs(defect);
        r.rhs = Real(0, prec);
        r.residual = Real(nonzero ? 0 : 1, prec);
        r.tolerance = Real(0, prec);
        r.pass = nonzero;
        return r;
    });
    return out;
}

struct SuiteDefaults {
    int weight;
    int random;
    Rat tol;
};

SuiteDefaults defaults_for(const std::string& name) {
    if (name == "duality") return {7, 0, pow10_neg(12)};
    if (name == "single-ohno") return {7, 0, pow10_neg(10)};
    if (name == "double-ohno") return {8, 0, pow10_neg(10)};
    if (name == "extended") return {0, 20, pow10_neg(8)};
    if (name == "transport") return {0, 50, pow10_neg(12)};
    if (name == "initial") return {0, 0, pow10_neg(10)};
    if (name == "qgauss") return {0, 0, pow10_neg(10)};
    if (name == "key-identity") return {0, 0, Rat(0)};
    if (name == "alt-connector") return {0, 0, pow10_neg(18)};
    if (name == "defects") return {0, 0, pow10_neg(10)};
    throw Error(Errc::invalid_params, "unknown suite '" + name + "'");
}

std::vector<Residual> suite_cases(const std::string& name, const Params& p,
                                  const SuiteScope& scope) {
    SuiteDefaults d = defaults_for(name);
    int W = scope.max_weight > 0 ? scope.max_weight : d.weight;
    int R = scope.random_cases >= 0 ? scope.random_cases : d.random;
    Rat tol = scope.tolerance ? *scope.tolerance : d.tol;
    Real slack(tol, p.prec_bits());
    if (name == "duality") return duality_cases(p, W, slack);
    if (name == "single-ohno") return single_ohno_cases(p, W, slack);
    if (name == "double-ohno") return double_ohno_cases(p, W, slack);
    if (name == "extended") return extended_cases(p, scope.lambda_order, R, scope.seed, slack);
    if (name == "transport") return transport_cases(p, R, scope.seed, tol);
    if (name == "initial") return initial_cases(p, tol);
    if (name == "qgauss") return qgauss_cases(p, tol);
    if (name == "key-identity") return key_identity_cases(p, scope.seed);
    if (name == "alt-connector") return alt_connector_cases(p, tol);
    if (name == "defects") return defect_cases(p, slack);
    throw Error(Errc::invalid_params, "unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "duality", "single-ohno", "double-ohno", "extended",      "transport", "initial",
        "qgauss",  "key-identity", "alt-connector", "defects", "all"};
    return names;
}

Report run_suite(const std::string& name, const Params& p, const SuiteScope& scope) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Residual> cases;
    if (name == "all") {
        for (const std::string& sub : suite_names()) {
            if (sub == "all") continue;
            for (Residual& r : suite_cases(sub, p, scope)) {
                r.input = sub + ": " + r.input;
                cases.push_back(std::move(r));
            }
        }
    } else {
        cases = suite_cases(name, p, scope);
    }
    std::stable_sort(cases.begin(), cases.end(),
                     [](const Residual& a, const Residual& b) { return a.input < b.input; });
    Report rep;
    rep.command = "suite " + name;
    Rat tol = scope.tolerance ? *scope.tolerance
                              : (name == "all" ? pow10_neg(10) : defaults_for(name).tol);
    rep.params = ParamsSnapshot::of(p, scope.lambda_order, tol);
    rep.cases = std::move(cases);
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace qmzv
