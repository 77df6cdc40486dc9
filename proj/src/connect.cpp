#include "qmzv/connect.hpp"

#include <random>
#include <stdexcept>

#include "qmzv/errors.hpp"

namespace qmzv {

ConnectEngine::ConnectEngine(Params p)
    : eng_(std::move(p)), slack_(Rat(1) / rat_pow(Rat(10), 10), eng_.params().prec_bits()) {
    const mpfr_prec_t prec = eng_.params().prec_bits();
    bx_.push_back(Real(1, prec));
    be_.push_back(Real(1, prec));
    bf_.push_back(Real(1, prec));
    bg_.push_back(Real(1, prec));
}

void ConnectEngine::set_slack(const Rat& slack) {
    if (slack < 0) throw Error(Errc::invalid_params, "slack must be >= 0");
    slack_ = Real(slack, eng_.params().prec_bits());
}

Real ConnectEngine::bracket_prod(std::vector<Real>& cache, const Real& delta, long a) {
    while (static_cast<long>(cache.size()) <= a) {
        long next = static_cast<long>(cache.size());
        cache.push_back(cache.back() * (eng_.qint(next) - eng_.qpow(next) * delta));
    }
    return cache[static_cast<size_t>(a)];
}

Real ConnectEngine::connector(long m, long n) {
    if (m < 0 || n < 0) throw Error(Errc::invalid_params, "connector arguments must be >= 0");
    long lo = m < n ? m : n;
    long hi = m < n ? n : m;
    auto it = conn_.find({lo, hi});
    if (it != conn_.end()) return it->second;
    const Params& p = eng_.params();
    Real zero(0, p.prec_bits());
    Real num = pow_ui(p.q(), static_cast<unsigned long>(lo) * static_cast<unsigned long>(hi));
    num *= bracket_prod(bx_, p.xi(), lo);
    num *= bracket_prod(be_, p.eta(), lo);
    num *= bracket_prod(bx_, p.xi(), hi);
    num *= bracket_prod(be_, p.eta(), hi);
    Real den = bracket_prod(bf_, zero, lo);
    den *= bracket_prod(bf_, zero, hi);
    den *= bracket_prod(bg_, p.gamma(), lo + hi);
    Real val = num / den;
    conn_.emplace(std::make_pair(lo, hi), val);
    return val;
}

Real ConnectEngine::connector_alt(long m, long n) {
    const Params& p = eng_.params();
    const mpfr_prec_t prec = p.prec_bits();
    Real logq = log(p.q());
    Real X = p.xi().is_zero() ? Real(0, prec) : Real(-(log(p.xi_prime()) / logq));
    Real Y = p.eta().is_zero() ? Real(0, prec) : Real(-(log(p.eta_prime()) / logq));
    Real one(1, prec);
    Real num = pow_ui(p.q(), static_cast<unsigned long>(m) * static_cast<unsigned long>(n));
    num *= angle_poch(one - X, m, p);
    num *= angle_poch(one - Y, m, p);
    num *= angle_poch(one - X, n, p);
    num *= angle_poch(one - Y, n, p);
    Real den = angle_poch(one, m, p);
    den *= angle_poch(one, n, p);
    den *= angle_poch(one - X - Y, m + n, p);
    return num / den;
}

const Real& ConnectEngine::c_factor_cached() {
    if (!c_factor_) c_factor_ = c_factor(eng_.params());
    return *c_factor_;
}

Real ConnectEngine::poly_weighted_partial(int p, long M) {
    const mpfr_prec_t prec = eng_.params().prec_bits();
    Real acc(0, prec);
    for (long t = 1; t <= M; ++t)
        acc += pow_ui(Real(t, prec), static_cast<unsigned long>(p)) * eng_.qpow(t);
    return acc;
}

Real ConnectEngine::z_tail(const Index& k, const Index& l, long M) {
    const Params& p = eng_.params();
    const mpfr_prec_t prec = p.prec_bits();
    Real kc = 1 / ((1 - p.q()) * (1 - p.q() * p.gamma()));
    Real cf = pow_si((1 - p.xi()) * (1 - p.eta()), -k.depth());
    Real cg = pow_si((1 - p.xi()) * (1 - p.eta()), -l.depth());
    if (k.empty() && l.empty()) return Real(0, prec);
    if (k.empty() || l.empty()) {
        const Index& other = k.empty() ? l : k;
        Real cb = k.empty() ? cg : cf;
        return kc * cb * SeriesEngine::polygeo_tail(M, other.depth() - 1, p.q());
    }
    Real bf = cf * SeriesEngine::polygeo_tail(M, k.depth() - 1, p.q());
    Real bg = cg * SeriesEngine::polygeo_tail(M, l.depth() - 1, p.q());
    Real sf = cf * poly_weighted_partial(k.depth() - 1, M) + bf;
    Real sg = cg * poly_weighted_partial(l.depth() - 1, M) + bg;
    return kc / p.q() * (bf * sg + sf * bg);
}

long ConnectEngine::z_cutoff(const Index& k, const Index& l) {
    const Params& p = eng_.params();
    Real half_target = p.target_abs_err() / 2;
    long M = 64;
    for (;;) {
        Real t = z_tail(k, l, M);
        if (t.is_finite() && t <= half_target) return M;
        if (M >= p.max_terms())
            throw Error(Errc::budget_exceeded,
                        "coupled-sum cutoff for (" + k.str() + ";" + l.str() +
                            ") would exceed " + std::to_string(p.max_terms()) + " terms");
        M *= 2;
        if (M > p.max_terms()) M = p.max_terms();
    }
}

Eval ConnectEngine::connected_sum(const Index& k, const Index& l) {
    const Params& p = eng_.params();
    const mpfr_prec_t prec = p.prec_bits();
    if (k.empty() && l.empty()) return {Real(1, prec), {0, Real(0, prec), Real(0, prec)}};
    if (k.empty() || l.empty()) {
        const Index& other = k.empty() ? l : k;
        if (!other.admissible())
            throw Error(Errc::divergence_precondition,
                        "Z((" + k.str() + ");(" + l.str() +
                            ")) diverges: an empty argument requires the other to be empty or admissible");
    }
    std::string key = k.str() + "|" + l.str();
    auto it = z_memo_.find(key);
    if (it != z_memo_.end()) return it->second;

    long M = z_cutoff(k, l);
    std::vector<Real> F = eng_.layer_masses(k, M);
    std::vector<Real> G = eng_.layer_masses(l, M);
    Real value(0, prec);
    for (long m = 0; m <= M; ++m) {
        if (F[static_cast<size_t>(m)].is_zero()) continue;
        for (long n = 0; n <= M; ++n) {
            if (G[static_cast<size_t>(n)].is_zero()) continue;
            value += F[static_cast<size_t>(m)] * connector(m, n) * G[static_cast<size_t>(n)];
        }
    }
    Real tb = z_tail(k, l, M);
    long couples = (M + 1 - k.depth()) * (M + 1 - l.depth());
    Real ops(10 * (k.depth() + l.depth() + 2) * (M + 1) + 5 * couples, prec);
    Real rb = ops * pow_si(Real(2, prec), 1 - static_cast<long>(prec)) * abs(value);
    if (!(tb + rb <= p.target_abs_err()))
        throw Error(Errc::budget_exceeded,
                    "rounding floor exceeds target accuracy for Z(" + key + "); raise prec_bits");
    Eval e{value, {M, tb, rb}};
    z_memo_.emplace(std::move(key), e);
    return e;
}

WordEval ConnectEngine::connected_sum_word(const LambdaPoly& w, const LambdaPoly& wp) {
    const Params& p = eng_.params();
    if (!p.epsilon_validated())
        throw Error(Errc::epsilon_not_validated,
                    "run validate_epsilon() before lambda-series evaluation");
    if (w.order() != wp.order())
        throw Error(Errc::order_mismatch, "lambda truncation orders differ");
    const mpfr_prec_t prec = p.prec_bits();
    const int N = w.order();
    auto side = [&](const LinComb& lc) {
        std::vector<std::pair<Index, Rat>> out;
        for (const auto& [word, c] : lc.terms()) {
            if (word.empty() || word.front() != 'y')
                throw Error(Errc::malformed_word,
                            "monomial '" + word + "' does not start with y");
            out.emplace_back(from_word(word), c);
        }
        return out;
    };
    Real xe = p.xi() * p.eta();
    const Real& eps = p.epsilon();
    Real value(0, prec);
    std::vector<Real> by_degree(static_cast<size_t>(2 * N) + 1, Real(0, prec));
    for (int i = 0; i <= N; ++i) {
        auto left = side(w.coeff(i));
        for (int j = 0; j <= N; ++j) {
            auto right = side(wp.coeff(j));
            Real pair_sum(0, prec);
            for (const auto& [ki, a] : left)
                for (const auto& [lj, b] : right)
                    pair_sum += Real(a * b, prec) * connected_sum(ki, lj).value;
            Real contrib = pow_ui(xe, static_cast<unsigned long>(i + j)) * pair_sum;
            value += contrib;
            by_degree[static_cast<size_t>(i + j)] += contrib;
        }
    }
    Real tail(0, prec);
    if (!xe.is_zero()) {
        if (!(eps < 1)) return {value, Real::pos_inf(prec)};
        Real envelope(0, prec);
        for (size_t d = 0; d < by_degree.size(); ++d)
            envelope = max(envelope, abs(by_degree[d]) / pow_ui(eps, static_cast<unsigned long>(d)));
        tail = envelope * pow_ui(eps, static_cast<unsigned long>(N + 1)) / (1 - eps);
    }
    return {value, tail};
}

Residual ConnectEngine::make_residual(std::string input, const Real& lhs, const Real& rhs,
                                      const Real& budget) {
    Residual r;
    r.input = std::move(input);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = abs(lhs - rhs);
    r.tolerance = budget + slack_;
    r.pass = r.residual <= r.tolerance;
    return r;
}

namespace {

std::string show(const Index& k) { return "(" + k.str() + ")"; }

Real budget_of(const Eval& e) { return e.budget.tail_bound + e.budget.rounding_bound; }

}  // namespace

std::vector<Residual> ConnectEngine::transport_residuals(const Index& k, const Index& l) {
    const Params& p = eng_.params();
    std::vector<Residual> out;
    const Arrow R[] = {Arrow::Right};
    const Arrow U[] = {Arrow::Up};
    const Arrow RU[] = {Arrow::Right, Arrow::Up};
    if (!l.empty()) {
        Eval lhs = connected_sum(apply_arrows(k, R), l);
        Eval z1 = connected_sum(k, apply_arrows(l, U));
        Eval z2 = connected_sum(apply_arrows(k, RU), apply_arrows(l, U));
        Real rhs = z1.value + p.xi() * p.eta() * z2.value;
        out.push_back(make_residual("transport-> k=" + show(k) + " l=" + show(l), lhs.value,
                                    rhs, budget_of(lhs) + budget_of(z1) + budget_of(z2)));
    }
    if (!k.empty()) {
        Eval lhs = connected_sum(apply_arrows(k, U), l);
        Eval z1 = connected_sum(k, apply_arrows(l, R));
        Eval z2 = connected_sum(apply_arrows(k, U), apply_arrows(l, RU));
        Real rhs = z1.value - p.xi() * p.eta() * z2.value;
        out.push_back(make_residual("transport^ k=" + show(k) + " l=" + show(l), lhs.value,
                                    rhs, budget_of(lhs) + budget_of(z1) + budget_of(z2)));
    }
    return out;
}

std::vector<Residual> ConnectEngine::double_transport_residuals(const Index& k, const Index& l) {
    std::vector<Residual> out;
    const Arrow RU[] = {Arrow::Right, Arrow::Up};
    const Arrow UR[] = {Arrow::Up, Arrow::Right};
    {
        Eval lhs = connected_sum(apply_arrows(k, RU), l);
        Eval rhs = connected_sum(k, apply_arrows(l, RU));
        out.push_back(make_residual("block->^ k=" + show(k) + " l=" + show(l), lhs.value,
                                    rhs.value, budget_of(lhs) + budget_of(rhs)));
    }
    if (!k.empty() && !l.empty()) {
        Eval lhs = connected_sum(apply_arrows(k, UR), l);
        Eval rhs = connected_sum(k, apply_arrows(l, UR));
        out.push_back(make_residual("block^-> k=" + show(k) + " l=" + show(l), lhs.value,
                                    rhs.value, budget_of(lhs) + budget_of(rhs)));
    }
    return out;
}

bool ConnectEngine::key_identity_check(int samples, unsigned long seed) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        Rat q(1 + static_cast<long>(rng() % 98), 99);
        Rat xi(static_cast<long>(rng() % 100), 101);
        Rat eta(static_cast<long>(rng() % 100), 101);
        long a = 1 + static_cast<long>(rng() % 12);
        long n = 1 + static_cast<long>(rng() % 12);
        Rat gamma = xi + eta + (1 - q) * xi * eta;
        Rat qa = rat_pow(q, a);
        Rat qn = rat_pow(q, n);
        Rat ba = q_int_rat(a, q);
        Rat bn = q_int_rat(n, q);
        Rat ban = q_int_rat(a + n, q);
        Rat lhs = ba * (ban - qa * qn * gamma) - qn * (ba - qa * xi) * (ba - qa * eta);
        Rat rhs = ba * bn - qa * qn * xi * eta;
        if (lhs != rhs) return false;
    }
    return true;
}

Residual ConnectEngine::telescope_check(long m, long n) {
    if (n < 1) throw Error(Errc::invalid_params, "telescoping requires n >= 1");
    if (m < 0) throw Error(Errc::invalid_params, "telescoping requires m >= 0");
    const Params& p = eng_.params();
    const mpfr_prec_t prec = p.prec_bits();
    Real c1 = 1 / ((1 - p.xi()) * (1 - p.eta()));
    Real kc = 1 / ((1 - p.q()) * (1 - p.q() * p.gamma()));
    Real quarter_target = p.target_abs_err() / 4;
    long A = 64;
    for (;;) {
        Real bound = c1 * kc * pow_ui(p.q(), static_cast<unsigned long>((A + 1) * n)) /
                     (1 - pow_ui(p.q(), static_cast<unsigned long>(n)));
        if (bound <= quarter_target) break;
        if (A >= p.max_terms())
            throw Error(Errc::budget_exceeded, "telescoping cutoff would exceed the term cap");
        A *= 2;
    }
    Real lhs(0, prec);
    Real inner(0, prec);
    for (long a = m + 1; a <= A; ++a) {
        Real den = (eng_.qint(a) - eng_.qpow(a) * p.xi()) * (eng_.qint(a) - eng_.qpow(a) * p.eta());
        Real ca = connector(a, n);
        lhs += eng_.qint(a) / den * ca;
        inner += eng_.qpow(a) / den * ca;
    }
    Real qn_over = pow_ui(p.q(), static_cast<unsigned long>(n)) / eng_.qint(n);
    Real rhs = qn_over * connector(m, n) + p.xi() * p.eta() * qn_over * inner;
    Real budget = 2 * c1 * kc * pow_ui(p.q(), static_cast<unsigned long>((A + 1) * n)) /
                  (1 - pow_ui(p.q(), static_cast<unsigned long>(n)));
    return make_residual("telescope m=" + std::to_string(m) + " n=" + std::to_string(n), lhs,
                         rhs, budget);
}

Residual ConnectEngine::initial_value_residual(const Index& k) {
    if (k.empty()) throw Error(Errc::invalid_params, "boundary identity needs a non-empty index");
    const Params& p = eng_.params();
    const Arrow U[] = {Arrow::Up};
    Eval z = connected_sum(k, Index({1}));
    Eval o = eng_.big_o(apply_arrows(k, U));
    Real rhs = o.value / c_factor_cached();
    Real budget = budget_of(z) + budget_of(o) + 8 * p.target_abs_err() * (1 + abs(rhs));
    return make_residual("initial k=" + show(k), z.value, rhs, budget);
}

Residual ConnectEngine::qgauss_residual(long m) {
    if (m < 1) throw Error(Errc::invalid_params, "closed-form n-sum requires m >= 1");
    const Params& p = eng_.params();
    const mpfr_prec_t prec = p.prec_bits();
    Real c1 = 1 / ((1 - p.xi()) * (1 - p.eta()));
    Real kc = 1 / ((1 - p.q()) * (1 - p.q() * p.gamma()));
    Real quarter_target = p.target_abs_err() / 4;
    long A = 64;
    for (;;) {
        Real bound = c1 * kc * pow_ui(p.q(), static_cast<unsigned long>(m * (A + 1))) /
                     (1 - pow_ui(p.q(), static_cast<unsigned long>(m)));
        if (bound <= quarter_target) break;
        if (A >= p.max_terms())
            throw Error(Errc::budget_exceeded, "closed-form n-sum cutoff would exceed the term cap");
        A *= 2;
    }
    Real lhs(0, prec);
    for (long n = 1; n <= A; ++n) {
        Real den = (eng_.qint(n) - eng_.qpow(n) * p.xi()) * (eng_.qint(n) - eng_.qpow(n) * p.eta());
        lhs += eng_.qint(n) / den * connector(m, n);
    }
    Real rhs = pow_ui(p.q(), static_cast<unsigned long>(m)) / eng_.qint(m) / c_factor_cached();
    Real budget = c1 * kc * pow_ui(p.q(), static_cast<unsigned long>(m * (A + 1))) /
                      (1 - pow_ui(p.q(), static_cast<unsigned long>(m))) +
                  8 * p.target_abs_err() * (1 + abs(rhs));
    return make_residual("qgauss m=" + std::to_string(m), lhs, rhs, budget);
}

std::vector<Residual> ConnectEngine::dor_chain(const Index& k) {
    if (!k.admissible())
        throw Error(Errc::not_admissible, "chain needs an admissible index, got " + show(k));
    if (!is_bbbl(k))
        throw Error(Errc::not_bbbl, "index " + show(k) + " does not match the block pattern");
    std::vector<Residual> out;
    std::vector<Arrow> path = arrow_path_from_one(k);
    // Path shape for a block index: t two-arrow blocks then one final Up.
    const size_t t = path.size() / 2;
    std::span<const Arrow> blocks(path.data(), 2 * t);

    Index left = apply_arrows(Index({1}), blocks);
    Index right({1});
    {
        Eval o = eng_.big_o(k);
        Eval z = connected_sum(left, right);
        Real rhs = c_factor_cached() * z.value;
        Real budget = budget_of(o) + budget_of(z) + 8 * eng_.params().target_abs_err() * (1 + abs(rhs));
        out.push_back(make_residual("peel k=" + show(k), o.value, rhs, budget));
    }
    for (size_t i = t; i >= 1; --i) {
        std::span<const Arrow> block = blocks.subspan(2 * (i - 1), 2);
        Index new_left = apply_arrows(Index({1}), blocks.first(2 * (i - 1)));
        Index new_right = apply_arrows(right, block);
        Eval lhs = connected_sum(left, right);
        Eval rhs = connected_sum(new_left, new_right);
        out.push_back(make_residual(
            "block-" + arrows_str(block) + " Z" + show(left) + ";" + show(right) + " -> Z" +
                show(new_left) + ";" + show(new_right),
            lhs.value, rhs.value, budget_of(lhs) + budget_of(rhs)));
        left = new_left;
        right = new_right;
    }
    const Arrow U[] = {Arrow::Up};
    Index landed = apply_arrows(right, U);
    if (landed != dual(k))
        throw std::logic_error("block chain landed at " + landed.str() + ", not the dual of " +
                               k.str());
    {
        Eval z = connected_sum(left, right);
        Eval o = eng_.big_o(landed);
        Real rhs = o.value / c_factor_cached();
        Real budget = budget_of(z) + budget_of(o) + 8 * eng_.params().target_abs_err() * (1 + abs(rhs));
        out.push_back(make_residual("close dual=" + show(landed), z.value, rhs, budget));
    }
    return out;
}

Rat connector_rat(long m, long n, const Rat& q, const Rat& xi, const Rat& eta) {
    Rat gamma = xi + eta + (1 - q) * xi * eta;
    Rat zero(0);
    Rat num = rat_pow(q, m * n) * bracket_delta_rat(m, xi, q) * bracket_delta_rat(m, eta, q) *
              bracket_delta_rat(n, xi, q) * bracket_delta_rat(n, eta, q);
    Rat den = bracket_delta_rat(m, zero, q) * bracket_delta_rat(n, zero, q) *
              bracket_delta_rat(m + n, gamma, q);
    return num / den;
}

std::vector<Rat> layer_masses_rat(const Index& k, const Rat& q, const Rat& xi, const Rat& eta,
                                  long M) {
    std::vector<Rat> prev(static_cast<size_t>(M) + 1, Rat(0));
    prev[0] = 1;
    for (int part : k.parts()) {
        std::vector<Rat> cur(static_cast<size_t>(M) + 1, Rat(0));
        Rat prefix(0);
        for (long m = 1; m <= M; ++m) {
            prefix += prev[static_cast<size_t>(m - 1)];
            if (prefix == 0) continue;
            Rat qm = rat_pow(q, m);
            Rat br = q_int_rat(m, q);
            Rat num = rat_pow(qm, part - 1);
            Rat den = (br - qm * xi) * (br - qm * eta) * rat_pow(br, part - 2);
            cur[static_cast<size_t>(m)] = num / den * prefix;
        }
        prev = std::move(cur);
    }
    if (!k.empty()) prev[0] = 0;
    return prev;
}

Rat connected_sum_truncated_rat(const Index& k, const Index& l, const Rat& q, const Rat& xi,
                                const Rat& eta, long M) {
    std::vector<Rat> F = layer_masses_rat(k, q, xi, eta, M);
    std::vector<Rat> G = layer_masses_rat(l, q, xi, eta, M);
    Rat acc(0);
    for (long m = 0; m <= M; ++m) {
        if (F[static_cast<size_t>(m)] == 0) continue;
        for (long n = 0; n <= M; ++n) {
            if (G[static_cast<size_t>(n)] == 0) continue;
            acc += F[static_cast<size_t>(m)] * connector_rat(m, n, q, xi, eta) *
                   G[static_cast<size_t>(n)];
        }
    }
    return acc;
}

}  // namespace qmzv
