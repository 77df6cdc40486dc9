#include "qmzv/series.hpp"

#include <functional>
#include <utility>

#include "qmzv/errors.hpp"

namespace qmzv {

SeriesEngine::SeriesEngine(Params p)
    : p_(std::move(p)), one_minus_q_(1 - p_.q()) {
    qpow_.push_back(Real(1, p_.prec_bits()));
    qint_.push_back(Real(0, p_.prec_bits()));
}

const Real& SeriesEngine::qpow(long m) {
    while (static_cast<long>(qpow_.size()) <= m)
        qpow_.push_back(pow_ui(p_.q(), static_cast<unsigned long>(qpow_.size())));
    return qpow_[static_cast<size_t>(m)];
}

const Real& SeriesEngine::qint(long m) {
    while (static_cast<long>(qint_.size()) <= m) {
        long next = static_cast<long>(qint_.size());
        qint_.push_back((1 - qpow(next)) / one_minus_q_);
    }
    return qint_[static_cast<size_t>(m)];
}

Real SeriesEngine::polygeo_tail(long M, int p, const Real& x) {
    const mpfr_prec_t prec = x.prec();
    Real ratio_base = Real(M + 2, prec) / Real(M + 1, prec);
    Real rho = x * pow_ui(ratio_base, static_cast<unsigned long>(p));
    if (!(rho < 1)) return Real::pos_inf(prec);
    Real lead = pow_ui(Real(M + 1, prec), static_cast<unsigned long>(p)) *
                pow_ui(x, static_cast<unsigned long>(M + 1));
    return lead / (1 - rho);
}

Real SeriesEngine::layer_factor(int kj, long m, const Real& xi, const Real& eta) {
    const Real& qm = qpow(m);
    const Real& br = qint(m);
    Real num = kj == 1 ? Real(1, p_.prec_bits()) : pow_ui(qm, static_cast<unsigned long>(kj - 1));
    Real den = (br - qm * xi) * (br - qm * eta) * pow_si(br, kj - 2);
    return num / den;
}

std::vector<Real> SeriesEngine::masses(const Index& k, const Real& xi, const Real& eta, long M) {
    const mpfr_prec_t prec = p_.prec_bits();
    const auto& parts = k.parts();
    std::vector<Real> prev(static_cast<size_t>(M) + 1, Real(0, prec));
    prev[0] = Real(1, prec);
    for (int part : parts) {
        std::vector<Real> cur(static_cast<size_t>(M) + 1, Real(0, prec));
        Real prefix(0, prec);
        for (long m = 1; m <= M; ++m) {
            prefix += prev[static_cast<size_t>(m - 1)];
            if (!prefix.is_zero()) cur[static_cast<size_t>(m)] = layer_factor(part, m, xi, eta) * prefix;
        }
        prev = std::move(cur);
    }
    if (!k.empty()) prev[0] = Real(0, prec);
    return prev;
}

std::vector<Real> SeriesEngine::layer_masses(const Index& k, long M) {
    return masses(k, p_.xi(), p_.eta(), M);
}

long SeriesEngine::choose_cutoff(const Index& k, const Real& xi, const Real& eta) {
    Real half_target = p_.target_abs_err() / 2;
    Real inflation = pow_si((1 - xi) * (1 - eta), -k.depth());
    long M = 64;
    for (;;) {
        Real tb = inflation * polygeo_tail(M, k.depth() - 1, p_.q());
        if (tb.is_finite() && tb <= half_target) return M;
        if (M >= p_.max_terms())
            throw Error(Errc::budget_exceeded,
                        "series cutoff for " + (k.empty() ? std::string("()") : k.str()) +
                            " would exceed " + std::to_string(p_.max_terms()) + " terms");
        M *= 2;
        if (M > p_.max_terms()) M = p_.max_terms();
    }
}

Real SeriesEngine::rounding_bound(const Index& k, long M, const Real& value) const {
    // Positive accumulation: ~6 roundings per (layer, m) pair, each of
    // relative size 2^{1-prec}, against intermediates bounded by the result.
    const mpfr_prec_t prec = p_.prec_bits();
    Real ops(6 * (k.depth() + 1) * (M + 1), prec);
    return ops * pow_si(Real(2, prec), 1 - static_cast<long>(prec)) * abs(value);
}

Eval SeriesEngine::nested_truncated(const Index& k, const Real& xi, const Real& eta, long M) {
    const mpfr_prec_t prec = p_.prec_bits();
    if (k.empty()) return {Real(1, prec), {0, Real(0, prec), Real(0, prec)}};
    if (!k.admissible())
        throw Error(Errc::not_admissible, "index " + k.str() + " has last part 1");
    std::vector<Real> F = masses(k, xi, eta, M);
    Real value(0, prec);
    for (long m = 1; m <= M; ++m) value += F[static_cast<size_t>(m)];
    Real inflation = pow_si((1 - xi) * (1 - eta), -k.depth());
    Real tb = inflation * polygeo_tail(M, k.depth() - 1, p_.q());
    return {value, {M, tb, rounding_bound(k, M, value)}};
}

Eval SeriesEngine::nested(const Index& k, const Real& xi, const Real& eta) {
    const mpfr_prec_t prec = p_.prec_bits();
    if (k.empty()) return {Real(1, prec), {0, Real(0, prec), Real(0, prec)}};
    if (!k.admissible())
        throw Error(Errc::not_admissible, "index " + k.str() + " has last part 1");
    long M = choose_cutoff(k, xi, eta);
    Eval e = nested_truncated(k, xi, eta, M);
    if (!(e.budget.tail_bound + e.budget.rounding_bound <= p_.target_abs_err()))
        throw Error(Errc::budget_exceeded,
                    "rounding floor exceeds target accuracy for " + k.str() +
                        "; raise prec_bits");
    return e;
}

Eval SeriesEngine::zeta(const Index& k) {
    auto it = zeta_memo_.find(k.str());
    if (it != zeta_memo_.end()) return it->second;
    Real zero(0, p_.prec_bits());
    Eval e = nested(k, zero, zero);
    zeta_memo_.emplace(k.str(), e);
    return e;
}

Eval SeriesEngine::big_o(const Index& k) {
    auto it = bigo_memo_.find(k.str());
    if (it != bigo_memo_.end()) return it->second;
    Eval e = nested(k, p_.xi(), p_.eta());
    bigo_memo_.emplace(k.str(), e);
    return e;
}

Eval SeriesEngine::zeta_truncated(const Index& k, long M) {
    Real zero(0, p_.prec_bits());
    return nested_truncated(k, zero, zero, M);
}

Eval SeriesEngine::big_o_truncated(const Index& k, long M) {
    return nested_truncated(k, p_.xi(), p_.eta(), M);
}

namespace {

/// Weak compositions of total into `parts` parts, lexicographic, first part
/// varying slowest.
void for_each_composition(int total, int parts, std::vector<int>& buf,
                          const std::function<void(const std::vector<int>&)>& fn) {
    if (parts == 0) {
        if (total == 0) fn(buf);
        return;
    }
    if (parts == 1) {
        buf.push_back(total);
        fn(buf);
        buf.pop_back();
        return;
    }
    for (int head = 0; head <= total; ++head) {
        buf.push_back(head);
        for_each_composition(total - head, parts - 1, buf, fn);
        buf.pop_back();
    }
}

/// Number of splits s = e1_vec + e2_vec with |e1_vec| = e1: the coefficient
/// of z^{e1} in prod_i (1 + z + ... + z^{s_i}).
long split_multiplicity(const std::vector<int>& s, int e1) {
    std::vector<long> coef{1};
    for (int si : s) {
        std::vector<long> next(coef.size() + static_cast<size_t>(si), 0);
        for (size_t d = 0; d < coef.size(); ++d)
            for (int t = 0; t <= si; ++t) next[d + static_cast<size_t>(t)] += coef[d];
        coef = std::move(next);
    }
    return e1 >= 0 && static_cast<size_t>(e1) < coef.size() ? coef[static_cast<size_t>(e1)] : 0;
}

}  // namespace

Real SeriesEngine::ohno_sum(const Index& k, int e1, int e2) {
    if (!k.admissible())
        throw Error(Errc::not_admissible, "index " + k.str() + " has last part 1");
    if (e1 < 0 || e2 < 0) throw Error(Errc::invalid_params, "negative composition size");
    const mpfr_prec_t prec = p_.prec_bits();
    Real acc(0, prec);
    std::vector<int> buf;
    for_each_composition(e1 + e2, k.depth(), buf, [&](const std::vector<int>& s) {
        long mult = split_multiplicity(s, e1);
        if (mult == 0) return;
        std::vector<int> shifted = k.parts();
        for (size_t i = 0; i < shifted.size(); ++i) shifted[i] += s[i];
        Real term = zeta(Index(std::move(shifted))).value;
        acc += Real(mult, prec) * term;
    });
    return acc;
}

Real SeriesEngine::ohno_defect(const Index& k, int e1, int e2) {
    return ohno_sum(k, e1, e2) - ohno_sum(dual(k), e1, e2);
}

WordEval SeriesEngine::big_o_word(const LambdaPoly& w) {
    if (!p_.epsilon_validated())
        throw Error(Errc::epsilon_not_validated,
                    "run validate_epsilon() before lambda-series evaluation");
    const mpfr_prec_t prec = p_.prec_bits();
    const int N = w.order();
    auto terms = to_index_terms(sandwich(w));
    Real xe = p_.xi() * p_.eta();
    Real value(0, prec);
    Real envelope(0, prec);
    const Real& eps = p_.epsilon();
    for (int i = 0; i <= N; ++i) {
        Real deg_sum(0, prec);
        for (const auto& [idx, c] : terms[static_cast<size_t>(i)])
            deg_sum += Real(c, prec) * big_o(idx).value;
        Real contrib = pow_ui(xe, static_cast<unsigned long>(i)) * deg_sum;
        value += contrib;
        if (!eps.is_zero())
            envelope = max(envelope, abs(contrib) / pow_ui(eps, static_cast<unsigned long>(i)));
    }
    Real tail(0, prec);
    if (!xe.is_zero())
        tail = eps < 1 ? Real(envelope * pow_ui(eps, static_cast<unsigned long>(N + 1)) / (1 - eps))
                       : Real::pos_inf(prec);
    return {value, tail};
}

Real SeriesEngine::validate_epsilon() {
    Real eps = p_.xi() * p_.eta() * big_o(Index({2})).value;
    p_.set_epsilon(eps);
    return eps;
}

}  // namespace qmzv
