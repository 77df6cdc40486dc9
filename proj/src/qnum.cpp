#include "qmzv/qnum.hpp"

#include "qmzv/errors.hpp"

namespace qmzv {

Real q_int(long m, const Params& p) {
    if (m < 0) throw Error(Errc::invalid_params, "q_int: m must be non-negative");
    if (m == 0) return p.make(0);
    return (1 - pow_ui(p.q(), static_cast<unsigned long>(m))) / (1 - p.q());
}

Real bracket_delta(long a, const Real& delta, const Params& p) {
    if (a < 0) throw Error(Errc::invalid_params, "bracket_delta: a must be non-negative");
    Real acc = p.make(1);
    Real qi = p.make(1);  // q^i
    for (long i = 1; i <= a; ++i) {
        qi *= p.q();
        acc *= q_int(i, p) - qi * delta;
    }
    return acc;
}

Real q_poch(const Real& a, long n, const Params& p) {
    if (n < 0) throw Error(Errc::invalid_params, "q_poch: n must be non-negative");
    Real acc = p.make(1);
    Real aqi = a;  // a*q^i
    for (long i = 0; i < n; ++i) {
        acc *= 1 - aqi;
        aqi *= p.q();
    }
    return acc;
}

Real q_poch_inf(const Real& a, const Params& p) {
    if (!(abs(a) * p.q() < 1))
        throw Error(Errc::non_convergent, "q_poch_inf requires |a| < 1/q");
    // Truncation T: need |a| q^T <= 1/2 and 2|a| q^T / (1-q) <= target.
    const Real aa = abs(a);
    const Real half = p.make(1) / 2;
    long T = 64;
    for (;;) {
        Real aqT = aa * pow_ui(p.q(), static_cast<unsigned long>(T));
        if (aqT <= half && 2 * aqT / (1 - p.q()) <= p.target_abs_err()) break;
        T *= 2;
        if (T > (1L << 26))
            throw Error(Errc::budget_exceeded, "q_poch_inf: truncation bound never met");
    }
    return q_poch(a, T, p);
}

Real c_factor(const Params& p) {
    const Real num = q_poch_inf(p.q(), p) * q_poch_inf(p.q() * p.gamma_prime(), p);
    const Real den = q_poch_inf(p.q() * p.xi_prime(), p) * q_poch_inf(p.q() * p.eta_prime(), p);
    return num / den;
}

Phi21 phi21_partial(const Real& a, const Real& b, const Real& c, const Real& z,
                    long N, const Params& p) {
    if (N < 1) throw Error(Errc::invalid_params, "phi21_partial: N must be positive");
    if (!(abs(z) < 1)) throw Error(Errc::non_convergent, "phi21_partial requires |z| < 1");
    Real sum = p.make(1);
    Real term = p.make(1);
    Real aq = a, bq = b, cq = c;     // a*q^n etc., starting at n = 0
    Real qn1 = p.q();                // q^{n+1}
    for (long n = 1; n <= N; ++n) {
        Real cfac = 1 - cq;
        if (cfac.is_zero())
            throw Error(Errc::singular_parameter,
                        "(c;q)_n vanishes at n = " + std::to_string(n));
        term *= (1 - aq) * (1 - bq) / (cfac * (1 - qn1)) * z;
        sum += term;
        aq *= p.q();
        bq *= p.q();
        cq *= p.q();
        qn1 *= p.q();
    }
    // Term ratio for n >= N is bounded by
    //   |z| (1+|a|q^N)(1+|b|q^N) / ((1-|c|q^N)(1-q^{N+1})).
    Phi21 out{sum, Real::pos_inf(p.prec_bits())};
    Real qN = pow_ui(p.q(), static_cast<unsigned long>(N));
    Real cdrop = 1 - abs(c) * qN;
    if (cdrop > 0) {
        Real rho = abs(z) * (1 + abs(a) * qN) * (1 + abs(b) * qN) / (cdrop * (1 - qN * p.q()));
        if (rho < 1) {
            Real next = abs(term) * rho;  // |t_{N+1}| bound
            out.tail_estimate = next / (1 - rho);
        }
    }
    return out;
}

Real angle(const Real& a, const Params& p) { return 1 - pow(p.q(), a); }

Real angle_poch(const Real& a, long n, const Params& p) {
    return q_poch(pow(p.q(), a), n, p);
}

Rat q_int_rat(long m, const Rat& q) {
    if (m < 0) throw Error(Errc::invalid_params, "q_int_rat: m must be non-negative");
    if (m == 0) return Rat(0);
    return (1 - rat_pow(q, m)) / (1 - q);
}

Rat bracket_delta_rat(long a, const Rat& delta, const Rat& q) {
    Rat acc(1), qi(1);
    for (long i = 1; i <= a; ++i) {
        qi *= q;
        acc *= q_int_rat(i, q) - qi * delta;
    }
    return acc;
}

Rat q_poch_rat(const Rat& a, long n, const Rat& q) {
    Rat acc(1), aqi = a;
    for (long i = 0; i < n; ++i) {
        acc *= 1 - aqi;
        aqi *= q;
    }
    return acc;
}

Rat phi21_partial_rat(const Rat& a, const Rat& b, const Rat& c, const Rat& z,
                      long N, const Rat& q) {
    Rat sum(1), term(1);
    Rat aq = a, bq = b, cq = c, qn1 = q;
    for (long n = 1; n <= N; ++n) {
        Rat cfac = 1 - cq;
        if (cfac == 0)
            throw Error(Errc::singular_parameter,
                        "(c;q)_n vanishes at n = " + std::to_string(n));
        term *= (1 - aq) * (1 - bq) * z / (cfac * (1 - qn1));
        sum += term;
        aq *= q;
        bq *= q;
        cq *= q;
        qn1 *= q;
    }
    return sum;
}

Rat angle_rat(long a, const Rat& q) { return 1 - rat_pow(q, a); }

Rat angle_poch_rat(long a, long n, const Rat& q) {
    return q_poch_rat(rat_pow(q, a), n, q);
}

}  // namespace qmzv
