#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "qmzv/errors.hpp"
#include "qmzv/qnum.hpp"

using namespace qmzv;

namespace {

Params defaults() { return Params(Rat(1, 2), Rat(1, 10), Rat(7, 100)); }

Real tol(const Params& p, const char* text) {
    return Real(parse_rat(text), p.prec_bits());
}

// Exact q-integer [m] = (1-q^m)/(1-q), written out independently of qnum.
Rat qint_oracle(long m, const Rat& q) {
    Rat num = 1 - rat_pow(q, m);
    Rat den = 1 - q;
    return num / den;
}

}  // namespace

TEST_CASE("q_int basics") {
    Params p = defaults();
    CHECK(q_int(0, p) == 0);
    CHECK(q_int(1, p) == 1);
    CHECK(q_int(2, p) == Real(Rat(3, 2), p.prec_bits()));
}

TEST_CASE("q_int matches the exact rational form") {
    Params p(Rat(3, 10), Rat(0), Rat(0));
    for (long m = 0; m <= 40; ++m) {
        Real exact(qint_oracle(m, p.q_rat()), p.prec_bits());
        Real diff = abs(q_int(m, p) - exact);
        CHECK(diff <= abs(exact) * tol(p, "1e-55") + tol(p, "1e-55"));
        CHECK(q_int_rat(m, p.q_rat()) == qint_oracle(m, p.q_rat()));
    }
}

TEST_CASE("bracket_delta basics and exact product oracle") {
    Params p = defaults();
    CHECK(bracket_delta(0, p.xi(), p) == 1);
    CHECK(bracket_delta(1, Real(0, p.prec_bits()), p) == 1);

    // a=3, delta=xi at q=1/2: independent exact product.
    Rat prod = 1;
    for (long i = 1; i <= 3; ++i)
        prod *= qint_oracle(i, p.q_rat()) - rat_pow(p.q_rat(), i) * p.xi_rat();
    Real exact(prod, p.prec_bits());
    CHECK(abs(bracket_delta(3, p.xi(), p) - exact) <= tol(p, "1e-55"));
    CHECK(bracket_delta_rat(3, p.xi_rat(), p.q_rat()) == prod);
}

TEST_CASE("workhorse bounds (1-delta)[m] <= [m]-q^m delta <= [m]") {
    Params p = defaults();
    std::vector<Real> deltas = {Real(0, p.prec_bits()), p.xi(), p.eta(), p.gamma()};
    for (const Real& d : deltas) {
        for (long m = 1; m <= 64; ++m) {
            Real br = q_int(m, p);
            Real shifted = br - pow_ui(p.q(), static_cast<unsigned long>(m)) * d;
            CHECK((1 - d) * br <= shifted);
            CHECK(shifted <= br);
        }
    }
}

TEST_CASE("bracket monotone bounds (1-q delta)[a-1]! <= [a;delta] <= [a]!") {
    Params p = defaults();
    std::vector<Real> deltas = {p.xi(), p.eta(), p.gamma(), Real(1, p.prec_bits())};
    for (const Real& d : deltas) {
        for (long a = 1; a <= 64; ++a) {
            Real lhs = (1 - p.q() * d) * bracket_delta(a - 1, Real(0, p.prec_bits()), p);
            Real mid = bracket_delta(a, d, p);
            Real rhs = bracket_delta(a, Real(0, p.prec_bits()), p);
            // One-ulp slack for the rounded products.
            CHECK(lhs <= mid * (1 + tol(p, "1e-50")));
            CHECK(mid <= rhs * (1 + tol(p, "1e-50")));
        }
    }
}

TEST_CASE("q_poch basics") {
    Params p = defaults();
    CHECK(q_poch(p.xi(), 0, p) == 1);
    CHECK(q_poch(p.q(), 1, p) == Real(Rat(1, 2), p.prec_bits()));
}

TEST_CASE("(1-q)^m [m;delta] = (q delta';q)_m") {
    Params p = defaults();
    std::mt19937_64 rng(417303);
    for (int trial = 0; trial < 12; ++trial) {
        long m = static_cast<long>(rng() % 21);
        Rat delta(static_cast<long>(rng() % 101), 101);  // in [0,1)
        Rat delta_prime = 1 + (1 - p.q_rat()) * delta;

        // Exact on both sides.
        Rat lhs = rat_pow(1 - p.q_rat(), m) * bracket_delta_rat(m, delta, p.q_rat());
        Rat rhs = q_poch_rat(p.q_rat() * delta_prime, m, p.q_rat());
        CHECK(lhs == rhs);

        // Float backends agree with the exact value.
        Real dl(delta, p.prec_bits());
        Real fl = pow_ui(1 - p.q(), static_cast<unsigned long>(m)) * bracket_delta(m, dl, p);
        Real fr = q_poch(p.q() * Real(delta_prime, p.prec_bits()), m, p);
        CHECK(abs(fl - fr) <= abs(fl) * tol(p, "1e-50") + tol(p, "1e-50"));
    }
}

TEST_CASE("q_poch_inf basics and telescoping") {
    Params p = defaults();
    CHECK(q_poch_inf(Real(0, p.prec_bits()), p) == 1);

    Real a = p.xi();  // generic small value
    Real budget = 10 * p.target_abs_err();
    for (long m = 0; m <= 10; ++m) {
        Real lhs = q_poch_inf(a, p) / q_poch(a, m, p);
        Real rhs = q_poch_inf(a * pow_ui(p.q(), static_cast<unsigned long>(m)), p);
        CHECK(abs(lhs - rhs) <= budget);
    }
}

TEST_CASE("q_poch_inf matches a 200-factor product") {
    Params p = defaults();
    Real prod(1, p.prec_bits());
    for (long i = 0; i < 200; ++i)
        prod *= 1 - p.q() * pow_ui(p.q(), static_cast<unsigned long>(i));
    CHECK(abs(q_poch_inf(p.q(), p) - prod) <= tol(p, "1e-30"));
}

TEST_CASE("q_poch_inf rejects |a| >= 1/q") {
    Params p = defaults();
    CHECK_THROWS_AS(q_poch_inf(Real(3, p.prec_bits()), p), Error);
    try {
        q_poch_inf(Real(-5, p.prec_bits()), p);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_convergent);
    }
}

TEST_CASE("c_factor trivial and symmetric cases") {
    Params zero(Rat(1, 2), Rat(0), Rat(0));
    CHECK(abs(c_factor(zero) - 1) <= tol(zero, "1e-29"));

    Params ab(Rat(1, 2), Rat(1, 10), Rat(7, 100));
    Params ba(Rat(1, 2), Rat(7, 100), Rat(1, 10));
    CHECK(abs(c_factor(ab) - c_factor(ba)) <= tol(ab, "1e-29"));
}

TEST_CASE("c_factor matches an independent 300-factor evaluation") {
    Params p = defaults();
    auto poch300 = [&](const Real& a) {
        Real prod(1, p.prec_bits());
        for (long i = 0; i < 300; ++i)
            prod *= 1 - a * pow_ui(p.q(), static_cast<unsigned long>(i));
        return prod;
    };
    Real num = poch300(p.q()) * poch300(p.q() * p.xi_prime() * p.eta_prime());
    Real den = poch300(p.q() * p.xi_prime()) * poch300(p.q() * p.eta_prime());
    CHECK(abs(c_factor(p) - num / den) <= tol(p, "1e-25"));
}

TEST_CASE("phi21 partial sum basics") {
    Params p = defaults();
    Phi21 at_zero = phi21_partial(p.xi(), p.eta(), p.q(), Real(0, p.prec_bits()), 10, p);
    CHECK(at_zero.value == 1);

    // a = q: recompute the same finite sum directly from q_poch.
    Real b = p.eta(), c = p.q() * p.q(), z = Real(Rat(1, 3), p.prec_bits());
    Phi21 engine = phi21_partial(p.q(), b, c, z, 25, p);
    Real direct(0, p.prec_bits());
    for (long n = 0; n <= 25; ++n) {
        Real t = q_poch(p.q(), n, p) * q_poch(b, n, p) /
                 (q_poch(c, n, p) * q_poch(p.q(), n, p)) *
                 pow_ui(z, static_cast<unsigned long>(n));
        direct += t;
    }
    CHECK(abs(engine.value - direct) <= tol(p, "1e-50"));
}

TEST_CASE("phi21 rejects a vanishing (c;q)_n") {
    Params p = defaults();
    try {
        phi21_partial(p.xi(), p.eta(), Real(1, p.prec_bits()), p.q(), 5, p);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::singular_parameter);
    }
}

TEST_CASE("q-Gauss summation instance") {
    Params p = defaults();
    long m = 2;
    Real qm = pow_ui(p.q(), static_cast<unsigned long>(m));
    Real a = p.q() * p.xi_prime();
    Real b = p.q() * p.eta_prime();
    Real c = qm * p.q() * p.q() * p.xi_prime() * p.eta_prime();
    Phi21 lhs = phi21_partial(a, b, c, qm, 160, p);
    Real rhs = q_poch_inf(qm * p.q() * p.xi_prime(), p) *
               q_poch_inf(qm * p.q() * p.eta_prime(), p) /
               (q_poch_inf(c, p) * q_poch_inf(qm, p));
    CHECK(abs(lhs.value - rhs) <= tol(p, "1e-20"));
    CHECK(lhs.tail_estimate <= tol(p, "1e-20"));
}

TEST_CASE("angle brackets") {
    Params p = defaults();
    CHECK(angle(Real(0, p.prec_bits()), p) == 0);
    CHECK(abs(angle(Real(1, p.prec_bits()), p) / (1 - p.q()) - q_int(1, p)) <=
          tol(p, "1e-55"));
    for (long m = 0; m <= 10; ++m)
        CHECK(abs(angle_poch(Real(1, p.prec_bits()), m, p) - q_poch(p.q(), m, p)) <=
              tol(p, "1e-50"));
}

TEST_CASE("rational backend agrees with floats within 2^-184 relative") {
    Params p(Rat(2, 7), Rat(1, 9), Rat(1, 13));
    Real rel = tol(p, "0");
    {
        mpfr_set_ui_2exp(rel.raw(), 1, -184, MPFR_RNDN);
    }
    std::mt19937_64 rng(905114);
    for (int trial = 0; trial < 10; ++trial) {
        long m = 1 + static_cast<long>(rng() % 12);
        Rat a(static_cast<long>(rng() % 50), 51);

        Real fa(a, p.prec_bits());
        auto close = [&](const Real& fl, const Rat& ex) {
            Real exact(ex, p.prec_bits());
            return abs(fl - exact) <= abs(exact) * rel + rel;
        };
        CHECK(close(q_int(m, p), q_int_rat(m, p.q_rat())));
        CHECK(close(bracket_delta(m, fa, p), bracket_delta_rat(m, a, p.q_rat())));
        CHECK(close(q_poch(fa, m, p), q_poch_rat(a, m, p.q_rat())));
        CHECK(close(angle(Real(m, p.prec_bits()), p), angle_rat(m, p.q_rat())));
        CHECK(close(angle_poch(Real(m, p.prec_bits()), m, p),
                    angle_poch_rat(m, m, p.q_rat())));
        CHECK(close(
            phi21_partial(fa, Real(a / 2, p.prec_bits()), Real(a / 3, p.prec_bits()),
                          Real(a / 5, p.prec_bits()), 8, p)
                .value,
            phi21_partial_rat(a, a / 2, a / 3, a / 5, 8, p.q_rat())));
    }
}

TEST_CASE("Params validation") {
    CHECK_THROWS_AS(Params(Rat(0), Rat(0), Rat(0)), Error);
    CHECK_THROWS_AS(Params(Rat(1), Rat(0), Rat(0)), Error);
    CHECK_THROWS_AS(Params(Rat(1, 2), Rat(1), Rat(0)), Error);
    // gamma = xi + eta + (1-q) xi eta must stay below 1.
    CHECK_THROWS_AS(Params(Rat(1, 2), Rat(3, 5), Rat(3, 5)), Error);
    Params ok(Rat(1, 2), Rat(3, 5), Rat(1, 5));
    CHECK(ok.gamma_rat() < 1);
    CHECK(ok.gamma_prime_rat() == ok.xi_prime_rat() * ok.eta_prime_rat());
    CHECK(!ok.epsilon_validated());
    CHECK_THROWS_AS(ok.epsilon(), Error);
}
