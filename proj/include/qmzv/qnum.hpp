#pragma once

#include "qmzv/params.hpp"
#include "qmzv/rational.hpp"
#include "qmzv/real.hpp"

namespace qmzv {

// q-arithmetic kernel.  Finite operations exist in both backends: floats at
// the working precision (taking Params) and exact rationals (taking the bare
// rational inputs).  Infinite products and real exponents are float-only.
// All products and sums accumulate in index-increasing order.

/// q-integer [m] = (1-q^m)/(1-q); [0] = 0.
Real q_int(long m, const Params& p);

/// [a; delta] = prod_{i=1..a} ([i] - q^i*delta); [0; delta] = 1.
/// [a; 0] is the q-factorial [a]!.
Real bracket_delta(long a, const Real& delta, const Params& p);

/// q-Pochhammer (a;q)_n = prod_{i=0..n-1} (1 - a*q^i); (a;q)_0 = 1.
Real q_poch(const Real& a, long n, const Params& p);

/// (a;q)_inf, truncated at T factors with T chosen adaptively so the
/// truncation satisfies |log prod_{i>=T}(1 - a q^i)| <= 2|a|q^T/(1-q)
/// <= target_abs_err (the bound is valid once |a|q^T <= 1/2).
/// Throws NonConvergent unless |a| < 1/q.
Real q_poch_inf(const Real& a, const Params& p);

/// c_{xi,eta} = (q;q)_inf (q xi' eta';q)_inf / ((q xi';q)_inf (q eta';q)_inf).
Real c_factor(const Params& p);

struct Phi21 {
    Real value;          // partial sum through n = N
    Real tail_estimate;  // geometric bound on the dropped tail (+inf if the
                         // term-ratio bound at N is not below 1)
};

/// Partial sum of the basic hypergeometric series
///   2phi1(a,b;c;q,z) = sum_n (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n) z^n.
/// Throws SingularParameter if (c;q)_n vanishes for some n <= N.
Phi21 phi21_partial(const Real& a, const Real& b, const Real& c, const Real& z,
                    long N, const Params& p);

/// Angle-bracket reparametrization helpers: <a> = 1-q^a, <a>_n = (q^a;q)_n.
Real angle(const Real& a, const Params& p);
Real angle_poch(const Real& a, long n, const Params& p);

// --- exact-rational backend (finite operations only) ---

Rat q_int_rat(long m, const Rat& q);
Rat bracket_delta_rat(long a, const Rat& delta, const Rat& q);
Rat q_poch_rat(const Rat& a, long n, const Rat& q);
Rat phi21_partial_rat(const Rat& a, const Rat& b, const Rat& c, const Rat& z,
                      long N, const Rat& q);
Rat angle_rat(long a, const Rat& q);
Rat angle_poch_rat(long a, long n, const Rat& q);

}  // namespace qmzv
