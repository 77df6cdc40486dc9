#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmzv/indices.hpp"
#include "qmzv/params.hpp"
#include "qmzv/real.hpp"
#include "qmzv/words.hpp"

namespace qmzv {

/// Error accounting for one truncated-series evaluation.
struct SeriesBudget {
    long M = 0;           // summation cutoff (largest outer summation variable)
    Real tail_bound;      // rigorous bound on the discarded tail
    Real rounding_bound;  // bound on accumulated rounding error
};

struct Eval {
    Real value;
    SeriesBudget budget;
};

/// Lambda-series evaluation: value plus the reported lambda-tail bound.
struct WordEval {
    Real value;
    Real lambda_tail;
};

/// Memoizing evaluator for the nested q-series family: zeta and its
/// two-parameter deformation share one layered-DP code path
///   S_j(m) = f_j(m) * sum_{m' < m} S_{j-1}(m'),
///   f_j(m) = q^{(k_j-1)m} / (([m]-q^m xi)([m]-q^m eta) [m]^{k_j-2}),
/// with zeta obtained by xi = eta = 0 (then the denominator is [m]^{k_j}).
/// All sums accumulate in index-increasing order; cached powers q^m are
/// computed entry-wise, so every value is a deterministic function of
/// (k, Params) alone.
class SeriesEngine {
public:
    explicit SeriesEngine(Params p);

    const Params& params() const { return p_; }
    Params& params() { return p_; }

    /// zeta_q(k); k admissible or empty (empty -> exactly 1).
    Eval zeta(const Index& k);
    /// O(k; xi, eta); k admissible.  Coincides bitwise with zeta when
    /// xi = eta = 0 (same code path).
    Eval big_o(const Index& k);

    /// Fixed-cutoff variants (no adaptivity, no memo); the reported
    /// tail_bound is whatever the cutoff gives, possibly above target.
    Eval zeta_truncated(const Index& k, long M);
    Eval big_o_truncated(const Index& k, long M);

    /// O_{e1,e2}(k): zeta summed over all weak-composition shifts
    /// e1 -> depth parts and e2 -> depth parts, grouped by the combined
    /// shift with exact integer multiplicities.  Symmetric in (e1, e2).
    Real ohno_sum(const Index& k, int e1, int e2);

    /// ohno_sum(k, e1, e2) - ohno_sum(dual(k), e1, e2).
    Real ohno_defect(const Index& k, int e1, int e2);

    /// O(y w x) for a lambda-polynomial w, truncated at w's order N:
    ///   sum_{i<=N} (sum of c * O(index) over degree-i terms of y w x) (xi eta)^i.
    /// The reported lambda tail extrapolates the observed per-degree
    /// envelope C = max_i |degree-i contribution| / eps^i to
    /// C * eps^{N+1} / (1 - eps); exact 0 when xi*eta = 0.
    /// Requires epsilon-validated Params.
    WordEval big_o_word(const LambdaPoly& w);

    /// Computes eps = xi*eta*O((2)), stores it in params(), returns it.
    Real validate_epsilon();

    /// Outer-variable masses for the connected-sum evaluator: F[m] for
    /// m = 0..M, where F[m] is the sum over 0 = m_0 < m_1 < ... < m_r = m of
    /// the product of O-style layer factors (Params' xi, eta); the empty
    /// index has mass 1 at m = 0 and 0 elsewhere.
    std::vector<Real> layer_masses(const Index& k, long M);

    /// Cached q^m and [m] at working precision (m >= 0).
    const Real& qpow(long m);
    const Real& qint(long m);

    /// Upper bound on sum_{t>M} t^p x^t for 0 < x < 1 via the term-ratio
    /// test at t = M+1; +inf when the ratio bound is not below 1.
    static Real polygeo_tail(long M, int p, const Real& x);

private:
    Real layer_factor(int kj, long m, const Real& xi, const Real& eta);
    std::vector<Real> masses(const Index& k, const Real& xi, const Real& eta, long M);
    Eval nested(const Index& k, const Real& xi, const Real& eta);
    Eval nested_truncated(const Index& k, const Real& xi, const Real& eta, long M);
    long choose_cutoff(const Index& k, const Real& xi, const Real& eta) ;
    Real rounding_bound(const Index& k, long M, const Real& value) const;

    Params p_;
    Real one_minus_q_;
    std::vector<Real> qpow_;
    std::vector<Real> qint_;
    std::map<std::string, Eval> zeta_memo_;
    std::map<std::string, Eval> bigo_memo_;
};

}  // namespace qmzv
