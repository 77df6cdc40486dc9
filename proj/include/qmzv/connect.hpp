#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmzv/indices.hpp"
#include "qmzv/params.hpp"
#include "qmzv/qnum.hpp"
#include "qmzv/real.hpp"
#include "qmzv/series.hpp"
#include "qmzv/words.hpp"

namespace qmzv {

/// One verified instance: two independently evaluated sides, their absolute
/// difference, and a pass/fail verdict against tolerance = (sum of both
/// sides' truncation + rounding budgets) + harness slack.
struct Residual {
    std::string input;
    Real lhs;
    Real rhs;
    Real residual;
    Real tolerance;
    bool pass = false;
    std::string error;
};

/// Evaluator for the coupled double series
///   Z(k; l) = sum_{m, n} F_k(m) c(m, n) G_l(n)
/// (masses from SeriesEngine::layer_masses, both chains rooted at 0) and a
/// bank of checkers for the identities that the coupling satisfies:
/// transport in both directions, the two-arrow block moves, the boundary
/// identity against O(k-up), the closed form of the inner n-sum, the
/// telescoping step, the exact algebraic kernel behind it, and the
/// angle-bracket reparametrization of the connector.
///
/// Determinism: the connector is always computed at (min(m,n), max(m,n)),
/// making c(m,n) == c(n,m) bitwise; couplings accumulate row-major in
/// increasing (m, n); Z values are memoized per ordered argument pair, so
/// the symmetry Z(k;l) = Z(l;k) remains a genuine numerical check.
class ConnectEngine {
public:
    explicit ConnectEngine(Params p);

    SeriesEngine& series() { return eng_; }
    const Params& params() const { return eng_.params(); }

    /// Harness slack added to every Residual tolerance (default 1e-10).
    void set_slack(const Rat& slack);
    const Real& slack() const { return slack_; }

    /// c(m,n) = q^{mn} [m;xi][m;eta][n;xi][n;eta] / ([m]! [n]! [m+n;gamma]).
    Real connector(long m, long n);

    /// Same value from the angle-bracket form
    ///   q^{mn} <1-X>_m <1-Y>_m <1-X>_n <1-Y>_n / (<1>_m <1>_n <1-X-Y>_{m+n})
    /// with X = -log_q(xi'), Y = -log_q(eta').
    Real connector_alt(long m, long n);

    /// (q;q)_inf (q gamma';q)_inf / ((q xi';q)_inf (q eta';q)_inf), cached.
    const Real& c_factor_cached();

    /// Z(k; l); requires both non-empty, or one empty and the other empty or
    /// admissible (else DivergencePrecondition).  Memoized per ordered pair.
    Eval connected_sum(const Index& k, const Index& l);

    /// Z extended to lambda-polynomials whose monomials all start with y:
    ///   sum_{i,j <= N} Z(w_i; w'_j) (xi eta)^{i+j},
    /// with the same envelope-extrapolated lambda tail as big_o_word.
    /// Requires epsilon-validated Params.
    WordEval connected_sum_word(const LambdaPoly& w, const LambdaPoly& wp);

    /// Transport steps at (k, l): appending 1 on the left trades for a final
    /// increment on the right (plus an xi*eta correction), and vice versa.
    /// First Residual needs l non-empty, second needs k non-empty.
    std::vector<Residual> transport_residuals(const Index& k, const Index& l);

    /// The corrections cancel over a two-arrow block: Z(k,{->,up}; l) =
    /// Z(k; l,{->,up}) for any k, l, and Z(k,{up,->}; l) = Z(k; l,{up,->})
    /// for k, l non-empty (skipped otherwise).
    std::vector<Residual> double_transport_residuals(const Index& k, const Index& l);

    /// Exact rational check of
    ///   [a]([a+n] - q^{a+n} gamma) - q^n ([a]-q^a xi)([a]-q^a eta)
    ///     = [a][n] - q^{a+n} xi eta
    /// at `samples` random rational (q, xi, eta) and a, n in [1, 12].
    bool key_identity_check(int samples, unsigned long seed = 8433102);

    /// sum_{a>m} [a]/(([a]-q^a xi)([a]-q^a eta)) c(a,n)  vs
    /// (q^n/[n]) c(m,n) + xi eta (q^n/[n]) sum_{a>m} q^a/(([a]-q^a xi)([a]-q^a eta)) c(a,n).
    Residual telescope_check(long m, long n);

    /// Z(k; (1)) vs O(k-up) / c_factor, k non-empty.
    Residual initial_value_residual(const Index& k);

    /// sum_{n>=1} [n]/(([n]-q^n xi)([n]-q^n eta)) c(m,n) vs (q^m/[m]) / c_factor.
    Residual qgauss_residual(long m);

    /// For k matching the {2}-run/1/3 pattern: peel the final increment into
    /// Z(.;(1)), move one two-arrow block per step from the left argument to
    /// the right, then close with the boundary identity; the landing index
    /// equals dual(k) by construction (checked).  One Residual per step.
    std::vector<Residual> dor_chain(const Index& k);

private:
    Real bracket_prod(std::vector<Real>& cache, const Real& delta, long a);
    long z_cutoff(const Index& k, const Index& l);
    Real z_tail(const Index& k, const Index& l, long M);
    Real poly_weighted_partial(int p, long M);
    Residual make_residual(std::string input, const Real& lhs, const Real& rhs,
                           const Real& budget);

    SeriesEngine eng_;
    Real slack_;
    std::vector<Real> bx_, be_, bf_, bg_;  // [a;xi], [a;eta], [a]!, [a;gamma]
    std::map<std::pair<long, long>, Real> conn_;
    std::map<std::string, Eval> z_memo_;
    std::optional<Real> c_factor_;
};

// Exact-rational backend for small-cutoff cross-checks.
Rat connector_rat(long m, long n, const Rat& q, const Rat& xi, const Rat& eta);
std::vector<Rat> layer_masses_rat(const Index& k, const Rat& q, const Rat& xi,
                                  const Rat& eta, long M);
Rat connected_sum_truncated_rat(const Index& k, const Index& l, const Rat& q,
                                const Rat& xi, const Rat& eta, long M);

}  // namespace qmzv
