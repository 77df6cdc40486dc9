#pragma once

#include <optional>

#include "qmzv/rational.hpp"
#include "qmzv/real.hpp"

namespace qmzv {

/// Ambient constants for every evaluation: q in (0,1) and the two Ohno
/// weights xi, eta, kept both as exact rationals (given on entry) and as
/// floats at the working precision.  Construction enforces
///   0 < q < 1,  0 <= xi < 1,  0 <= eta < 1,  gamma = xi+eta+(1-q)xi*eta < 1,
/// and checks gamma' = xi'*eta' exactly in rational arithmetic, where
/// delta' = 1+(1-q)delta.  The remaining constraint epsilon = xi*eta*O((2)) < 1
/// depends on a series value and is validated by the harness before any
/// lambda-series evaluation (see SeriesEngine::validate_epsilon).
class Params {
public:
    Params(const Rat& q, const Rat& xi, const Rat& eta,
           mpfr_prec_t prec_bits = 192,
           const Rat& target_abs_err = default_target_abs_err());

    static const Rat& default_target_abs_err();  // 1e-30

    mpfr_prec_t prec_bits() const { return prec_; }
    long max_terms() const { return max_terms_; }
    void set_max_terms(long cap);

    const Rat& q_rat() const { return q_rat_; }
    const Rat& xi_rat() const { return xi_rat_; }
    const Rat& eta_rat() const { return eta_rat_; }
    const Rat& gamma_rat() const { return gamma_rat_; }
    const Rat& xi_prime_rat() const { return xi_prime_rat_; }
    const Rat& eta_prime_rat() const { return eta_prime_rat_; }
    const Rat& gamma_prime_rat() const { return gamma_prime_rat_; }
    const Rat& target_abs_err_rat() const { return target_rat_; }

    const Real& q() const { return q_; }
    const Real& xi() const { return xi_; }
    const Real& eta() const { return eta_; }
    const Real& gamma() const { return gamma_; }
    const Real& xi_prime() const { return xi_prime_; }
    const Real& eta_prime() const { return eta_prime_; }
    const Real& gamma_prime() const { return gamma_prime_; }
    const Real& target_abs_err() const { return target_; }

    /// epsilon = xi*eta*O((2)); unavailable until the harness ran the
    /// validation step.
    bool epsilon_validated() const { return epsilon_.has_value(); }
    const Real& epsilon() const;
    void set_epsilon(const Real& eps);

    /// Convenience for kernels: a fresh Real at the working precision.
    Real make(long v) const { return Real(v, prec_); }
    Real make(const Rat& v) const { return Real(v, prec_); }

private:
    mpfr_prec_t prec_;
    long max_terms_ = 1L << 16;

    Rat q_rat_, xi_rat_, eta_rat_;
    Rat gamma_rat_, xi_prime_rat_, eta_prime_rat_, gamma_prime_rat_;
    Rat target_rat_;

    Real q_, xi_, eta_;
    Real gamma_, xi_prime_, eta_prime_, gamma_prime_;
    Real target_;

    std::optional<Real> epsilon_;
};

}  // namespace qmzv
