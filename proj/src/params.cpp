#include "qmzv/params.hpp"

#include "qmzv/errors.hpp"

namespace qmzv {

const Rat& Params::default_target_abs_err() {
    static const Rat v = Rat(1) / rat_pow(Rat(10), 30);
    return v;
}

Params::Params(const Rat& q, const Rat& xi, const Rat& eta,
               mpfr_prec_t prec_bits, const Rat& target_abs_err)
    : prec_(prec_bits),
      q_rat_(q),
      xi_rat_(xi),
      eta_rat_(eta),
      target_rat_(target_abs_err),
      q_(q, prec_bits),
      xi_(xi, prec_bits),
      eta_(eta, prec_bits),
      gamma_(0, prec_bits),
      xi_prime_(0, prec_bits),
      eta_prime_(0, prec_bits),
      gamma_prime_(0, prec_bits),
      target_(target_abs_err, prec_bits) {
    if (prec_bits < 16)
        throw Error(Errc::invalid_params, "prec_bits must be at least 16");
    if (!(q > 0 && q < 1))
        throw Error(Errc::invalid_params, "q must satisfy 0 < q < 1, got " + rat_str(q));
    if (!(xi >= 0 && xi < 1))
        throw Error(Errc::invalid_params, "xi must satisfy 0 <= xi < 1, got " + rat_str(xi));
    if (!(eta >= 0 && eta < 1))
        throw Error(Errc::invalid_params, "eta must satisfy 0 <= eta < 1, got " + rat_str(eta));
    if (!(target_abs_err > 0))
        throw Error(Errc::invalid_params, "target_abs_err must be positive");

    const Rat one_minus_q = Rat(1) - q;
    gamma_rat_ = xi + eta + one_minus_q * xi * eta;
    if (!(gamma_rat_ < 1))
        throw Error(Errc::invalid_params,
                    "gamma = xi + eta + (1-q)xi*eta must be < 1, got " + rat_str(gamma_rat_));

    xi_prime_rat_ = 1 + one_minus_q * xi;
    eta_prime_rat_ = 1 + one_minus_q * eta;
    gamma_prime_rat_ = 1 + one_minus_q * gamma_rat_;
    if (gamma_prime_rat_ != xi_prime_rat_ * eta_prime_rat_)
        throw Error(Errc::invalid_params, "gamma' != xi'*eta' (rational arithmetic broke)");

    gamma_ = Real(gamma_rat_, prec_bits);
    xi_prime_ = Real(xi_prime_rat_, prec_bits);
    eta_prime_ = Real(eta_prime_rat_, prec_bits);
    gamma_prime_ = Real(gamma_prime_rat_, prec_bits);
}

void Params::set_max_terms(long cap) {
    if (cap < 8) throw Error(Errc::invalid_params, "max_terms too small");
    max_terms_ = cap;
}

const Real& Params::epsilon() const {
    if (!epsilon_) throw Error(Errc::epsilon_not_validated, "epsilon has not been validated");
    return *epsilon_;
}

void Params::set_epsilon(const Real& eps) {
    if (!(eps < 1))
        throw Error(Errc::invalid_params, "epsilon = xi*eta*O((2)) must be < 1, got " + eps.str(8));
    epsilon_ = eps;
}

}  // namespace qmzv
