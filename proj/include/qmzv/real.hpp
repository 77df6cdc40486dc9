#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "qmzv/rational.hpp"

namespace qmzv {

/// Arbitrary-precision binary float backed by MPFR.  Every value carries its
/// own precision; a binary operation rounds once, to the larger of the two
/// operand precisions, in round-to-nearest-even.  Results are therefore a
/// deterministic function of the inputs, independent of evaluation context.
class Real {
public:
    static constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

    Real() { mpfr_init2(v_, 53); mpfr_set_nan(v_); }
    Real(long value, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, value, kRnd);
    }
    Real(const Rat& value, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, value.backend().data(), kRnd);
    }

    static Real from_double(double value, mpfr_prec_t prec);
    static Real from_str(const std::string& text, mpfr_prec_t prec);
    static Real nan(mpfr_prec_t prec);
    static Real pos_inf(mpfr_prec_t prec);

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, kRnd);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 53);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, kRnd);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, kRnd); }

    /// Decimal string with `digits` significant digits (enough digits for a
    /// lossless round-trip at this precision when digits == 0).
    std::string str(int digits = 0) const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);

    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator+(long a, const Real& b);
    friend Real operator-(long a, const Real& b);
    friend Real operator*(long a, const Real& b);
    friend Real operator/(long a, const Real& b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0 && !a.is_nan(); }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0 && !a.is_nan(); }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0 && !a.is_nan(); }
    friend bool operator<=(const Real& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.v_, b) >= 0; }

private:
    mpfr_t v_;
};

Real abs(const Real& a);
Real pow_ui(const Real& base, unsigned long e);
Real pow_si(const Real& base, long e);
Real pow(const Real& base, const Real& e);
Real log(const Real& a);
Real exp(const Real& a);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

}  // namespace qmzv
