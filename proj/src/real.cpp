#include "qmzv/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qmzv/errors.hpp"

namespace qmzv {

namespace {
mpfr_prec_t join(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}
}  // namespace

Real Real::from_double(double value, mpfr_prec_t prec) {
    Real r(0, prec);
    mpfr_set_d(r.v_, value, kRnd);
    return r;
}

Real Real::from_str(const std::string& text, mpfr_prec_t prec) {
    Real r(0, prec);
    if (mpfr_set_str(r.v_, text.c_str(), 10, kRnd) != 0)
        throw Error(Errc::syntax_error, "bad numeric literal '" + text + "'");
    return r;
}

Real Real::nan(mpfr_prec_t prec) {
    Real r(0, prec);
    mpfr_set_nan(r.v_);
    return r;
}

Real Real::pos_inf(mpfr_prec_t prec) {
    Real r(0, prec);
    mpfr_set_inf(r.v_, +1);
    return r;
}

std::string Real::str(int digits) const {
    if (digits <= 0) {
        // ceil(prec * log10(2)) + 2 digits round-trips exactly.
        digits = static_cast<int>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 2;
    }
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%%.%dRe", digits - 1);
    int n = mpfr_snprintf(nullptr, 0, fmt, v_);
    std::vector<char> buf(static_cast<size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
    return std::string(buf.data());
}

Real& Real::operator+=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), kRnd);
    mpfr_add(v_, v_, o.v_, kRnd);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), kRnd);
    mpfr_sub(v_, v_, o.v_, kRnd);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), kRnd);
    mpfr_mul(v_, v_, o.v_, kRnd);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), kRnd);
    mpfr_div(v_, v_, o.v_, kRnd);
    return *this;
}

Real operator+(const Real& a, const Real& b) {
    Real r(0, join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, Real::kRnd);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r(0, join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, Real::kRnd);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r(0, join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, Real::kRnd);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r(0, join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, Real::kRnd);
    return r;
}
Real operator-(const Real& a) {
    Real r(0, a.prec());
    mpfr_neg(r.v_, a.v_, Real::kRnd);
    return r;
}

Real operator+(const Real& a, long b) {
    Real r(0, a.prec());
    mpfr_add_si(r.v_, a.v_, b, Real::kRnd);
    return r;
}
Real operator-(const Real& a, long b) {
    Real r(0, a.prec());
    mpfr_sub_si(r.v_, a.v_, b, Real::kRnd);
    return r;
}
Real operator*(const Real& a, long b) {
    Real r(0, a.prec());
    mpfr_mul_si(r.v_, a.v_, b, Real::kRnd);
    return r;
}
Real operator/(const Real& a, long b) {
    Real r(0, a.prec());
    mpfr_div_si(r.v_, a.v_, b, Real::kRnd);
    return r;
}
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) {
    Real r(0, b.prec());
    mpfr_si_sub(r.v_, a, b.v_, Real::kRnd);
    return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) {
    Real r(0, b.prec());
    mpfr_si_div(r.v_, a, b.v_, Real::kRnd);
    return r;
}

Real abs(const Real& a) {
    Real r(0, a.prec());
    mpfr_abs(r.raw(), a.raw(), Real::kRnd);
    return r;
}
Real pow_ui(const Real& base, unsigned long e) {
    Real r(0, base.prec());
    mpfr_pow_ui(r.raw(), base.raw(), e, Real::kRnd);
    return r;
}
Real pow_si(const Real& base, long e) {
    Real r(0, base.prec());
    mpfr_pow_si(r.raw(), base.raw(), e, Real::kRnd);
    return r;
}
Real pow(const Real& base, const Real& e) {
    Real r(0, std::max(base.prec(), e.prec()));
    mpfr_pow(r.raw(), base.raw(), e.raw(), Real::kRnd);
    return r;
}
Real log(const Real& a) {
    Real r(0, a.prec());
    mpfr_log(r.raw(), a.raw(), Real::kRnd);
    return r;
}
Real exp(const Real& a) {
    Real r(0, a.prec());
    mpfr_exp(r.raw(), a.raw(), Real::kRnd);
    return r;
}
Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

}  // namespace qmzv
