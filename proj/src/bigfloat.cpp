#include "uhg/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "uhg/errors.hpp"

namespace uhg {

namespace {

mpfr_prec_t clamp_prec(mpfr_prec_t p) {
    return std::max<mpfr_prec_t>(p, BigFloat::kMinPrec);
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, kMinPrec);
    mpfr_swap(v_, o.v_);
}

BigFloat BigFloat::from_long(long v, mpfr_prec_t prec) {
    BigFloat r(clamp_prec(prec));
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    BigFloat r(clamp_prec(prec));
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_string(const std::string& s, mpfr_prec_t prec) {
    BigFloat r(clamp_prec(prec));
    if (s.empty()) throw UsageError("empty float literal");
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw UsageError("bad float literal: " + s);
    return r;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
    BigFloat r(std::min(precision(), o.precision()));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
    BigFloat r(std::min(precision(), o.precision()));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
    BigFloat r(std::min(precision(), o.precision()));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
    if (o.is_zero()) throw UsageError("division by zero");
    BigFloat r(std::min(precision(), o.precision()));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::exp() const {
    BigFloat r(precision());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::log() const {
    if (sgn() <= 0) throw UsageError("log needs a positive argument");
    BigFloat r(precision());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow_int(long e) const {
    BigFloat r(precision());
    if (e == 0) {
        mpfr_set_si(r.v_, 1, MPFR_RNDN);
        return r;
    }
    if (is_zero() && e < 0) throw UsageError("zero to a negative power");
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    return r;
}

std::string BigFloat::str() const {
    if (is_zero()) return "0";
    // ceil(p*log10(2)) + 1 digits guarantee a binary->decimal->binary round trip.
    size_t digits = static_cast<size_t>(
                        std::ceil(static_cast<double>(precision()) * 0.30102999566398120)) +
                    1;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace uhg
