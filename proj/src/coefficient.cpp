#include "uhg/coefficient.hpp"

#include <cctype>

namespace uhg {

namespace {

const mpq_class& need_rat(const std::variant<mpq_class, BigFloat>& v) {
    if (!std::holds_alternative<mpq_class>(v))
        throw UsageError("expected an exact-rational value");
    return std::get<mpq_class>(v);
}

const BigFloat& need_flt(const std::variant<mpq_class, BigFloat>& v) {
    if (!std::holds_alternative<BigFloat>(v))
        throw UsageError("expected a big-float value");
    return std::get<BigFloat>(v);
}

bool looks_rational(const std::string& s) {
    for (char c : s)
        if (c != '-' && c != '+' && c != '/' && !std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return !s.empty();
}

}  // namespace

Coefficient Coefficient::zero(const Field& f) { return from_long(0, f); }

Coefficient Coefficient::one(const Field& f) { return from_long(1, f); }

Coefficient Coefficient::from_long(long v, const Field& f) {
    if (f.mode == FieldMode::Exact) return Coefficient(mpq_class(v));
    return Coefficient(BigFloat::from_long(v, f.prec));
}

Coefficient Coefficient::from_ratio(long num, long den, const Field& f) {
    if (den == 0) throw UsageError("zero denominator");
    mpq_class q(num);
    q /= mpq_class(den);
    if (f.mode == FieldMode::Exact) return Coefficient(std::move(q));
    return Coefficient(BigFloat::from_rational(q, f.prec));
}

Coefficient Coefficient::parse(const std::string& s, const Field& f) {
    if (looks_rational(s)) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw UsageError("bad rational literal: " + s);
        if (q.get_den() == 0) throw UsageError("zero denominator: " + s);
        q.canonicalize();
        if (f.mode == FieldMode::Exact) return Coefficient(std::move(q));
        return Coefficient(BigFloat::from_rational(q, f.prec));
    }
    if (f.mode == FieldMode::Exact)
        throw UsageError("exact mode needs a rational literal, got: " + s);
    return Coefficient(BigFloat::from_string(s, f.prec));
}

Coefficient Coefficient::to_field(const Field& f) const {
    if (f.mode == FieldMode::Exact) {
        if (mode() != FieldMode::Exact)
            throw UsageError("cannot convert a float back to the exact field");
        return *this;
    }
    if (mode() == FieldMode::Float) return *this;
    return Coefficient(BigFloat::from_rational(rat(), f.prec));
}

#define UHG_BINOP(op)                                                       \
    Coefficient Coefficient::operator op(const Coefficient& o) const {     \
        if (mode() != o.mode()) throw UsageError("mixed coefficient modes"); \
        if (mode() == FieldMode::Exact)                                     \
            return Coefficient(mpq_class(rat() op o.rat()));                \
        return Coefficient(flt() op o.flt());                               \
    }

UHG_BINOP(+)
UHG_BINOP(-)
UHG_BINOP(*)
#undef UHG_BINOP

Coefficient Coefficient::operator/(const Coefficient& o) const {
    if (mode() != o.mode()) throw UsageError("mixed coefficient modes");
    if (o.is_zero()) throw UsageError("division by zero");
    if (mode() == FieldMode::Exact) return Coefficient(mpq_class(rat() / o.rat()));
    return Coefficient(flt() / o.flt());
}

Coefficient Coefficient::operator-() const {
    if (mode() == FieldMode::Exact) return Coefficient(mpq_class(-rat()));
    return Coefficient(-flt());
}

Coefficient Coefficient::abs() const {
    if (mode() == FieldMode::Exact) return Coefficient(mpq_class(::abs(rat())));
    return Coefficient(flt().abs());
}

Coefficient Coefficient::pow_int(long e) const {
    if (mode() == FieldMode::Float) return Coefficient(flt().pow_int(e));
    if (e == 0) return Coefficient(mpq_class(1));
    if (is_zero() && e < 0) throw UsageError("zero to a negative power");
    mpq_class base = e < 0 ? mpq_class(1 / rat()) : rat();
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), n);
    r.canonicalize();
    return Coefficient(std::move(r));
}

Coefficient Coefficient::exp() const {
    if (mode() == FieldMode::Exact)
        throw UsageError("exp is not available in the exact field");
    return Coefficient(flt().exp());
}

Coefficient Coefficient::log() const {
    if (mode() == FieldMode::Exact)
        throw UsageError("log is not available in the exact field");
    return Coefficient(flt().log());
}

bool Coefficient::is_zero() const {
    return mode() == FieldMode::Exact ? rat() == 0 : flt().is_zero();
}

int Coefficient::sgn() const {
    return mode() == FieldMode::Exact ? ::sgn(rat()) : flt().sgn();
}

int Coefficient::cmp(const Coefficient& o) const {
    if (mode() != o.mode()) throw UsageError("mixed coefficient modes");
    if (mode() == FieldMode::Exact) return ::cmp(rat(), o.rat());
    return flt().cmp(o.flt());
}

const mpq_class& Coefficient::rat() const { return need_rat(v_); }

const BigFloat& Coefficient::flt() const { return need_flt(v_); }

std::string Coefficient::str() const {
    if (mode() == FieldMode::Exact) return rat().get_str();
    return flt().str();
}

double Coefficient::to_double() const {
    if (mode() == FieldMode::Exact) return rat().get_d();
    return flt().to_double();
}

mpz_class factorial_z(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class binomial_z(unsigned n, unsigned k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Coefficient coeff_from_z(const mpz_class& z, const Field& f) {
    return coeff_from_q(mpq_class(z), f);
}

Coefficient coeff_from_q(const mpq_class& q, const Field& f) {
    if (f.mode == FieldMode::Exact) return Coefficient(mpq_class(q));
    return Coefficient(BigFloat::from_rational(q, f.prec));
}

}  // namespace uhg
