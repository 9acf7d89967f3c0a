#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "uhg/bigfloat.hpp"
#include "uhg/errors.hpp"

namespace uhg {

enum class FieldMode { Exact, Float };

// The active coefficient field: exact rationals, or binary floats at a fixed
// bit precision. Carried by series and parameter sets so constants land in
// the right representation.
struct Field {
    FieldMode mode = FieldMode::Exact;
    mpfr_prec_t prec = 256;

    static Field exact() { return {FieldMode::Exact, 0}; }
    static Field floating(mpfr_prec_t p) { return {FieldMode::Float, p}; }
    bool operator==(const Field&) const = default;
};

// One scalar of the active field. Exact values are kept in lowest terms with
// positive denominator (GMP canonical form); float values carry per-value
// precision. Mixing modes in arithmetic is a usage error.
class Coefficient {
  public:
    Coefficient() : v_(mpq_class(0)) {}
    explicit Coefficient(mpq_class q) : v_(std::move(q)) {
        std::get<mpq_class>(v_).canonicalize();
    }
    explicit Coefficient(BigFloat f) : v_(std::move(f)) {}

    static Coefficient zero(const Field& f);
    static Coefficient one(const Field& f);
    static Coefficient from_long(long v, const Field& f);
    static Coefficient from_ratio(long num, long den, const Field& f);
    // Parses "p/q", an integer, or (float mode only) a decimal literal.
    static Coefficient parse(const std::string& s, const Field& f);

    FieldMode mode() const {
        return std::holds_alternative<mpq_class>(v_) ? FieldMode::Exact
                                                     : FieldMode::Float;
    }
    // Converts into the target field; float -> exact is a usage error.
    Coefficient to_field(const Field& f) const;

    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator-(const Coefficient& o) const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient operator/(const Coefficient& o) const;
    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
    Coefficient& operator-=(const Coefficient& o) { return *this = *this - o; }
    Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }
    Coefficient& operator/=(const Coefficient& o) { return *this = *this / o; }

    Coefficient abs() const;
    Coefficient pow_int(long e) const;
    // Float mode only: e^value.
    Coefficient exp() const;
    Coefficient log() const;

    bool is_zero() const;
    int sgn() const;
    // Three-way compare; modes must match.
    int cmp(const Coefficient& o) const;
    bool operator==(const Coefficient& o) const { return cmp(o) == 0; }
    bool operator<(const Coefficient& o) const { return cmp(o) < 0; }
    bool operator<=(const Coefficient& o) const { return cmp(o) <= 0; }
    bool operator>(const Coefficient& o) const { return cmp(o) > 0; }
    bool operator>=(const Coefficient& o) const { return cmp(o) >= 0; }

    const mpq_class& rat() const;
    const BigFloat& flt() const;

    // Exact: "p/q" (or bare integer). Float: round-trip decimal.
    std::string str() const;
    double to_double() const;

  private:
    std::variant<mpq_class, BigFloat> v_;
};

// Exact combinatorial helpers used throughout the family evaluators.
mpz_class factorial_z(unsigned n);
mpz_class binomial_z(unsigned n, unsigned k);
Coefficient coeff_from_z(const mpz_class& z, const Field& f);
Coefficient coeff_from_q(const mpq_class& q, const Field& f);

}  // namespace uhg
