#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace uhg {

// Arbitrary-precision binary float. Every value carries its own precision
// (at least 64 bits); binary operations round to the smaller operand
// precision, so precision never silently inflates through a computation.
class BigFloat {
  public:
    static constexpr mpfr_prec_t kMinPrec = 64;

    BigFloat() { mpfr_init2(v_, kMinPrec); mpfr_set_zero(v_, 1); }
    explicit BigFloat(mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(BigFloat o) noexcept { swap(o); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    void swap(BigFloat& o) noexcept { mpfr_swap(v_, o.v_); }

    static BigFloat from_long(long v, mpfr_prec_t prec);
    static BigFloat from_rational(const mpq_class& q, mpfr_prec_t prec);
    // Parses a decimal string; throws UsageError on garbage.
    static BigFloat from_string(const std::string& s, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    BigFloat operator+(const BigFloat& o) const;
    BigFloat operator-(const BigFloat& o) const;
    BigFloat operator*(const BigFloat& o) const;
    // Division by zero throws UsageError.
    BigFloat operator/(const BigFloat& o) const;
    BigFloat operator-() const;

    BigFloat abs() const;
    BigFloat exp() const;
    // Natural log; nonpositive argument throws UsageError.
    BigFloat log() const;
    // Integer power at this value's precision; e may be negative (0^negative
    // throws UsageError). 0^0 = 1.
    BigFloat pow_int(long e) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }

    // Round-trip decimal form: enough digits that re-parsing at the same
    // precision recovers the value bit for bit.
    std::string str() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    mpfr_srcptr raw() const { return v_; }

  private:
    mpfr_t v_;
};

}  // namespace uhg
