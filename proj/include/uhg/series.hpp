#pragma once

#include <utility>
#include <vector>

#include "uhg/coefficient.hpp"

namespace uhg {

// A power series truncated at a fixed order N: the coefficients of
// t^0 .. t^N. Arithmetic never reads or writes past N and never changes N.
class TruncatedSeries {
  public:
    TruncatedSeries(const Field& f, int order);
    static TruncatedSeries constant(const Coefficient& c, const Field& f, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Field& field() const { return f_; }
    const Coefficient& operator[](int n) const { return c_.at(static_cast<size_t>(n)); }
    void set(int n, Coefficient c);

  private:
    Field f_;
    std::vector<Coefficient> c_;
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);
// Cauchy product.
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
// Forward-substitution quotient; g must have a usable constant term. In float
// mode the pivot must exceed 1e-30 times g's largest coefficient magnitude.
// `gname` names the denominator in the SingularDenominator message.
TruncatedSeries div(const TruncatedSeries& f, const TruncatedSeries& g,
                    const std::string& gname = "denominator");
// exp of a polynomial exponent sum c_d t^d (all d >= 1), truncated at `order`.
// Duplicate degrees accumulate.
TruncatedSeries exp_poly(const std::vector<std::pair<int, Coefficient>>& terms,
                         int order, const Field& field);
// f(t) -> f(s*t).
TruncatedSeries scale_arg(const TruncatedSeries& f, const Coefficient& s);
// f(t) -> t^k * f(t), truncated at the same order.
TruncatedSeries shift_up(const TruncatedSeries& f, int k);
TruncatedSeries pow_int(const TruncatedSeries& f, int e);
// n! * f_n. Throws std::out_of_range past the truncation order.
Coefficient egf_coeff(const TruncatedSeries& f, int n);

}  // namespace uhg
