#pragma once

#include <string>
#include <vector>

#include "uhg/series.hpp"

namespace uhg {

// Parameters of the unified polynomial family M_n^{(r)}(x, y; k, a, b, c; alphas),
// generated by
//   (-1)^r t^{rk} 2^{r(1-k)} / prod_{i<r}(alpha_i b^t - a^t) * c^{x t + y t^m}.
// Bases enter as their logs, so exact mode stays exact (a = b = c = e means
// all logs are 1); arbitrary real bases belong to float mode.
struct UnifiedParams {
    int r = 1;
    int k = 0;
    Coefficient lnA, lnB, lnC;
    std::vector<Coefficient> alphas;
    Coefficient x, y;
    int m = 2;

    Field field() const;
    // Throws UsageError when an invariant fails (names it).
    void validate() const;
};

// The full generating series truncated at `order` (order >= r*k).
TruncatedSeries unified_series(const UnifiedParams& p, int order);
// EGF coefficient n of the generating series.
Coefficient unified_poly(const UnifiedParams& p, int n);
// The numbers specialization: requires x = y = 0 and lnC = 0.
Coefficient unified_numbers(const UnifiedParams& p, int n);

enum class RefFamily { Bernoulli, Euler, Genocchi };

// Apostol-type reference families of integer order w >= 1:
//   bernoulli: (t/(lambda e^t - 1))^w e^{xt}
//   euler:     (2/(lambda e^t + 1))^w e^{xt}
//   genocchi:  (2t/(lambda e^t + 1))^w e^{xt}
// The singular pivots (bernoulli lambda = 1, genocchi lambda = -1) factor t
// out of the denominator analytically; euler lambda = -1 has no such rescue
// and raises SingularDenominator.
Coefficient reference_family(RefFamily kind, int w, const Coefficient& lambda,
                             const Coefficient& x, int n);

// EGF coefficient n of c^{xt + yt^2}.
Coefficient hermite_kampe(int n, const Coefficient& x, const Coefficient& y,
                          const Coefficient& lnC);

struct HermiteSpec {
    int n = 0;
    int m = 2;
    Coefficient x;
    Coefficient beta;
};

// H_{n,m}(x, beta) = sum_{k<=n/m} beta^k n!/(k!(n-mk)!) x^{n-mk}.
Coefficient gen_hermite(const HermiteSpec& s);

// Complete homogeneous symmetric polynomials h_0..h_smax of the alphas,
// by the Newton power-sum recurrence s h_s = sum_{j<=s} p_j h_{s-j}.
std::vector<Coefficient> homogeneous_weights(const std::vector<Coefficient>& alphas,
                                             int smax, const Field& f);

// The lattice form of the family at k = 0, a = 1, b = c = e:
//   2^r sum_{x_1..x_r >= 0} prod alpha_i^{x_i} H_{n,m}(x + sum x_i, y),
// grouped by coordinate sum and truncated when the certified geometric tail
// bound drops below epsilon. Requires |alpha_i| < 1 (DivergentSum otherwise).
Coefficient explicit_lattice(const UnifiedParams& p, int n, const Coefficient& epsilon);

// Adaptive one-dimensional reduction shared by explicit_lattice and the
// distribution sums: sum_{s>=0} h_s(alphas) H_{n,m}(shift + s, beta), cut when
// the certified tail bound is below epsilon. All alphas must lie in (0,1) by
// magnitude. `s0` skips the first s0 terms of the sum.
Coefficient reduced_lattice_sum(const std::vector<Coefficient>& alphas, int n, int m,
                                const Coefficient& shift, const Coefficient& beta,
                                const Coefficient& epsilon, const Field& f,
                                int s0 = 0, int* terms_used = nullptr,
                                Coefficient* tail_bound = nullptr);

}  // namespace uhg
