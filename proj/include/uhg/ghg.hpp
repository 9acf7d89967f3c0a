#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "uhg/families.hpp"

namespace uhg {

// Multivariate discrete Hermite-Genocchi distribution on N^r:
//   P(X = x) = 2^r B prod_i alpha_i^{x_i} H_{n,m}(|x| + gamma, beta)
// with H the higher-order Hermite polynomial and B fixed by total mass one.
// Requires 0 < alpha_i < 1, gamma >= 0, beta >= 0; big-float field only.
struct GHGParams {
    int r = 1;
    int m = 2;
    int n = 0;
    std::vector<Coefficient> alphas;
    Coefficient gamma, beta;
    Coefficient epsilon;  // certified bound for every truncated lattice sum

    Field field() const;
    void validate() const;
};

enum class NormalizerMethod { Series, HomogeneousReduction, LatticeBruteforce };
enum class ReliabilityRoute { Series, Lattice };
enum class MomentKind { Raw, Factorial };
enum class AgingClass { MNBU, MNWU, MNBUE, MNWUE, MIHR, MDHR };

std::string to_string(NormalizerMethod m);
std::string to_string(ReliabilityRoute r);
std::string to_string(MomentKind k);
std::string to_string(AgingClass c);
NormalizerMethod normalizer_method_from_string(const std::string& s);
ReliabilityRoute reliability_route_from_string(const std::string& s);
MomentKind moment_kind_from_string(const std::string& s);
AgingClass aging_class_from_string(const std::string& s);

struct NormalizerResult {
    Coefficient B;
    NormalizerMethod method = NormalizerMethod::Series;
    long terms = -1;        // truncation index used; -1 when no tail is cut
    Coefficient tail_bound; // certified bound on the discarded mass
};

struct MarginalCdf {
    Coefficient direct;            // finite sum of marginal pmf values
    Coefficient lemma;             // 1 - B alpha_i^{x+1} kernel(x+1)
    Coefficient lemma_as_printed;  // 1 - B alpha_i^{x} kernel(x)
};

struct ClassifyResult {
    AgingClass aging = AgingClass::MNBU;
    bool holds = true;
    // lexicographically first violating grid point; t stays empty for the
    // in-expectation classes and whenever holds is true
    std::vector<long> x, t;
    Coefficient lhs, rhs;
};

class GHGDistribution {
  public:
    explicit GHGDistribution(GHGParams p);

    const GHGParams& params() const { return p_; }

    // EGF coefficient n of 2^r / prod(1 - alpha_i e^t) e^{(gamma+shift)t + beta t^m}.
    // Every probability here is a ratio of these; cached per shift.
    Coefficient kernel(long shift) const;
    // sum_{T>=0} h_T(alpha) kernel(shift + T), the used-life weighting behind
    // the in-expectation aging classes; certified to params.epsilon.
    Coefficient kernel_sum(long shift) const;

    NormalizerResult normalizer(NormalizerMethod method) const;
    Coefficient pmf(const std::vector<long>& x) const;
    Coefficient reliability(const std::vector<long>& x,
                            ReliabilityRoute route = ReliabilityRoute::Series) const;
    Coefficient hazard(int i, const std::vector<long>& x) const;
    MarginalCdf marginal_cdf(int i, long x) const;
    Coefficient pgf(const std::vector<Coefficient>& t) const;
    Coefficient mgf(const std::vector<Coefficient>& t) const;
    Coefficient moment(int i, int ell, MomentKind kind) const;
    // (mean, variance) of component i
    std::pair<Coefficient, Coefficient> mean_variance(int i) const;
    ClassifyResult classify(AgingClass aging, long grid_bound) const;

  private:
    GHGParams p_;
    Field f_;
    Coefficient B_;  // series-route normalizer, used by all point evaluations
    mutable std::map<long, Coefficient> kern_;
    mutable std::map<long, Coefficient> ksum_;

    UnifiedParams family_at(const Coefficient& abscissa) const;
    long sum_coords(const std::vector<long>& x) const;
    Coefficient alpha_power(const std::vector<long>& x) const;
};

// P(X <= x) for independent univariate components (each with r = 1), via the
// corrected marginal tail formula.
Coefficient joint_cdf_independent(const std::vector<GHGParams>& comps,
                                  const std::vector<long>& x);

}  // namespace uhg
