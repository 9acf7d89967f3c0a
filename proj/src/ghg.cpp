#include "uhg/ghg.hpp"

#include <cmath>

#include "uhg/errors.hpp"

namespace uhg {

namespace {

Coefficient pow2r(int r, const Field& f) {
    return Coefficient::from_long(2, f).pow_int(r);
}

// v^ell or the falling factorial v (v-1) ... (v-ell+1)
Coefficient weight_phi(long v, int ell, MomentKind kind, const Field& f) {
    if (kind == MomentKind::Raw)
        return Coefficient::from_long(v, f).pow_int(ell);
    Coefficient acc = Coefficient::one(f);
    for (int j = 0; j < ell; ++j)
        acc *= Coefficient::from_long(v - j, f);
    return acc;
}

}  // namespace

std::string to_string(NormalizerMethod m) {
    switch (m) {
        case NormalizerMethod::Series: return "series";
        case NormalizerMethod::HomogeneousReduction: return "homogeneous-reduction";
        case NormalizerMethod::LatticeBruteforce: return "lattice-bruteforce";
    }
    return "series";
}

std::string to_string(ReliabilityRoute r) {
    return r == ReliabilityRoute::Series ? "series" : "lattice";
}

std::string to_string(MomentKind k) {
    return k == MomentKind::Raw ? "raw" : "factorial";
}

std::string to_string(AgingClass c) {
    switch (c) {
        case AgingClass::MNBU: return "mnbu";
        case AgingClass::MNWU: return "mnwu";
        case AgingClass::MNBUE: return "mnbue";
        case AgingClass::MNWUE: return "mnwue";
        case AgingClass::MIHR: return "mihr";
        case AgingClass::MDHR: return "mdhr";
    }
    return "mnbu";
}

NormalizerMethod normalizer_method_from_string(const std::string& s) {
    if (s == "series") return NormalizerMethod::Series;
    if (s == "homogeneous-reduction") return NormalizerMethod::HomogeneousReduction;
    if (s == "lattice-bruteforce") return NormalizerMethod::LatticeBruteforce;
    throw UsageError("unknown normalizer method: " + s);
}

ReliabilityRoute reliability_route_from_string(const std::string& s) {
    if (s == "series") return ReliabilityRoute::Series;
    if (s == "lattice") return ReliabilityRoute::Lattice;
    throw UsageError("unknown reliability route: " + s);
}

MomentKind moment_kind_from_string(const std::string& s) {
    if (s == "raw") return MomentKind::Raw;
    if (s == "factorial") return MomentKind::Factorial;
    throw UsageError("unknown moment kind: " + s);
}

AgingClass aging_class_from_string(const std::string& s) {
    if (s == "mnbu") return AgingClass::MNBU;
    if (s == "mnwu") return AgingClass::MNWU;
    if (s == "mnbue") return AgingClass::MNBUE;
    if (s == "mnwue") return AgingClass::MNWUE;
    if (s == "mihr") return AgingClass::MIHR;
    if (s == "mdhr") return AgingClass::MDHR;
    throw UsageError("unknown aging class: " + s);
}

Field GHGParams::field() const {
    mpfr_prec_t prec = 0;
    auto see = [&](const Coefficient& c) {
        if (c.mode() != FieldMode::Float)
            throw UsageError("distribution parameters need the big-float field");
        if (prec == 0 || c.flt().precision() < prec) prec = c.flt().precision();
    };
    for (const auto& a : alphas) see(a);
    see(gamma);
    see(beta);
    see(epsilon);
    return Field::floating(static_cast<int>(prec));
}

void GHGParams::validate() const {
    if (r < 1) throw UsageError("r must be positive");
    if (m < 2) throw UsageError("m must be at least 2");
    if (n < 0) throw UsageError("n must be nonnegative");
    if (static_cast<int>(alphas.size()) != r)
        throw UsageError("need exactly r lattice weights alpha");
    const Field f = field();
    const Coefficient zero = Coefficient::zero(f);
    const Coefficient one = Coefficient::one(f);
    for (const auto& a : alphas) {
        if (!(a > zero)) throw UsageError("alpha must be positive");
        if (!(a < one)) throw DivergentSum("alpha must lie strictly below 1");
    }
    if (gamma < zero) throw UsageError("gamma must be nonnegative");
    if (beta < zero) throw UsageError("beta must be nonnegative");
    if (!(epsilon > zero)) throw UsageError("epsilon must be positive");
}

GHGDistribution::GHGDistribution(GHGParams p) : p_(std::move(p)), f_(p_.field()) {
    p_.validate();
    B_ = Coefficient::one(f_) / kernel(0);
}

UnifiedParams GHGDistribution::family_at(const Coefficient& abscissa) const {
    UnifiedParams up;
    up.r = p_.r;
    up.k = 0;
    up.m = p_.m;
    up.lnA = Coefficient::zero(f_);
    up.lnB = Coefficient::one(f_);
    up.lnC = Coefficient::one(f_);
    up.alphas = p_.alphas;
    up.x = abscissa;
    up.y = p_.beta;
    return up;
}

long GHGDistribution::sum_coords(const std::vector<long>& x) const {
    if (static_cast<int>(x.size()) != p_.r)
        throw UsageError("point must have exactly r coordinates");
    long total = 0;
    for (long v : x) {
        if (v < 0) throw UsageError("coordinates must be nonnegative");
        total += v;
    }
    return total;
}

Coefficient GHGDistribution::alpha_power(const std::vector<long>& x) const {
    Coefficient w = Coefficient::one(f_);
    for (size_t i = 0; i < x.size(); ++i) w *= p_.alphas[i].pow_int(x[i]);
    return w;
}

Coefficient GHGDistribution::kernel(long shift) const {
    auto it = kern_.find(shift);
    if (it != kern_.end()) return it->second;
    Coefficient v = unified_poly(
        family_at(p_.gamma + Coefficient::from_long(shift, f_)), p_.n);
    kern_.emplace(shift, v);
    return v;
}

Coefficient GHGDistribution::kernel_sum(long shift) const {
    auto it = ksum_.find(shift);
    if (it != ksum_.end()) return it->second;
    std::vector<Coefficient> doubled = p_.alphas;
    doubled.insert(doubled.end(), p_.alphas.begin(), p_.alphas.end());
    const Coefficient two_r = pow2r(p_.r, f_);
    Coefficient v = two_r *
                    reduced_lattice_sum(
                        doubled, p_.n, p_.m,
                        p_.gamma + Coefficient::from_long(shift, f_), p_.beta,
                        p_.epsilon / two_r, f_, 0);
    ksum_.emplace(shift, v);
    return v;
}

NormalizerResult GHGDistribution::normalizer(NormalizerMethod method) const {
    NormalizerResult res;
    res.method = method;
    res.tail_bound = Coefficient::zero(f_);
    const Coefficient two_r = pow2r(p_.r, f_);
    switch (method) {
        case NormalizerMethod::Series:
            res.B = B_;
            return res;
        case NormalizerMethod::HomogeneousReduction: {
            int terms = 0;
            Coefficient tb = Coefficient::zero(f_);
            Coefficient mass = two_r * reduced_lattice_sum(
                                           p_.alphas, p_.n, p_.m, p_.gamma,
                                           p_.beta, p_.epsilon / two_r, f_, 0,
                                           &terms, &tb);
            res.B = Coefficient::one(f_) / mass;
            res.terms = terms;
            res.tail_bound = two_r * tb;
            return res;
        }
        case NormalizerMethod::LatticeBruteforce: {
            // Sizing pass: totals above S carry certified mass below epsilon,
            // and every point outside the box [0,S]^r has total above S.
            int box = 0;
            Coefficient tb = Coefficient::zero(f_);
            (void)reduced_lattice_sum(p_.alphas, p_.n, p_.m, p_.gamma, p_.beta,
                                      p_.epsilon / two_r, f_, 0, &box, &tb);
            if (std::pow(static_cast<double>(box) + 1.0, p_.r) > 2e8)
                throw TailNotConverged("brute-force box too large");
            std::vector<std::vector<Coefficient>> pw(
                static_cast<size_t>(p_.r));
            for (int i = 0; i < p_.r; ++i) {
                pw[static_cast<size_t>(i)].push_back(Coefficient::one(f_));
                for (int v = 1; v <= box; ++v)
                    pw[static_cast<size_t>(i)].push_back(
                        pw[static_cast<size_t>(i)].back() *
                        p_.alphas[static_cast<size_t>(i)]);
            }
            std::vector<Coefficient> hday;
            for (long t = 0; t <= static_cast<long>(box) * p_.r; ++t)
                hday.push_back(gen_hermite(
                    {p_.n, p_.m, p_.gamma + Coefficient::from_long(t, f_),
                     p_.beta}));
            std::vector<int> x(static_cast<size_t>(p_.r), 0);
            long total = 0;
            Coefficient mass = Coefficient::zero(f_);
            for (;;) {
                Coefficient w = Coefficient::one(f_);
                for (int i = 0; i < p_.r; ++i)
                    w *= pw[static_cast<size_t>(i)]
                           [static_cast<size_t>(x[static_cast<size_t>(i)])];
                mass += w * hday[static_cast<size_t>(total)];
                int i = p_.r - 1;
                while (i >= 0 && x[static_cast<size_t>(i)] == box) {
                    total -= box;
                    x[static_cast<size_t>(i)] = 0;
                    --i;
                }
                if (i < 0) break;
                ++x[static_cast<size_t>(i)];
                ++total;
            }
            res.B = Coefficient::one(f_) / (two_r * mass);
            res.terms = box;
            res.tail_bound = two_r * tb;
            return res;
        }
    }
    throw UsageError("unknown normalizer method");
}

Coefficient GHGDistribution::pmf(const std::vector<long>& x) const {
    const long total = sum_coords(x);
    return pow2r(p_.r, f_) * B_ * alpha_power(x) *
           gen_hermite({p_.n, p_.m,
                        p_.gamma + Coefficient::from_long(total, f_), p_.beta});
}

Coefficient GHGDistribution::reliability(const std::vector<long>& x,
                                         ReliabilityRoute route) const {
    const long total = sum_coords(x);
    if (route == ReliabilityRoute::Series)
        return B_ * alpha_power(x) * kernel(total);
    const Coefficient two_r = pow2r(p_.r, f_);
    Coefficient mass = two_r * reduced_lattice_sum(
                                   p_.alphas, p_.n, p_.m,
                                   p_.gamma + Coefficient::from_long(total, f_),
                                   p_.beta, p_.epsilon / (two_r * B_), f_, 0);
    return B_ * alpha_power(x) * mass;
}

Coefficient GHGDistribution::hazard(int i, const std::vector<long>& x) const {
    if (i < 0 || i >= p_.r) throw UsageError("component index out of range");
    const long total = sum_coords(x);
    Coefficient mk = kernel(total);
    if (mk.is_zero()) throw UndefinedHazard("no surviving mass at this point");
    return Coefficient::one(f_) -
           p_.alphas[static_cast<size_t>(i)] * kernel(total + 1) / mk;
}

MarginalCdf GHGDistribution::marginal_cdf(int i, long x) const {
    if (i < 0 || i >= p_.r) throw UsageError("component index out of range");
    if (x < 0) throw UsageError("marginal abscissa must be nonnegative");
    const Coefficient one = Coefficient::one(f_);
    const Coefficient two_r = pow2r(p_.r, f_);
    const Coefficient& ai = p_.alphas[static_cast<size_t>(i)];

    std::vector<Coefficient> rest;
    for (int j = 0; j < p_.r; ++j)
        if (j != i) rest.push_back(p_.alphas[static_cast<size_t>(j)]);
    const Coefficient inner =
        p_.epsilon / (Coefficient::from_long(x + 1, f_) * two_r * B_);
    Coefficient acc = Coefficient::zero(f_);
    Coefficient apow = one;
    for (long v = 0; v <= x; ++v) {
        acc += apow * reduced_lattice_sum(
                          rest, p_.n, p_.m,
                          p_.gamma + Coefficient::from_long(v, f_), p_.beta,
                          inner, f_, 0);
        apow *= ai;
    }

    MarginalCdf out;
    out.direct = two_r * B_ * acc;
    out.lemma = one - B_ * ai.pow_int(x + 1) * kernel(x + 1);
    out.lemma_as_printed = one - B_ * ai.pow_int(x) * kernel(x);
    return out;
}

Coefficient GHGDistribution::pgf(const std::vector<Coefficient>& t) const {
    if (static_cast<int>(t.size()) != p_.r)
        throw UsageError("need exactly r transform arguments");
    UnifiedParams up = family_at(p_.gamma);
    for (int i = 0; i < p_.r; ++i) {
        Coefficient s = t[static_cast<size_t>(i)].to_field(f_) *
                        p_.alphas[static_cast<size_t>(i)];
        if (!(s.abs() < Coefficient::one(f_)))
            throw DivergentSum("transform argument leaves the convergence domain");
        up.alphas[static_cast<size_t>(i)] = s;
    }
    return B_ * unified_poly(up, p_.n);
}

Coefficient GHGDistribution::mgf(const std::vector<Coefficient>& t) const {
    if (static_cast<int>(t.size()) != p_.r)
        throw UsageError("need exactly r transform arguments");
    std::vector<Coefficient> et;
    et.reserve(t.size());
    for (const auto& v : t) et.push_back(v.to_field(f_).exp());
    return pgf(et);
}

Coefficient GHGDistribution::moment(int i, int ell, MomentKind kind) const {
    if (i < 0 || i >= p_.r) throw UsageError("component index out of range");
    if (ell < 0) throw UsageError("moment order must be nonnegative");
    const Coefficient one = Coefficient::one(f_);
    const Coefficient two_r = pow2r(p_.r, f_);
    const Coefficient& ai = p_.alphas[static_cast<size_t>(i)];
    const int r = p_.r;
    const int n = p_.n;

    std::vector<Coefficient> rest;
    Coefficient amax = Coefficient::zero(f_);
    for (int j = 0; j < r; ++j) {
        if (p_.alphas[static_cast<size_t>(j)] > amax)
            amax = p_.alphas[static_cast<size_t>(j)];
        if (j != i) rest.push_back(p_.alphas[static_cast<size_t>(j)]);
    }

    // h weights of the remaining components, grown on demand
    std::vector<Coefficient> h{one};
    std::vector<Coefficient> apow(rest.begin(), rest.end());
    std::vector<Coefficient> psum;
    auto extend_h = [&](long s) {
        while (static_cast<long>(h.size()) <= s) {
            long j = static_cast<long>(h.size());
            Coefficient p = Coefficient::zero(f_);
            for (size_t q = 0; q < apow.size(); ++q) {
                p += apow[q];
                apow[q] *= rest[q];
            }
            psum.push_back(p);
            Coefficient acc = Coefficient::zero(f_);
            for (long jj = 1; jj <= j; ++jj)
                acc += psum[static_cast<size_t>(jj - 1)] *
                       h[static_cast<size_t>(j - jj)];
            h.push_back(acc / Coefficient::from_long(j, f_));
        }
    };

    const Coefficient eps = p_.epsilon / (two_r * B_);
    std::vector<Coefficient> phipow;  // phi(v) alpha_i^v
    Coefficient aipow = one;
    constexpr long kCap = 200000;
    Coefficient total = Coefficient::zero(f_);
    for (long u = 0;; ++u) {
        if (u > kCap)
            throw TailNotConverged("moment sum still above tolerance at u = 200000");
        extend_h(u);
        phipow.push_back(weight_phi(u, ell, kind, f_) * aipow);
        aipow *= ai;
        // w_u = sum_v phi(v) alpha_i^v h_{u-v}(rest); |w_u| is bounded by
        // u^ell h_u(all alphas) <= u^ell C(u+r-1, r-1) amax^u.
        Coefficient w = Coefficient::zero(f_);
        for (long v = 0; v <= u; ++v)
            w += phipow[static_cast<size_t>(v)] * h[static_cast<size_t>(u - v)];
        total += w * gen_hermite({n, p_.m,
                                  p_.gamma + Coefficient::from_long(u, f_),
                                  p_.beta});
        if (u < 1) continue;
        // Envelope ratio past u, each factor decreasing in u.
        Coefficient u1 = p_.gamma + Coefficient::from_long(u + 1, f_);
        Coefficient rho = amax *
                          (Coefficient::from_long(u + 1 + r, f_) /
                           Coefficient::from_long(u + 2, f_)) *
                          (Coefficient::from_long(u + 2, f_) /
                           Coefficient::from_long(u + 1, f_))
                              .pow_int(ell) *
                          ((u1 + one) / u1).pow_int(n);
        if (!(rho < one)) continue;
        Coefficient b_next =
            coeff_from_z(binomial_z(static_cast<unsigned>(u + r),
                                    static_cast<unsigned>(r - 1)),
                         f_) *
            amax.pow_int(u + 1) *
            Coefficient::from_long(u + 1, f_).pow_int(ell) *
            gen_hermite({n, p_.m, u1, p_.beta});
        if (b_next / (one - rho) < eps) break;
    }
    return two_r * B_ * total;
}

std::pair<Coefficient, Coefficient> GHGDistribution::mean_variance(int i) const {
    Coefficient m1 = moment(i, 1, MomentKind::Factorial);
    Coefficient m2f = moment(i, 2, MomentKind::Factorial);
    return {m1, m2f + m1 - m1 * m1};
}

ClassifyResult GHGDistribution::classify(AgingClass aging, long grid_bound) const {
    if (grid_bound < 0) throw UsageError("grid bound must be nonnegative");
    if (std::pow(static_cast<double>(grid_bound) + 1.0, p_.r) > 2e4)
        throw UsageError("classification grid too large");
    const long tmax = grid_bound * p_.r;
    const bool expectation =
        aging == AgingClass::MNBUE || aging == AgingClass::MNWUE;
    const bool flip = aging == AgingClass::MNWU || aging == AgingClass::MNWUE ||
                      aging == AgingClass::MDHR;

    ClassifyResult res;
    res.aging = aging;
    res.lhs = Coefficient::zero(f_);
    res.rhs = Coefficient::zero(f_);

    auto sides = [&](long X, long T) -> std::pair<Coefficient, Coefficient> {
        switch (aging) {
            case AgingClass::MNBU:
            case AgingClass::MNWU:
                return {kernel(0) * kernel(X + T), kernel(X) * kernel(T)};
            case AgingClass::MIHR:
            case AgingClass::MDHR:
                return {kernel(X + T + 1) * kernel(X),
                        kernel(X + 1) * kernel(X + T)};
            default:
                return {kernel(0) * kernel_sum(X), kernel(X) * kernel_sum(0)};
        }
    };
    auto violated = [&](long X, long T) {
        auto [l, r] = sides(X, T);
        return flip ? l < r : l > r;
    };

    // The inequality only depends on the coordinate totals, so tabulate
    // violations per (X, T) and find the first offending tuple afterwards.
    std::vector<std::vector<char>> viol(
        static_cast<size_t>(tmax) + 1,
        std::vector<char>(expectation ? 1 : static_cast<size_t>(tmax) + 1, 0));
    for (long X = 0; X <= tmax; ++X) {
        if (expectation) {
            viol[static_cast<size_t>(X)][0] = violated(X, 0) ? 1 : 0;
        } else {
            for (long T = 0; T <= tmax; ++T)
                viol[static_cast<size_t>(X)][static_cast<size_t>(T)] =
                    violated(X, T) ? 1 : 0;
        }
    }

    std::vector<long> x(static_cast<size_t>(p_.r), 0);
    auto bump = [&](std::vector<long>& v) {
        int i = p_.r - 1;
        while (i >= 0 && v[static_cast<size_t>(i)] == grid_bound)
            v[static_cast<size_t>(i--)] = 0;
        if (i < 0) return false;
        ++v[static_cast<size_t>(i)];
        return true;
    };
    long X = 0;
    do {
        X = 0;
        for (long v : x) X += v;
        if (expectation) {
            if (viol[static_cast<size_t>(X)][0]) {
                res.holds = false;
                res.x = x;
                auto [l, r] = sides(X, 0);
                res.lhs = l;
                res.rhs = r;
                return res;
            }
            continue;
        }
        std::vector<long> t(static_cast<size_t>(p_.r), 0);
        do {
            long T = 0;
            for (long v : t) T += v;
            if (viol[static_cast<size_t>(X)][static_cast<size_t>(T)]) {
                res.holds = false;
                res.x = x;
                res.t = t;
                auto [l, r] = sides(X, T);
                res.lhs = l;
                res.rhs = r;
                return res;
            }
        } while (bump(t));
    } while (bump(x));
    return res;
}

Coefficient joint_cdf_independent(const std::vector<GHGParams>& comps,
                                  const std::vector<long>& x) {
    if (comps.empty()) throw UsageError("need at least one component");
    if (comps.size() != x.size())
        throw UsageError("point must have one coordinate per component");
    Coefficient out;
    bool first = true;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].r != 1)
            throw UsageError("independent components must be univariate");
        if (x[i] < 0) throw UsageError("coordinates must be nonnegative");
        GHGDistribution d(comps[i]);
        Coefficient c = d.marginal_cdf(0, x[i]).lemma;
        out = first ? c : out * c;
        first = false;
    }
    return out;
}

}  // namespace uhg
