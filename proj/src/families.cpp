#include "uhg/families.hpp"

#include <algorithm>

namespace uhg {

namespace {

TruncatedSeries mul_const(const TruncatedSeries& s, const Coefficient& c) {
    TruncatedSeries r(s.field(), s.order());
    for (int n = 0; n <= s.order(); ++n) r.set(n, s[n] * c);
    return r;
}

// n! / (k! (n-mk)!) as an exact integer.
mpz_class hermite_multinomial(int n, int m, int k) {
    mpz_class r = factorial_z(static_cast<unsigned>(n));
    mpz_class d1 = factorial_z(static_cast<unsigned>(k));
    mpz_class d2 = factorial_z(static_cast<unsigned>(n - m * k));
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), d1.get_mpz_t());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), d2.get_mpz_t());
    return r;
}

mpfr_prec_t min_float_prec(const UnifiedParams& p) {
    mpfr_prec_t prec = p.x.flt().precision();
    auto fold = [&](const Coefficient& c) {
        prec = std::min(prec, c.flt().precision());
    };
    fold(p.y);
    fold(p.lnA);
    fold(p.lnB);
    fold(p.lnC);
    for (const auto& a : p.alphas) fold(a);
    return prec;
}

}  // namespace

Field UnifiedParams::field() const {
    if (x.mode() == FieldMode::Exact) return Field::exact();
    return Field::floating(min_float_prec(*this));
}

void UnifiedParams::validate() const {
    if (r < 1) throw UsageError("r must be a positive integer");
    if (k < 0) throw UsageError("k must be nonnegative");
    if (m < 1) throw UsageError("m must be at least 1");
    if (alphas.size() != static_cast<size_t>(r))
        throw UsageError("alphas must have exactly r entries");
    const FieldMode mode = x.mode();
    auto check_mode = [&](const Coefficient& c, const char* what) {
        if (c.mode() != mode)
            throw UsageError(std::string(what) + " does not match the field mode");
    };
    check_mode(y, "y");
    check_mode(lnA, "lnA");
    check_mode(lnB, "lnB");
    check_mode(lnC, "lnC");
    for (const auto& a : alphas) check_mode(a, "alpha");

    const Field f = field();
    const Coefficient one = Coefficient::one(f);
    bool some_alpha_minus_one = false;
    for (const auto& a : alphas) {
        if (mode == FieldMode::Exact) {
            if (a == one) throw UsageError("alpha[i] = 1 is excluded");
            if (a == -one) some_alpha_minus_one = true;
        } else {
            Coefficient gap = Coefficient::parse("1e-12", f);
            if (!((a - one).abs() > gap))
                throw UsageError("alpha[i] must stay away from 1 (gap 1e-12)");
            if (!((a + one).abs() > gap)) some_alpha_minus_one = true;
        }
    }
    if (k == 0 && some_alpha_minus_one && lnA == lnB)
        throw UsageError("lnA must differ from lnB when k = 0 and some alpha[i] = -1");
}

TruncatedSeries unified_series(const UnifiedParams& p, int order) {
    p.validate();
    if (order < p.r * p.k)
        throw UsageError("truncation order below r*k leaves no usable coefficients");
    const Field f = p.field();

    TruncatedSeries ea = exp_poly({{1, p.lnA}}, order, f);
    TruncatedSeries eb = exp_poly({{1, p.lnB}}, order, f);
    TruncatedSeries den = TruncatedSeries::constant(Coefficient::one(f), f, order);
    for (const auto& a : p.alphas) den = mul(den, sub(mul_const(eb, a), ea));

    TruncatedSeries cxy =
        exp_poly({{1, p.x * p.lnC}, {p.m, p.y * p.lnC}}, order, f);
    Coefficient front = Coefficient::from_long(p.r % 2 == 0 ? 1 : -1, f) *
                        Coefficient::from_long(2, f).pow_int(
                            static_cast<long>(p.r) * (1 - p.k));
    TruncatedSeries num = mul_const(cxy, front);

    TruncatedSeries q = div(num, den, "prod(alpha[i]*b^t - a^t)");
    return shift_up(q, p.r * p.k);
}

Coefficient unified_poly(const UnifiedParams& p, int n) {
    if (n < 0) throw UsageError("negative degree");
    p.validate();
    if (n < p.r * p.k) return Coefficient::zero(p.field());
    return egf_coeff(unified_series(p, n), n);
}

Coefficient unified_numbers(const UnifiedParams& p, int n) {
    UnifiedParams at_origin = p;
    const Field f = p.field();
    at_origin.x = Coefficient::zero(f);
    at_origin.y = Coefficient::zero(f);
    return unified_poly(at_origin, n);
}

Coefficient reference_family(RefFamily kind, int w, const Coefficient& lambda,
                             const Coefficient& x, int n) {
    if (w < 1) throw UsageError("family order must be a positive integer");
    if (n < 0) throw UsageError("negative degree");
    if (lambda.mode() != x.mode()) throw UsageError("lambda/x mode mismatch");
    const Field f = lambda.mode() == FieldMode::Exact
                        ? Field::exact()
                        : Field::floating(std::min(lambda.flt().precision(),
                                                   x.flt().precision()));
    const int N = n;
    const Coefficient one = Coefficient::one(f);
    const Coefficient two = Coefficient::from_long(2, f);

    // q(t) = (e^t - 1)/t = sum t^j/(j+1)!, the analytic t-factoring of the
    // singular pivots.
    TruncatedSeries qser(f, N);
    for (int j = 0; j <= N; ++j) {
        mpq_class c(1);
        c /= mpq_class(factorial_z(static_cast<unsigned>(j + 1)));
        qser.set(j, coeff_from_q(c, f));
    }
    TruncatedSeries et = exp_poly({{1, one}}, N, f);
    TruncatedSeries ext = exp_poly({{1, x}}, N, f);
    TruncatedSeries one_s = TruncatedSeries::constant(one, f, N);

    TruncatedSeries base(f, N);
    switch (kind) {
        case RefFamily::Bernoulli: {
            if (lambda == one) {
                base = pow_int(div(one_s, qser, "(e^t - 1)/t"), w);
            } else {
                TruncatedSeries den = sub(mul_const(et, lambda), one_s);
                base = shift_up(pow_int(div(one_s, den, "lambda*e^t - 1"), w), w);
            }
            break;
        }
        case RefFamily::Euler: {
            if (lambda == -one)
                throw SingularDenominator("lambda*e^t + 1 at lambda = -1");
            TruncatedSeries den = add(mul_const(et, lambda), one_s);
            base = pow_int(div(TruncatedSeries::constant(two, f, N), den,
                               "lambda*e^t + 1"),
                           w);
            break;
        }
        case RefFamily::Genocchi: {
            if (lambda == -one) {
                // 2t/(1 - e^t) = -2/q(t).
                base = pow_int(div(TruncatedSeries::constant(-two, f, N), qser,
                                   "(e^t - 1)/t"),
                               w);
            } else {
                TruncatedSeries den = add(mul_const(et, lambda), one_s);
                base = shift_up(
                    pow_int(div(TruncatedSeries::constant(two, f, N), den,
                                "lambda*e^t + 1"),
                            w),
                    w);
            }
            break;
        }
    }
    return egf_coeff(mul(base, ext), n);
}

Coefficient hermite_kampe(int n, const Coefficient& x, const Coefficient& y,
                          const Coefficient& lnC) {
    if (n < 0) throw UsageError("negative degree");
    if (x.mode() != y.mode() || x.mode() != lnC.mode())
        throw UsageError("x/y/lnC mode mismatch");
    const Field f = x.mode() == FieldMode::Exact
                        ? Field::exact()
                        : Field::floating(x.flt().precision());
    return egf_coeff(exp_poly({{1, x * lnC}, {2, y * lnC}}, n, f), n);
}

Coefficient gen_hermite(const HermiteSpec& s) {
    if (s.n < 0) throw UsageError("negative degree");
    if (s.m < 1) throw UsageError("m must be at least 1");
    if (s.x.mode() != s.beta.mode()) throw UsageError("x/beta mode mismatch");
    const Field f = s.x.mode() == FieldMode::Exact
                        ? Field::exact()
                        : Field::floating(s.x.flt().precision());
    Coefficient acc = Coefficient::zero(f);
    for (int k = 0; k * s.m <= s.n; ++k)
        acc += s.beta.pow_int(k) * coeff_from_z(hermite_multinomial(s.n, s.m, k), f) *
               s.x.pow_int(s.n - s.m * k);
    return acc;
}

std::vector<Coefficient> homogeneous_weights(const std::vector<Coefficient>& alphas,
                                             int smax, const Field& f) {
    if (smax < 0) throw UsageError("negative weight index");
    std::vector<Coefficient> h{Coefficient::one(f)};
    std::vector<Coefficient> apow(alphas.begin(), alphas.end());
    std::vector<Coefficient> psum;
    for (int s = 1; s <= smax; ++s) {
        Coefficient p = Coefficient::zero(f);
        for (size_t i = 0; i < apow.size(); ++i) {
            p += apow[i];
            apow[i] *= alphas[i];
        }
        psum.push_back(p);
        Coefficient acc = Coefficient::zero(f);
        for (int j = 1; j <= s; ++j)
            acc += psum[static_cast<size_t>(j - 1)] * h[static_cast<size_t>(s - j)];
        h.push_back(acc / Coefficient::from_long(s, f));
    }
    return h;
}

Coefficient reduced_lattice_sum(const std::vector<Coefficient>& alphas, int n, int m,
                                const Coefficient& shift, const Coefficient& beta,
                                const Coefficient& epsilon, const Field& f, int s0,
                                int* terms_used, Coefficient* tail_bound) {
    const int r = static_cast<int>(alphas.size());
    const Coefficient one = Coefficient::one(f);
    if (!(epsilon > Coefficient::zero(f))) throw UsageError("epsilon must be positive");
    if (r == 0) {
        if (terms_used) *terms_used = 0;
        if (tail_bound) *tail_bound = Coefficient::zero(f);
        if (s0 > 0) return Coefficient::zero(f);
        return gen_hermite({n, m, shift, beta});
    }
    Coefficient amax = Coefficient::zero(f);
    for (const auto& a : alphas) {
        Coefficient aa = a.abs();
        if (!(aa < one)) throw DivergentSum("lattice weight |alpha| >= 1");
        if (aa > amax) amax = aa;
    }
    const Coefficient ashift = shift.abs();
    const Coefficient abeta = beta.abs();
    // Envelope on |H_{n,m}(shift + s, beta)|, nondecreasing in s.
    auto poly_env = [&](long s) {
        Coefficient u = ashift + Coefficient::from_long(s, f);
        Coefficient acc = Coefficient::zero(f);
        for (int k = 0; k * m <= n; ++k)
            acc += abeta.pow_int(k) * coeff_from_z(hermite_multinomial(n, m, k), f) *
                   u.pow_int(n - m * k);
        return acc;
    };

    // Complete homogeneous weights grown on demand.
    std::vector<Coefficient> h{one};
    std::vector<Coefficient> apow(alphas.begin(), alphas.end());
    std::vector<Coefficient> psum;
    auto extend_h = [&](long s) {
        while (static_cast<long>(h.size()) <= s) {
            long j = static_cast<long>(h.size());
            Coefficient p = Coefficient::zero(f);
            for (size_t i = 0; i < apow.size(); ++i) {
                p += apow[i];
                apow[i] *= alphas[i];
            }
            psum.push_back(p);
            Coefficient acc = Coefficient::zero(f);
            for (long jj = 1; jj <= j; ++jj)
                acc += psum[static_cast<size_t>(jj - 1)] *
                       h[static_cast<size_t>(j - jj)];
            h.push_back(acc / Coefficient::from_long(j, f));
        }
    };

    constexpr long kCap = 200000;
    Coefficient total = Coefficient::zero(f);
    for (long s = s0;; ++s) {
        if (s > kCap)
            throw TailNotConverged("lattice sum still above tolerance at s = 200000");
        extend_h(s);
        total += h[static_cast<size_t>(s)] *
                 gen_hermite({n, m, shift + Coefficient::from_long(s, f), beta});
        if (s < 1) continue;
        // Past s, term magnitudes are bounded by the envelope
        // B(s') = C(s'+r-1, r-1) amax^{s'} P(s'), whose ratio is at most
        // rho = amax (s'+r)/(s'+1) ((|shift|+s'+1)/(|shift|+s'))^n, decreasing.
        Coefficient u1 = ashift + Coefficient::from_long(s + 1, f);
        Coefficient rho = amax *
                          (Coefficient::from_long(s + 1 + r, f) /
                           Coefficient::from_long(s + 2, f)) *
                          ((u1 + one) / u1).pow_int(n);
        if (!(rho < one)) continue;
        Coefficient b_next =
            coeff_from_z(binomial_z(static_cast<unsigned>(s + r),
                                    static_cast<unsigned>(r - 1)),
                         f) *
            amax.pow_int(s + 1) * poly_env(s + 1);
        Coefficient tb = b_next / (one - rho);
        if (tb < epsilon) {
            if (terms_used) *terms_used = static_cast<int>(s);
            if (tail_bound) *tail_bound = tb;
            return total;
        }
    }
}

Coefficient explicit_lattice(const UnifiedParams& p, int n,
                             const Coefficient& epsilon) {
    p.validate();
    if (n < 0) throw UsageError("negative degree");
    const Field f = p.field();
    const Coefficient one = Coefficient::one(f);
    if (p.k != 0) throw UsageError("lattice form needs k = 0");
    if (!p.lnA.is_zero() || !(p.lnB == one) || !(p.lnC == one))
        throw UsageError("lattice form needs a = 1, b = c = e");
    for (const auto& a : p.alphas)
        if (!(a.abs() < one)) throw DivergentSum("lattice form needs |alpha[i]| < 1");
    Coefficient two_r = Coefficient::from_long(2, f).pow_int(p.r);
    Coefficient inner_eps = epsilon.to_field(f) / two_r;
    return two_r *
           reduced_lattice_sum(p.alphas, n, p.m, p.x, p.y, inner_eps, f, 0);
}

}  // namespace uhg
