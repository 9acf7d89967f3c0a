#include "uhg/series.hpp"

#include <stdexcept>

namespace uhg {

namespace {

void check_compatible(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.order() != g.order()) throw UsageError("series order mismatch");
    if (f.field().mode != g.field().mode) throw UsageError("series mode mismatch");
}

}  // namespace

TruncatedSeries::TruncatedSeries(const Field& f, int order) : f_(f) {
    if (order < 0) throw UsageError("negative truncation order");
    c_.assign(static_cast<size_t>(order) + 1, Coefficient::zero(f));
}

TruncatedSeries TruncatedSeries::constant(const Coefficient& c, const Field& f,
                                          int order) {
    TruncatedSeries s(f, order);
    s.set(0, c);
    return s;
}

void TruncatedSeries::set(int n, Coefficient c) {
    if (c.mode() != f_.mode) throw UsageError("coefficient mode mismatch");
    c_.at(static_cast<size_t>(n)) = std::move(c);
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_compatible(f, g);
    TruncatedSeries r(f.field(), f.order());
    for (int n = 0; n <= f.order(); ++n) r.set(n, f[n] + g[n]);
    return r;
}

TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_compatible(f, g);
    TruncatedSeries r(f.field(), f.order());
    for (int n = 0; n <= f.order(); ++n) r.set(n, f[n] - g[n]);
    return r;
}

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_compatible(f, g);
    TruncatedSeries r(f.field(), f.order());
    for (int n = 0; n <= f.order(); ++n) {
        Coefficient s = Coefficient::zero(f.field());
        for (int j = 0; j <= n; ++j) s += f[j] * g[n - j];
        r.set(n, s);
    }
    return r;
}

TruncatedSeries div(const TruncatedSeries& f, const TruncatedSeries& g,
                    const std::string& gname) {
    check_compatible(f, g);
    const Coefficient& g0 = g[0];
    if (g.field().mode == FieldMode::Exact) {
        if (g0.is_zero()) throw SingularDenominator(gname);
    } else {
        Coefficient biggest = Coefficient::zero(g.field());
        for (int n = 0; n <= g.order(); ++n) {
            Coefficient a = g[n].abs();
            if (a > biggest) biggest = a;
        }
        Coefficient pivot_floor =
            Coefficient::parse("1e-30", g.field()) * biggest;
        if (g0.is_zero() || !(g0.abs() > pivot_floor))
            throw SingularDenominator(gname);
    }
    TruncatedSeries h(f.field(), f.order());
    for (int n = 0; n <= f.order(); ++n) {
        Coefficient s = f[n];
        for (int j = 1; j <= n; ++j) s -= g[j] * h[n - j];
        h.set(n, s / g0);
    }
    return h;
}

TruncatedSeries exp_poly(const std::vector<std::pair<int, Coefficient>>& terms,
                         int order, const Field& field) {
    TruncatedSeries u(field, order);
    for (const auto& [d, c] : terms) {
        if (d < 1) throw UsageError("exp_poly exponent has a degree-0 term");
        if (d <= order) u.set(d, u[d] + c.to_field(field));
    }
    // f = exp(u) with u(0) = 0: n f_n = sum_{j=1}^{n} j u_j f_{n-j}.
    TruncatedSeries f(field, order);
    f.set(0, Coefficient::one(field));
    for (int n = 1; n <= order; ++n) {
        Coefficient s = Coefficient::zero(field);
        for (int j = 1; j <= n; ++j)
            s += Coefficient::from_long(j, field) * u[j] * f[n - j];
        f.set(n, s / Coefficient::from_long(n, field));
    }
    return f;
}

TruncatedSeries scale_arg(const TruncatedSeries& f, const Coefficient& s) {
    if (s.mode() != f.field().mode) throw UsageError("scale factor mode mismatch");
    TruncatedSeries r(f.field(), f.order());
    Coefficient p = Coefficient::one(f.field());
    for (int n = 0; n <= f.order(); ++n) {
        r.set(n, f[n] * p);
        p *= s;
    }
    return r;
}

TruncatedSeries shift_up(const TruncatedSeries& f, int k) {
    if (k < 0) throw UsageError("negative shift");
    TruncatedSeries r(f.field(), f.order());
    for (int n = k; n <= f.order(); ++n) r.set(n, f[n - k]);
    return r;
}

TruncatedSeries pow_int(const TruncatedSeries& f, int e) {
    if (e < 0) throw UsageError("negative series power");
    TruncatedSeries r =
        TruncatedSeries::constant(Coefficient::one(f.field()), f.field(), f.order());
    for (int i = 0; i < e; ++i) r = mul(r, f);
    return r;
}

Coefficient egf_coeff(const TruncatedSeries& f, int n) {
    if (n < 0 || n > f.order())
        throw std::out_of_range("egf_coeff index past truncation order");
    return f[n] * coeff_from_z(factorial_z(static_cast<unsigned>(n)), f.field());
}

}  // namespace uhg
