#include "doctest.h"
#include "uhg/ghg.hpp"

using namespace uhg;

namespace {

const Field FL = Field::floating(256);

Coefficient d(const char* s) { return Coefficient::parse(s, FL); }

bool near(const Coefficient& a, const Coefficient& b,
          const char* tol = "1e-40") {
    return (a - b).abs() < d(tol);
}

GHGParams geometric(int n) {
    GHGParams g;
    g.r = 1;
    g.m = 2;
    g.n = n;
    g.alphas = {d("0.5")};
    g.gamma = d("0");
    g.beta = d("0");
    g.epsilon = d("1e-45");
    return g;
}

GHGParams bivariate() {
    GHGParams g;
    g.r = 2;
    g.m = 2;
    g.n = 2;
    g.alphas = {d("0.3"), d("0.6")};
    g.gamma = d("0.7");
    g.beta = d("0.4");
    g.epsilon = d("1e-45");
    return g;
}

}  // namespace

TEST_CASE("geometric closed forms") {
    GHGDistribution dist(geometric(0));
    CHECK(near(dist.kernel(0), d("4")));
    CHECK(near(dist.pmf({0}), d("0.5")));
    CHECK(near(dist.pmf({3}), d("0.0625")));
    CHECK(near(dist.reliability({4}), d("0.0625")));
    CHECK(near(dist.hazard(0, {7}), d("0.5")));
    auto [mean, var] = dist.mean_variance(0);
    CHECK(near(mean, d("1")));
    CHECK(near(var, d("2")));
    CHECK(near(dist.moment(0, 3, MomentKind::Raw), d("13")));
    CHECK(near(dist.pgf({d("1")}), d("1"), "1e-70"));
    CHECK(near(dist.mgf({d("0")}), d("1"), "1e-70"));
}

TEST_CASE("size-biased geometric closed forms") {
    GHGDistribution dist(geometric(1));
    CHECK(near(dist.kernel(0), d("4")));
    CHECK(near(dist.kernel(1), d("8")));
    CHECK(near(dist.pmf({0}), d("0")));
    CHECK(near(dist.pmf({3}), d("0.1875")));
    CHECK(near(dist.hazard(0, {0}), d("0")));
    auto [mean, var] = dist.mean_variance(0);
    CHECK(near(mean, d("3")));
    CHECK(near(var, d("4")));
    // kernel_sum(X) = sum_T 2^-T 4(X+T+1) = 8X + 16
    CHECK(near(dist.kernel_sum(0), d("16")));
    CHECK(near(dist.kernel_sum(2), d("32")));
}

TEST_CASE("normalizer methods agree") {
    for (const GHGParams& g : {geometric(0), geometric(1), bivariate()}) {
        GHGDistribution dist(g);
        auto s = dist.normalizer(NormalizerMethod::Series);
        auto h = dist.normalizer(NormalizerMethod::HomogeneousReduction);
        auto b = dist.normalizer(NormalizerMethod::LatticeBruteforce);
        CHECK(near(h.B, s.B));
        CHECK(near(b.B, s.B));
        CHECK(s.terms == -1);
        CHECK(h.terms > 0);
        CHECK(b.terms > 0);
        CHECK(h.tail_bound < g.epsilon);
    }
}

TEST_CASE("mass sums to one over a generous box") {
    GHGDistribution dist(bivariate());
    Coefficient mass = Coefficient::zero(FL);
    for (long a = 0; a < 140; ++a)
        for (long b = 0; b < 140; ++b) mass += dist.pmf({a, b});
    CHECK(near(mass, d("1"), "1e-25"));
}

TEST_CASE("reliability routes agree and start at one") {
    GHGDistribution dist(bivariate());
    CHECK(near(dist.reliability({0, 0}), d("1"), "1e-70"));
    std::vector<long> pt{2, 1};
    CHECK(near(dist.reliability(pt),
               dist.reliability(pt, ReliabilityRoute::Lattice)));
    // survival recursion: R(x) - R(x + e_i) sums the slab mass
    Coefficient slab = Coefficient::zero(FL);
    for (long b = 0; b < 160; ++b) slab += dist.pmf({2, b});
    CHECK(near(dist.reliability({2, 0}) - dist.reliability({3, 0}), slab,
               "1e-25"));
}

TEST_CASE("marginal lemma: corrected exponent matches the direct sum") {
    GHGDistribution dist(bivariate());
    for (int i : {0, 1}) {
        for (long x : {0L, 1L, 3L}) {
            MarginalCdf c = dist.marginal_cdf(i, x);
            CHECK(near(c.direct, c.lemma));
            // printed exponent lags one step: difference is the marginal pmf
            Coefficient ai = dist.params().alphas[static_cast<size_t>(i)];
            Coefficient pmf_i =
                (Coefficient::one(FL) / dist.kernel(0)) * ai.pow_int(x) *
                (dist.kernel(x) - ai * dist.kernel(x + 1));
            CHECK(near(c.lemma - c.lemma_as_printed, pmf_i));
        }
    }
    // the as-printed residual at the geometric origin is exactly one half
    MarginalCdf g = GHGDistribution(geometric(0)).marginal_cdf(0, 0);
    CHECK(near((g.lemma - g.lemma_as_printed).abs(), d("0.5")));
}

TEST_CASE("transforms") {
    GHGDistribution dist(bivariate());
    CHECK(near(dist.mgf({d("0"), d("0")}), dist.pgf({d("1"), d("1")}), "1e-70"));
    CHECK_THROWS_AS(dist.pgf({d("4"), d("1")}), DivergentSum);
    CHECK_THROWS_AS(dist.mgf({d("2"), d("0")}), DivergentSum);
    CHECK_THROWS_AS(dist.pgf({d("1")}), UsageError);
    // matching factorial moment from the transform derivative identity:
    // pgf(t,1) = B M_n(gamma; alphas t a1, a2), checked at a rational point
    Coefficient up = dist.pgf({d("0.9"), d("1")});
    Coefficient dn = dist.pgf({d("0.8"), d("1")});
    Coefficient mid = dist.pgf({d("0.85"), d("1")});
    CHECK((up + dn - d("2") * mid).abs() < d("0.01"));  // smooth in t
}

TEST_CASE("aging classes on the memoryless boundary") {
    GHGDistribution dist(geometric(0));
    for (auto cls : {AgingClass::MNBU, AgingClass::MNWU, AgingClass::MNBUE,
                     AgingClass::MNWUE, AgingClass::MIHR, AgingClass::MDHR})
        CHECK(dist.classify(cls, 6).holds);
}

TEST_CASE("size-biased geometric: witnesses sit where the algebra says") {
    GHGDistribution dist(geometric(1));
    CHECK(dist.classify(AgingClass::MNBU, 6).holds);
    CHECK(dist.classify(AgingClass::MIHR, 6).holds);
    CHECK(dist.classify(AgingClass::MNBUE, 6).holds);
    // kernel(X) = 4X + 4: the dual classes break at the first interior point
    auto mdhr = dist.classify(AgingClass::MDHR, 6);
    CHECK(!mdhr.holds);
    CHECK(mdhr.x == std::vector<long>{0});
    CHECK(mdhr.t == std::vector<long>{1});
    auto mnwu = dist.classify(AgingClass::MNWU, 6);
    CHECK(!mnwu.holds);
    CHECK(mnwu.x == std::vector<long>{1});
    CHECK(mnwu.t == std::vector<long>{1});
    auto mnwue = dist.classify(AgingClass::MNWUE, 6);
    CHECK(!mnwue.holds);
    CHECK(mnwue.x == std::vector<long>{1});
    CHECK(mnwue.t.empty());
}

TEST_CASE("classification agrees with a direct kernel scan") {
    GHGDistribution dist(bivariate());
    const long G = 4;
    for (auto cls : {AgingClass::MNBU, AgingClass::MNWU, AgingClass::MIHR,
                     AgingClass::MDHR}) {
        ClassifyResult got = dist.classify(cls, G);
        bool flip = cls == AgingClass::MNWU || cls == AgingClass::MDHR;
        bool ihr = cls == AgingClass::MIHR || cls == AgingClass::MDHR;
        bool found = false;
        std::vector<long> wx, wt;
        for (long x1 = 0; x1 <= G && !found; ++x1)
         for (long x2 = 0; x2 <= G && !found; ++x2)
          for (long t1 = 0; t1 <= G && !found; ++t1)
           for (long t2 = 0; t2 <= G && !found; ++t2) {
              long X = x1 + x2, T = t1 + t2;
              Coefficient l = ihr ? dist.kernel(X + T + 1) * dist.kernel(X)
                                  : dist.kernel(0) * dist.kernel(X + T);
              Coefficient r = ihr ? dist.kernel(X + 1) * dist.kernel(X + T)
                                  : dist.kernel(X) * dist.kernel(T);
              if (flip ? l < r : l > r) {
                  found = true;
                  wx = {x1, x2};
                  wt = {t1, t2};
              }
           }
        CHECK(got.holds == !found);
        if (found) {
            CHECK(got.x == wx);
            CHECK(got.t == wt);
        }
    }
}

TEST_CASE("independent components multiply") {
    GHGParams u1 = geometric(1);
    u1.alphas = {d("0.3")};
    u1.gamma = d("0.7");
    GHGParams u2 = geometric(0);
    u2.alphas = {d("0.6")};
    Coefficient joint = joint_cdf_independent({u1, u2}, {2, 3});
    Coefficient byhand = GHGDistribution(u1).marginal_cdf(0, 2).lemma *
                         GHGDistribution(u2).marginal_cdf(0, 3).lemma;
    CHECK(near(joint, byhand, "1e-70"));
    CHECK_THROWS_AS(joint_cdf_independent({bivariate()}, {1}), UsageError);
    CHECK_THROWS_AS(joint_cdf_independent({u1, u2}, {2}), UsageError);
}

TEST_CASE("parameter guards") {
    GHGParams g = geometric(0);
    g.alphas = {d("-0.5")};
    CHECK_THROWS_AS(GHGDistribution{g}, UsageError);
    g.alphas = {d("1.5")};
    CHECK_THROWS_AS(GHGDistribution{g}, DivergentSum);
    g = geometric(0);
    g.gamma = d("-1");
    CHECK_THROWS_AS(GHGDistribution{g}, UsageError);
    g = geometric(0);
    g.epsilon = d("0");
    CHECK_THROWS_AS(GHGDistribution{g}, UsageError);
    g = geometric(0);
    g.m = 1;
    CHECK_THROWS_AS(GHGDistribution{g}, UsageError);

    GHGDistribution ok(geometric(0));
    CHECK_THROWS_AS(ok.pmf({1, 2}), UsageError);
    CHECK_THROWS_AS(ok.pmf({-1}), UsageError);
    CHECK_THROWS_AS(ok.hazard(2, {0}), UsageError);
    CHECK_THROWS_AS(ok.marginal_cdf(0, -1), UsageError);
    CHECK_THROWS_AS(ok.moment(0, -1, MomentKind::Raw), UsageError);
    CHECK_THROWS_AS(ok.classify(AgingClass::MNBU, -1), UsageError);
}

TEST_CASE("enum names round-trip") {
    for (auto m : {NormalizerMethod::Series, NormalizerMethod::HomogeneousReduction,
                   NormalizerMethod::LatticeBruteforce})
        CHECK(normalizer_method_from_string(to_string(m)) == m);
    for (auto c : {AgingClass::MNBU, AgingClass::MNWU, AgingClass::MNBUE,
                   AgingClass::MNWUE, AgingClass::MIHR, AgingClass::MDHR})
        CHECK(aging_class_from_string(to_string(c)) == c);
    for (auto k : {MomentKind::Raw, MomentKind::Factorial})
        CHECK(moment_kind_from_string(to_string(k)) == k);
    for (auto r : {ReliabilityRoute::Series, ReliabilityRoute::Lattice})
        CHECK(reliability_route_from_string(to_string(r)) == r);
    CHECK_THROWS_AS(aging_class_from_string("ihr"), UsageError);
}
