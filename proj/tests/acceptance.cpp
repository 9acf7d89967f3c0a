// Acceptance gate: twelve end-to-end checks, one PASS/FAIL line each.
// argv: <cli binary> <data dir> <test data dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "uhg/families.hpp"
#include "uhg/ghg.hpp"
#include "uhg/identities.hpp"

using namespace uhg;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string g_cli, g_data, g_testdata;

const Field FL = Field::floating(256);

Coefficient d(const char* s) { return Coefficient::parse(s, FL); }

bool close_abs(const Coefficient& a, const Coefficient& b, const char* tol) {
    return (a - b).abs() <= d(tol);
}

bool close_rel(const Coefficient& a, const Coefficient& b, const char* tol) {
    Coefficient scale = Coefficient::one(FL);
    if (a.abs() > scale) scale = a.abs();
    if (b.abs() > scale) scale = b.abs();
    return (a - b).abs() <= d(tol) * scale;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int rc = pclose(p);
    if (WIFEXITED(rc)) r.exit_code = WEXITSTATUS(rc);
    return r;
}

// the method-agreement parameter grid reused by several checks
struct GridPoint {
    int r, n, m;
    const char* alphas[3];
    const char* gamma;
    const char* beta;
};

const GridPoint kGrid[12] = {
    {1, 0, 2, {"0.5"}, "0", "0"},
    {1, 1, 2, {"0.3"}, "0.7", "0.4"},
    {1, 2, 3, {"0.6"}, "1.5", "1.1"},
    {1, 4, 2, {"0.6"}, "0", "1.1"},
    {2, 0, 3, {"0.3", "0.6"}, "0.7", "0"},
    {2, 1, 2, {"0.5", "0.3"}, "1.5", "0.4"},
    {2, 2, 2, {"0.6", "0.5"}, "0", "0"},
    {2, 4, 3, {"0.3", "0.5"}, "0.7", "1.1"},
    {3, 0, 2, {"0.3", "0.5", "0.6"}, "1.5", "0.4"},
    {3, 1, 3, {"0.6", "0.3", "0.5"}, "0", "1.1"},
    {3, 2, 2, {"0.5", "0.6", "0.3"}, "0.7", "0"},
    {3, 4, 2, {"0.3", "0.6", "0.5"}, "1.5", "0.4"},
};

GHGParams grid_params(const GridPoint& gp) {
    GHGParams p;
    p.r = gp.r;
    p.n = gp.n;
    p.m = gp.m;
    for (int i = 0; i < gp.r; ++i) p.alphas.push_back(d(gp.alphas[i]));
    p.gamma = d(gp.gamma);
    p.beta = d(gp.beta);
    p.epsilon = d("1e-20");
    return p;
}

// 1. series engine: division undoes multiplication on seeded random pairs,
//    and exp(t) exp(-t) = 1, all exactly
bool crit_series() {
    const Field ex = Field::exact();
    std::mt19937_64 gen(424243);
    auto draw = [&](bool nonzero) {
        long num = static_cast<long>(gen() % 19) - 9;
        if (nonzero && num == 0) num = 1;
        long den = 1 + static_cast<long>(gen() % 9);
        return coeff_from_q(mpq_class(num, den), ex);
    };
    for (int trial = 0; trial < 200; ++trial) {
        TruncatedSeries f(ex, 32), g(ex, 32);
        for (int n = 0; n <= 32; ++n) {
            f.set(n, draw(false));
            g.set(n, draw(n == 0));
        }
        TruncatedSeries back = mul(div(f, g), g);
        for (int n = 0; n <= 32; ++n)
            if (!(back[n] - f[n]).is_zero()) return false;
    }
    Coefficient one = Coefficient::one(ex);
    TruncatedSeries prod = mul(exp_poly({{1, one}}, 32, ex),
                               exp_poly({{1, -one}}, 32, ex));
    if (!(prod[0] - one).is_zero()) return false;
    for (int n = 1; n <= 32; ++n)
        if (!prod[n].is_zero()) return false;
    return true;
}

// 2. the alpha = -1, k = 1 reduction halves the Genocchi numbers, n <= 20
bool crit_genocchi() {
    const Field ex = Field::exact();
    UnifiedParams p;
    p.r = 1;
    p.k = 1;
    p.m = 2;
    p.lnA = Coefficient::zero(ex);
    p.lnB = Coefficient::one(ex);
    p.lnC = Coefficient::one(ex);
    p.alphas = {Coefficient::parse("-1", ex)};
    p.x = Coefficient::zero(ex);
    p.y = Coefficient::zero(ex);
    auto gold = oracles::genocchi(20);
    for (int n = 0; n <= 20; ++n) {
        mpq_class want = gold[static_cast<size_t>(n)] / 2;
        if (unified_poly(p, n).rat() != want) return false;
    }
    return true;
}

// 3. special cases exact for n <= 10; the eighth reduction is recorded with
//    its measured constant instead of the printed one
bool crit_special_cases() {
    SuiteSpec spec = default_suite();
    spec.theorems = {TheoremId::SC1, TheoremId::SC2, TheoremId::SC3,
                     TheoremId::SC4, TheoremId::SC5, TheoremId::SC6,
                     TheoremId::SC8};
    spec.max_n = 10;
    SuiteResult res = run_suite(spec);
    if (!res.expected_exact_ok) return false;
    for (const auto& s : res.summaries)
        if (s.fail != 0 || s.tol_pass != 0) return false;

    spec.theorems = {TheoremId::SC7};
    SuiteResult sc7 = run_suite(spec);
    if (sc7.reports.empty()) return false;
    bool saw_measured = false;
    for (const auto& r : sc7.reports) {
        if (!r.primary) {
            saw_measured = true;
            if (r.verdict != Verdict::ExactPass) return false;
        }
    }
    return saw_measured;
}

// 4. the corrected identity suite is exactly zero-residual
bool crit_identities() {
    SuiteSpec spec = default_suite();
    spec.theorems = {TheoremId::T22, TheoremId::T12, TheoremId::T120,
                     TheoremId::T121, TheoremId::T19, TheoremId::T14,
                     TheoremId::T23, TheoremId::T26, TheoremId::C27};
    SuiteResult res = run_suite(spec);
    if (!res.expected_exact_ok) return false;
    for (const auto& r : res.reports)
        if (r.primary && !r.residual.is_zero()) return false;
    return true;
}

// 5. the reflection check reproduces its golden residuals, n <= 6
bool crit_reflection_goldens() {
    ordered_json goldens =
        ordered_json::parse(slurp(g_testdata + "/t20_goldens.json"), nullptr,
                            false);
    if (goldens.is_discarded()) return false;
    SuiteSpec spec;
    spec.theorems = {TheoremId::T20};
    spec.max_n = 6;
    SuiteResult res = run_suite(spec);
    if (res.reports.size() != 35) return false;
    int matched = 0;
    for (const auto& gp : goldens.at("points")) {
        std::string alphas;
        for (const auto& a : gp.at("alphas")) {
            if (!alphas.empty()) alphas += ",";
            alphas += a.get<std::string>();
        }
        std::string label = "r=" + std::to_string(gp.at("r").get<int>()) +
                            ";k=" + std::to_string(gp.at("k").get<int>()) +
                            ";m=2;alphas=" + alphas +
                            ";x=" + gp.at("x").get<std::string>() +
                            ";y=" + gp.at("y").get<std::string>() +
                            ";lnA=0;lnB=1;lnC=1";
        for (const auto& rep : res.reports) {
            if (rep.point != label) continue;
            if ((rep.lhs - rep.rhs).str() !=
                gp.at("residuals").at(static_cast<size_t>(rep.n))
                    .get<std::string>())
                return false;
            ++matched;
        }
    }
    return matched == 35;
}

// 6. lattice route vs series route, 1e-10 relative
bool crit_lattice_equivalence() {
    const char* pool[3] = {"0.3", "0.5", "0.6"};
    for (int r = 1; r <= 3; ++r) {
        for (int m : {2, 3}) {
            UnifiedParams p;
            p.r = r;
            p.k = 0;
            p.m = m;
            p.lnA = Coefficient::zero(FL);
            p.lnB = Coefficient::one(FL);
            p.lnC = Coefficient::one(FL);
            for (int i = 0; i < r; ++i) p.alphas.push_back(d(pool[i]));
            p.x = d("0.7");
            p.y = d("0.4");
            for (int n = 0; n <= 6; ++n) {
                Coefficient a = unified_poly(p, n);
                Coefficient b = explicit_lattice(p, n, d("1e-12"));
                if (!close_rel(a, b, "1e-10")) return false;
            }
        }
    }
    return true;
}

// 7. the geometric degenerate case in closed form
bool crit_geometric() {
    GHGParams g;
    g.r = 1;
    g.m = 2;
    g.n = 0;
    g.alphas = {d("0.5")};
    g.gamma = d("0");
    g.beta = d("0");
    g.epsilon = d("1e-30");
    GHGDistribution dist(g);
    Coefficient half = d("0.5");
    for (long x = 0; x <= 40; ++x) {
        if (!close_abs(dist.pmf({x}), half.pow_int(x + 1), "1e-12")) return false;
        if (!close_abs(dist.reliability({x}), half.pow_int(x), "1e-12"))
            return false;
    }
    Coefficient mass = Coefficient::zero(FL);
    for (long x = 0; x <= 200; ++x) mass += dist.pmf({x});
    if (!close_abs(mass, d("1"), "1e-12")) return false;
    for (long x = 0; x <= 10; ++x)
        if (!close_abs(dist.hazard(0, {x}), half, "1e-12")) return false;
    auto [mean, var] = dist.mean_variance(0);
    return close_abs(mean, d("1"), "1e-9") && close_abs(var, d("2"), "1e-9");
}

// 8. the three normalizer methods agree pairwise, 1e-10, on the grid
bool crit_normalizers() {
    for (const GridPoint& gp : kGrid) {
        GHGDistribution dist(grid_params(gp));
        Coefficient s = dist.normalizer(NormalizerMethod::Series).B;
        Coefficient h = dist.normalizer(NormalizerMethod::HomogeneousReduction).B;
        Coefficient b = dist.normalizer(NormalizerMethod::LatticeBruteforce).B;
        if (!close_rel(s, h, "1e-10")) return false;
        if (!close_rel(s, b, "1e-10")) return false;
        if (!close_rel(h, b, "1e-10")) return false;
    }
    return true;
}

// 9. pgf(1) = 1 and its finite-difference slope matches the mean
bool crit_transforms() {
    const Coefficient hstep = d("1e-6");
    for (const GridPoint& gp : kGrid) {
        GHGDistribution dist(grid_params(gp));
        std::vector<Coefficient> ones(static_cast<size_t>(gp.r), d("1"));
        if (!close_abs(dist.pgf(ones), d("1"), "1e-10")) return false;
        for (int i = 0; i < gp.r; ++i) {
            std::vector<Coefficient> up = ones, dn = ones;
            up[static_cast<size_t>(i)] = d("1") + hstep;
            dn[static_cast<size_t>(i)] = d("1") - hstep;
            Coefficient fd =
                (dist.pgf(up) - dist.pgf(dn)) / (d("2") * hstep);
            Coefficient mean = dist.moment(i, 1, MomentKind::Factorial);
            Coefficient scale = mean.abs();
            if (!(scale > d("1e-30"))) scale = d("1e-30");
            if (!((fd - mean).abs() <= d("1e-6") * scale)) return false;
        }
    }
    return true;
}

// 10. corrected marginal tail formula vs direct summation; the printed
//     variant's offset equals the marginal pmf it skips
bool crit_marginals() {
    for (const GridPoint& gp : kGrid) {
        GHGDistribution dist(grid_params(gp));
        for (int i = 0; i < gp.r; ++i) {
            for (long x : {0L, 1L, 3L}) {
                MarginalCdf c = dist.marginal_cdf(i, x);
                if (!close_abs(c.direct, c.lemma, "1e-10")) return false;
                Coefficient ai = dist.params().alphas[static_cast<size_t>(i)];
                Coefficient pmf_i = (Coefficient::one(FL) / dist.kernel(0)) *
                                    ai.pow_int(x) *
                                    (dist.kernel(x) - ai * dist.kernel(x + 1));
                if (!close_abs(c.lemma - c.lemma_as_printed, pmf_i, "1e-10"))
                    return false;
            }
        }
    }
    return true;
}

// 11. grid classification agrees with direct hazard monotonicity checking:
//     same verdict, same lexicographically first witness
bool crit_classify() {
    const long G = 6;
    for (const GridPoint& gp : kGrid) {
        GHGDistribution dist(grid_params(gp));
        ClassifyResult got = dist.classify(AgingClass::MIHR, G);

        std::vector<long> x(static_cast<size_t>(gp.r), 0);
        auto bump = [&](std::vector<long>& v) {
            int i = gp.r - 1;
            while (i >= 0 && v[static_cast<size_t>(i)] == G)
                v[static_cast<size_t>(i--)] = 0;
            if (i < 0) return false;
            ++v[static_cast<size_t>(i)];
            return true;
        };
        bool found = false;
        std::vector<long> wx, wt;
        do {
            std::vector<long> t(static_cast<size_t>(gp.r), 0);
            do {
                std::vector<long> xt(static_cast<size_t>(gp.r));
                for (int i = 0; i < gp.r; ++i)
                    xt[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] +
                                                 t[static_cast<size_t>(i)];
                for (int i = 0; i < gp.r && !found; ++i)
                    if (dist.hazard(i, xt) < dist.hazard(i, x)) {
                        found = true;
                        wx = x;
                        wt = t;
                    }
                if (found) break;
            } while (bump(t));
            if (found) break;
        } while (bump(x));

        if (got.holds != !found) return false;
        if (found && (got.x != wx || got.t != wt)) return false;
    }
    return true;
}

// 12. the shipped verification suite is deterministic end to end
bool crit_cli_determinism() {
    std::string suite = g_data + "/default_suite.json";
    RunResult a = run_cli("verify \"" + suite + "\" --out acceptance_rep1.json");
    RunResult b = run_cli("verify \"" + suite + "\" --out acceptance_rep2.json");
    if (a.exit_code != 0 || b.exit_code != 0) return false;
    if (a.out.empty() || a.out != b.out) return false;
    std::string r1 = slurp("acceptance_rep1.json");
    std::string r2 = slurp("acceptance_rep2.json");
    return !r1.empty() && r1[0] == '[' && r1 == r2;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 4) {
        std::cerr << "usage: acceptance <cli> <data dir> <test data dir>\n";
        return 2;
    }
    g_cli = argv[1];
    g_data = argv[2];
    g_testdata = argv[3];

    struct Check {
        const char* label;
        bool (*fn)();
        double budget_s;  // 0 = no bound
    };
    const Check checks[] = {
        {"series engine round-trip and exponential inverse", crit_series, 5},
        {"Genocchi reduction against the recurrence oracle", crit_genocchi, 1},
        {"special-case reductions exact; measured constant recorded",
         crit_special_cases, 0},
        {"corrected identity suite zero residual", crit_identities, 30},
        {"reflection residuals match the goldens", crit_reflection_goldens, 0},
        {"lattice route equals series route within 1e-10",
         crit_lattice_equivalence, 10},
        {"geometric degenerate distribution closed forms", crit_geometric, 0},
        {"normalizer methods pairwise within 1e-10", crit_normalizers, 0},
        {"pgf at one and finite-difference mean", crit_transforms, 0},
        {"marginal tail formula vs direct summation", crit_marginals, 0},
        {"grid classification matches direct hazard scan", crit_classify, 0},
        {"verify CLI deterministic and exits zero", crit_cli_determinism, 0},
    };

    bool all = true;
    int idx = 0;
    for (const Check& c : checks) {
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            std::cout << "criterion " << (idx + 1) << " threw: " << e.what()
                      << "\n";
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (c.budget_s > 0 && secs >= c.budget_s) ok = false;
        std::printf("criterion %2d %s  %s (%.2fs)\n", ++idx,
                    ok ? "PASS" : "FAIL", c.label, secs);
        all = all && ok;
    }
    std::cout << (all ? "acceptance: all criteria pass"
                      : "acceptance: FAILURES present")
              << "\n";
    return all ? 0 : 1;
}
