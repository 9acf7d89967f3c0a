#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uhg/errors.hpp"
#include "uhg/families.hpp"
#include "uhg/ghg.hpp"
#include "uhg/identities.hpp"

using uhg::Coefficient;
using uhg::Field;
using uhg::FieldMode;
using ordered_json = nlohmann::ordered_json;

namespace {

struct GlobalOpts {
    std::string mode = "exact";
    int precision = 256;
    int order = 8;
    std::string epsilon = "1e-20";
    std::string format = "text";
    std::uint64_t seed = 0;
    bool seed_given = false;

    Field field() const {
        return mode == "exact" ? Field::exact() : Field::floating(precision);
    }
};

struct FamilyOpts {
    int r = 1;
    int k = 0;
    int m = 2;
    int n = 0;
    int n_max = 8;
    std::string lnA = "0", lnB = "1", lnC = "1";
    std::vector<std::string> alphas;
    std::string x = "0", y = "0";
};

void add_family_options(CLI::App* cmd, FamilyOpts& o) {
    cmd->add_option("--r", o.r, "number of lattice weights");
    cmd->add_option("--k", o.k, "power of t in the numerator, per weight");
    cmd->add_option("--m", o.m, "degree of the second exponent term");
    cmd->add_option("--lnA", o.lnA, "log of base a");
    cmd->add_option("--lnB", o.lnB, "log of base b");
    cmd->add_option("--lnC", o.lnC, "log of base c");
    cmd->add_option("--alphas", o.alphas, "lattice weights, comma separated")
        ->delimiter(',');
    cmd->add_option("--x", o.x, "first exponent argument");
    cmd->add_option("--y", o.y, "second exponent argument");
}

uhg::UnifiedParams family_params(const FamilyOpts& o, const Field& f) {
    uhg::UnifiedParams p;
    p.r = o.r;
    p.k = o.k;
    p.m = o.m;
    p.lnA = Coefficient::parse(o.lnA, f);
    p.lnB = Coefficient::parse(o.lnB, f);
    p.lnC = Coefficient::parse(o.lnC, f);
    for (const auto& a : o.alphas) p.alphas.push_back(Coefficient::parse(a, f));
    p.x = Coefficient::parse(o.x, f);
    p.y = Coefficient::parse(o.y, f);
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw uhg::UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw uhg::UsageError("cannot write " + path);
    out << text;
}

std::string coeff_text(const ordered_json& j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

uhg::GHGParams dist_params(const std::string& spec, const GlobalOpts& g) {
    if (g.mode != "float")
        throw uhg::UsageError("distribution commands need --mode float");
    const Field f = g.field();
    std::string text = !spec.empty() && spec.front() == '{' ? spec : slurp(spec);
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw uhg::UsageError(std::string("params are not valid JSON: ") +
                              e.what());
    }
    if (!j.is_object()) throw uhg::UsageError("params must hold a JSON object");
    uhg::GHGParams p;
    if (j.contains("r")) p.r = j.at("r").get<int>();
    if (j.contains("m")) p.m = j.at("m").get<int>();
    if (j.contains("n")) p.n = j.at("n").get<int>();
    if (!j.contains("alphas"))
        throw uhg::UsageError("params need an \"alphas\" array");
    for (const auto& a : j.at("alphas"))
        p.alphas.push_back(Coefficient::parse(coeff_text(a), f));
    p.gamma = Coefficient::parse(
        j.contains("gamma") ? coeff_text(j.at("gamma")) : "0", f);
    p.beta = Coefficient::parse(
        j.contains("beta") ? coeff_text(j.at("beta")) : "0", f);
    p.epsilon = Coefficient::parse(
        j.contains("epsilon") ? coeff_text(j.at("epsilon")) : g.epsilon, f);
    return p;
}

void print_value(const GlobalOpts& g, const std::string& key,
                 const Coefficient& v) {
    if (g.format == "json") {
        ordered_json j;
        j[key] = v.str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << v.str() << "\n";
    }
}

int run_family_eval(const GlobalOpts& g, const FamilyOpts& o) {
    Coefficient v = uhg::unified_poly(family_params(o, g.field()), o.n);
    print_value(g, "value", v);
    return 0;
}

int run_family_table(const GlobalOpts& g, const FamilyOpts& o) {
    uhg::UnifiedParams p = family_params(o, g.field());
    if (o.n_max < 0) throw uhg::UsageError("--n-max must be nonnegative");
    uhg::TruncatedSeries s =
        uhg::unified_series(p, std::max(o.n_max, p.r * p.k));
    if (g.format == "json") {
        ordered_json arr = ordered_json::array();
        for (int n = 0; n <= o.n_max; ++n) {
            ordered_json row;
            row["n"] = n;
            row["value"] = uhg::egf_coeff(s, n).str();
            arr.push_back(std::move(row));
        }
        std::cout << arr.dump(2) << "\n";
    } else if (g.format == "csv") {
        std::cout << "n,value\n";
        for (int n = 0; n <= o.n_max; ++n)
            std::cout << n << ",\"" << uhg::egf_coeff(s, n).str() << "\"\n";
    } else {
        for (int n = 0; n <= o.n_max; ++n)
            std::cout << n << " " << uhg::egf_coeff(s, n).str() << "\n";
    }
    return 0;
}

int run_family_series(const GlobalOpts& g, const FamilyOpts& o) {
    uhg::UnifiedParams p = family_params(o, g.field());
    if (g.order < 0) throw uhg::UsageError("--order must be nonnegative");
    uhg::TruncatedSeries s =
        uhg::unified_series(p, std::max(g.order, p.r * p.k));
    if (g.format == "json") {
        ordered_json arr = ordered_json::array();
        for (int j = 0; j <= g.order; ++j) {
            ordered_json row;
            row["power"] = j;
            row["coefficient"] = s[j].str();
            arr.push_back(std::move(row));
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (int j = 0; j <= g.order; ++j)
            std::cout << j << " " << s[j].str() << "\n";
    }
    return 0;
}

int run_verify(const GlobalOpts& g, const std::string& suite_path,
               const std::string& out_path, const std::string& csv_path) {
    uhg::SuiteSpec spec = suite_path.empty()
                              ? uhg::default_suite()
                              : uhg::suite_from_json(slurp(suite_path));
    if (g.seed_given) spec.seed = g.seed;
    uhg::SuiteResult result = uhg::run_suite(spec);
    if (!out_path.empty()) spit(out_path, uhg::reports_to_json(result));
    if (!csv_path.empty()) spit(csv_path, uhg::reports_to_csv(result));
    std::cout << uhg::summary_table(result);
    return result.expected_exact_ok ? 0 : 1;
}

std::vector<Coefficient> parse_args(const std::vector<std::string>& raw,
                                    const Field& f) {
    std::vector<Coefficient> out;
    for (const auto& s : raw) out.push_back(Coefficient::parse(s, f));
    return out;
}

int run_dist(const GlobalOpts& g, const std::string& what,
             const std::string& params, const std::vector<long>& x, int i,
             int ell, bool ell_given, const std::string& kind,
             const std::vector<std::string>& targs, const std::string& method,
             const std::string& aging, long grid) {
    uhg::GHGParams p = dist_params(params, g);
    uhg::GHGDistribution d(p);
    const Field f = g.field();

    if (what == "pmf") {
        print_value(g, "pmf", d.pmf(x));
    } else if (what == "reliability") {
        print_value(g, "reliability",
                    d.reliability(x, uhg::reliability_route_from_string(
                                         method.empty() ? "series" : method)));
    } else if (what == "hazard") {
        print_value(g, "hazard", d.hazard(i, x));
    } else if (what == "cdf") {
        if (x.size() != 1)
            throw uhg::UsageError("--x must hold the single marginal abscissa");
        uhg::MarginalCdf c = d.marginal_cdf(i, x[0]);
        if (g.format == "json") {
            ordered_json j;
            j["direct"] = c.direct.str();
            j["lemma"] = c.lemma.str();
            j["lemma_as_printed"] = c.lemma_as_printed.str();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "direct " << c.direct.str() << "\n";
            std::cout << "lemma " << c.lemma.str() << "\n";
            std::cout << "lemma-as-printed " << c.lemma_as_printed.str() << "\n";
        }
    } else if (what == "moments") {
        if (ell_given) {
            print_value(g, "moment",
                        d.moment(i, ell, uhg::moment_kind_from_string(kind)));
        } else {
            auto [mean, var] = d.mean_variance(i);
            if (g.format == "json") {
                ordered_json j;
                j["mean"] = mean.str();
                j["variance"] = var.str();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "mean " << mean.str() << "\n";
                std::cout << "variance " << var.str() << "\n";
            }
        }
    } else if (what == "pgf" || what == "mgf") {
        auto ts = parse_args(targs, f);
        print_value(g, what, what == "pgf" ? d.pgf(ts) : d.mgf(ts));
    } else if (what == "normalizer") {
        uhg::NormalizerResult nr = d.normalizer(
            uhg::normalizer_method_from_string(method.empty() ? "series"
                                                              : method));
        if (g.format == "json") {
            ordered_json j;
            j["B"] = nr.B.str();
            j["method"] = uhg::to_string(nr.method);
            j["terms"] = nr.terms;
            j["tail_bound"] = nr.tail_bound.str();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "B " << nr.B.str() << "\n";
            std::cout << "method " << uhg::to_string(nr.method) << "\n";
            std::cout << "terms " << nr.terms << "\n";
            std::cout << "tail-bound " << nr.tail_bound.str() << "\n";
        }
    } else if (what == "classify") {
        uhg::ClassifyResult cr =
            d.classify(uhg::aging_class_from_string(aging), grid);
        auto tuple_text = [](const std::vector<long>& v) {
            std::string s = "(";
            for (size_t q = 0; q < v.size(); ++q) {
                if (q) s += ",";
                s += std::to_string(v[q]);
            }
            return s + ")";
        };
        if (g.format == "json") {
            ordered_json j;
            j["class"] = uhg::to_string(cr.aging);
            j["holds"] = cr.holds;
            if (!cr.holds) {
                j["x"] = cr.x;
                if (!cr.t.empty()) j["t"] = cr.t;
                j["lhs"] = cr.lhs.str();
                j["rhs"] = cr.rhs.str();
            }
            std::cout << j.dump(2) << "\n";
        } else if (cr.holds) {
            std::cout << "holds\n";
        } else {
            std::cout << "witness x=" << tuple_text(cr.x);
            if (!cr.t.empty()) std::cout << " t=" << tuple_text(cr.t);
            std::cout << "\n";
            std::cout << "lhs " << cr.lhs.str() << "\n";
            std::cout << "rhs " << cr.rhs.str() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Apostol Hermite-Genocchi polynomial families, identity "
                 "verification, and the associated lattice distribution"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--mode", g.mode, "coefficient field")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--precision", g.precision, "float precision in bits")
        ->check(CLI::Range(64, 65536));
    app.add_option("--order", g.order, "series truncation order");
    app.add_option("--epsilon", g.epsilon, "tail tolerance for lattice sums");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    auto* seed_opt = app.add_option("--seed", g.seed, "suite sampling seed");

    auto* fam = app.add_subcommand("family", "evaluate the polynomial family");
    fam->require_subcommand(1);
    fam->fallthrough();
    FamilyOpts fo;
    auto* fam_eval = fam->add_subcommand("eval", "single polynomial value");
    fam_eval->fallthrough();
    add_family_options(fam_eval, fo);
    fam_eval->add_option("--n", fo.n, "polynomial degree");
    auto* fam_table = fam->add_subcommand("table", "values for n = 0..n-max");
    fam_table->fallthrough();
    add_family_options(fam_table, fo);
    fam_table->add_option("--n-max", fo.n_max, "largest degree");
    auto* fam_series = fam->add_subcommand(
        "series", "raw generating-function coefficients up to --order");
    fam_series->fallthrough();
    add_family_options(fam_series, fo);

    std::string suite_path, out_path, csv_path;
    auto* verify = app.add_subcommand(
        "verify", "run the identity suite and report per-check verdicts");
    verify->fallthrough();
    verify->add_option("suite", suite_path, "suite description JSON");
    verify->add_option("--out", out_path, "write the full report as JSON");
    verify->add_option("--csv-out", csv_path, "write the full report as CSV");

    auto* dist = app.add_subcommand("dist", "lattice distribution queries");
    dist->require_subcommand(1);
    dist->fallthrough();
    std::string params, kind = "factorial", method, aging = "mnbu";
    std::vector<long> xs;
    std::vector<std::string> targs;
    int ci = 0, ell = 0;
    long grid = 6;
    CLI::Option* ell_opt = nullptr;
    std::vector<CLI::App*> dsubs;
    auto add_dist = [&](const char* name, const char* desc) {
        CLI::App* c = dist->add_subcommand(name, desc);
        c->fallthrough();
        c->add_option("--params", params,
                      "distribution parameters, inline JSON or a file path")
            ->required();
        dsubs.push_back(c);
        return c;
    };
    {
        CLI::App* c = add_dist("pmf", "point mass at --x");
        c->add_option("--x", xs, "lattice point")->delimiter(',')->required();
    }
    {
        CLI::App* c = add_dist("cdf", "marginal distribution function");
        c->add_option("--i", ci, "component index");
        c->add_option("--x", xs, "marginal abscissa")->delimiter(',')->required();
    }
    {
        CLI::App* c = add_dist("reliability", "survival function at --x");
        c->add_option("--x", xs, "lattice point")->delimiter(',')->required();
        c->add_option("--method", method, "series or lattice route");
    }
    {
        CLI::App* c = add_dist("hazard", "component hazard rate at --x");
        c->add_option("--i", ci, "component index");
        c->add_option("--x", xs, "lattice point")->delimiter(',')->required();
    }
    {
        CLI::App* c = add_dist("moments", "mean and variance, or one moment");
        c->add_option("--i", ci, "component index");
        ell_opt = c->add_option("--ell", ell, "moment order");
        c->add_option("--kind", kind, "raw or factorial")
            ->check(CLI::IsMember({"raw", "factorial"}));
    }
    {
        CLI::App* c = add_dist("pgf", "probability generating function");
        c->add_option("--t", targs, "transform arguments")
            ->delimiter(',')
            ->required();
    }
    {
        CLI::App* c = add_dist("mgf", "moment generating function");
        c->add_option("--t", targs, "transform arguments")
            ->delimiter(',')
            ->required();
    }
    {
        CLI::App* c = add_dist("normalizer", "normalizing constant");
        c->add_option("--method", method,
                      "series, homogeneous-reduction, or lattice-bruteforce");
    }
    {
        CLI::App* c = add_dist("classify", "aging class check on a grid");
        c->add_option("--class", aging, "aging class")
            ->check(CLI::IsMember(
                {"mnbu", "mnwu", "mnbue", "mnwue", "mihr", "mdhr"}));
        c->add_option("--grid", grid, "per-coordinate grid bound");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        if (fam_eval->parsed()) return run_family_eval(g, fo);
        if (fam_table->parsed()) return run_family_table(g, fo);
        if (fam_series->parsed()) return run_family_series(g, fo);
        if (verify->parsed()) return run_verify(g, suite_path, out_path, csv_path);
        for (CLI::App* c : dsubs)
            if (c->parsed())
                return run_dist(g, c->get_name(), params, xs, ci, ell,
                                ell_opt->count() > 0, kind, targs, method,
                                aging, grid);
        throw uhg::UsageError("no subcommand selected");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
