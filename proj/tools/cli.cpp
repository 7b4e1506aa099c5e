#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "csl/contact.hpp"
#include "csl/errors.hpp"
#include "csl/geom.hpp"
#include "csl/identities.hpp"
#include "csl/pinch.hpp"

namespace csl::cli {

using nlohmann::ordered_json;

namespace {

// Recursive-descent reader for products and quotients of numbers and sqrt(...).
class ScalarParser {
public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    double parse() {
        const double v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    double expr() {
        double v = factor();
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
                const char op = s_[pos_++];
                const double rhs = factor();
                v = op == '*' ? v * rhs : v / rhs;
            } else {
                return v;
            }
        }
    }

    double factor() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '-') {
            ++pos_;
            return -factor();
        }
        if (s_.compare(pos_, 4, "sqrt") == 0) {
            pos_ += 4;
            expect('(');
            const double v = expr();
            expect(')');
            if (v < 0) throw std::invalid_argument("sqrt of negative value in '" + s_ + "'");
            return std::sqrt(v);
        }
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            const double v = expr();
            expect(')');
            return v;
        }
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail();
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail();
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail() const { throw std::invalid_argument("cannot parse number '" + s_ + "'"); }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

ordered_json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round9(x);
}

const std::map<std::string, std::string> kPartner{{"r1", "r2"}, {"r2", "r1"}, {"r3", "r4"}, {"r4", "r3"}};

bool uses_radii(FamilyKind kind) {
    return kind == FamilyKind::calabi_torus || kind == FamilyKind::calabi_product;
}

struct CheckAccumulator {
    std::string name;
    double tolerance = 0;
    double worst = 0;
    bool finite = true;

    void add(double r) {
        if (!std::isfinite(r))
            finite = false;
        else
            worst = std::max(worst, r);
    }
    bool passed() const { return finite && worst <= tolerance; }
};

struct Sampled {
    std::vector<FundamentalData> fund;
    std::vector<double> kappa;
};

// Evaluates fundamental data at every grid point; DegenerateMetric propagates.
Sampled sample_fundamental(const ImmersionFamily& family, const RunConfig& cfg) {
    Sampled out;
    for (const auto& u : chart_grid(family, cfg.grid, cfg.max_points, cfg.seed)) {
        const Jet2d jet = family.jet(u);
        out.fund.push_back(fundamental_forms(jet, build_frame(jet)));
        const auto& f = out.fund.back();
        out.kappa.push_back(0.5 * (2.0 + f.normH2 - f.normB2));
    }
    return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
    if (path.empty() || path == "-") return fallback;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file " + path);
    return file;
}

}  // namespace

void check_config(const RunConfig& cfg) {
    if (cfg.grid < 2) throw std::invalid_argument("grid must be >= 2");
    if (cfg.max_points < 1) throw std::invalid_argument("max-points must be >= 1");
    if (!(cfg.fd_step > 0)) throw std::invalid_argument("fd-step must be positive");
    if (!(cfg.tol_ad > 0) || !(cfg.tol_fd > 0) || !(cfg.eq_tol > 0))
        throw std::invalid_argument("tolerances must be positive");
    if (cfg.format != "json") throw std::invalid_argument("unsupported format '" + cfg.format + "'");
}

double parse_scalar(const std::string& text) { return ScalarParser(text).parse(); }

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("parameter '" + item + "' is not key=value");
        const std::string key = trim(item.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("empty parameter name in '" + item + "'");
        if (out.count(key)) throw std::invalid_argument("parameter " + key + " given twice");
        out[key] = parse_scalar(trim(item.substr(eq + 1)));
    }
    return out;
}

FamilySpec with_derived_params(FamilySpec spec) {
    if (!uses_radii(spec.kind)) return spec;
    std::vector<std::pair<std::string, std::string>> pairs{{"r1", "r2"}};
    if (spec.kind == FamilyKind::calabi_torus) pairs.emplace_back("r3", "r4");
    for (const auto& [a, b] : pairs) {
        const bool has_a = spec.params.count(a) > 0, has_b = spec.params.count(b) > 0;
        if (has_a && !has_b) spec.params[b] = std::sqrt(std::max(0.0, 1.0 - spec.params[a] * spec.params[a]));
        if (has_b && !has_a) spec.params[a] = std::sqrt(std::max(0.0, 1.0 - spec.params[b] * spec.params[b]));
    }
    return spec;
}

SweepSpec parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("sweep must look like name=lo:hi:count");
    SweepSpec sw;
    sw.name = trim(text.substr(0, eq));
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(eq + 1));
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(trim(p));
    if (sw.name.empty() || parts.size() != 3) throw std::invalid_argument("sweep must look like name=lo:hi:count");
    sw.lo = parse_scalar(parts[0]);
    sw.hi = parse_scalar(parts[1]);
    std::size_t used = 0;
    try {
        sw.count = std::stoi(parts[2], &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("sweep count '" + parts[2] + "' is not an integer");
    }
    if (used != parts[2].size()) throw std::invalid_argument("sweep count '" + parts[2] + "' is not an integer");
    if (sw.count < 2) throw std::invalid_argument("sweep count must be >= 2");
    if (sw.lo > sw.hi) std::swap(sw.lo, sw.hi);
    return sw;
}

double round9(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return std::strtod(buf, nullptr);
}

VerifyResult run_verify(const RunConfig& cfg) {
    check_config(cfg);
    const FamilySpec spec = with_derived_params(cfg.family);
    validate(spec);
    const ImmersionFamily family = make_family(spec);
    const int n = spec.n;
    const double h = cfg.fd_step;

    std::vector<CheckAccumulator> checks{
        {"on_sphere", cfg.tol_ad},        {"legendrian", cfg.tol_ad},
        {"contact_pullback", cfg.tol_ad}, {"frame_orthonormality", cfg.tol_ad},
        {"normal_orthogonality", cfg.tol_ad}, {"codazzi_symmetry", cfg.tol_ad},
        {"reeb_component", cfg.tol_ad},   {"pythagorean_split", cfg.tol_ad},
        {"simons_rhs_parallel", cfg.tol_ad}, {"cdk_bound", cfg.tol_ad},
        {"dmu", cfg.tol_fd},              {"csl", cfg.tol_fd},
        {"legendrian_random", cfg.tol_ad},
    };
    if (n >= 3) {
        checks.push_back({"traceless_chain", cfg.tol_ad});
        checks.push_back({"ricci_lower_bound", cfg.tol_ad});
    }
    auto check = [&](const std::string& name) -> CheckAccumulator& {
        for (auto& c : checks)
            if (c.name == name) return c;
        throw std::logic_error("unknown check " + name);
    };

    std::optional<OracleData> orc;
    try {
        orc = oracle(spec);
    } catch (const NoOracle&) {
    }
    double diff_sigma = 0, diff_b2 = 0, diff_h2 = 0, diff_mu = 0;

    std::vector<FundamentalData> samples;
    const auto points = chart_grid(family, cfg.grid, cfg.max_points, cfg.seed);
    const Tensor3d zero_hess(n);
    for (const auto& u : points) {
        const Jet2d jet = family.jet(u);
        check("on_sphere").add(jet.sphere_defect());
        check("legendrian").add(legendrian_residual(jet));
        check("contact_pullback").add(contact_pullback_residual(jet));

        const FrameData frame = build_frame(jet);
        const FrameResiduals fr = frame_residuals(frame);
        check("frame_orthonormality").add(fr.orthonormality);
        check("normal_orthogonality").add(std::max(fr.normal_tangent, fr.normal_position));
        check("reeb_component").add(reeb_component_residual(jet, frame));

        FundamentalData f = fundamental_forms(jet, frame);
        const double scale = std::max(1.0, f.normB2);
        check("codazzi_symmetry").add(codazzi_symmetry_residual(f.sigma_raw) / std::sqrt(scale));
        check("pythagorean_split")
            .add(std::abs(f.normB2 - squared_norm(f.sigma0) - 3.0 / (n + 2) * f.normH2) / scale);
        check("simons_rhs_parallel").add(simons_rhs(f, zero_hess, n).max_abs() / (scale * std::sqrt(scale)));
        const CdkBound cdk = cdk_matrix_bound(f);
        check("cdk_bound").add(std::max(0.0, cdk.lhs - cdk.rhs) / (scale * scale));
        check("dmu").add(dmu_residual(family, u, h));
        check("csl").add(csl_residual(family, u, h));

        if (n >= 3) {
            const double hn = std::sqrt(f.normH2);
            if (hn > kMeanCurvatureMin) {
                const SymTensor3d s0 = rotated(f.sigma0, jh_adapted_basis(f.mu));
                check("traceless_chain").add(std::max(0.0, -traceless_chain_gap(s0)) / scale);
                const double bound = ricci_lower_bound(n, squared_norm(f.sigma0), hn);
                check("ricci_lower_bound").add(std::max(0.0, bound - ric_jh(f) / f.normH2) / scale);
            }
        }

        if (orc) {
            if (orc->sigma_expected) {
                const SymTensor3d d = f.sigma - *orc->sigma_expected;
                diff_sigma = std::max(diff_sigma, d.dense().max_abs());
                diff_b2 = std::max(diff_b2, std::abs(f.normB2 - squared_norm(*orc->sigma_expected)));
            } else {
                diff_b2 = std::max(diff_b2, std::abs(f.normB2 - orc->normB2));
            }
            diff_mu = std::max(diff_mu, (f.mu - orc->H_frame).cwiseAbs().maxCoeff());
            diff_h2 = std::max(diff_h2, std::abs(f.normH2 - orc->H_frame.squaredNorm()));
        }
        samples.push_back(std::move(f));
    }
    for (const auto& u : random_chart_points(family, 64, cfg.seed + 1))
        check("legendrian_random").add(legendrian_residual(family.jet(u)));

    VerifyResult res;
    ordered_json& rep = res.report;
    rep["family"] = to_string(spec.kind);
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : spec.params) params[k] = num(v);
    rep["params"] = params;
    rep["n"] = n;
    rep["seed"] = cfg.seed;
    rep["grid"] = cfg.grid;
    rep["samples"] = samples.size();
    rep["fd_step"] = num(cfg.fd_step);

    ordered_json jchecks = ordered_json::array();
    for (const auto& c : checks) {
        jchecks.push_back({{"name", c.name},
                           {"max_residual", c.finite ? num(c.worst) : ordered_json(nullptr)},
                           {"tolerance", num(c.tolerance)},
                           {"passed", c.passed()}});
        if (!c.passed()) res.failed_checks.push_back(c.name);
    }

    ordered_json oracle_diff = nullptr;
    if (orc) {
        const bool ok = diff_sigma <= cfg.tol_ad && diff_b2 <= cfg.tol_ad && diff_h2 <= cfg.tol_ad &&
                        diff_mu <= cfg.tol_ad;
        oracle_diff = {{"sigma", num(diff_sigma)}, {"normB2", num(diff_b2)}, {"normH2", num(diff_h2)},
                       {"mu", num(diff_mu)},       {"tolerance", num(cfg.tol_ad)}, {"passed", ok}};
        jchecks.push_back({{"name", "oracle"},
                           {"max_residual", num(std::max({diff_sigma, diff_b2, diff_h2, diff_mu}))},
                           {"tolerance", num(cfg.tol_ad)},
                           {"passed", ok}});
        if (!ok) res.failed_checks.push_back("oracle");
    }
    rep["checks"] = jchecks;

    ordered_json jthr = ordered_json::array();
    ordered_json summary = ordered_json::object();
    double sup_h2 = 0, sup_b2 = 0, inf_h2 = std::numeric_limits<double>::infinity();
    for (const auto& f : samples) {
        sup_h2 = std::max(sup_h2, f.normH2);
        sup_b2 = std::max(sup_b2, f.normB2);
        inf_h2 = std::min(inf_h2, f.normH2);
    }
    summary["sup_B2"] = num(sup_b2);
    summary["inf_H2"] = num(inf_h2);
    summary["sup_H2"] = num(sup_h2);
    summary["minimal"] = sup_h2 < cfg.eq_tol;
    if (n >= 2) {
        const GapReport gap = classify(samples, n, cfg.eq_tol);
        for (const auto& e : gap.entries)
            jthr.push_back({{"name", e.name},
                            {"value_at_sup_H2", num(threshold_by_name(e.name, n, gap.sup_H2))},
                            {"pointwise_margin_min", num(e.pointwise_margin_min)},
                            {"hypothesis_holds", e.hypothesis_holds}});
        summary["equality_points"] = gap.equality_points;
        summary["equality_basic"] = gap.equality_points == gap.samples;
        summary["margin_basic"] = num(gap.entry("basic").pointwise_margin_min);
        if (n >= 3) summary["margin_main"] = num(gap.entry("main").pointwise_margin_min);
        if (n == 2) {
            double kmax = 0;
            for (const auto& f : samples) kmax = std::max(kmax, std::abs(*f.gauss_curv));
            summary["max_abs_gauss_curvature"] = num(kmax);
        }
    }
    if (orc) {
        summary["oracle_minimal"] = orc->minimal;
        summary["oracle_equality_basic"] = orc->equality_basic;
    }
    rep["thresholds"] = jthr;
    rep["oracle_diff"] = oracle_diff;
    res.passed = res.failed_checks.empty();
    rep["passed"] = res.passed;
    rep["summary"] = summary;
    return res;
}

std::string run_scan(const RunConfig& cfg, const SweepSpec& sweep) {
    check_config(cfg);
    if (sweep.count < 2) throw std::invalid_argument("sweep count must be >= 2");
    const int n = cfg.family.n;
    if (n < 2) throw InvalidParams("scan needs n >= 2");

    std::ostringstream os;
    os << "param,normB2,normH2,threshold_basic,margin_basic,threshold_main,margin_main,kappa,equality_flag\n";
    auto cell = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", x);
        return std::string(buf);
    };
    for (int k = 0; k < sweep.count; ++k) {
        const double value = k + 1 == sweep.count
                                 ? sweep.hi
                                 : sweep.lo + (sweep.hi - sweep.lo) * static_cast<double>(k) / (sweep.count - 1);
        FamilySpec spec = cfg.family;
        spec.params[sweep.name] = value;
        if (uses_radii(spec.kind) && kPartner.count(sweep.name)) {
            const std::string& partner = kPartner.at(sweep.name);
            const double sign = spec.params.count(partner) && spec.params[partner] < 0 ? -1.0 : 1.0;
            spec.params[partner] = sign * std::sqrt(std::max(0.0, 1.0 - value * value));
        }
        spec = with_derived_params(spec);
        validate(spec);
        const ImmersionFamily family = make_family(spec);
        const Sampled s = sample_fundamental(family, cfg);

        std::size_t worst_basic = 0, worst_main = 0;
        double m_basic = std::numeric_limits<double>::infinity(), m_main = m_basic;
        std::size_t eq_points = 0;
        for (std::size_t i = 0; i < s.fund.size(); ++i) {
            const auto& f = s.fund[i];
            const double mb = threshold_basic(n, f.normH2) - f.normB2;
            if (mb < m_basic) m_basic = mb, worst_basic = i;
            if (std::abs(mb) < cfg.eq_tol) ++eq_points;
            if (n >= 3) {
                const double mm = threshold_main(n, f.normH2) - f.normB2;
                if (mm < m_main) m_main = mm, worst_main = i;
            }
        }
        const auto& fb = s.fund[worst_basic];
        os << cell(value) << ',' << cell(fb.normB2) << ',' << cell(fb.normH2) << ','
           << cell(threshold_basic(n, fb.normH2)) << ',' << cell(m_basic) << ',';
        if (n >= 3)
            os << cell(threshold_main(n, s.fund[worst_main].normH2)) << ',' << cell(m_main) << ',';
        else
            os << "nan,nan,";
        os << cell(s.kappa[worst_basic]) << ',' << (eq_points == s.fund.size() ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string run_thresholds(int n, double h2, int codim) {
    if (n < 2) throw WrongDimension("thresholds need n >= 2");
    if (!(h2 >= 0) || !std::isfinite(h2)) throw std::invalid_argument("hsq must be a finite value >= 0");
    std::ostringstream os;
    auto line = [&](const std::string& name, double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-8s %.9g\n", name.c_str(), v);
        os << buf;
    };
    os << "n        " << n << "\nhsq      ";
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", h2);
        os << buf << '\n';
    }
    for (const auto& name : threshold_names(n)) line(name, threshold_by_name(name, n, h2));
    if (h2 > 0) line("eps_opt", optimal_eps(n, h2));
    const ReferenceConstants rc = reference_constants(n, codim > 0 ? codim : n + 1);
    line("simons", rc.simons);
    line("lili", rc.lili);
    return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checks contact-stationary Legendrian immersion families and pinching thresholds", "cslcheck"};
    app.set_config("--config", "", "TOML/INI file with option values; command-line flags take precedence");
    app.require_subcommand(1);

    RunConfig cfg;
    std::string family_name, params_text, sweep_text;
    int n = 0;
    double hsq = 0;
    int codim = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", family_name, "totally-geodesic | calabi-torus | calabi-product | clifford-torus")
            ->required();
        sub->add_option("--n", n, "Submanifold dimension (defaults to 2)");
        sub->add_option("--params", params_text, "Comma separated key=value list, e.g. r1=0.6,r3=sqrt(0.5)");
        sub->add_option("--grid", cfg.grid, "Samples per chart axis")->capture_default_str();
        sub->add_option("--max-points", cfg.max_points, "Cap on the number of chart samples")->capture_default_str();
        sub->add_option("--fd-step", cfg.fd_step, "Central-difference step")->capture_default_str();
        sub->add_option("--tol-ad", cfg.tol_ad, "Tolerance for exact-derivative checks")->capture_default_str();
        sub->add_option("--tol-fd", cfg.tol_fd, "Tolerance for finite-difference checks")->capture_default_str();
        sub->add_option("--eq-tol", cfg.eq_tol, "Tolerance for threshold equality")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Seed for subsampled grids and random points")->capture_default_str();
        sub->add_option("--out", cfg.output_path, "Output file (default: standard output)");
    };

    CLI::App* verify = app.add_subcommand("verify", "Run every residual check and classify against thresholds");
    add_common(verify);
    verify->add_option("--format", cfg.format, "Report format")->capture_default_str();

    CLI::App* scan = app.add_subcommand("scan", "Sweep one parameter and tabulate gap margins as CSV");
    add_common(scan);
    scan->add_option("--sweep", sweep_text, "name=lo:hi:count")->required();

    CLI::App* thr = app.add_subcommand("thresholds", "Print every threshold for given n and |H|^2");
    thr->add_option("--n", n, "Dimension")->required();
    thr->add_option("--hsq", hsq, "|H|^2")->required();
    thr->add_option("--codim", codim, "Codimension for the Simons constant (default n+1)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (thr->parsed()) {
            out << run_thresholds(n, hsq, codim);
            return 0;
        }
        cfg.family.kind = parse_family_kind(family_name);
        cfg.family.n = n > 0 ? n : 2;
        if (n < 0) throw InvalidParams("constraint n >= 1 violated");
        cfg.family.params = parse_params(params_text);

        std::ofstream file;
        if (verify->parsed()) {
            const VerifyResult res = run_verify(cfg);
            std::ostream& dst = open_output(cfg.output_path, file, out);
            dst << res.report.dump(2) << '\n';
            if (!res.passed) {
                err << "check failure:";
                for (const auto& name : res.failed_checks) err << ' ' << name;
                err << '\n';
                return 1;
            }
            return 0;
        }
        const SweepSpec sweep = parse_sweep(sweep_text);
        const std::string csv = run_scan(cfg, sweep);
        std::ostream& dst = open_output(cfg.output_path, file, out);
        dst << csv;
        return 0;
    } catch (const DegenerateMetric& e) {
        err << "check failure: degenerate_metric: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace csl::cli
