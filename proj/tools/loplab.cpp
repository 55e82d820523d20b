#include "loplab/classify.hpp"
#include "loplab/config.hpp"
#include "loplab/dispersion.hpp"
#include "loplab/errors.hpp"
#include "loplab/lopatinski.hpp"
#include "loplab/params.hpp"
#include "loplab/sweep.hpp"
#include "loplab/system.hpp"
#include "loplab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using json = nlohmann::ordered_json;
using namespace loplab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInadmissible = 2;
constexpr int kExitDisagreement = 3;

struct PointArgs {
    std::string config;
    std::optional<double> mach, ratio, f11, f12, f21, f22, mach_upstream;
    bool strict_det = false;
};

void add_point_options(CLI::App* app, PointArgs& a) {
    app->add_option("--config,-c", a.config, "TOML file with M, R, M_minus and an [F] table");
    app->add_option("--mach,-M", a.mach, "downstream Mach number M");
    app->add_option("--ratio,-R", a.ratio, "density ratio R");
    app->add_option("--f11", a.f11, "deformation gradient entry F11");
    app->add_option("--f12", a.f12, "deformation gradient entry F12");
    app->add_option("--f21", a.f21, "deformation gradient entry F21");
    app->add_option("--f22", a.f22, "deformation gradient entry F22");
    app->add_option("--mach-upstream", a.mach_upstream, "upstream Mach number for the advisory upstream check");
    app->add_flag("--strict-det", a.strict_det, "treat det F <= 0 as inadmissible");
}

struct Point {
    ShockParameters params;
    std::optional<Config> config;
};

Point resolve(const PointArgs& a) {
    Point pt;
    if (!a.config.empty()) {
        pt.config = Config::load(a.config);
        pt.params = params_from_config(*pt.config);
    }
    ShockParameters& p = pt.params;
    if (a.mach) p.mach = *a.mach;
    if (a.ratio) p.density_ratio = *a.ratio;
    if (a.f11) p.deformation(0, 0) = *a.f11;
    if (a.f12) p.deformation(0, 1) = *a.f12;
    if (a.f21) p.deformation(1, 0) = *a.f21;
    if (a.f22) p.deformation(1, 1) = *a.f22;
    if (a.mach_upstream) p.mach_upstream = *a.mach_upstream;
    if (p.mach == 0.0 || p.density_ratio == 0.0) {
        throw InvalidParameters("both M and R must be given (flags or config)");
    }
    return pt;
}

AdmissibilityOptions admissibility(const PointArgs& a, const Point& pt) {
    AdmissibilityOptions o;
    o.strict_det = a.strict_det;
    if (pt.config) {
        if (auto v = pt.config->boolean("strict_det")) o.strict_det = o.strict_det || *v;
    }
    return o;
}

json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

json complex_json(cplx z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

json params_json(const ShockParameters& p) {
    json j;
    j["M"] = p.mach;
    j["R"] = p.density_ratio;
    j["F"] = json::array({json::array({p.f11(), p.f12()}), json::array({p.f21(), p.f22()})});
    j["M_minus"] = p.mach_upstream ? json(*p.mach_upstream) : json(nullptr);
    return j;
}

json admissibility_json(const AdmissibilityReport& r) {
    json j;
    j["admissible"] = r.admissible();
    j["downstream"] = to_string(r.downstream);
    j["upstream"] = to_string(r.upstream);
    j["det_constraint"] = to_string(r.det_constraint);
    j["margin_lower"] = number(r.margin_lower);
    j["margin_upper"] = number(r.margin_upper);
    j["upstream_bound"] = number(r.upstream_bound);
    j["upstream_margin"] = number(r.upstream_margin);
    return j;
}

json derived_json(const DerivedQuantities& d) {
    json j;
    j["M1"] = number(d.m1);
    j["M2"] = number(d.m2);
    j["Mstar"] = number(d.m_star);
    j["beta"] = number(d.beta);
    j["ell0"] = number(d.ell0);
    j["detF"] = number(d.det_f);
    j["sigma"] = number(d.sigma);
    j["d0"] = number(d.d0);
    j["a0"] = number(d.a0);
    j["Mtilde"] = number(d.m_tilde);
    j["D"] = number(d.d_cal);
    j["K"] = number(d.k);
    j["K1"] = number(d.k1);
    j["K2"] = number(d.k2);
    j["K3"] = number(d.k3);
    const TransitionPoints tp = transition_points(d);
    j["xi_star_plus"] = number(tp.xi_star_plus);
    j["xi_star_minus"] = number(tp.xi_star_minus);
    j["delta_star_plus"] = number(tp.delta_star_plus);
    j["delta_star_minus"] = number(tp.delta_star_minus);
    return j;
}

json root_json(const RootRecord& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["branch"] = to_string(r.branch);
    j["s"] = complex_json(r.s);
    j["lambda"] = complex_json(r.lambda);
    j["omega"] = r.omega;
    j["omega_physical"] = r.omega_physical;
    j["residual_dispersion"] = complex_json(r.residual_dispersion);
    j["residual_determinant"] = complex_json(r.residual_determinant);
    j["normalized_residual"] = number(r.normalized_residual);
    return j;
}

json matrix_json(const auto& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

void print_matrix(std::ostream& out, const std::string& name, const auto& m) {
    out << name << " (" << m.rows() << "x" << m.cols() << ")\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int k = 0; k < m.cols(); ++k) out << (k ? " " : "  ") << format_number(m(i, k));
        out << '\n';
    }
}

// Inadmissible inputs are reported on stdout and mapped to exit code 2.
std::optional<int> reject_inadmissible(const ShockParameters& p, const AdmissibilityOptions& opts) {
    const AdmissibilityReport adm = check_lax(p, opts);
    if (adm.admissible()) return std::nullopt;
    json j;
    j["params"] = params_json(p);
    j["verdict"] = to_string(Verdict::Inadmissible);
    j["admissibility"] = admissibility_json(adm);
    std::cout << j.dump(2) << '\n';
    return kExitInadmissible;
}

int cmd_classify(const PointArgs& a, bool fast) {
    const Point pt = resolve(a);
    const AdmissibilityOptions adm_opts = admissibility(a, pt);
    if (auto code = reject_inadmissible(pt.params, adm_opts)) return *code;

    const DerivedQuantities d = derive(pt.params);
    StabilityVerdict v;
    if (fast) {
        v = classify_closed_form(d);
        v.admissibility = check_lax(pt.params, adm_opts);
    } else {
        ClassifyOptions opts;
        opts.admissibility = adm_opts;
        opts.throw_on_disagreement = false;
        if (pt.config) {
            opts.scan = scan_options_from_config(*pt.config);
            opts.boundary = boundary_options_from_config(*pt.config);
        }
        v = classify_full(pt.params, opts);
    }

    json j;
    j["params"] = params_json(pt.params);
    j["verdict"] = to_string(v.verdict);
    j["margin"] = number(v.margin);
    j["conditions"] = {{"quartic", v.condition_quartic},
                       {"threshold", v.condition_threshold},
                       {"mtilde", v.condition_mtilde}};
    j["extended_precision"] = v.extended_precision_used;
    j["admissibility"] = admissibility_json(*v.admissibility);
    j["derived"] = derived_json(d);
    if (v.numerics_run) {
        json roots = json::array();
        for (const RootRecord& r : v.roots) roots.push_back(root_json(r));
        j["numerics"] = {{"boundary_roots", v.delta_branch_roots},
                         {"interior_roots", v.interior_roots},
                         {"agreement", v.agreement},
                         {"roots", roots}};
    }
    std::cout << j.dump(2) << '\n';
    if (!v.conditions_consistent()) return kExitDisagreement;
    if (v.numerics_run && !v.agreement) return kExitDisagreement;
    return kExitOk;
}

int cmd_scan(const std::string& spec_path, const std::string& out_path) {
    const Config cfg = Config::load(spec_path);
    const SweepSpec spec = sweep_from_config(cfg);
    const std::vector<SweepRow> rows = run_sweep(spec);

    auto ends_with = [](const std::string& s, const std::string& suffix) {
        return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (out_path.empty()) {
        write_csv(std::cout, rows);
        return kExitOk;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    if (ends_with(out_path, ".jsonl")) {
        write_jsonl(out, rows);
    } else if (ends_with(out_path, ".csv")) {
        write_csv(out, rows);
    } else {
        throw Error("output file must end in .csv or .jsonl");
    }
    std::cerr << rows.size() << " rows written to " << out_path << '\n';
    return kExitOk;
}

int cmd_roots(const PointArgs& a, std::optional<double> eta, std::optional<double> xi, double omega) {
    const Point pt = resolve(a);
    if (auto code = reject_inadmissible(pt.params, admissibility(a, pt))) return *code;
    const DerivedQuantities d = derive(pt.params);

    json j;
    j["params"] = params_json(pt.params);
    if (!eta && !xi) {
        json roots = json::array();
        for (const RootRecord& r : find_boundary_roots(d)) roots.push_back(root_json(r));
        j["boundary_roots"] = roots;
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }

    const cplx s(eta.value_or(0.0), xi.value_or(0.0));
    const LambdaPair lp = lambda_pair(d, s, omega);
    const std::vector<cplx> all = full_dispersion_roots(d, s, omega);
    std::size_t hersh_index = 0;
    for (std::size_t k = 1; k < all.size(); ++k) {
        if (std::abs(all[k] - lp.plus) < std::abs(all[hersh_index] - lp.plus)) hersh_index = k;
    }
    json list = json::array();
    for (std::size_t k = 0; k < all.size(); ++k) {
        json r = complex_json(all[k]);
        r["hersh"] = k == hersh_index;
        list.push_back(r);
    }
    j["s"] = complex_json(s);
    j["omega"] = omega;
    j["dispersion_roots"] = list;
    j["lambda_plus"] = complex_json(lp.plus);
    j["lambda_minus"] = complex_json(lp.minus);
    j["glancing"] = lp.glancing;

    const ReducedResidual rr = reduced_residual(d, s, omega, lp.plus);
    j["residual_dispersion"] = complex_json(rr.dispersion);
    j["residual_determinant"] = complex_json(rr.determinant);
    j["closed_form_determinant"] = complex_json(closed_form_determinant(d, s, omega, lp.plus));
    try {
        const SystemMatrices mats = assemble(d);
        const LopatinskiMatrix lm = build_determinant(mats, boundary_kernel(d, mats, s, omega), s, omega, lp.plus);
        j["generic_determinant"] = complex_json(lm.det);
        j["selection_conditioning"] = number(lm.selection_conditioning);
    } catch (const SingularSelection& e) {
        j["generic_determinant"] = nullptr;
        j["selection_error"] = e.what();
    }
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_verify(const PointArgs& a, int samples) {
    const Point pt = resolve(a);
    if (auto code = reject_inadmissible(pt.params, admissibility(a, pt))) return *code;
    const DerivedQuantities d = derive(pt.params);

    VerifyOptions opts;
    opts.samples = samples;
    if (pt.config) opts.scan = scan_options_from_config(*pt.config);
    const VerifyReport report = run_verification(d, opts);

    json checks = json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"worst", number(c.worst)},
                          {"tolerance", number(c.tolerance)},
                          {"evaluated", c.evaluated},
                          {"pass", c.pass}});
    }
    json roots = json::array();
    for (const RootRecord& r : report.boundary_roots) roots.push_back(root_json(r));
    json j;
    j["params"] = params_json(pt.params);
    j["pass"] = report.pass();
    j["checks"] = checks;
    j["boundary_roots"] = roots;
    j["interior_roots"] = report.interior_roots;
    std::cout << j.dump(2) << '\n';
    return report.pass() ? kExitOk : kExitDisagreement;
}

int cmd_dump(const PointArgs& a, bool as_json) {
    const Point pt = resolve(a);
    const DerivedQuantities d = derive(pt.params);
    const SystemMatrices m = assemble(d);
    if (as_json) {
        json j;
        j["params"] = params_json(pt.params);
        j["A0"] = matrix_json(m.a0);
        j["A1"] = matrix_json(m.a1);
        j["A2"] = matrix_json(m.a2);
        j["B0"] = matrix_json(m.b0);
        j["B2"] = matrix_json(m.b2);
        j["B3"] = matrix_json(m.b3);
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }
    std::cout << "# unknowns: p v1 v2 F11 F21 F12 F22\n";
    print_matrix(std::cout, "A0", m.a0);
    print_matrix(std::cout, "A1", m.a1);
    print_matrix(std::cout, "A2", m.a2);
    print_matrix(std::cout, "B0", m.b0);
    print_matrix(std::cout, "B2", m.b2);
    print_matrix(std::cout, "B3", m.b3);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform and weak stability of shock waves in 2D compressible elastodynamics"};
    app.require_subcommand(1);

    PointArgs classify_args;
    bool fast = false;
    auto* classify = app.add_subcommand("classify", "classify one parameter point");
    add_point_options(classify, classify_args);
    classify->add_flag("--fast", fast, "closed-form verdict only, skip the root search");

    std::string spec_path, out_path;
    auto* scan = app.add_subcommand("scan", "sweep a parameter grid described by a TOML file");
    scan->add_option("spec", spec_path, "sweep specification")->required()->check(CLI::ExistingFile);
    scan->add_option("--out,-o", out_path, "output file (.csv or .jsonl); CSV on stdout when omitted");

    PointArgs roots_args;
    std::optional<double> eta, xi;
    double omega = 1.0;
    auto* roots = app.add_subcommand("roots", "boundary roots, or all dispersion roots at one frequency");
    add_point_options(roots, roots_args);
    roots->add_option("--eta", eta, "Re s");
    roots->add_option("--xi", xi, "Im s");
    roots->add_option("--omega", omega, "tangential frequency")->capture_default_str();

    PointArgs verify_args;
    int samples = 200;
    auto* verify = app.add_subcommand("verify", "run the numerical self-checks at one parameter point");
    add_point_options(verify, verify_args);
    verify->add_option("--samples", samples, "random frequencies per check")->capture_default_str();

    PointArgs dump_args;
    bool as_json = false;
    auto* dump = app.add_subcommand("dump-matrices", "print A0, A1, A2, B0, B2, B3");
    add_point_options(dump, dump_args);
    dump->add_flag("--json", as_json, "JSON instead of text");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify) return cmd_classify(classify_args, fast);
        if (*scan) return cmd_scan(spec_path, out_path);
        if (*roots) return cmd_roots(roots_args, eta, xi, omega);
        if (*verify) return cmd_verify(verify_args, samples);
        if (*dump) return cmd_dump(dump_args, as_json);
    } catch (const NonHyperbolicPoint& e) {
        std::cerr << "inadmissible: " << e.what() << '\n';
        return kExitInadmissible;
    } catch (const DisagreementError& e) {
        std::cerr << "disagreement: " << e.what() << '\n';
        return kExitDisagreement;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
