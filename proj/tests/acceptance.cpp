// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include "loplab/classify.hpp"
#include "loplab/dispersion.hpp"
#include "loplab/lopatinski.hpp"
#include "loplab/system.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace loplab;
using testing_support::make;
using testing_support::Sampler;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s) {
        o.pass = false;
        o.detail += " [over time budget " + std::to_string(budget_s) + " s]";
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// 1. F = 0: closed form against M^2 (R - 1) < 1 on a 200 x 200 grid.
Outcome gas_reduction() {
    int disagree = 0, weak = 0;
    for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < 200; ++j) {
            const double m = (i + 0.5) / 200.0;
            const double r = 4.0 * (j + 0.5) / 200.0;
            const StabilityVerdict v = classify_closed_form(derive(make(m, r, 0, 0, 0, 0)));
            const bool uniform = v.verdict == Verdict::UniformlyStable;
            weak += !uniform;
            disagree += uniform != testing_support::gas_uniformly_stable(m, r);
        }
    }
    return {disagree == 0, fmt("%.0f disagreements over 40000 points, %.0f weakly stable", disagree, weak)};
}

// 2. Quartic condition against K < K1 + K2 on 1e5 samples.
Outcome condition_equivalence() {
    Sampler rng(1002);
    int disagree = 0, mtilde_disagree = 0, extended = 0;
    for (int n = 0; n < 100000; ++n) {
        const StabilityVerdict v = classify_closed_form(derive(rng.admissible(2.0, 0.0, 5.0)));
        extended += v.extended_precision_used;
        if (std::abs(v.margin) < 1e-12) continue;
        disagree += v.condition_quartic != v.condition_threshold;
        mtilde_disagree += v.condition_mtilde != v.condition_threshold;
    }
    return {disagree == 0 && mtilde_disagree == 0,
            fmt("%.0f quartic and %.0f Mtilde-form disagreements over 1e5 samples, %.0f re-evaluated in 50 digits",
                disagree, mtilde_disagree, extended)};
}

// 3. Generic 7x7 determinant against the closed form.
Outcome determinant_equivalence() {
    Sampler rng(1003);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const DerivedQuantities d = derive(rng.admissible());
        const cplx s = rng.frequency(0.01, 3.0, 3.0);
        const double w = rng.open(-3, 3);
        const cplx lam = lambda_plus(d, s, w);
        const SystemMatrices m = assemble(d);
        const cplx generic = build_determinant(m, boundary_kernel(d, m, s, w), s, w, lam).det;
        worst = std::max(worst, testing_support::rel(generic, closed_form_determinant(d, s, w, lam)));
    }
    return {worst <= 1e-10, fmt("worst relative difference %.3e over 1000 points (tolerance 1e-10)", worst)};
}

// 4. Boundary kernel residual.
Outcome kernel_residual() {
    Sampler rng(1004);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const DerivedQuantities d = derive(rng.admissible());
        const SystemMatrices m = assemble(d);
        const cplx s = rng.frequency(0.01, 3.0, 3.0);
        const double w = rng.open(-3, 3);
        const BoundaryKernel k = boundary_kernel(d, m, s, w);
        worst = std::max(worst, (boundary_symbol(m, s, w) * k.u0).norm() / k.u0.norm());
    }
    return {worst <= 1e-12, fmt("worst relative residual %.3e over 1000 points (tolerance 1e-12)", worst)};
}

// 5. One exponent with positive real part, matched by the closed-form lambda+.
Outcome hersh_uniqueness() {
    Sampler rng(1005);
    int not_unique = 0;
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const ShockParameters p = rng.admissible();
        const DerivedQuantities d = derive(p);
        const cplx s = rng.frequency(0.01, 3.0, 3.0);
        const double w = rng.open(-3, 3);
        const std::vector<cplx> ex = normal_mode_exponents(assemble_interior(d), s, w);
        int positive = 0;
        cplx top = ex.front();
        for (cplx z : ex) {
            positive += z.real() > 0.0;
            if (z.real() > top.real()) top = z;
        }
        not_unique += positive != 1;
        const cplx lp = lambda_plus(d, s, w);
        worst = std::max(worst, std::abs(lp - top) / std::max(1.0, std::abs(top)));
    }
    return {not_unique == 0 && worst <= 1e-9,
            fmt("%.0f points without a unique exponent, worst lambda+ mismatch %.3e (tolerance 1e-9)", not_unique,
                worst)};
}

// 6. Interior scan on the default 400 x 800 grid finds nothing.
Outcome no_violent_instability() {
    Sampler rng(1006);
    int weak = 0, uniform = 0, found = 0;
    double smallest = 1e300;
    while (weak + uniform < 20) {
        const DerivedQuantities d = derive(rng.interior_admissible(1.5, 0.2, 8.0));
        const bool is_weak = d.k >= d.k1 + d.k2;
        if ((is_weak && weak >= 10) || (!is_weak && uniform >= 10)) continue;
        (is_weak ? weak : uniform)++;
        const InteriorScan scan = scan_interior_roots(d, ScanOptions{});
        found += static_cast<int>(scan.roots.size());
        smallest = std::min(smallest, scan.min_grid_residual);
    }
    return {found == 0,
            fmt("%.0f interior roots over 10 weak and 10 uniform points, smallest grid residual %.3e", found,
                smallest)};
}

// 7. Boundary roots exactly when K >= K1 + K2.
Outcome weak_stability_roots() {
    Sampler rng(1007);
    int weak = 0, uniform = 0, bad = 0;
    double worst_res = 0.0, worst_l2 = 0.0;
    while (weak < 20 || uniform < 20) {
        const DerivedQuantities d = derive(rng.admissible(2.0, 0.0, 10.0));
        const bool is_weak = d.k >= d.k1 + d.k2;
        if ((is_weak && weak >= 20) || (!is_weak && uniform >= 20)) continue;
        (is_weak ? weak : uniform)++;
        const auto roots = find_boundary_roots(d);
        if (!is_weak) {
            bad += !roots.empty();
            continue;
        }
        const TransitionPoints tp = transition_points(d);
        bool plus_found = false;
        for (const RootRecord& r : roots) {
            const double w = r.omega_physical;
            const double l2 = std::abs(r.lambda * r.lambda - (d.k2 - d.k) * w * w / d.beta_sq()) /
                              std::max(1.0, std::abs(r.lambda * r.lambda));
            worst_res = std::max(worst_res, r.normalized_residual);
            worst_l2 = std::max(worst_l2, l2);
            if (r.branch == RootBranch::Plus && r.s.imag() >= tp.xi_star_plus && r.normalized_residual <= 1e-8 &&
                l2 <= 1e-8) {
                plus_found = true;
            }
        }
        bad += !plus_found;
    }
    return {bad == 0, fmt("%.0f failing sets of 40, worst normalized residual %.3e, worst lambda^2 error %.3e", bad,
                          worst_res, worst_l2)};
}

// Numerical root-existence predicate along R with everything else fixed.
double bisect_threshold(ShockParameters p, double lo, double hi) {
    auto has_root = [&](double r) {
        p.density_ratio = r;
        return !find_boundary_roots(derive(p)).empty();
    };
    for (int k = 0; k < 80 && hi - lo > 1e-13 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (has_root(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// 8. Transition points and the R threshold located numerically.
Outcome transition_fidelity() {
    Sampler rng(1008);
    double worst_quad = 0.0, worst_delta = 0.0, worst_r = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const DerivedQuantities d = derive(rng.admissible());
        const TransitionPoints tp = transition_points(d);
        worst_quad = std::max({worst_quad, std::abs(transition_quadratic(d, tp.xi_star_plus)),
                               std::abs(transition_quadratic(d, tp.xi_star_minus))});
        worst_delta = std::max({worst_delta, std::abs(tp.delta_star_plus * d.beta - std::sqrt(d.k1)),
                                std::abs(tp.delta_star_minus * d.beta + std::sqrt(d.k3))});
    }

    // Closed-form threshold: R (M^2 - M1^2) + M2^2 = K1 + K2.
    auto closed = [](const ShockParameters& p) {
        const DerivedQuantities d = derive(p);
        return (d.k1 + d.k2 - d.m2 * d.m2) / (p.mach * p.mach - d.m1 * d.m1);
    };
    const ShockParameters diag = make(1.0, 1.0, 0.5, 0, 0, 0.5);
    const double diag_r = bisect_threshold(diag, 1.0, 4.0);
    worst_r = std::abs(diag_r - 8.0 / 3.0);
    for (int n = 0; n < 20; ++n) {
        const ShockParameters p = rng.interior_admissible(1.5, 1.0, 1.0 + 1e-9);
        const double r_star = closed(p);
        const double r = bisect_threshold(p, 0.5 * r_star, 2.0 * r_star);
        worst_r = std::max(worst_r, std::abs(r - r_star));
    }
    const bool pass = worst_quad <= 1e-12 && worst_delta <= 1e-12 && worst_r <= 1e-6;
    return {pass, fmt("quadratic residual %.3e, delta* error %.3e, R threshold error %.3e", worst_quad, worst_delta,
                      worst_r) +
                      fmt(" (diagonal example R = %.12f)", diag_r)};
}

// 9. D > 0 and the signature of A1.
Outcome positivity() {
    Sampler rng(1009);
    int bad_d = 0, bad_sig = 0;
    for (int n = 0; n < 10000; ++n) {
        const DerivedQuantities d = derive(rng.admissible());
        bad_d += !(d.d_cal > 0.0);
        const Signature sig = a1_signature(assemble_interior(d));
        bad_sig += !(sig.negative == 1 && sig.positive == 6);
    }
    return {bad_d == 0 && bad_sig == 0,
            fmt("%.0f samples with D <= 0, %.0f with the wrong A1 signature, of 10000", bad_d, bad_sig)};
}

}  // namespace

int main() {
    criterion(1, "gas-dynamics reduction", 5.0, gas_reduction);
    criterion(2, "condition equivalence", 30.0, condition_equivalence);
    criterion(3, "determinant equivalence", 10.0, determinant_equivalence);
    criterion(4, "kernel residual", 0.0, kernel_residual);
    criterion(5, "Hersh uniqueness", 0.0, hersh_uniqueness);
    criterion(6, "no violent instability", 120.0, no_violent_instability);
    criterion(7, "weak-stability roots", 0.0, weak_stability_roots);
    criterion(8, "transition fidelity", 0.0, transition_fidelity);
    criterion(9, "positivity", 0.0, positivity);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
