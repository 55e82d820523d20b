#include "loplab/verify.hpp"

#include "loplab/dispersion.hpp"
#include "loplab/system.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace loplab {

bool VerifyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport run_verification(const DerivedQuantities& d, const VerifyOptions& opt) {
    const SystemMatrices mats = assemble(d);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> eta_dist(0.01, 3.0);
    std::uniform_real_distribution<double> xi_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> omega_dist(-3.0, 3.0);

    CheckResult det{"determinant_equivalence", 0.0, opt.det_tol, 0, false};
    CheckResult kernel{"kernel_residual", 0.0, opt.kernel_tol, 0, false};
    CheckResult hersh{"hersh_root", 0.0, opt.hersh_tol, 0, false};
    CheckResult chain{"reduction_chain", 0.0, 0.0, 0, false};
    int hersh_count_failures = 0;

    for (int k = 0; k < opt.samples; ++k) {
        const cplx s(eta_dist(rng), xi_dist(rng));
        const double omega = omega_dist(rng);

        const BoundaryKernel bk = boundary_kernel(d, mats, s, omega);
        const double kres = (boundary_symbol(mats, s, omega) * bk.u0).norm() / bk.u0.norm();
        kernel.worst = std::max(kernel.worst, kres);
        ++kernel.evaluated;

        const cplx lam = lambda_plus(d, s, omega);
        const std::vector<cplx> modes = normal_mode_exponents(mats, s, omega);
        const auto positive = std::count_if(modes.begin(), modes.end(), [](cplx z) { return std::real(z) > 0.0; });
        if (positive != 1) ++hersh_count_failures;
        hersh.worst = std::max(hersh.worst, std::abs(modes.back() - lam) / std::max(1.0, std::abs(lam)));
        ++hersh.evaluated;

        const LopatinskiMatrix lm = build_determinant(mats, bk, s, omega, lam);
        const cplx cf = closed_form_determinant(d, s, omega, lam);
        det.worst = std::max(det.worst, std::abs(lm.det - cf) / std::abs(cf));
        ++det.evaluated;

        // A vanishing determinant factor and a vanishing reduced residual must go together.
        const double fac = std::abs(reduced_determinant_factor(d, s, omega, lam)) /
                           reduced_determinant_scale(d, s, omega, lam);
        const ReducedResidual rr = reduced_residual(d, s, omega, lam);
        const double det_res = std::abs(rr.determinant) / rr.determinant_scale;
        if ((fac <= 1e-8) != (det_res <= 1e-8)) chain.worst += 1.0;
        ++chain.evaluated;
    }

    VerifyReport report;
    report.boundary_roots = find_boundary_roots(d);
    CheckResult at_roots{"determinant_at_boundary_roots", 0.0, opt.root_det_tol, 0, false};
    for (const RootRecord& r : report.boundary_roots) {
        const BoundaryKernel bk = boundary_kernel(d, mats, r.s, r.omega_physical);
        const LopatinskiMatrix lm = build_determinant(mats, bk, r.s, r.omega_physical, r.lambda);
        const double generic = std::abs(lm.det) / hadamard_bound(lm.matrix);
        const double factor = std::abs(reduced_determinant_factor(d, r.s, r.omega_physical, r.lambda)) /
                              reduced_determinant_scale(d, r.s, r.omega_physical, r.lambda);
        at_roots.worst = std::max({at_roots.worst, generic, factor, r.normalized_residual});
        ++at_roots.evaluated;
    }

    const InteriorScan scan = scan_interior_roots(d, opt.scan);
    report.interior_roots = static_cast<int>(scan.roots.size());
    CheckResult interior{"interior_scan", static_cast<double>(scan.roots.size()), 0.0, 1, scan.roots.empty()};

    det.pass = det.worst <= det.tolerance;
    kernel.pass = kernel.worst <= kernel.tolerance;
    hersh.pass = hersh.worst <= hersh.tolerance && hersh_count_failures == 0;
    chain.pass = chain.worst == 0.0;
    at_roots.pass = at_roots.worst <= at_roots.tolerance;
    report.checks = {det, kernel, hersh, chain, at_roots, interior};
    return report;
}

}  // namespace loplab
