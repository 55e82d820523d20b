#pragma once

#include "loplab/dispersion.hpp"
#include "loplab/params.hpp"
#include "loplab/system.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace loplab {

// ---------------------------------------------------------------------------
// Generic construction
// ---------------------------------------------------------------------------

// s A0 + lambda A1 + i omega A2 with its first row replaced by (A1 u0)^T.
// Rows 2..7 are kept verbatim; their independence is measured by the ratio of
// the smallest to the largest singular value of that 6x7 block.
struct LopatinskiMatrix {
    CMat7 matrix;
    cplx det;
    double selection_conditioning = 0.0;
};

// Throws SingularSelection when the retained rows are dependent
// (selection_conditioning <= singular_tol).
LopatinskiMatrix build_determinant(const SystemMatrices& mats, const BoundaryKernel& kernel, cplx s, double omega,
                                   cplx lambda, double singular_tol = 1e-12);

// Roots of det(s A0 + lambda A1 + i omega A2) = 0 as eigenvalues of
// -A1^{-1}(s A0 + i omega A2). Uses nothing but the assembled matrices.
std::vector<cplx> normal_mode_exponents(const SystemMatrices& mats, cplx s, double omega);

// Unique exponent with Re > 0 among normal_mode_exponents (Re s > 0).
cplx hersh_root_from_matrices(const SystemMatrices& mats, cplx s, double omega);

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

// (lambda^2 - w^2) s + (M^2 s - i ell0 w) Omega lambda + M1^2 lambda^2 s
//   + M2^2 w^2 lambda + i ell0 w lambda (s - lambda) + R (M^2 - M1^2) w^2 Omega
cplx reduced_determinant_factor(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// Sum of magnitudes of the terms of reduced_determinant_factor.
double reduced_determinant_scale(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// Product of the row norms of a matrix, an upper bound for |det|.
double hadamard_bound(const CMat7& m);

// beta^2 Omega^2 (w^2 - lambda^2) / (2 M^2) times the factor above. Valid for
// lambda a root of the incoming-mode dispersion factor.
cplx closed_form_determinant(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// Residuals of the pair
//   M^2 Omega^2 - M*^2 lambda^2 + K2 w^2 - 2 i |ell0| lambda w      (dispersion)
//   M^2 Omega^2 - M^2 lambda^2 + K w^2 - 2 i |ell0| lambda w         (reduced det)
// evaluated after folding sign(ell0) into omega, with the magnitudes used for
// scale-normalized comparisons.
struct ReducedResidual {
    cplx dispersion;
    cplx determinant;
    double dispersion_scale = 0.0;
    double determinant_scale = 0.0;

    double normalized_max() const;
};

ReducedResidual reduced_residual(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// ---------------------------------------------------------------------------
// Transition between uniform and weak stability
// ---------------------------------------------------------------------------

struct TransitionPoints {
    double xi_star_plus = 0.0;
    double xi_star_minus = 0.0;
    double delta_star_plus = 0.0;   //  sqrt(K1) / beta
    double delta_star_minus = 0.0;  // -sqrt(K3) / beta
};

TransitionPoints transition_points(const DerivedQuantities& d);

// M^2 M*^2 xi^2 - 2 |ell0| M^2 xi + ell0^2 - K2 beta^2; vanishes at both transition points.
double transition_quadratic(const DerivedQuantities& d, double xi);

// ---------------------------------------------------------------------------
// Root search
// ---------------------------------------------------------------------------

enum class RootKind { Interior, Boundary };
enum class RootBranch { Plus, Minus, None };

const char* to_string(RootKind kind);
const char* to_string(RootBranch branch);

// A simultaneous root of the dispersion and reduced-determinant equations.
// omega is 1 in the frame where ell0 >= 0; omega_physical = sign(ell0) maps it
// back. s, lambda and the residuals are identical in both frames.
struct RootRecord {
    cplx s;
    cplx lambda;
    double omega = 1.0;
    double omega_physical = 1.0;
    cplx residual_dispersion;
    cplx residual_determinant;
    double normalized_residual = 0.0;
    RootKind kind = RootKind::Boundary;
    RootBranch branch = RootBranch::None;
};

struct BoundaryRootOptions {
    double accept_tol = 1e-8;
    double newton_tol = 1e-12;
    int max_newton = 50;
};

// Weak-stability roots on Re s = 0 built from lambda^2 = (K2 - K) / beta^2:
// the delta+ root on xi >= xi*+ and, when it exists, the delta- root on
// xi <= xi*-. Empty in the uniformly stable regime. Throws BranchMismatch if a
// recovered root lands on the wrong side of its transition point or is not
// the limit of the Hersh root.
std::vector<RootRecord> find_boundary_roots(const DerivedQuantities& d, const BoundaryRootOptions& options = {});

// Independent detector on Re s = 0: samples the reduced determinant with the
// limiting Hersh root along xi and brackets its sign changes.
struct BoundaryLineHit {
    double xi;
    cplx lambda;
    RootBranch branch;
    double normalized_residual;
};

std::vector<BoundaryLineHit> scan_boundary_line(const DerivedQuantities& d, int samples = 4000);

// Residual used by the interior scan: f(d, s, omega, lambda) with its scale.
struct ScanResidual {
    std::function<cplx(const DerivedQuantities&, cplx, double, cplx)> value;
    std::function<double(const DerivedQuantities&, cplx, double, cplx)> scale;
};

// Default: the reduced determinant equation.
ScanResidual default_scan_residual();

struct ScanOptions {
    double eta_min = 1e-4;
    double eta_max = 10.0;
    double xi_max = 10.0;
    int n_eta = 400;   // geometric spacing in eta
    int n_xi = 800;    // uniform spacing in xi
    int seeds = 24;    // lowest local minima refined by Newton
    double accept_tol = 1e-8;
    double newton_tol = 1e-12;
    int max_newton = 60;
    bool winding = false;  // also count zeros with the argument principle
    int winding_samples = 400;
};

struct InteriorScan {
    std::vector<RootRecord> roots;  // sorted by (eta, xi)
    double min_grid_residual = 0.0;
    std::optional<int> winding_count;
};

// Searches Re s in [eta_min, eta_max], Im s in [-xi_max, xi_max] at omega = 1
// (reduced frame) with lambda = lambda+(s). Expected to come back empty for
// every admissible parameter set.
InteriorScan scan_interior_roots(const DerivedQuantities& d, const ScanOptions& options = {},
                                 const ScanResidual& residual = default_scan_residual());

struct Rect {
    double eta_lo, eta_hi, xi_lo, xi_hi;
};

// Number of zeros of an analytic f inside the rectangle, from the total change
// of arg f along its boundary. Segments are bisected until each argument step
// is below pi/4. Throws Error if f vanishes on the contour.
int winding_number(const std::function<cplx(cplx)>& f, const Rect& rect, int samples_per_side = 400);

}  // namespace loplab
