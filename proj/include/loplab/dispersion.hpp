#pragma once

#include "loplab/params.hpp"
#include "loplab/system.hpp"

#include <array>
#include <optional>
#include <vector>

namespace loplab {

// A Laplace-Fourier point (s, omega) with a chosen normal-mode exponent.
struct FrequencyPoint {
    cplx s;
    double omega = 0.0;
    cplx lambda;
    cplx big_omega;  // s + lambda
    cplx sigma1;     // F11 lambda + i omega F21
    cplx sigma2;     // F12 lambda + i omega F22
};

FrequencyPoint make_frequency_point(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// M^2 Omega^2 - sigma1^2 - sigma2^2 - lambda^2 + omega^2, the factor of the
// dispersion relation that carries the incoming mode.
cplx dispersion_residual(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// Same quantity in the form M^2 Omega^2 - M*^2 lambda^2 + K2 omega^2 - 2 i ell0 lambda omega.
cplx dispersion_residual_expanded(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// Sum of magnitudes of the terms above; residuals are compared against it.
double dispersion_scale(const DerivedQuantities& d, cplx s, double omega, cplx lambda);

// Coefficients (ascending powers of lambda) of
//   Omega^3 (M^2 Omega^2 - sigma1^2 - sigma2^2)(M^2 Omega^2 - sigma1^2 - sigma2^2 - lambda^2 + omega^2).
using Polynomial7 = std::array<cplx, 8>;
Polynomial7 dispersion_polynomial(const DerivedQuantities& d, cplx s, double omega);

cplx evaluate(const Polynomial7& p, cplx x);

struct RootOptions {
    // Newton polishing stops once |p(x)| <= polish_tol * sum_k |c_k| |x|^k.
    double polish_tol = 1e-12;
    int max_newton = 30;
};

// All seven roots of the dispersion polynomial, repeated by multiplicity.
// omega == 0 uses the factored quadratics directly. Throws
// DegeneratePolynomial when the degree drops (M == M1).
std::vector<cplx> full_dispersion_roots(const DerivedQuantities& d, cplx s, double omega,
                                        const RootOptions& options = {});

struct LambdaPair {
    cplx plus;   // Hersh root: Re > 0 for Re s > 0, limit from the right on Re s = 0
    cplx minus;  // the other root of the same quadratic factor
    bool glancing = false;  // the two roots merge (vanishing discriminant)
    cplx extrapolated;      // Richardson estimate of the Re s -> +0 limit (Re s = 0 only)
};

// Both roots of the incoming-mode factor, computed from the closed-form root
// formula after the ell0 -> |ell0|, omega -> sign(ell0) omega reduction.
// Requires Re s >= 0 and (s, omega) != 0. Throws BranchAmbiguity if, for
// Re s > 0, neither root has a resolvable positive real part.
LambdaPair lambda_pair(const DerivedQuantities& d, cplx s, double omega);

inline cplx lambda_plus(const DerivedQuantities& d, cplx s, double omega) { return lambda_pair(d, s, omega).plus; }

struct DeltaPair {
    double plus;
    double minus;
};

// Imaginary parts of the two roots on Re s = 0 (s = i xi) when both are purely
// imaginary; nullopt when the discriminant is negative (xi strictly between the
// transition points for omega = 1).
std::optional<DeltaPair> delta_pm(const DerivedQuantities& d, double xi, double omega);

// The discriminant whose sign decides delta_pm; equals
// M^2 M*^2 xi^2 - 2 |ell0| M^2 xi + ell0^2 - K2 beta^2 after normalization.
double delta_discriminant(const DerivedQuantities& d, double xi, double omega);

}  // namespace loplab
