#pragma once

#include <Eigen/Core>

#include <optional>

namespace loplab {

using Mat2 = Eigen::Matrix2d;

// Unperturbed state behind a rectilinear shock, in scaled (dimensionless) form.
struct ShockParameters {
    double mach = 0.0;           // downstream Mach number M
    double density_ratio = 0.0;  // R = rho+ / rho-
    Mat2 deformation = Mat2::Zero();  // scaled deformation gradient, F(i,j) = F_{i+1,j+1}
    std::optional<double> mach_upstream;  // M_-, only used by the upstream Lax check

    double f11() const { return deformation(0, 0); }
    double f12() const { return deformation(0, 1); }
    double f21() const { return deformation(1, 0); }
    double f22() const { return deformation(1, 1); }
};

// Throws InvalidParameters unless M > 0, R > 0 and all entries are finite.
void validate(const ShockParameters& params);

// Scalar combinations of the parameters used throughout the analysis.
// Field names follow the notation of the stability literature for this problem.
struct DerivedQuantities {
    ShockParameters params;

    double m1 = 0.0;        // sqrt(F11^2 + F12^2)
    double m2 = 0.0;        // sqrt(F21^2 + F22^2)
    double m_star = 0.0;    // sqrt(1 + M1^2), fast Mach bound
    double beta = 0.0;      // sqrt(M*^2 - M^2)
    double ell0 = 0.0;      // F11 F21 + F12 F22
    double det_f = 0.0;     // det F
    double sigma = 0.0;     // sqrt(M*^2 + M2^2 + det F^2)
    double sigma_alt = 0.0; // sqrt(M*^2 (1 + M2^2) - ell0^2), equal to sigma
    double d0 = 0.0;        // (M*^2 + M^2) / (2 M^2)
    double a0 = 0.0;        // -beta^2 R / (2 M^2)
    double m_tilde = 0.0;   // sqrt(M^2 - M1^2); NaN when M < M1
    double d_cal = 0.0;     // (M sigma - |ell0| beta)^2 - M*^4 Mtilde^2
    double k = 0.0;         // R (M^2 - M1^2) + M2^2
    double k1 = 0.0;        // (M sigma - |ell0| beta)^2 / M*^4
    double k2 = 0.0;        // 1 + M2^2
    double k3 = 0.0;        // (M sigma + |ell0| beta)^2 / M*^4

    double mach() const { return params.mach; }
    double ratio() const { return params.density_ratio; }
    const Mat2& deformation() const { return params.deformation; }
    double abs_ell0() const;
    double m_star_sq() const { return m_star * m_star; }
    double beta_sq() const { return beta * beta; }

    // (K1 + K2) - K; positive means the closed-form stability inequality holds.
    double margin() const { return k1 + k2 - k; }
};

// Throws NonHyperbolicPoint when M >= M* and InvalidParameters on bad input.
DerivedQuantities derive(const ShockParameters& params);

struct AdmissibilityOptions {
    // Flag det F <= 0 (incompatible with rho det F = 1) as inadmissible.
    bool strict_det = false;
};

enum class CheckStatus { Pass, Fail, NotChecked };

struct AdmissibilityReport {
    CheckStatus downstream = CheckStatus::Fail;  // M1 < M < M*
    CheckStatus upstream = CheckStatus::NotChecked;  // M_- > M / sqrt(M^2 - M1^2)
    CheckStatus det_constraint = CheckStatus::NotChecked;

    double margin_lower = 0.0;     // M - M1
    double margin_upper = 0.0;     // M* - M
    double upstream_bound = 0.0;   // M / sqrt(M^2 - M1^2), +inf when M <= M1
    double upstream_margin = 0.0;  // M_- - bound, NaN when not checked

    // Downstream Lax condition plus, if requested, the det F constraint.
    // The upstream check is advisory and does not enter here.
    bool admissible() const;
};

AdmissibilityReport check_lax(const ShockParameters& params, const AdmissibilityOptions& options = {});

const char* to_string(CheckStatus status);

}  // namespace loplab
