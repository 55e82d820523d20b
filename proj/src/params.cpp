#include "loplab/params.hpp"

#include "loplab/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace loplab {

void validate(const ShockParameters& params) {
    if (!std::isfinite(params.mach) || params.mach <= 0.0) {
        throw InvalidParameters("Mach number must be finite and positive, got " + std::to_string(params.mach));
    }
    if (!std::isfinite(params.density_ratio) || params.density_ratio <= 0.0) {
        throw InvalidParameters("density ratio must be finite and positive, got " +
                                std::to_string(params.density_ratio));
    }
    if (!params.deformation.allFinite()) {
        throw InvalidParameters("deformation gradient has non-finite entries");
    }
    if (params.mach_upstream && !std::isfinite(*params.mach_upstream)) {
        throw InvalidParameters("upstream Mach number must be finite");
    }
}

double DerivedQuantities::abs_ell0() const { return std::abs(ell0); }

DerivedQuantities derive(const ShockParameters& params) {
    validate(params);

    DerivedQuantities d;
    d.params = params;

    const double m = params.mach;
    const double r = params.density_ratio;
    const double f11 = params.f11(), f12 = params.f12(), f21 = params.f21(), f22 = params.f22();

    const double m1_sq = f11 * f11 + f12 * f12;
    const double m2_sq = f21 * f21 + f22 * f22;
    const double m_star_sq = 1.0 + m1_sq;
    const double beta_sq = m_star_sq - m * m;
    if (!(beta_sq > 0.0)) {
        throw NonHyperbolicPoint("M >= M*: beta^2 = " + std::to_string(beta_sq) + " is not positive");
    }

    d.m1 = std::sqrt(m1_sq);
    d.m2 = std::sqrt(m2_sq);
    d.m_star = std::sqrt(m_star_sq);
    d.beta = std::sqrt(beta_sq);
    d.ell0 = f11 * f21 + f12 * f22;
    d.det_f = f11 * f22 - f12 * f21;
    d.sigma = std::sqrt(m_star_sq + m2_sq + d.det_f * d.det_f);
    d.sigma_alt = std::sqrt(m_star_sq * (1.0 + m2_sq) - d.ell0 * d.ell0);
    d.d0 = (m_star_sq + m * m) / (2.0 * m * m);
    d.a0 = -beta_sq * r / (2.0 * m * m);

    const double mt_sq = m * m - m1_sq;
    d.m_tilde = mt_sq >= 0.0 ? std::sqrt(mt_sq) : std::numeric_limits<double>::quiet_NaN();

    const double abs_l0 = std::abs(d.ell0);
    const double minus = m * d.sigma - abs_l0 * d.beta;
    const double plus = m * d.sigma + abs_l0 * d.beta;
    const double m_star4 = m_star_sq * m_star_sq;

    // (a - M*^2 Mtilde)(a + M*^2 Mtilde) expanded so it stays finite for M < M1.
    d.d_cal = minus * minus - m_star4 * mt_sq;
    d.k = r * mt_sq + m2_sq;
    d.k1 = minus * minus / m_star4;
    d.k2 = 1.0 + m2_sq;
    d.k3 = plus * plus / m_star4;
    return d;
}

bool AdmissibilityReport::admissible() const {
    return downstream == CheckStatus::Pass && det_constraint != CheckStatus::Fail;
}

AdmissibilityReport check_lax(const ShockParameters& params, const AdmissibilityOptions& options) {
    validate(params);

    AdmissibilityReport rep;
    const double m = params.mach;
    const double m1_sq = params.f11() * params.f11() + params.f12() * params.f12();
    const double m1 = std::sqrt(m1_sq);
    const double m_star = std::sqrt(1.0 + m1_sq);

    rep.margin_lower = m - m1;
    rep.margin_upper = m_star - m;
    rep.downstream = (m1 < m && m < m_star) ? CheckStatus::Pass : CheckStatus::Fail;

    const double mt_sq = m * m - m1_sq;
    rep.upstream_bound = mt_sq > 0.0 ? m / std::sqrt(mt_sq) : std::numeric_limits<double>::infinity();
    if (params.mach_upstream) {
        rep.upstream_margin = *params.mach_upstream - rep.upstream_bound;
        rep.upstream = *params.mach_upstream > rep.upstream_bound ? CheckStatus::Pass : CheckStatus::Fail;
    } else {
        rep.upstream_margin = std::numeric_limits<double>::quiet_NaN();
    }

    if (options.strict_det) {
        const double det = params.f11() * params.f22() - params.f12() * params.f21();
        rep.det_constraint = det > 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
    }
    return rep;
}

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotChecked: return "not checked";
    }
    return "unknown";
}

}  // namespace loplab
