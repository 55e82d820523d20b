#include "loplab/classify.hpp"

#include "loplab/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <string>

namespace loplab {

namespace {

template <typename T>
ThresholdTerms threshold_terms(const ShockParameters& p) {
    using std::abs;
    using std::sqrt;
    const T m = p.mach;
    const T r = p.density_ratio;
    const T f11 = p.f11(), f12 = p.f12(), f21 = p.f21(), f22 = p.f22();

    const T m1_sq = f11 * f11 + f12 * f12;
    const T m2_sq = f21 * f21 + f22 * f22;
    const T ms2 = 1 + m1_sq;
    const T beta_sq = ms2 - m * m;
    const T det_f = f11 * f22 - f12 * f21;
    const T frob = m1_sq + m2_sq;
    const T l0 = f11 * f21 + f12 * f22;
    const T abs_l0 = abs(l0);
    const T sigma_sq = 1 + frob + det_f * det_f;
    const T sigma = sqrt(sigma_sq);
    const T beta = sqrt(beta_sq);

    const T k = r * (m * m - m1_sq) + m2_sq;
    const T k2 = 1 + m2_sq;
    const T lower = m * sigma - abs_l0 * beta;
    const T k1 = lower * lower / (ms2 * ms2);

    ThresholdTerms out;
    const T margin = k1 + k2 - k;
    out.margin = static_cast<double>(margin);
    out.threshold = k < k1 + k2;

    // Quartic inequality in the entries of F, term by term.
    const T lhs = (1 + m1_sq + m * m) * sigma_sq - k * ms2 * ms2 + l0 * l0 * (2 * ms2 - m * m);
    const T rhs = 2 * m * abs_l0 * sqrt(beta_sq * sigma_sq);
    out.quartic = lhs > rhs;

    const T mt_sq = m * m - m1_sq;
    const T d_cal = (lower - ms2 * sqrt(mt_sq)) * (lower + ms2 * sqrt(mt_sq));
    out.mtilde = mt_sq * (r - 1) < 1 + d_cal / (ms2 * ms2);
    return out;
}

}  // namespace

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::UniformlyStable: return "UniformlyStable";
        case Verdict::WeaklyStable: return "WeaklyStable";
        case Verdict::ViolentlyUnstable: return "ViolentlyUnstable";
        case Verdict::Inadmissible: break;
    }
    return "Inadmissible";
}

ThresholdTerms threshold_terms_double(const ShockParameters& params) { return threshold_terms<double>(params); }

ThresholdTerms threshold_terms_extended(const ShockParameters& params) {
    return threshold_terms<boost::multiprecision::cpp_bin_float_50>(params);
}

StabilityVerdict classify_closed_form(const DerivedQuantities& d) {
    StabilityVerdict v;
    v.margin = d.margin();
    if (!(d.mach() > d.m1)) {
        v.verdict = Verdict::Inadmissible;
        return v;
    }

    ThresholdTerms t = threshold_terms_double(d.params);
    if (std::abs(t.margin) < kExtendedBand * (d.k1 + d.k2)) {
        t = threshold_terms_extended(d.params);
        v.extended_precision_used = true;
    }
    v.margin = t.margin;
    v.condition_threshold = t.threshold;
    v.condition_quartic = t.quartic;
    v.condition_mtilde = t.mtilde;
    v.verdict = t.threshold ? Verdict::UniformlyStable : Verdict::WeaklyStable;
    return v;
}

StabilityVerdict classify_full(const ShockParameters& params, const ClassifyOptions& options) {
    StabilityVerdict v;
    const AdmissibilityReport adm = check_lax(params, options.admissibility);
    if (!adm.admissible()) {
        v.admissibility = adm;
        return v;
    }

    const DerivedQuantities d = derive(params);
    v = classify_closed_form(d);
    v.admissibility = adm;
    v.numerics_run = true;

    v.roots = find_boundary_roots(d, options.boundary);
    v.delta_branch_roots = static_cast<int>(v.roots.size());
    if (options.interior_scan) {
        const InteriorScan scan = scan_interior_roots(d, options.scan);
        v.interior_roots = static_cast<int>(scan.roots.size());
        v.roots.insert(v.roots.end(), scan.roots.begin(), scan.roots.end());
    }

    const bool weak = v.verdict == Verdict::WeaklyStable;
    const bool near_threshold = std::abs(v.margin) < kExtendedBand * (d.k1 + d.k2);
    const bool boundary_ok = near_threshold || (weak == (v.delta_branch_roots > 0));
    v.agreement = boundary_ok && v.interior_roots == 0 && v.conditions_consistent();
    if (v.interior_roots > 0) {
        v.verdict = Verdict::ViolentlyUnstable;
    }

    if (!v.agreement && options.throw_on_disagreement) {
        throw DisagreementError("closed form says " + std::string(weak ? "WeaklyStable" : "UniformlyStable") +
                                " (margin " + std::to_string(v.margin) + ") but the root search found " +
                                std::to_string(v.delta_branch_roots) + " boundary and " +
                                std::to_string(v.interior_roots) + " interior roots");
    }
    return v;
}

}  // namespace loplab
