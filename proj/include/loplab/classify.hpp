#pragma once

#include "loplab/lopatinski.hpp"
#include "loplab/params.hpp"

#include <optional>
#include <vector>

namespace loplab {

enum class Verdict { UniformlyStable, WeaklyStable, ViolentlyUnstable, Inadmissible };

const char* to_string(Verdict verdict);

// The three stability tests evaluated straight from (M, R, F), in any scalar type.
struct ThresholdTerms {
    double margin = 0.0;  // (K1 + K2) - K
    bool quartic = false;
    bool threshold = false;
    bool mtilde = false;
};

struct StabilityVerdict {
    Verdict verdict = Verdict::Inadmissible;
    double margin = 0.0;
    bool condition_quartic = false;    // quartic inequality in F, as written
    bool condition_threshold = false;  // K < K1 + K2
    bool condition_mtilde = false;     // Mtilde^2 (R - 1) < 1 + D / M*^4
    bool extended_precision_used = false;

    // Filled by classify_full only.
    int delta_branch_roots = 0;
    int interior_roots = 0;
    bool agreement = true;
    bool numerics_run = false;
    std::vector<RootRecord> roots;  // boundary roots, then interior roots
    std::optional<AdmissibilityReport> admissibility;

    bool conditions_consistent() const {
        return condition_quartic == condition_threshold && condition_threshold == condition_mtilde;
    }
};

// Near-threshold points, |margin| < extended_band * (K1 + K2), are re-evaluated
// in 50-digit arithmetic before the verdict is taken.
inline constexpr double kExtendedBand = 1e-9;

ThresholdTerms threshold_terms_double(const ShockParameters& params);
ThresholdTerms threshold_terms_extended(const ShockParameters& params);

// Inadmissible when M <= M1; otherwise UniformlyStable iff K < K1 + K2.
StabilityVerdict classify_closed_form(const DerivedQuantities& d);

struct ClassifyOptions {
    AdmissibilityOptions admissibility;
    BoundaryRootOptions boundary;
    ScanOptions scan;
    bool interior_scan = true;
    bool throw_on_disagreement = true;
};

// Closed form plus boundary-root construction and interior scan. Agreement
// means: boundary roots exist iff the closed form says WeaklyStable, and the
// interior scan is empty. Points with |margin| inside the extended band are not
// held to the first clause. Throws DisagreementError when agreement fails and
// throw_on_disagreement is set.
StabilityVerdict classify_full(const ShockParameters& params, const ClassifyOptions& options = {});

}  // namespace loplab
