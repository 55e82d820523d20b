#pragma once

#include "loplab/lopatinski.hpp"
#include "loplab/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace loplab {

struct VerifyOptions {
    int samples = 200;
    std::uint64_t seed = 20240611;
    double det_tol = 1e-10;       // relative, generic vs closed-form determinant
    double kernel_tol = 1e-12;    // relative boundary-kernel residual
    double hersh_tol = 1e-9;      // closed-form vs matrix Hersh root, relative to max(1, |lambda|)
    double root_det_tol = 1e-8;   // determinant at a boundary root over its Hadamard bound
    ScanOptions scan;
};

struct CheckResult {
    std::string name;
    double worst = 0.0;  // largest measured deviation
    double tolerance = 0.0;
    int evaluated = 0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::vector<RootRecord> boundary_roots;
    int interior_roots = 0;

    bool pass() const;
};

// Determinant equivalence, kernel residual, Hersh-root uniqueness and
// agreement, reduction chain at the boundary roots, and the interior scan,
// all at one parameter point.
VerifyReport run_verification(const DerivedQuantities& d, const VerifyOptions& options = {});

}  // namespace loplab
