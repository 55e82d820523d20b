#pragma once

#include "loplab/classify.hpp"
#include "loplab/config.hpp"
#include "loplab/params.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace loplab {

enum class SweepAxis { Mach, Ratio, F11, F12, F21, F22 };

// Name used in config tables and CSV headers: M, R, F11, F12, F21, F22.
const char* axis_name(SweepAxis axis);
std::optional<SweepAxis> axis_from_name(const std::string& name);

// Points start, start + step, ... up to stop (inclusive within 1e-9 step).
// stop < start gives an empty range.
struct AxisRange {
    SweepAxis axis = SweepAxis::Ratio;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::size_t size() const;
    double value(std::size_t i) const { return start + static_cast<double>(i) * step; }
};

struct SweepSpec {
    ShockParameters base;
    std::vector<AxisRange> axes;  // kept in the order M, R, F11, F12, F21, F22
    AdmissibilityOptions admissibility;

    std::size_t size() const;
};

inline constexpr std::size_t kMaxSweepPoints = 10'000'000;

// Base point from the top-level keys and one [sweep.<axis>] table per swept
// axis with start, stop and step.
SweepSpec sweep_from_config(const Config& cfg);

struct SweepRow {
    ShockParameters params;
    std::optional<DerivedQuantities> derived;  // absent when the point is not hyperbolic
    Verdict verdict = Verdict::Inadmissible;
    double margin = 0.0;
    int boundary_roots = 0;
};

// Closed-form verdict and boundary-root count at every grid point, in
// lexicographic order of the axes. Throws SweepTooLarge above kMaxSweepPoints.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Shortest decimal that reads back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_jsonl(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace loplab
