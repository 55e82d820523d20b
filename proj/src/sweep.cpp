#include "loplab/sweep.hpp"

#include "loplab/errors.hpp"
#include "loplab/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace loplab {

namespace {

constexpr SweepAxis kAxisOrder[] = {SweepAxis::Mach, SweepAxis::Ratio, SweepAxis::F11,
                                    SweepAxis::F12,  SweepAxis::F21,   SweepAxis::F22};

void set_axis(ShockParameters& p, SweepAxis axis, double v) {
    switch (axis) {
        case SweepAxis::Mach: p.mach = v; break;
        case SweepAxis::Ratio: p.density_ratio = v; break;
        case SweepAxis::F11: p.deformation(0, 0) = v; break;
        case SweepAxis::F12: p.deformation(0, 1) = v; break;
        case SweepAxis::F21: p.deformation(1, 0) = v; break;
        case SweepAxis::F22: p.deformation(1, 1) = v; break;
    }
}

SweepRow evaluate_point(const ShockParameters& p, const AdmissibilityOptions& adm) {
    SweepRow row;
    row.params = p;
    row.margin = std::numeric_limits<double>::quiet_NaN();
    try {
        row.derived = derive(p);
    } catch (const NonHyperbolicPoint&) {
        return row;
    } catch (const InvalidParameters&) {
        return row;
    }
    row.margin = row.derived->margin();
    if (!check_lax(p, adm).admissible()) return row;
    const StabilityVerdict v = classify_closed_form(*row.derived);
    row.verdict = v.verdict;
    row.margin = v.margin;
    row.boundary_roots = static_cast<int>(find_boundary_roots(*row.derived).size());
    return row;
}

double nan_if_absent(const std::optional<DerivedQuantities>& d, double DerivedQuantities::*field) {
    return d ? (*d).*field : std::numeric_limits<double>::quiet_NaN();
}

nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Mach: return "M";
        case SweepAxis::Ratio: return "R";
        case SweepAxis::F11: return "F11";
        case SweepAxis::F12: return "F12";
        case SweepAxis::F21: return "F21";
        case SweepAxis::F22: break;
    }
    return "F22";
}

std::optional<SweepAxis> axis_from_name(const std::string& name) {
    for (SweepAxis a : kAxisOrder) {
        if (name == axis_name(a)) return a;
    }
    return std::nullopt;
}

std::size_t AxisRange::size() const {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw InvalidParameters(std::string("sweep axis ") + axis_name(axis) + " needs a positive step and finite ends");
    }
    if (stop < start) return 0;
    const double n = std::floor((stop - start) / step + 1e-9);
    if (n >= static_cast<double>(kMaxSweepPoints)) return kMaxSweepPoints + 1;
    return static_cast<std::size_t>(n) + 1;
}

std::size_t SweepSpec::size() const {
    std::size_t total = 1;
    for (const AxisRange& a : axes) {
        const std::size_t n = a.size();
        if (n == 0) return 0;
        if (total > kMaxSweepPoints / n + 1) return kMaxSweepPoints + 1;
        total *= n;
    }
    return total;
}

SweepSpec sweep_from_config(const Config& cfg) {
    SweepSpec spec;
    spec.base = params_from_config(cfg);
    if (auto strict = cfg.boolean("strict_det")) spec.admissibility.strict_det = *strict;
    for (const std::string& name : cfg.children("sweep")) {
        const auto axis = axis_from_name(name);
        if (!axis) throw ConfigError("unknown sweep axis '" + name + "' (expected M, R, F11, F12, F21 or F22)");
        AxisRange r;
        r.axis = *axis;
        const std::string head = "sweep." + name + ".";
        const auto start = cfg.number(head + "start");
        const auto stop = cfg.number(head + "stop");
        const auto step = cfg.number(head + "step");
        if (!start || !stop || !step) throw ConfigError("[sweep." + name + "] needs start, stop and step");
        r.start = *start;
        r.stop = *stop;
        r.step = *step;
        spec.axes.push_back(r);
    }
    std::sort(spec.axes.begin(), spec.axes.end(),
              [](const AxisRange& a, const AxisRange& b) { return a.axis < b.axis; });
    return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const std::size_t total = spec.size();
    if (total > kMaxSweepPoints) {
        throw SweepTooLarge("sweep has more than " + std::to_string(kMaxSweepPoints) + " points");
    }
    std::vector<std::size_t> dims;
    for (const AxisRange& a : spec.axes) dims.push_back(a.size());

    std::vector<SweepRow> rows(total);
    parallel_for(total, [&](std::size_t flat) {
        ShockParameters p = spec.base;
        std::size_t rest = flat;
        // Last axis varies fastest.
        for (std::size_t k = dims.size(); k-- > 0;) {
            set_axis(p, spec.axes[k].axis, spec.axes[k].value(rest % dims[k]));
            rest /= dims[k];
        }
        rows[flat] = evaluate_point(p, spec.admissibility);
    });
    return rows;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "M,R,F11,F12,F21,F22,M1,M2,Mstar,beta,ell0,sigma,K,K1,K2,K3,margin,verdict,boundary_roots\n";
    for (const SweepRow& r : rows) {
        const auto& p = r.params;
        const auto& d = r.derived;
        const double cols[] = {p.mach,
                               p.density_ratio,
                               p.f11(),
                               p.f12(),
                               p.f21(),
                               p.f22(),
                               nan_if_absent(d, &DerivedQuantities::m1),
                               nan_if_absent(d, &DerivedQuantities::m2),
                               nan_if_absent(d, &DerivedQuantities::m_star),
                               nan_if_absent(d, &DerivedQuantities::beta),
                               nan_if_absent(d, &DerivedQuantities::ell0),
                               nan_if_absent(d, &DerivedQuantities::sigma),
                               nan_if_absent(d, &DerivedQuantities::k),
                               nan_if_absent(d, &DerivedQuantities::k1),
                               nan_if_absent(d, &DerivedQuantities::k2),
                               nan_if_absent(d, &DerivedQuantities::k3),
                               r.margin};
        for (double c : cols) out << format_number(c) << ',';
        out << to_string(r.verdict) << ',' << r.boundary_roots << '\n';
    }
}

void write_jsonl(std::ostream& out, const std::vector<SweepRow>& rows) {
    for (const SweepRow& r : rows) {
        const auto& p = r.params;
        const auto& d = r.derived;
        nlohmann::ordered_json j;
        j["M"] = json_number(p.mach);
        j["R"] = json_number(p.density_ratio);
        j["F11"] = json_number(p.f11());
        j["F12"] = json_number(p.f12());
        j["F21"] = json_number(p.f21());
        j["F22"] = json_number(p.f22());
        j["M1"] = json_number(nan_if_absent(d, &DerivedQuantities::m1));
        j["M2"] = json_number(nan_if_absent(d, &DerivedQuantities::m2));
        j["Mstar"] = json_number(nan_if_absent(d, &DerivedQuantities::m_star));
        j["beta"] = json_number(nan_if_absent(d, &DerivedQuantities::beta));
        j["ell0"] = json_number(nan_if_absent(d, &DerivedQuantities::ell0));
        j["sigma"] = json_number(nan_if_absent(d, &DerivedQuantities::sigma));
        j["K"] = json_number(nan_if_absent(d, &DerivedQuantities::k));
        j["K1"] = json_number(nan_if_absent(d, &DerivedQuantities::k1));
        j["K2"] = json_number(nan_if_absent(d, &DerivedQuantities::k2));
        j["K3"] = json_number(nan_if_absent(d, &DerivedQuantities::k3));
        j["margin"] = json_number(r.margin);
        j["verdict"] = to_string(r.verdict);
        j["boundary_roots"] = r.boundary_roots;
        out << j.dump() << '\n';
    }
}

}  // namespace loplab
