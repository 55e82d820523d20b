#pragma once

#include "loplab/lopatinski.hpp"
#include "loplab/params.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace loplab {

// Values of the small TOML subset read here: numbers, booleans, strings and
// flat arrays of numbers. Tables (headers, dotted keys, inline tables) are
// flattened into dotted key paths such as "sweep.R.start".
using ConfigValue = std::variant<double, bool, std::string, std::vector<double>>;

class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<string>");
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<double> number(const std::string& key) const;
    std::optional<bool> boolean(const std::string& key) const;
    std::optional<std::string> string(const std::string& key) const;
    std::optional<std::vector<double>> numbers(const std::string& key) const;

    // Keys directly below a table prefix, e.g. children("sweep") -> {"R", "M"}.
    std::vector<std::string> children(const std::string& prefix) const;

    const std::map<std::string, ConfigValue>& values() const { return values_; }

private:
    std::map<std::string, ConfigValue> values_;
    std::string origin_;
};

// Shock parameters from M, R, M_minus and either an [F] table (F11, F12, F21,
// F22) or F = [F11, F12, F21, F22]. Missing entries keep the fallback values.
ShockParameters params_from_config(const Config& cfg, const ShockParameters& fallback = {});

// Overrides from the [scan] table.
ScanOptions scan_options_from_config(const Config& cfg, ScanOptions base = {});

// Overrides from the [boundary] table.
BoundaryRootOptions boundary_options_from_config(const Config& cfg, BoundaryRootOptions base = {});

}  // namespace loplab
