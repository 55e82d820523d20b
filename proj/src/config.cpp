#include "loplab/config.hpp"

#include "loplab/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace loplab {

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::string& origin) : text_(text), origin_(origin) {}

    std::map<std::string, ConfigValue> run() {
        while (!at_end()) {
            skip_space_and_comments(true);
            if (at_end()) break;
            if (peek() == '[') {
                table_header();
            } else {
                key_value(table_);
            }
            end_of_line();
        }
        return std::move(values_);
    }

private:
    const std::string& text_;
    std::string origin_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::string table_;
    std::map<std::string, ConfigValue> values_;
    std::set<std::string> tables_seen_;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(origin_ + ":" + std::to_string(line_) + ": " + what);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char get() {
        const char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    void skip_space_and_comments(bool newlines) {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
                get();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') get();
            } else {
                break;
            }
        }
    }

    void end_of_line() {
        skip_space_and_comments(false);
        if (at_end()) return;
        if (peek() != '\n') fail(std::string("unexpected character '") + peek() + "' after value");
        get();
    }

    std::string bare_or_quoted_key() {
        skip_space_and_comments(false);
        if (peek() == '"') return quoted_string();
        std::string key;
        while (!at_end()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
                key.push_back(get());
            } else {
                break;
            }
        }
        if (key.empty()) fail("expected a key");
        return key;
    }

    std::string dotted_key() {
        std::string key = bare_or_quoted_key();
        skip_space_and_comments(false);
        while (peek() == '.') {
            get();
            key += "." + bare_or_quoted_key();
            skip_space_and_comments(false);
        }
        return key;
    }

    void table_header() {
        get();  // '['
        if (peek() == '[') fail("arrays of tables are not supported");
        const std::string name = dotted_key();
        skip_space_and_comments(false);
        if (peek() != ']') fail("expected ']' to close table header");
        get();
        if (!tables_seen_.insert(name).second) fail("table [" + name + "] defined twice");
        table_ = name;
    }

    void store(const std::string& full, ConfigValue value) {
        if (values_.count(full)) fail("key '" + full + "' defined twice");
        values_.emplace(full, std::move(value));
    }

    void key_value(const std::string& prefix) {
        const std::string key = dotted_key();
        const std::string full = prefix.empty() ? key : prefix + "." + key;
        skip_space_and_comments(false);
        if (peek() != '=') fail("expected '=' after key '" + key + "'");
        get();
        skip_space_and_comments(false);
        if (peek() == '{') {
            inline_table(full);
        } else {
            store(full, value());
        }
    }

    void inline_table(const std::string& prefix) {
        get();  // '{'
        skip_space_and_comments(false);
        if (peek() == '}') {
            get();
            return;
        }
        while (true) {
            key_value(prefix);
            skip_space_and_comments(false);
            const char c = at_end() ? '\0' : get();
            if (c == '}') return;
            if (c != ',') fail("expected ',' or '}' in inline table");
        }
    }

    ConfigValue value() {
        const char c = peek();
        if (c == '"') return quoted_string();
        if (c == '[') return number_array();
        if (text_.compare(pos_, 4, "true") == 0) {
            pos_ += 4;
            return true;
        }
        if (text_.compare(pos_, 5, "false") == 0) {
            pos_ += 5;
            return false;
        }
        return number();
    }

    std::string quoted_string() {
        get();  // opening quote
        std::string out;
        while (true) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            const char c = get();
            if (c == '"') break;
            if (c != '\\') {
                out.push_back(c);
                continue;
            }
            if (at_end()) fail("unterminated escape");
            const char e = get();
            switch (e) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: fail(std::string("unsupported escape \\") + e);
            }
        }
        return out;
    }

    double number() {
        std::string token;
        while (!at_end()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' || c == '_') {
                token.push_back(get());
            } else {
                break;
            }
        }
        if (token.empty()) fail("expected a value");
        std::string cleaned;
        for (char c : token) {
            if (c != '_') cleaned.push_back(c);
        }
        std::string_view sv(cleaned);
        bool negative = false;
        if (!sv.empty() && (sv.front() == '+' || sv.front() == '-')) {
            negative = sv.front() == '-';
            sv.remove_prefix(1);
        }
        if (sv == "inf") return negative ? -std::numeric_limits<double>::infinity()
                                         : std::numeric_limits<double>::infinity();
        if (sv == "nan") return std::numeric_limits<double>::quiet_NaN();
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc() || ptr != sv.data() + sv.size()) fail("malformed number '" + token + "'");
        return negative ? -v : v;
    }

    std::vector<double> number_array() {
        get();  // '['
        std::vector<double> out;
        while (true) {
            skip_space_and_comments(true);
            if (peek() == ']') {
                get();
                return out;
            }
            if (peek() == '[') fail("nested arrays are not supported");
            out.push_back(number());
            skip_space_and_comments(true);
            const char c = at_end() ? '\0' : get();
            if (c == ']') return out;
            if (c != ',') fail("expected ',' or ']' in array");
        }
    }
};

template <typename T>
std::optional<T> lookup(const std::map<std::string, ConfigValue>& values, const std::string& key,
                        const std::string& origin, const char* type_name) {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    if (const T* v = std::get_if<T>(&it->second)) return *v;
    throw ConfigError(origin + ": key '" + key + "' is not " + type_name);
}

int as_count(double v, const std::string& key) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
        throw ConfigError("key '" + key + "' must be a positive integer");
    }
    return static_cast<int>(v);
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    cfg.values_ = Parser(text, origin).run();
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

std::optional<double> Config::number(const std::string& key) const {
    return lookup<double>(values_, key, origin_, "a number");
}

std::optional<bool> Config::boolean(const std::string& key) const {
    return lookup<bool>(values_, key, origin_, "a boolean");
}

std::optional<std::string> Config::string(const std::string& key) const {
    return lookup<std::string>(values_, key, origin_, "a string");
}

std::optional<std::vector<double>> Config::numbers(const std::string& key) const {
    return lookup<std::vector<double>>(values_, key, origin_, "an array of numbers");
}

std::vector<std::string> Config::children(const std::string& prefix) const {
    std::vector<std::string> out;
    const std::string head = prefix + ".";
    for (const auto& [key, value] : values_) {
        if (key.compare(0, head.size(), head) != 0) continue;
        const std::string rest = key.substr(head.size());
        const std::string child = rest.substr(0, rest.find('.'));
        if (out.empty() || out.back() != child) out.push_back(child);
    }
    return out;
}

ShockParameters params_from_config(const Config& cfg, const ShockParameters& fallback) {
    ShockParameters p = fallback;
    if (auto v = cfg.number("M")) p.mach = *v;
    if (auto v = cfg.number("R")) p.density_ratio = *v;
    if (auto v = cfg.number("M_minus")) p.mach_upstream = *v;
    if (auto flat = cfg.numbers("F")) {
        if (flat->size() != 4) throw ConfigError("F must list exactly four entries F11, F12, F21, F22");
        p.deformation << (*flat)[0], (*flat)[1], (*flat)[2], (*flat)[3];
    }
    const char* names[4] = {"F.F11", "F.F12", "F.F21", "F.F22"};
    for (int k = 0; k < 4; ++k) {
        if (auto v = cfg.number(names[k])) p.deformation(k / 2, k % 2) = *v;
    }
    return p;
}

ScanOptions scan_options_from_config(const Config& cfg, ScanOptions base) {
    if (auto v = cfg.number("scan.eta_min")) base.eta_min = *v;
    if (auto v = cfg.number("scan.eta_max")) base.eta_max = *v;
    if (auto v = cfg.number("scan.xi_max")) base.xi_max = *v;
    if (auto v = cfg.number("scan.n_eta")) base.n_eta = as_count(*v, "scan.n_eta");
    if (auto v = cfg.number("scan.n_xi")) base.n_xi = as_count(*v, "scan.n_xi");
    if (auto v = cfg.number("scan.seeds")) base.seeds = as_count(*v, "scan.seeds");
    if (auto v = cfg.number("scan.accept_tol")) base.accept_tol = *v;
    if (auto v = cfg.number("scan.newton_tol")) base.newton_tol = *v;
    if (auto v = cfg.boolean("scan.winding")) base.winding = *v;
    return base;
}

BoundaryRootOptions boundary_options_from_config(const Config& cfg, BoundaryRootOptions base) {
    if (auto v = cfg.number("boundary.accept_tol")) base.accept_tol = *v;
    if (auto v = cfg.number("boundary.newton_tol")) base.newton_tol = *v;
    return base;
}

}  // namespace loplab
