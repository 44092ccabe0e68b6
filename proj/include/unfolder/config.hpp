#pragma once

/** @file config.hpp

    @brief Plain-text key=value model configuration.
*/

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "germ.hpp"
#include "models.hpp"
#include "window.hpp"

namespace unfolder {

/// Parameter overrides keyed by name, e.g. {"alpha": 0.01, "d_a": 10}.
using Setting = std::map<std::string, double>;

inline constexpr std::array<std::string_view, 6> sh_keys{"a", "b", "p", "d_a", "c", "alpha"};
inline constexpr std::array<std::string_view, 5> ldgc_keys{"d_tilde", "d_tilde_m", "mu", "gamma", "alpha_prime"};

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

/// Decimal or rational ("-3/2") real number.
inline double parse_real(std::string_view text)
{
    const std::string s = trim(text);
    auto parse_plain = [&s](const std::string& t) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + s + "'");
        }
        if (used != t.size() || !std::isfinite(v)) throw ConfigError("not a number: '" + s + "'");
        return v;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_plain(s);
    const double num = parse_plain(trim(s.substr(0, slash)));
    const double den = parse_plain(trim(s.substr(slash + 1)));
    if (den == 0.0) throw ConfigError("zero denominator in '" + s + "'");
    return num / den;
}

/// "key=value" -> pair; whitespace around either side is ignored.
inline std::pair<std::string, double> parse_assignment(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(text) + "'");
    std::string key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key in '" + std::string(text) + "'");
    return {std::move(key), parse_real(text.substr(eq + 1))};
}

/// One assignment per line; '#' starts a comment.
inline std::vector<std::pair<std::string, double>> parse_config(std::istream& in)
{
    std::vector<std::pair<std::string, double>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        try {
            out.push_back(parse_assignment(line));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.detail());
        }
    }
    return out;
}

inline std::vector<std::pair<std::string, double>> parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

inline void set_param(ShParams& s, const std::string& key, double v)
{
    if (key == "a") s.a = v;
    else if (key == "b") s.b = v;
    else if (key == "p") s.p = v;
    else if (key == "d_a") s.d_a = v;
    else if (key == "c") s.c = v;
    else if (key == "alpha") s.alpha = v;
    else throw ConfigError("'" + key + "' is not a parameter of model sh");
}

inline void set_param(LdgcParams& s, const std::string& key, double v)
{
    if (key == "d_tilde") s.d_tilde = v;
    else if (key == "d_tilde_m") s.d_tilde_m = v;
    else if (key == "mu") s.mu = v;
    else if (key == "gamma") s.gamma = v;
    else if (key == "alpha_prime") s.alpha_prime = v;
    else throw ConfigError("'" + key + "' is not a parameter of the ldgc models");
}

inline Setting to_setting(const ShParams& s)
{
    return {{"a", s.a}, {"b", s.b}, {"p", s.p}, {"d_a", s.d_a}, {"c", s.c}, {"alpha", s.alpha}};
}

inline Setting to_setting(const LdgcParams& s)
{
    return {{"d_tilde", s.d_tilde}, {"d_tilde_m", s.d_tilde_m}, {"mu", s.mu}, {"gamma", s.gamma},
            {"alpha_prime", s.alpha_prime}};
}

inline bool is_model_name(const std::string& m) { return m == "sh" || m == "ldgc_b" || m == "ldgc_c"; }

/// A named model with its parameter record.
struct ModelConfig {
    std::string model = "sh";
    ShParams sh;
    LdgcParams ldgc;

    explicit ModelConfig(std::string name = "sh") : model(std::move(name))
    {
        if (!is_model_name(model)) throw ConfigError("unknown model '" + model + "' (sh, ldgc_b, ldgc_c)");
    }

    void set(const std::string& key, double v)
    {
        if (model == "sh") set_param(sh, key, v);
        else set_param(ldgc, key, v);
    }

    template <typename Range>
    void apply(const Range& assignments)
    {
        for (const auto& [k, v] : assignments) set(k, v);
    }

    Setting setting() const { return model == "sh" ? to_setting(sh) : to_setting(ldgc); }

    Germ germ() const
    {
        try {
            if (model == "sh") return sh_germ(sh);
            if (model == "ldgc_b") return ldgc_germ_B(ldgc);
            return ldgc_germ_C(ldgc);
        } catch (const InvalidParameter& e) {
            throw ConfigError(e.detail());
        }
    }
};

/// Comma-separated list of exactly n reals.
inline std::vector<double> parse_real_list(std::string_view text, std::size_t n)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != n)
        throw ConfigError("expected " + std::to_string(n) + " comma-separated numbers, got '" + std::string(text) + "'");
    return out;
}

inline Window parse_window(std::string_view text)
{
    const auto v = parse_real_list(text, 4);
    Window w{v[0], v[1], v[2], v[3]};
    try {
        w.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.detail());
    }
    return w;
}

/// Contents of a run file: optional model, family and window lines plus
/// numeric parameter overrides.
struct RunFile {
    std::optional<std::string> model;
    std::optional<std::string> family;
    std::optional<Window> window;
    std::vector<std::pair<std::string, double>> overrides;
};

inline RunFile parse_run_file(std::istream& in)
{
    RunFile rf;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        try {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + trim(line) + "'");
            const std::string key = trim(std::string_view(line).substr(0, eq));
            const std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key == "model") {
                if (!is_model_name(value)) throw ConfigError("unknown model '" + value + "' (sh, ldgc_b, ldgc_c)");
                rf.model = value;
            } else if (key == "family") {
                rf.family = value;
            } else if (key == "window") {
                rf.window = parse_window(value);
            } else {
                rf.overrides.push_back(parse_assignment(line));
            }
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.detail());
        }
    }
    return rf;
}

inline RunFile parse_run_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_run_file(in);
}

}  // namespace unfolder
