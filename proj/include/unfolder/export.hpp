#pragma once

/** @file export.hpp

    @brief CSV and JSON serialization of branches, reports and catalogues.

    Branch CSV header: branch_id,lambda,x,g_x,stability,physical,special
*/

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catalogue.hpp"
#include "continuation.hpp"
#include "errors.hpp"
#include "recognition.hpp"

namespace unfolder {

using json = nlohmann::ordered_json;

inline constexpr const char* branch_csv_header = "branch_id,lambda,x,g_x,stability,physical,special";

/// Shortest round-trip representation, locale independent.
inline std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_branches_csv(std::ostream& os, const std::vector<Branch>& diagram)
{
    os << branch_csv_header << '\n';
    for (std::size_t bi = 0; bi < diagram.size(); ++bi) {
        const Branch& b = diagram[bi];
        std::vector<std::string> special(b.points.size());
        for (const auto& sp : b.special_points)
            if (sp.index < special.size()) special[sp.index] = to_string(sp.kind);
        for (std::size_t i = 0; i < b.points.size(); ++i) {
            const BranchPoint& p = b.points[i];
            os << bi << ',' << format_real(p.lambda) << ',' << format_real(p.x) << ',' << format_real(p.g_x) << ','
               << to_string(p.stability) << ',' << (p.physical ? (*p.physical ? "true" : "false") : "") << ','
               << special[i] << '\n';
        }
    }
}

struct CsvRow {
    std::size_t branch_id = 0;
    double lambda = 0.0;
    double x = 0.0;
    double g_x = 0.0;
    std::string stability;
    std::string physical;
    std::string special;
};

inline std::vector<CsvRow> read_branches_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != branch_csv_header) throw ConfigError("not a branch CSV file");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 7) throw ConfigError("malformed CSV row: " + line);
        CsvRow r;
        r.branch_id = std::stoul(f[0]);
        r.lambda = std::stod(f[1]);
        r.x = std::stod(f[2]);
        r.g_x = std::stod(f[3]);
        r.stability = f[4];
        r.physical = f[5];
        r.special = f[6];
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json to_json(const Derivatives& d)
{
    return json{{"g", d.g},
                {"g_x", d.g_x},
                {"g_lambda", d.g_lambda},
                {"g_xx", d.g_xx},
                {"g_lambda_x", d.g_lambda_x},
                {"g_lambda_lambda", d.g_lambda_lambda},
                {"g_xxx", d.g_xxx}};
}

inline json to_json(const SingularityReport& r)
{
    json residuals = json::object();
    for (const auto& [name, v] : r.residuals) residuals[name] = v;
    json j;
    j["location"] = {{"x", r.x0}, {"lambda", r.lambda0}};
    j["extra_param"] = r.extra_param ? json{{"name", r.extra_param->first}, {"value", r.extra_param->second}} : json(nullptr);
    j["class"] = to_string(r.cls);
    j["epsilon"] = r.epsilon;
    j["delta"] = r.delta ? json(*r.delta) : json(nullptr);
    j["codimension"] = r.codimension;
    j["derivatives"] = to_json(r.derivatives);
    j["residuals"] = std::move(residuals);
    return j;
}

inline json to_json(const QualSignature& s)
{
    json j{{"n_branches", s.n_branches},
           {"n_folds", s.n_folds},
           {"n_crossings", s.n_crossings},
           {"hysteresis", s.hysteresis},
           {"stable_components", s.stable_components},
           {"low_high_connected", s.low_high_connected}};
    j["hysteresis_interval"] =
        s.hysteresis_interval ? json::array({s.hysteresis_interval->first, s.hysteresis_interval->second}) : json(nullptr);
    return j;
}

inline json to_json(const Setting& s)
{
    json j = json::object();
    for (const auto& [k, v] : s) j[k] = v;
    return j;
}

/// One object per entry: setting, signature, diagram_csv_path (+ error on failure).
inline json catalogue_to_json(const std::vector<CatalogueEntry>& entries, const std::vector<std::string>& csv_paths)
{
    json arr = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        json j;
        j["setting"] = to_json(e.setting);
        j["signature"] = e.signature ? to_json(*e.signature) : json(nullptr);
        j["diagram_csv_path"] = i < csv_paths.size() ? json(csv_paths[i]) : json(nullptr);
        if (e.physically_relevant) j["physically_relevant"] = *e.physically_relevant;
        if (!e.ok()) j["error"] = e.error;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace unfolder
