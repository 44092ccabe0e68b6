#pragma once

/** @file catalogue.hpp

    @brief Qualitative fingerprints of bifurcation diagrams and catalogues of
    the perturbed diagrams of an unfolding.

    Two diagrams over the same window are treated as qualitatively equivalent
    when their signatures agree.
*/

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "config.hpp"
#include "continuation.hpp"
#include "errors.hpp"
#include "germ.hpp"
#include "models.hpp"
#include "recognition.hpp"
#include "search.hpp"
#include "window.hpp"

namespace unfolder {

struct QualSignature {
    int n_branches = 0;  ///< connected components inside the window
    int n_folds = 0;
    int n_crossings = 0;
    bool hysteresis = false;  ///< two consecutive folds on one branch (S-shape)
    int stable_components = 0;
    /// The lowest state just inside the left window edge lies on the same
    /// component as the highest state of the diagram.
    bool low_high_connected = false;

    /// lambda interval of the first hysteresis fold pair; not part of equality
    std::optional<std::pair<double, double>> hysteresis_interval;

    auto key() const
    {
        return std::tuple(n_branches, n_folds, n_crossings, hysteresis, stable_components, low_high_connected);
    }
    friend bool operator==(const QualSignature& a, const QualSignature& b) { return a.key() == b.key(); }
};

namespace detail {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t i)
    {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

inline double distance_to_polyline(const Branch& b, double x, double lambda, const Window& w)
{
    const auto z = w.normalize(x, lambda);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < b.points.size(); ++i) {
        const auto p = w.normalize(b.points[i].x, b.points[i].lambda);
        const auto q = w.normalize(b.points[i + 1].x, b.points[i + 1].lambda);
        const Vec2 s{q[0] - p[0], q[1] - p[1]};
        const double l2 = dot2(s, s);
        const double t = l2 > 0.0 ? std::clamp(dot2({z[0] - p[0], z[1] - p[1]}, s) / l2, 0.0, 1.0) : 0.0;
        best = std::min(best, norm2({p[0] + t * s[0] - z[0], p[1] + t * s[1] - z[1]}));
    }
    if (b.points.size() == 1) {
        const auto p = w.normalize(b.points[0].x, b.points[0].lambda);
        best = norm2({p[0] - z[0], p[1] - z[1]});
    }
    return best;
}

/// Distinct special points of one kind over the whole diagram.
inline std::vector<SpecialPoint> distinct_special(const std::vector<Branch>& diagram, SpecialKind kind, const Window& w)
{
    std::vector<SpecialPoint> out;
    for (const auto& b : diagram)
        for (const auto& sp : b.special_points) {
            if (sp.kind != kind) continue;
            const auto z = w.normalize(sp.x, sp.lambda);
            const bool dup = std::any_of(out.begin(), out.end(), [&](const SpecialPoint& o) {
                const auto zo = w.normalize(o.x, o.lambda);
                return std::hypot(zo[0] - z[0], zo[1] - z[1]) < 1e-7;
            });
            if (!dup) out.push_back(sp);
        }
    return out;
}

/// Component id per branch; branches sharing a crossing are joined.
inline std::vector<std::size_t> component_ids(const std::vector<Branch>& diagram, const Window& w)
{
    DisjointSets sets(diagram.size());
    for (const auto& c : distinct_special(diagram, SpecialKind::Crossing, w)) {
        std::optional<std::size_t> first;
        for (std::size_t i = 0; i < diagram.size(); ++i) {
            if (distance_to_polyline(diagram[i], c.x, c.lambda, w) > 1e-4) continue;
            if (first) sets.unite(*first, i);
            else first = i;
        }
    }
    std::vector<std::size_t> ids(diagram.size());
    for (std::size_t i = 0; i < diagram.size(); ++i) ids[i] = sets.find(i);
    return ids;
}

/// (x, branch index) of polyline intersections with the vertical line at lambda.
inline std::vector<std::pair<double, std::size_t>> vertical_intersections(const std::vector<Branch>& diagram, double lambda)
{
    std::vector<std::pair<double, std::size_t>> hits;
    for (std::size_t bi = 0; bi < diagram.size(); ++bi) {
        const auto& pts = diagram[bi].points;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double l0 = pts[i].lambda, l1 = pts[i + 1].lambda;
            // half-open so a vertex on the line is counted once
            const bool hit = (l0 <= lambda && lambda < l1) || (l1 <= lambda && lambda < l0);
            if (!hit) continue;
            const double t = (lambda - l0) / (l1 - l0);
            hits.emplace_back(pts[i].x + t * (pts[i + 1].x - pts[i].x), bi);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

/// Branch index holding the lowest state just inside the left window edge.
inline std::optional<std::size_t> low_state_branch(const std::vector<Branch>& diagram, const Window& w)
{
    const auto hits = vertical_intersections(diagram, w.lambda_min + 0.02 * w.lambda_span());
    if (hits.empty()) return std::nullopt;
    return hits.front().second;
}

}  // namespace detail

inline QualSignature signature_of(const std::vector<Branch>& diagram, const Window& window)
{
    QualSignature s;
    const auto ids = detail::component_ids(diagram, window);
    std::vector<std::size_t> roots = ids;
    std::sort(roots.begin(), roots.end());
    s.n_branches = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
    s.n_folds = static_cast<int>(detail::distinct_special(diagram, SpecialKind::Fold, window).size());
    s.n_crossings = static_cast<int>(detail::distinct_special(diagram, SpecialKind::Crossing, window).size());

    for (const auto& b : diagram) {
        for (std::size_t k = 0; k + 1 < b.special_points.size(); ++k) {
            const auto& f1 = b.special_points[k];
            const auto& f2 = b.special_points[k + 1];
            if (f1.kind == SpecialKind::Fold && f2.kind == SpecialKind::Fold && !s.hysteresis) {
                s.hysteresis = true;
                s.hysteresis_interval = std::pair{std::min(f1.lambda, f2.lambda), std::max(f1.lambda, f2.lambda)};
            }
        }
        bool in_run = false;
        for (const auto& p : b.points) {
            const bool st = p.stability == Stability::Stable;
            if (st && !in_run) ++s.stable_components;
            in_run = st;
        }
    }

    const auto low = detail::low_state_branch(diagram, window);
    std::optional<std::size_t> high;
    double x_high = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < diagram.size(); ++i)
        for (const auto& p : diagram[i].points)
            if (p.x > x_high) {
                x_high = p.x;
                high = i;
            }
    s.low_high_connected = low && high && ids[*low] == ids[*high];
    return s;
}

/**
 * Whether every stable state on the component of the low-lambda lowest state
 * is physical.  nullopt when the diagram carries no physicality annotation.
 */
inline std::optional<bool> physically_relevant(const std::vector<Branch>& diagram, const Window& window)
{
    const auto low = detail::low_state_branch(diagram, window);
    if (!low) return std::nullopt;
    const auto ids = detail::component_ids(diagram, window);
    bool annotated = false;
    for (std::size_t i = 0; i < diagram.size(); ++i) {
        if (ids[i] != ids[*low]) continue;
        for (const auto& p : diagram[i].points) {
            if (!p.physical) continue;
            annotated = true;
            if (p.stability == Stability::Stable && !*p.physical) return false;
        }
    }
    if (!annotated) return std::nullopt;
    return true;
}

/// A parameterized germ family with a fixed window and its default sample grid.
struct GermFamily {
    std::string name;
    std::string model;
    Setting base;
    std::string perturbation_key;  ///< additive unfolding parameter
    Window window;
    std::vector<Setting> samples;

    Germ make(const Setting& overrides) const
    {
        ModelConfig cfg(model);
        cfg.apply(base);
        cfg.apply(overrides);
        return cfg.germ();
    }
};

/// Built-in families: sh (p = -3/2), sh_caseB (p = -1), ldgc_b, ldgc_c.
inline GermFamily builtin_family(const std::string& name)
{
    GermFamily f;
    f.name = name;
    if (name == "sh") {
        f.model = "sh";
        f.base = {{"p", -1.5}};
        f.perturbation_key = "alpha";
        for (double alpha : {0.01, -0.01})
            for (double d_a : {1.0, 10.0}) f.samples.push_back({{"alpha", alpha}, {"d_a", d_a}});
    } else if (name == "sh_caseB") {
        f.model = "sh";
        f.base = {{"p", -1.0}, {"d_a", 1.0}};
        f.perturbation_key = "alpha";
        for (double alpha : {0.01, -0.01}) f.samples.push_back({{"alpha", alpha}});
    } else if (name == "ldgc_b" || name == "ldgc_c") {
        f.model = name;
        f.perturbation_key = "alpha_prime";
        for (double a : {0.01, -0.01}) f.samples.push_back({{"alpha_prime", a}});
    } else {
        throw ConfigError("unknown family '" + name + "' (sh, sh_caseB, ldgc_b, ldgc_c)");
    }
    f.window = default_window(f.model);
    return f;
}

struct CatalogueEntry {
    Setting setting;
    std::optional<QualSignature> signature;
    std::optional<bool> physically_relevant;
    std::vector<Branch> diagram;
    std::string error;  ///< non-empty when the setting failed

    bool ok() const { return signature.has_value(); }
};

/// Runs full_diagram + signature_of per setting.  Settings are evaluated
/// concurrently; the result order is the input order.
inline std::vector<CatalogueEntry> enumerate_catalogue(const GermFamily& family, const std::vector<Setting>& samples,
                                                       const Window& window, const DiagramOptions& opt = {})
{
    auto run = [&family, &window, &opt](const Setting& s) {
        CatalogueEntry e;
        e.setting = s;
        try {
            const Germ g = family.make(s);
            e.diagram = full_diagram(g, window, opt);
            e.signature = signature_of(e.diagram, window);
            e.physically_relevant = unfolder::physically_relevant(e.diagram, window);
        } catch (const Error& err) {
            e.error = err.what();
            e.diagram.clear();
        }
        return e;
    };
    std::vector<std::future<CatalogueEntry>> jobs;
    jobs.reserve(samples.size());
    for (const auto& s : samples) jobs.push_back(std::async(std::launch::async, run, s));
    std::vector<CatalogueEntry> out;
    out.reserve(samples.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

inline std::vector<CatalogueEntry> enumerate_catalogue(const GermFamily& family, const DiagramOptions& opt = {})
{
    return enumerate_catalogue(family, family.samples, family.window, opt);
}

/// Groups successful entries by equal signature, in first-seen order.
inline std::vector<std::pair<QualSignature, std::vector<std::size_t>>> distinct_signatures(
    const std::vector<CatalogueEntry>& entries)
{
    std::vector<std::pair<QualSignature, std::vector<std::size_t>>> groups;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!entries[i].ok()) continue;
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == *entries[i].signature; });
        if (it == groups.end()) groups.push_back({*entries[i].signature, {i}});
        else it->second.push_back(i);
    }
    return groups;
}

/**
 * Whether a point of class `cls` exists in `region` once the family's
 * perturbation parameter is set to `perturbation`.  Candidates come from
 * multi-start refinement of g = g_x = 0 and are classified at `tol`.
 */
inline bool persistence_check(const std::function<Germ(double)>& family, SingularityClass cls, const Window& region,
                              double perturbation, double tol = 1e-6, int grid = 24)
{
    const Germ g = family(perturbation);
    for (const auto& p : find_singular_points(g, region, grid)) {
        try {
            if (classify_point(g, p[0], p[1], tol).cls == cls) return true;
        } catch (const Error&) {
        }
    }
    return false;
}

inline bool persistence_check(const GermFamily& family, const Setting& fixed, SingularityClass cls,
                              const Window& region, double perturbation, double tol = 1e-6, int grid = 24)
{
    return persistence_check(
        [&](double eps) {
            Setting s = fixed;
            s[family.perturbation_key] = eps;
            return family.make(s);
        },
        cls, region, perturbation, tol, grid);
}

}  // namespace unfolder
