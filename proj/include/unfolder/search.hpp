#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "germ.hpp"
#include "models.hpp"
#include "recognition.hpp"
#include "window.hpp"

namespace unfolder {

/**
 * Multi-start refinement of singular points (g = g_x = 0) inside `region`.
 * Seeds sit on a grid x grid lattice; failed or escaping iterations are dropped.
 */
inline std::vector<std::array<double, 2>> find_singular_points(const Germ& germ, const Window& region, int grid = 24)
{
    region.validate();
    std::vector<std::array<double, 2>> found;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double x = region.x_min + (i + 0.5) / grid * region.x_span();
            const double l = region.lambda_min + (j + 0.5) / grid * region.lambda_span();
            std::pair<double, double> r;
            try {
                r = locate_crossing(germ, x, l);
            } catch (const Error&) {
                continue;
            }
            if (!region.contains(r.first, r.second)) continue;
            const auto z = region.normalize(r.first, r.second);
            bool dup = false;
            for (const auto& f : found) {
                const auto zf = region.normalize(f[0], f[1]);
                if (std::hypot(zf[0] - z[0], zf[1] - z[1]) < 1e-7) dup = true;
            }
            if (!dup) found.push_back({r.first, r.second});
        }
    return found;
}

/**
 * Finds the SH pitchfork without a user guess: locates a branch crossing at
 * the configured d_a, follows it in d_a until g_uu changes sign, and polishes
 * the bracket with locate_pitchfork.
 */
inline PitchforkLocation auto_pitchfork(const ShParams& params, const Window& window)
{
    if (!(params.p < -1.0)) throw WrongRegime("pitchfork requires p < -1");
    ShParams base = params;
    base.alpha = 0.0;

    auto germ_at = [&base](double d_a) {
        ShParams s = base;
        s.d_a = d_a;
        return sh_germ(s);
    };
    auto crossing_at = [&](double d_a) -> std::optional<std::array<double, 2>> {
        const Germ g = germ_at(d_a);
        for (const auto& p : find_singular_points(g, window, 16)) {
            const Derivatives d = g.derivatives(p[0], p[1]);
            if (std::abs(d.g_lambda) / d.scale() < 1e-6) return p;
        }
        return std::nullopt;
    };

    double d0 = base.d_a;
    auto c0 = crossing_at(d0);
    for (int k = 1; k < 20 && !c0; ++k) {
        d0 = k / (20.0 * base.a);
        c0 = crossing_at(d0);
    }
    if (!c0) throw NoConvergence("no branch crossing found to start the pitchfork search");

    const double g0 = germ_at(d0).derivatives((*c0)[0], (*c0)[1]).g_xx;
    for (double factor : {1.03, 1.0 / 1.03}) {
        double d = d0, gxx = g0;
        std::array<double, 2> c = *c0;
        for (int step = 0; step < 400; ++step) {
            const double dn = d * factor;
            std::array<double, 2> cn;
            double gn = 0.0;
            try {
                const Germ g = germ_at(dn);
                const auto r = locate_critical_point(g, c[0], c[1]);
                const Derivatives dv = g.derivatives(r.first, r.second);
                if (std::abs(dv.g) / dv.scale() > 1e-8) break;
                cn = {r.first, r.second};
                gn = dv.g_xx;
            } catch (const Error&) {
                break;
            }
            if ((gxx < 0.0) != (gn < 0.0)) {
                const double t = gxx / (gxx - gn);
                return locate_pitchfork(base, c[0] + t * (cn[0] - c[0]), c[1] + t * (cn[1] - c[1]),
                                        d + t * (dn - d));
            }
            d = dn;
            gxx = gn;
            c = cn;
        }
    }
    throw NoConvergence("g_uu does not change sign along the tracked crossing");
}

}  // namespace unfolder
