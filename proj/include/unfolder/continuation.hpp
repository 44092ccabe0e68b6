#pragma once

/** @file continuation.hpp

    @brief Pseudo-arclength continuation of solution branches of g(x, lambda) = 0.

    Branches are traced in window-normalized coordinates (the window maps to
    the unit square), so step lengths are fractions of the window extent.
    Stability refers to the scalar reduced dynamics dx/dt = g(x, lambda):
    a point is stable iff g_x < 0.
*/

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "detail/linalg.hpp"
#include "errors.hpp"
#include "germ.hpp"
#include "recognition.hpp"
#include "window.hpp"

namespace unfolder {

struct StepControl {
    double min_step = 1e-6;
    double max_step = 0.05;
    double initial_step = 0.01;
    double corrector_tol = 1e-10;
    int max_corrector_iterations = 15;
    double max_turn = 0.2;  ///< radians of direction change accepted per step
    std::size_t max_points = 200000;

    void validate() const
    {
        if (!(min_step > 0.0) || !(max_step >= min_step)) throw InvalidParameter("need 0 < min_step <= max_step");
        if (!(initial_step >= min_step && initial_step <= max_step))
            throw InvalidParameter("initial_step outside [min_step, max_step]");
        if (!(corrector_tol > 0.0) || max_corrector_iterations < 1) throw InvalidParameter("bad corrector settings");
        if (!(max_turn > 0.0) || max_points < 2) throw InvalidParameter("bad step acceptance settings");
    }
};

/// Corrector failed at the minimum step length.
class StepUnderflow : public Error {
public:
    StepUnderflow(double x, double lambda)
        : Error("StepUnderflow",
                "corrector failed at minimum step after (" + std::to_string(x) + ", " + std::to_string(lambda) + ")"),
          last_x(x),
          last_lambda(lambda)
    {
    }
    double last_x;
    double last_lambda;
};

enum class Stability { Stable, Unstable };
enum class SpecialKind { Fold, Crossing };

inline std::string to_string(Stability s) { return s == Stability::Stable ? "stable" : "unstable"; }
inline std::string to_string(SpecialKind k) { return k == SpecialKind::Fold ? "fold" : "crossing"; }

struct BranchPoint {
    double lambda = 0.0;
    double x = 0.0;
    double g_x = 0.0;
    Stability stability = Stability::Unstable;
    std::optional<bool> physical;
};

struct SpecialPoint {
    std::size_t index = 0;  ///< position of the refined point in Branch::points
    SpecialKind kind = SpecialKind::Fold;
    double x = 0.0;
    double lambda = 0.0;
};

struct Branch {
    std::vector<BranchPoint> points;
    std::vector<SpecialPoint> special_points;
    bool closed = false;
};

namespace detail {

inline constexpr double physical_tol = 1e-8;

inline BranchPoint annotate(const Germ& germ, double x, double lambda)
{
    BranchPoint p;
    p.x = x;
    p.lambda = lambda;
    p.g_x = germ(x, lambda).partial(1, 0);
    p.stability = p.g_x < 0.0 ? Stability::Stable : Stability::Unstable;
    if (germ.has_physicality()) p.physical = germ.physicality(x, lambda) >= -physical_tol;
    return p;
}

inline Vec2 normalized(Vec2 v)
{
    const double n = norm2(v);
    return {v[0] / n, v[1] / n};
}

/// Traces one direction of a branch in normalized coordinates.
class Tracer {
public:
    Tracer(const Germ& germ, const Window& window, const StepControl& step)
        : germ_(germ), window_(window), step_(step)
    {
    }

    struct Gradient {
        double g;
        Vec2 grad;  ///< (g_xi, g_eta)
    };

    std::optional<Gradient> gradient(const Vec2& z) const
    {
        const auto p = window_.denormalize(z);
        if (!germ_.in_domain(p[0], p[1])) return std::nullopt;
        const Jet j = germ_(p[0], p[1]);
        return Gradient{j.value(), {j.partial(1, 0) * window_.x_span(), j.partial(0, 1) * window_.lambda_span()}};
    }

    std::optional<Vec2> tangent(const Vec2& z) const
    {
        const auto gr = gradient(z);
        if (!gr) return std::nullopt;
        const double n = norm2(gr->grad);
        if (!(n > 1e-12)) return std::nullopt;
        return Vec2{-gr->grad[1] / n, gr->grad[0] / n};
    }

    struct Corrected {
        Vec2 z;
        int iterations;
    };

    /// Newton on (g = 0, dir . (z - pred) = 0).
    std::optional<Corrected> correct(const Vec2& pred, const Vec2& dir) const
    {
        Vec2 z = pred;
        double last_dz = 1.0;
        for (int it = 0; it <= step_.max_corrector_iterations; ++it) {
            const auto gr = gradient(z);
            if (!gr) return std::nullopt;
            if (std::abs(gr->g) < step_.corrector_tol && last_dz < 1e-9) return Corrected{z, it};
            if (it == step_.max_corrector_iterations) break;
            const Mat2 jac{{{gr->grad[0], gr->grad[1]}, {dir[0], dir[1]}}};
            const double along = dir[0] * (z[0] - pred[0]) + dir[1] * (z[1] - pred[1]);
            const auto dz = solve2(jac, {-gr->g, -along}, 1e-300);
            if (!dz) return std::nullopt;
            z[0] += (*dz)[0];
            z[1] += (*dz)[1];
            last_dz = norm2(*dz);
            if (!std::isfinite(last_dz)) return std::nullopt;
        }
        return std::nullopt;
    }

    /// Point where the segment inside -> outside leaves the unit square,
    /// moved onto the branch along the boundary.
    std::optional<Vec2> exit_point(const Vec2& inside, const Vec2& outside) const
    {
        double t_exit = 1.0;
        int fixed = -1;
        double bound = 0.0;
        for (int c = 0; c < 2; ++c) {
            for (double b : {0.0, 1.0}) {
                const bool crosses = (b == 0.0) ? outside[c] < 0.0 : outside[c] > 1.0;
                if (!crosses) continue;
                const double t = (b - inside[c]) / (outside[c] - inside[c]);
                if (t < t_exit) {
                    t_exit = t;
                    fixed = c;
                    bound = b;
                }
            }
        }
        if (fixed < 0) return std::nullopt;
        Vec2 z{inside[0] + t_exit * (outside[0] - inside[0]), inside[1] + t_exit * (outside[1] - inside[1])};
        z[fixed] = bound;
        const int free = 1 - fixed;
        for (int it = 0; it < 30; ++it) {
            const auto gr = gradient(z);
            if (!gr) return std::nullopt;
            if (std::abs(gr->g) < step_.corrector_tol * 1e-2) break;
            if (gr->grad[free] == 0.0) return std::nullopt;
            z[free] -= gr->g / gr->grad[free];
        }
        const auto gr = gradient(z);
        if (!gr || std::abs(gr->g) >= step_.corrector_tol) return std::nullopt;
        if (z[free] < -1e-12 || z[free] > 1.0 + 1e-12) return std::nullopt;
        if (norm2({z[0] - inside[0], z[1] - inside[1]}) > 2.0 * norm2({outside[0] - inside[0], outside[1] - inside[1]}))
            return std::nullopt;
        return z;
    }

    /// Rejects steps whose secant midpoint is farther from the zero set than
    /// an arc within the turn limit allows, i.e. jumps between nearby curves.
    bool midpoint_on_curve(const Vec2& a, const Vec2& b, double len) const
    {
        const auto gr = gradient({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
        if (!gr) return false;
        const double n = norm2(gr->grad);
        if (!(n > 0.0)) return std::abs(gr->g) < step_.corrector_tol;
        return std::abs(gr->g) / n <= 0.05 * len + step_.corrector_tol;
    }

    static bool inside_unit(const Vec2& z)
    {
        return z[0] >= 0.0 && z[0] <= 1.0 && z[1] >= 0.0 && z[1] <= 1.0;
    }

    struct Run {
        std::vector<Vec2> points;  ///< excluding the start
        bool closed = false;
    };

    Run run(const Vec2& start, const Vec2& start_dir) const
    {
        Run out;
        Vec2 prev = start;
        Vec2 dir = start_dir;
        double h = std::min(step_.initial_step, step_.max_step);
        int easy = 0;
        double travelled = 0.0;
        const double cos_turn = std::cos(step_.max_turn);

        while (out.points.size() < step_.max_points) {
            const Vec2 pred{prev[0] + h * dir[0], prev[1] + h * dir[1]};
            const auto corr = correct(pred, dir);
            bool ok = corr.has_value();
            Vec2 z{};
            Vec2 secant{};
            if (ok) {
                z = corr->z;
                const Vec2 d{z[0] - prev[0], z[1] - prev[1]};
                const double len = norm2(d);
                ok = len > 0.25 * h && len < 2.0 * h &&
                     norm2({z[0] - pred[0], z[1] - pred[1]}) <= 0.5 * h;
                if (ok) {
                    secant = {d[0] / len, d[1] / len};
                    ok = dot2(secant, dir) >= cos_turn;
                }
                if (ok) ok = midpoint_on_curve(prev, z, len);
                if (ok) {
                    if (auto t = tangent(z)) {
                        if (dot2(*t, secant) < 0.0) *t = {-(*t)[0], -(*t)[1]};
                        ok = dot2(*t, dir) >= cos_turn;
                    }
                }
            }
            if (!ok) {
                h *= 0.5;
                easy = 0;
                if (h < step_.min_step) {
                    const auto p = window_.denormalize(prev);
                    throw StepUnderflow(p[0], p[1]);
                }
                continue;
            }

            if (!inside_unit(z)) {
                if (const auto e = exit_point(prev, z)) out.points.push_back(*e);
                return out;
            }
            travelled += norm2({z[0] - prev[0], z[1] - prev[1]});
            out.points.push_back(z);

            const double to_start = norm2({z[0] - start[0], z[1] - start[1]});
            if (out.points.size() >= 3 && travelled > 2.0 * h && to_start <= h && dot2(secant, start_dir) > 0.0) {
                out.closed = true;
                return out;
            }

            dir = secant;
            prev = z;
            if (corr->iterations <= 3) {
                if (++easy >= 2) {
                    h = std::min(2.0 * h, step_.max_step);
                    easy = 0;
                }
            } else {
                easy = 0;
            }
        }
        return out;
    }

private:
    const Germ& germ_;
    const Window& window_;
    const StepControl& step_;
};

}  // namespace detail

/**
 * Traces the branch through `start` in both directions until it leaves the
 * window or closes into a loop.  `direction` (in (x, lambda) units) is
 * required when the start is itself singular, e.g. a branch crossing.
 */
inline Branch trace_branch(const Germ& germ, double x0, double lambda0, const Window& window,
                           const StepControl& step = {},
                           std::optional<std::array<double, 2>> direction = std::nullopt)
{
    window.validate();
    step.validate();
    if (!window.contains(x0, lambda0, 1e-12)) throw InvalidParameter("start outside window");
    const double g0 = germ.value(x0, lambda0);
    if (!(std::abs(g0) < 1e-8))
        throw StartNotOnBranch("|g| = " + std::to_string(std::abs(g0)) + " at start");

    detail::Tracer tracer(germ, window, step);
    const auto z0 = window.normalize(x0, lambda0);
    detail::Vec2 t0{};
    if (direction) {
        const detail::Vec2 d{(*direction)[0] / window.x_span(), (*direction)[1] / window.lambda_span()};
        if (!(detail::norm2(d) > 0.0)) throw InvalidParameter("zero start direction");
        t0 = detail::normalized(d);
    } else {
        const auto t = tracer.tangent(z0);
        if (!t) throw StartNotOnBranch("gradient vanishes at start; supply a direction");
        t0 = *t;
    }

    const auto fwd = tracer.run(z0, t0);
    std::vector<detail::Vec2> path;
    if (!fwd.closed) {
        const auto bwd = tracer.run(z0, {-t0[0], -t0[1]});
        path.assign(bwd.points.rbegin(), bwd.points.rend());
    }
    path.push_back(z0);
    path.insert(path.end(), fwd.points.begin(), fwd.points.end());
    if (fwd.closed) path.push_back(z0);

    Branch b;
    b.closed = fwd.closed;
    b.points.reserve(path.size());
    for (const auto& z : path) {
        const auto p = window.denormalize(z);
        b.points.push_back(detail::annotate(germ, p[0], p[1]));
    }
    return b;
}

inline constexpr double default_crossing_tol = 1e-6;

namespace detail {

/// Point of a bracketed g_x sign change.  Bisection in the chord parameter,
/// each chord point projected onto g = 0 along the chord normal.  The result
/// snaps to a nearby critical point of g on g = 0 (a branch crossing), or is
/// polished with locate_crossing when that solves g = g_x = 0.
inline std::pair<double, double> refine_on_curve(const Germ& germ, const BranchPoint& p0, const BranchPoint& p1)
{
    const double dx = p1.x - p0.x, dl = p1.lambda - p0.lambda;
    const double len = std::hypot(dx, dl);
    const double nx = -dl / len, nl = dx / len;

    struct OnCurve {
        double x, lambda, g_x;
    };
    auto project = [&](double t) {
        double x = p0.x + t * dx, l = p0.lambda + t * dl;
        for (int it = 0; it < 60; ++it) {
            const Derivatives d = germ.derivatives(x, l);
            const double slope = d.g_x * nx + d.g_lambda * nl;
            if (std::abs(d.g) <= 1e-15 * d.scale() || slope == 0.0) break;
            double s = -d.g / slope;
            s = std::clamp(s, -len, len);
            x += s * nx;
            l += s * nl;
        }
        return OnCurve{x, l, germ.derivatives(x, l).g_x};
    };

    double ta = 0.0, tb = 1.0, ga = p0.g_x;
    OnCurve best{p0.x, p0.lambda, p0.g_x};
    for (int it = 0; it < 60; ++it) {
        const double tm = 0.5 * (ta + tb);
        best = project(tm);
        if (best.g_x == 0.0) break;
        if ((best.g_x < 0.0) == (ga < 0.0)) ta = tm, ga = best.g_x;
        else tb = tm;
    }

    auto residual = [&germ](double x, double l) {
        const Derivatives d = germ.derivatives(x, l);
        return (std::abs(d.g) + std::abs(d.g_x)) / d.scale();
    };
    const double scale = germ.derivatives(best.x, best.lambda).scale();
    auto within = [&](const std::pair<double, double>& q) {
        return std::hypot(q.first - best.x, q.second - best.lambda) <= len;
    };
    // degenerate crossings leave g_x flat along one branch; their exact
    // location is a critical point of g lying on g = 0
    try {
        const auto crit = locate_critical_point(germ, best.x, best.lambda);
        if (within(crit) && std::abs(germ.value(crit.first, crit.second)) < 1e-10 * scale) return crit;
    } catch (const Error&) {
    }
    std::pair<double, double> r{best.x, best.lambda};
    try {
        const auto polished = locate_crossing(germ, best.x, best.lambda);
        if (within(polished) && residual(polished.first, polished.second) < std::max(1e-10, residual(best.x, best.lambda)))
            r = polished;
    } catch (const Error&) {
    }
    return r;
}

}  // namespace detail

/**
 * Brackets sign changes of g_x along the branch, refines each along the
 * curve, and inserts the refined point into the polyline.
 */
inline Branch detect_special_points(const Germ& germ, Branch branch, double crossing_tol = default_crossing_tol)
{
    const auto& pts = branch.points;
    if (pts.size() < 2) throw InvalidParameter("branch needs at least 2 points");

    struct Found {
        std::size_t after;  // insert after this index
        SpecialPoint sp;
    };
    std::vector<Found> found;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i].g_x, b = pts[i + 1].g_x;
        const bool change = (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0) || (a == 0.0 && b != 0.0 && i > 0);
        if (!change) continue;
        const auto r = detail::refine_on_curve(germ, pts[i], pts[i + 1]);
        bool dup = false;
        for (const auto& f : found)
            if (std::hypot(f.sp.x - r.first, f.sp.lambda - r.second) < 1e-9) dup = true;
        if (dup) continue;
        const Derivatives d = germ.derivatives(r.first, r.second);
        SpecialPoint sp;
        sp.kind = std::abs(d.g_lambda) / d.scale() <= crossing_tol ? SpecialKind::Crossing : SpecialKind::Fold;
        sp.x = r.first;
        sp.lambda = r.second;
        found.push_back({i, sp});
    }

    Branch out;
    out.closed = branch.closed;
    std::size_t next = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.points.push_back(pts[i]);
        while (next < found.size() && found[next].after == i) {
            SpecialPoint sp = found[next].sp;
            sp.index = out.points.size();
            out.points.push_back(detail::annotate(germ, sp.x, sp.lambda));
            out.special_points.push_back(sp);
            ++next;
        }
    }
    return out;
}

/**
 * Unit directions (dx, dlambda) of the two curves through a simple crossing:
 * the null directions of the quadratic form
 *   g_xx dx^2 + 2 g_lambda_x dx dlambda + g_lambda_lambda dlambda^2.
 */
inline std::array<std::array<double, 2>, 2> switch_branch(const Germ& germ, double x0, double lambda0,
                                                          double tol = default_crossing_tol)
{
    const Derivatives d = germ.derivatives(x0, lambda0);
    const double s = d.scale();
    if (std::abs(d.g) / s >= tol || std::abs(d.g_x) / s >= tol || std::abs(d.g_lambda) / s >= tol)
        throw NotACrossing("g, g_x, g_lambda do not vanish at (" + std::to_string(x0) + ", " +
                           std::to_string(lambda0) + ")");
    const double A = d.g_xx, B = d.g_lambda_x, C = d.g_lambda_lambda;
    if (std::abs(A) / s < tol && std::abs(B) / s < tol) throw DegenerateQuadratic("g_xx and g_lambda_x vanish");
    const double disc = B * B - A * C;
    if (!(disc > 0.0)) throw NotACrossing("quadratic form is definite or degenerate");

    auto unit = [](double dx, double dl) {
        const double n = std::hypot(dx, dl);
        return std::array<double, 2>{dx / n, dl / n};
    };
    const double qq = -(B + (B < 0.0 ? -1.0 : 1.0) * std::sqrt(disc));
    std::array<std::array<double, 2>, 2> dirs;
    if (std::abs(A) >= std::abs(C)) {
        // slopes dx/dlambda
        dirs = {unit(qq / A, 1.0), unit(C / qq, 1.0)};
    } else {
        // slopes dlambda/dx
        dirs = {unit(1.0, qq / C), unit(1.0, A / qq)};
    }
    return dirs;
}

namespace detail {

/// Roots of g(., lambda) on [x_lo, x_hi] from sign changes on a uniform grid.
inline std::vector<double> bisection_roots(const Germ& germ, double lambda, double x_lo, double x_hi, int cells)
{
    std::vector<double> roots;
    auto value = [&](double x) -> std::optional<double> {
        if (!germ.in_domain(x, lambda)) return std::nullopt;
        return germ.value(x, lambda);
    };
    const double dx = (x_hi - x_lo) / cells;
    std::optional<double> f_prev = value(x_lo);
    for (int k = 1; k <= cells; ++k) {
        const double x_left = x_lo + (k - 1) * dx;
        const double x_right = (k == cells) ? x_hi : x_lo + k * dx;
        const std::optional<double> f_right = value(x_right);
        if (f_prev && f_right && ((*f_prev < 0.0) != (*f_right < 0.0))) {
            double a = x_left, b = x_right, fa = *f_prev;
            for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = germ.value(m, lambda);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            double x = 0.5 * (a + b);
            for (int it = 0; it < 3; ++it) {
                const Jet j = germ(x, lambda);
                const double gx = j.partial(1, 0);
                if (gx == 0.0) break;
                const double nx = x - j.value() / gx;
                if (!(nx >= x_left && nx <= x_right) || std::abs(germ.value(nx, lambda)) > std::abs(j.value())) break;
                x = nx;
            }
            roots.push_back(x);
        }
        f_prev = f_right;
    }
    return roots;
}

/// Whether the seed (x, lambda) lies on an already traced branch: the polyline
/// crossing of the vertical line at lambda, refined onto g(., lambda) = 0,
/// reproduces the seed.
inline bool seed_covered(const Germ& germ, const std::vector<Branch>& branches, double x, double lambda,
                         const Window& w)
{
    const auto zs = w.normalize(x, lambda);
    for (const auto& b : branches) {
        for (std::size_t i = 0; i + 1 < b.points.size(); ++i) {
            const auto& p = b.points[i];
            const auto& q = b.points[i + 1];
            const auto zp = w.normalize(p.x, p.lambda);
            const auto zq = w.normalize(q.x, q.lambda);
            const Vec2 seg{zq[0] - zp[0], zq[1] - zp[1]};
            const double len2 = dot2(seg, seg);
            const double t = len2 > 0.0 ? std::clamp(dot2({zs[0] - zp[0], zs[1] - zp[1]}, seg) / len2, 0.0, 1.0) : 0.0;
            if (norm2({zp[0] + t * seg[0] - zs[0], zp[1] + t * seg[1] - zs[1]}) < 2e-3) return true;
            const double lo = std::min(p.lambda, q.lambda), hi = std::max(p.lambda, q.lambda);
            if (lambda < lo || lambda > hi) continue;
            double xi = (hi == lo) ? p.x : p.x + (lambda - p.lambda) / (q.lambda - p.lambda) * (q.x - p.x);
            if (std::abs(xi - x) > 0.05 * w.x_span()) continue;
            // chord within the sagitta bound of the turn limit; Newton below
            // could otherwise slide to a neighbouring root near a fold
            if (std::abs(xi - x) < 2e-3 * w.x_span()) return true;
            for (int it = 0; it < 8 && germ.in_domain(xi, lambda); ++it) {
                const Jet j = germ(xi, lambda);
                const double gx = j.partial(1, 0);
                if (gx == 0.0) break;
                xi -= j.value() / gx;
            }
            if (std::abs(xi - x) < 1e-6 * w.x_span()) return true;
        }
    }
    return false;
}

/// Whether every interior sample of `b` already lies on a traced branch.
inline bool branch_duplicated(const Germ& germ, const std::vector<Branch>& branches, const Branch& b, const Window& w)
{
    const std::size_t n = b.points.size();
    if (n < 4) return false;
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto& p = b.points[k * n / 4];
        if (!seed_covered(germ, branches, p.x, p.lambda, w)) return false;
    }
    return true;
}

/// Whether some traced branch already leaves `c` along +-dir.
inline bool direction_covered(const std::vector<Branch>& branches, double cx, double cl,
                              const std::array<double, 2>& dir, const Window& w, double radius)
{
    const auto c = w.normalize(cx, cl);
    const Vec2 d = normalized({dir[0] / w.x_span(), dir[1] / w.lambda_span()});
    for (const auto& b : branches)
        for (const auto& p : b.points) {
            const auto z = w.normalize(p.x, p.lambda);
            const Vec2 v{z[0] - c[0], z[1] - c[1]};
            const double r = norm2(v);
            if (r < 0.1 * radius || r > 3.0 * radius) continue;
            if (std::abs(dot2(v, d)) / r > 0.995) return true;
        }
    return false;
}

}  // namespace detail

struct DiagramOptions {
    int n_seeds = 40;
    int root_cells = 600;
    StepControl step;
    double crossing_tol = default_crossing_tol;
};

/**
 * All branches of the germ inside the window: seeds from bisection along
 * n_seeds vertical lines, tracing, special point detection, and tracing of the
 * second curve at every crossing.
 *
 * Branches are appended to `branches` as they complete, so a caller catching
 * an exception keeps everything traced before the failure.
 */
inline void full_diagram(const Germ& germ, const Window& window, const DiagramOptions& opt,
                         std::vector<Branch>& branches)
{
    window.validate();
    if (opt.n_seeds < 1 || opt.root_cells < 1) throw InvalidParameter("n_seeds and root_cells must be >= 1");
    opt.step.validate();
    branches.clear();
    for (int k = 0; k < opt.n_seeds; ++k) {
        const double lambda = window.lambda_min + (k + 0.5) / opt.n_seeds * window.lambda_span();
        for (double x : detail::bisection_roots(germ, lambda, window.x_min, window.x_max, opt.root_cells)) {
            if (detail::seed_covered(germ, branches, x, lambda, window)) continue;
            branches.push_back(detect_special_points(germ, trace_branch(germ, x, lambda, window, opt.step), opt.crossing_tol));
        }
    }

    std::vector<std::array<double, 2>> crossings;
    for (const auto& b : branches)
        for (const auto& sp : b.special_points)
            if (sp.kind == SpecialKind::Crossing) {
                bool dup = false;
                for (const auto& c : crossings)
                    if (std::hypot(c[0] - sp.x, c[1] - sp.lambda) < 1e-8) dup = true;
                if (!dup) crossings.push_back({sp.x, sp.lambda});
            }
    for (const auto& c : crossings) {
        for (const auto& dir : switch_branch(germ, c[0], c[1], opt.crossing_tol)) {
            if (detail::direction_covered(branches, c[0], c[1], dir, window, opt.step.max_step)) continue;
            Branch b = trace_branch(germ, c[0], c[1], window, opt.step, dir);
            if (detail::branch_duplicated(germ, branches, b, window)) continue;
            branches.push_back(detect_special_points(germ, std::move(b), opt.crossing_tol));
        }
    }
}

inline std::vector<Branch> full_diagram(const Germ& germ, const Window& window, const DiagramOptions& opt = {})
{
    std::vector<Branch> branches;
    full_diagram(germ, window, opt, branches);
    return branches;
}

}  // namespace unfolder
