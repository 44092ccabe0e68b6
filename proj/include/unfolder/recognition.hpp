#pragma once

/** @file recognition.hpp

    @brief Location and classification of singular points of a germ.

    The recognition conditions are exact-zero statements about derivatives.
    Here they are tested against a tolerance after dividing every derivative
    by the largest derivative magnitude at the point, which makes the
    classification invariant under rescaling of g.
*/

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detail/linalg.hpp"
#include "errors.hpp"
#include "germ.hpp"
#include "models.hpp"

namespace unfolder {

inline constexpr double default_classification_tol = 1e-8;

enum class SingularityClass { Regular, LimitPoint, Transcritical, Pitchfork, Degenerate };

inline std::string to_string(SingularityClass c)
{
    switch (c) {
        case SingularityClass::Regular: return "Regular";
        case SingularityClass::LimitPoint: return "LimitPoint";
        case SingularityClass::Transcritical: return "Transcritical";
        case SingularityClass::Pitchfork: return "Pitchfork";
        case SingularityClass::Degenerate: return "Degenerate";
    }
    return "Degenerate";
}

struct SingularityReport {
    std::string model;
    double x0 = 0.0;
    double lambda0 = 0.0;
    std::optional<std::pair<std::string, double>> extra_param;
    SingularityClass cls = SingularityClass::Regular;
    int epsilon = 1;
    std::optional<int> delta;  ///< pitchfork only
    int codimension = 0;       ///< for Degenerate: lower bound 3
    Derivatives derivatives;
    /// |condition| / scale for each defining condition of the assigned class
    std::vector<std::pair<std::string, double>> residuals;
    double tolerance = default_classification_tol;
};

inline int codimension_of(SingularityClass c)
{
    switch (c) {
        case SingularityClass::Regular:
        case SingularityClass::LimitPoint: return 0;
        case SingularityClass::Transcritical: return 1;
        case SingularityClass::Pitchfork: return 2;
        case SingularityClass::Degenerate: return 3;
    }
    return 3;
}

/// Classification of a jet already evaluated at the point.
inline SingularityReport classify_derivatives(const Derivatives& d, double tol)
{
    if (!(tol > 0.0)) throw InvalidParameter("classification tolerance must be > 0");
    const double s = d.scale();
    const double g = std::abs(d.g) / s;
    if (g >= tol)
        throw NotOnSolutionSet("normalized |g| = " + std::to_string(g) + " >= tol " + std::to_string(tol));

    const double gx = std::abs(d.g_x) / s;
    const double gl = std::abs(d.g_lambda) / s;
    const double gxx = std::abs(d.g_xx) / s;
    const double glx = std::abs(d.g_lambda_x) / s;
    const double gxxx = std::abs(d.g_xxx) / s;
    const double det = (d.g_xx * d.g_lambda_lambda - d.g_lambda_x * d.g_lambda_x) / (s * s);

    SingularityReport r;
    r.derivatives = d;
    r.tolerance = tol;
    using detail::sign_of;

    if (gx < tol && gxx < tol && gl < tol && gxxx > tol && glx > tol) {
        r.cls = SingularityClass::Pitchfork;
        r.epsilon = sign_of(d.g_xxx);
        r.delta = sign_of(d.g_lambda_x);
        r.residuals = {{"g", g}, {"g_x", gx}, {"g_xx", gxx}, {"g_lambda", gl}};
    } else if (gx < tol && gl < tol && gxx > tol && det < -tol * tol) {
        r.cls = SingularityClass::Transcritical;
        r.epsilon = sign_of(d.g_xx);
        r.residuals = {{"g", g}, {"g_x", gx}, {"g_lambda", gl}};
    } else if (gx < tol && gxx > tol && gl > tol) {
        r.cls = SingularityClass::LimitPoint;
        r.epsilon = sign_of(d.g_xx);
        r.residuals = {{"g", g}, {"g_x", gx}};
    } else if (gx > tol || gl > tol) {
        r.cls = SingularityClass::Regular;
        r.epsilon = sign_of(gx > tol ? d.g_x : d.g_lambda);
        r.residuals = {{"g", g}};
    } else {
        r.cls = SingularityClass::Degenerate;
        r.epsilon = sign_of(d.g_xxx);
        r.residuals = {{"g", g}, {"g_x", gx}, {"g_lambda", gl}, {"g_xx", gxx}};
    }
    r.codimension = codimension_of(r.cls);
    return r;
}

/**
 * Classifies (x0, lambda0), most degenerate class first:
 * Pitchfork, Transcritical, LimitPoint, Regular, otherwise Degenerate.
 */
inline SingularityReport classify_point(const Germ& germ, double x0, double lambda0,
                                        double tol = default_classification_tol)
{
    SingularityReport r = classify_derivatives(germ.derivatives(x0, lambda0), tol);
    r.model = germ.model();
    r.x0 = x0;
    r.lambda0 = lambda0;
    return r;
}

struct NewtonOptions {
    int max_iterations = 50;
    double residual_tol = 1e-11;
    double min_det = 1e-14;
};

/**
 * Newton refinement of a singular point g = g_x = 0 (fold or branch crossing).
 *
 * At a crossing the Jacobian of (g, g_x) is singular, so once g and g_lambda
 * are both small the iteration switches to the gradient system
 * (g_x, g_lambda) = 0, which is regular at transcritical and pitchfork points.
 */
inline std::pair<double, double> locate_crossing(const Germ& germ, double x, double lambda,
                                                 const NewtonOptions& opt = {})
{
    using detail::Mat2;
    using detail::Vec2;
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Derivatives d = germ.derivatives(x, lambda);
        if (std::abs(d.g) < opt.residual_tol && std::abs(d.g_x) < opt.residual_tol) return {x, lambda};

        const double s = d.scale();
        const bool near_crossing = std::abs(d.g_lambda) / s < 1e-3 && std::abs(d.g) / s < 1e-3;

        const Mat2 fold_jac{{{d.g_x, d.g_lambda}, {d.g_xx, d.g_lambda_x}}};
        const Mat2 hess{{{d.g_xx, d.g_lambda_x}, {d.g_lambda_x, d.g_lambda_lambda}}};
        std::optional<Vec2> step;
        if (near_crossing) step = detail::solve2(hess, {-d.g_x, -d.g_lambda}, opt.min_det);
        if (!step) step = detail::solve2(fold_jac, {-d.g, -d.g_x}, opt.min_det);
        if (!step && !near_crossing) step = detail::solve2(hess, {-d.g_x, -d.g_lambda}, opt.min_det);
        if (!step)
            throw SingularJacobian("at (" + std::to_string(x) + ", " + std::to_string(lambda) + ")");

        double t = 1.0;
        for (int k = 0; k < 40 && !germ.in_domain(x + t * (*step)[0], lambda + t * (*step)[1]); ++k)
            t *= 0.5;
        x += t * (*step)[0];
        lambda += t * (*step)[1];
        if (!germ.in_domain(x, lambda)) throw DomainError("Newton iterate left the validity domain");
    }
    const Derivatives d = germ.derivatives(x, lambda);
    if (std::abs(d.g) < opt.residual_tol && std::abs(d.g_x) < opt.residual_tol) return {x, lambda};
    throw NoConvergence("singular point refinement after " + std::to_string(opt.max_iterations) +
                        " iterations, |g| = " + std::to_string(std::abs(d.g)) +
                        ", |g_x| = " + std::to_string(std::abs(d.g_x)));
}

struct PitchforkLocation {
    double u0 = 0.0;
    double q0 = 0.0;
    double d_a0 = 0.0;
    double residual_g = 0.0;  ///< |g| at the solution; the fourth condition
};

/**
 * Solves g_u = g_q = g_uu = 0 for (u, q, d_a) in the SH model and reports the
 * left-over condition |g|.  The crossing of the two branches persists for
 * every d_a, so g = 0 cannot serve as a defining equation: its row in the
 * Jacobian vanishes at the pitchfork.  The gradient system is regular there.
 */
inline PitchforkLocation locate_pitchfork(ShParams params, double u, double q, double d_a,
                                          int max_iterations = 50)
{
    if (!(params.p < -1.0)) throw WrongRegime("pitchfork requires p < -1");
    if (params.alpha != 0.0) throw WrongRegime("pitchfork requires alpha = 0");
    params.d_a = d_a;
    params.validate();

    auto residual = [&params](double uu, double qq, double dd) {
        ShParams s = params;
        s.d_a = dd;
        const Jet j = sh_jet(uu, qq, s);
        return std::pair{detail::Vec3{j.partial(1, 0), j.partial(0, 1), j.partial(2, 0)}, j};
    };
    auto inf_norm = [](const detail::Vec3& v) {
        return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    };
    auto admissible = [](double uu, double qq, double dd) { return uu > 0.0 && qq > 0.0 && dd > 0.0; };

    constexpr double tol = 1e-12;
    int polish = 0;
    for (int it = 0; it < max_iterations; ++it) {
        const auto [f, j] = residual(u, q, d_a);
        const double fn = inf_norm(f);
        if (fn < tol && ++polish > 1) return {u, q, d_a, std::abs(j.partial(0, 0))};
        // g is affine in d_a, so the central difference is exact up to rounding
        const double h = 1e-6 * std::max(1.0, std::abs(d_a));
        const auto fp = residual(u, q, d_a + h).first;
        const auto fm = residual(u, q, std::max(d_a - h, 0.5 * d_a)).first;
        const double hm = d_a - std::max(d_a - h, 0.5 * d_a);
        detail::Mat3 jac{};
        for (int r = 0; r < 3; ++r) jac[r][2] = (fp[r] - fm[r]) / (h + hm);
        jac[0][0] = j.partial(2, 0), jac[0][1] = j.partial(1, 1);
        jac[1][0] = j.partial(1, 1), jac[1][1] = j.partial(0, 2);
        jac[2][0] = j.partial(3, 0), jac[2][1] = j.partial(2, 1);
        const auto step = detail::solve3(jac, {-f[0], -f[1], -f[2]});
        if (!step) throw SingularJacobian("pitchfork system");

        // backtracking on the residual norm
        double t = 1.0;
        for (int k = 0; k < 30; ++k, t *= 0.5) {
            const double nu = u + t * (*step)[0], nq = q + t * (*step)[1], nd = d_a + t * (*step)[2];
            if (!admissible(nu, nq, nd)) continue;
            if (inf_norm(residual(nu, nq, nd).first) < fn || fn < tol) break;
        }
        u += t * (*step)[0];
        q += t * (*step)[1];
        d_a += t * (*step)[2];
        if (!admissible(u, q, d_a)) throw NoConvergence("pitchfork iterate left the parameter domain");
    }
    throw NoConvergence("pitchfork system after " + std::to_string(max_iterations) + " iterations");
}

struct UnfoldingDescriptor {
    SingularityClass cls = SingularityClass::LimitPoint;
    std::string normal_form;              ///< unfolded normal form with signs substituted
    int parameter_count = 0;              ///< k
    std::vector<std::string> directions;  ///< model parameters realizing each direction, if known
};

inline UnfoldingDescriptor unfolding_template(const SingularityReport& report)
{
    auto signed_term = [](int sign, const std::string& term, bool leading) {
        if (leading) return std::string(sign < 0 ? "-" : "") + term;
        return std::string(sign < 0 ? " - " : " + ") + term;
    };
    UnfoldingDescriptor u;
    u.cls = report.cls;
    switch (report.cls) {
        case SingularityClass::Pitchfork:
            u.parameter_count = 2;
            u.normal_form = signed_term(report.epsilon, "x^3", true) + " + beta*x^2" +
                            signed_term(report.delta.value_or(1), "lambda*x", false) + " + alpha";
            if (report.model == "sh") u.directions = {"alpha", "d_a"};
            break;
        case SingularityClass::Transcritical:
            u.parameter_count = 1;
            u.normal_form = signed_term(report.epsilon, "(x^2 - lambda^2)", true) + " + alpha";
            if (report.model == "sh")
                u.directions = {"alpha"};
            else if (report.model.rfind("ldgc", 0) == 0)
                u.directions = {"alpha_prime"};
            break;
        case SingularityClass::LimitPoint:
            u.parameter_count = 0;
            u.normal_form = signed_term(report.epsilon, "x^2", true) +
                            signed_term(detail::sign_of(report.derivatives.g_lambda), "lambda", false);
            break;
        default: throw NotUnfoldable(to_string(report.cls) + " point has no unfolding template");
    }
    return u;
}

}  // namespace unfolder

namespace unfolder {

/// Newton on the gradient system g_x = g_lambda = 0.  Branch crossings are
/// nondegenerate critical points of g, so this tracks them robustly even where
/// a nearby fold would attract the (g, g_x) iteration.
inline std::pair<double, double> locate_critical_point(const Germ& germ, double x, double lambda,
                                                       const NewtonOptions& opt = {})
{
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Derivatives d = germ.derivatives(x, lambda);
        if (std::abs(d.g_x) < opt.residual_tol && std::abs(d.g_lambda) < opt.residual_tol) return {x, lambda};
        const detail::Mat2 hess{{{d.g_xx, d.g_lambda_x}, {d.g_lambda_x, d.g_lambda_lambda}}};
        const auto step = detail::solve2(hess, {-d.g_x, -d.g_lambda}, opt.min_det);
        if (!step) throw SingularJacobian("Hessian at (" + std::to_string(x) + ", " + std::to_string(lambda) + ")");
        double t = 1.0;
        for (int k = 0; k < 40 && !germ.in_domain(x + t * (*step)[0], lambda + t * (*step)[1]); ++k) t *= 0.5;
        x += t * (*step)[0];
        lambda += t * (*step)[1];
    }
    throw NoConvergence("critical point refinement after " + std::to_string(opt.max_iterations) + " iterations");
}

}  // namespace unfolder
