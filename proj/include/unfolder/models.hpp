#pragma once

/** @file models.hpp

    @brief Built-in bifurcation problems.

    - Sugama-Horton (SH): G(u, q) = (q d_a u^-2 - 1)(-q + u m(u)) + alpha with
      anomalous viscosity m(u) = u^p (b + a u^(1-p)).  State u, control q.
    - Lebedev et al. (LDGC), local forms near the points B and C, each with an
      additive unfolding term alpha'.  State p (pressure gradient), control phi.
*/

#include <cmath>
#include <string>

#include "errors.hpp"
#include "germ.hpp"
#include "jet.hpp"

namespace unfolder {

struct ShParams {
    double a = 0.05;
    double b = 0.95;
    double p = -1.5;
    double d_a = 1.0;
    double c = 5.0;  ///< only enters the shear-flow energy
    double alpha = 0.0;

    void validate() const
    {
        if (!(a > 0.0)) throw InvalidParameter("a must be > 0");
        if (!(b > 0.0)) throw InvalidParameter("b must be > 0");
        if (!(d_a > 0.0)) throw InvalidParameter("d_a must be > 0");
        if (!(c > 0.0)) throw InvalidParameter("c must be > 0");
        if (!(p <= -1.0)) throw InvalidParameter("p must be <= -1");
        if (!std::isfinite(alpha)) throw InvalidParameter("alpha must be finite");
    }

    /// Critical d_a at which the branch crossing degenerates to a pitchfork (p < -1).
    double critical_d_a() const { return (1.0 + p) / (a * (p - 1.0)); }

    /// Crossing of q = u^2/d_a with q = u m(u), when a d_a < 1.
    double crossing_u() const { return std::pow(b * d_a / (1.0 - a * d_a), 1.0 / (1.0 - p)); }
};

struct LdgcParams {
    double d_tilde = 0.1;
    double d_tilde_m = 0.05;
    double mu = 0.25;
    double gamma = 5.0;
    double alpha_prime = 0.0;

    void validate() const
    {
        if (!(d_tilde > 0.0)) throw InvalidParameter("d_tilde must be > 0");
        if (!(d_tilde_m > 0.0)) throw InvalidParameter("d_tilde_m must be > 0");
        if (!(mu > 0.0)) throw InvalidParameter("mu must be > 0");
        if (!(gamma > 0.0)) throw InvalidParameter("gamma must be > 0");
        if (d_tilde == d_tilde_m) throw InvalidParameter("d_tilde must differ from d_tilde_m");
        if (!std::isfinite(alpha_prime)) throw InvalidParameter("alpha_prime must be finite");
    }
};

/// Steady-state shear-flow kinetic energy f = (u^2 - d_a q) / (c u).
inline double sh_shear_energy(double u, double q, const ShParams& params)
{
    if (!(u > 0.0)) throw DomainError("shear energy needs u > 0, got " + std::to_string(u));
    return (u * u - params.d_a * q) / (params.c * u);
}

/// G(u, q) as a jet; usable with any d_a, including a perturbed copy of params.
inline Jet sh_jet(double u, double q, const ShParams& s)
{
    const auto [U, Q] = seed_variables(u, q);
    const Jet m = pow(U, s.p) * (s.b + s.a * pow(U, 1.0 - s.p));
    const Jet flux_factor = Q * s.d_a * pow(U, -2.0) - 1.0;
    const Jet viscous_factor = -Q + U * m;
    return flux_factor * viscous_factor + s.alpha;
}

inline Germ sh_germ(const ShParams& params)
{
    params.validate();
    Germ g(
        "sh", "u", "q", [params](double u, double q) { return sh_jet(u, q, params); },
        [](double u, double q) { return u > 0.0 && q > 0.0; });
    g.with_physicality([params](double u, double q) { return sh_shear_energy(u, q, params); });
    return g;
}

inline Germ ldgc_germ_B(const LdgcParams& params)
{
    params.validate();
    return Germ(
        "ldgc_b", "p", "phi",
        [s = params](double p, double phi) {
            const auto [P, Phi] = seed_variables(p, phi);
            const Jet g = (Phi - s.d_tilde * s.mu * P) * (P - 1.0) * pow(P, -1.0) *
                          (s.gamma / (s.d_tilde - s.d_tilde_m));
            return g + s.alpha_prime;
        },
        [](double p, double) { return p > 0.0; });
}

inline Germ ldgc_germ_C(const LdgcParams& params)
{
    params.validate();
    return Germ(
        "ldgc_c", "p", "phi",
        [s = params](double p, double phi) {
            const auto [P, Phi] = seed_variables(p, phi);
            const Jet g = (P * P * s.d_tilde - Phi) * (P - 1.0) * pow(P, -1.0) * (s.gamma / s.d_tilde_m);
            return g + s.alpha_prime;
        },
        [](double p, double) { return p > 0.0; });
}

}  // namespace unfolder
