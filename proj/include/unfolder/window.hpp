#pragma once

#include <array>
#include <string>

#include "errors.hpp"

namespace unfolder {

/// Rectangle in the (lambda, x) plane. Algorithms work in coordinates
/// normalized so that the window becomes the unit square.
struct Window {
    double x_min = 0.0;
    double x_max = 1.0;
    double lambda_min = 0.0;
    double lambda_max = 1.0;

    void validate() const
    {
        if (!(x_max > x_min) || !(lambda_max > lambda_min))
            throw InvalidParameter("empty window");
    }

    double x_span() const { return x_max - x_min; }
    double lambda_span() const { return lambda_max - lambda_min; }

    bool contains(double x, double lambda, double slack = 0.0) const
    {
        const double sx = slack * x_span(), sl = slack * lambda_span();
        return x >= x_min - sx && x <= x_max + sx && lambda >= lambda_min - sl &&
               lambda <= lambda_max + sl;
    }

    /// (x, lambda) -> normalized (xi, eta)
    std::array<double, 2> normalize(double x, double lambda) const
    {
        return {(x - x_min) / x_span(), (lambda - lambda_min) / lambda_span()};
    }
    /// normalized (xi, eta) -> (x, lambda)
    std::array<double, 2> denormalize(const std::array<double, 2>& z) const
    {
        return {x_min + z[0] * x_span(), lambda_min + z[1] * lambda_span()};
    }
};

/// Default windows of the built-in models.
/// The open lower edges of the physical domain are closed off slightly inside.
inline Window default_window(const std::string& model)
{
    if (model == "sh") return {0.05, 6.0, 0.01, 3.0};
    if (model == "ldgc_b" || model == "ldgc_c") return {0.05, 3.0, 0.001, 0.4};
    throw InvalidParameter("no default window for model '" + model + "'");
}

}  // namespace unfolder
