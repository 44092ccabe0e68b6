#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "jet.hpp"

namespace unfolder {

/// The seven derivative values the recognition conditions are built from.
struct Derivatives {
    double g = 0.0;
    double g_x = 0.0;
    double g_lambda = 0.0;
    double g_xx = 0.0;
    double g_lambda_x = 0.0;
    double g_lambda_lambda = 0.0;
    double g_xxx = 0.0;

    static Derivatives from_jet(const Jet& j)
    {
        return {j.partial(0, 0), j.partial(1, 0), j.partial(0, 1), j.partial(2, 0),
                j.partial(1, 1), j.partial(0, 2), j.partial(3, 0)};
    }

    /// Largest magnitude among the seven values; 1 when all vanish.
    double scale() const;
};

inline double Derivatives::scale() const
{
    double s = 0.0;
    for (double v : {g, g_x, g_lambda, g_xx, g_lambda_x, g_lambda_lambda, g_xxx})
        s = std::max(s, std::abs(v));
    return s > 0.0 ? s : 1.0;
}

/**
 * A scalar bifurcation problem g(x, lambda) = 0 evaluated as jets.
 *
 * Evaluation outside the validity domain raises DomainError; the evaluator
 * itself is never called there.
 */
class Germ {
public:
    using Evaluator = std::function<Jet(double, double)>;
    using Predicate = std::function<bool(double, double)>;
    using Scalar = std::function<double(double, double)>;

    Germ() = default;
    Germ(std::string model, std::string state_name, std::string control_name, Evaluator eval,
         Predicate domain)
        : model_(std::move(model)),
          state_name_(std::move(state_name)),
          control_name_(std::move(control_name)),
          eval_(std::move(eval)),
          domain_(std::move(domain))
    {
    }

    Jet operator()(double x, double lambda) const
    {
        if (!in_domain(x, lambda))
            throw DomainError(model_ + " evaluated at (" + std::to_string(x) + ", " +
                              std::to_string(lambda) + ")");
        return eval_(x, lambda);
    }

    double value(double x, double lambda) const { return (*this)(x, lambda).value(); }
    Derivatives derivatives(double x, double lambda) const
    {
        return Derivatives::from_jet((*this)(x, lambda));
    }

    bool in_domain(double x, double lambda) const
    {
        return std::isfinite(x) && std::isfinite(lambda) && (!domain_ || domain_(x, lambda));
    }

    const std::string& model() const { return model_; }
    const std::string& state_name() const { return state_name_; }
    const std::string& control_name() const { return control_name_; }

    /// Optional physicality function (e.g. shear-flow energy); f >= 0 is physical.
    bool has_physicality() const { return static_cast<bool>(physicality_); }
    double physicality(double x, double lambda) const { return physicality_(x, lambda); }
    Germ& with_physicality(Scalar f)
    {
        physicality_ = std::move(f);
        return *this;
    }

private:
    std::string model_ = "user";
    std::string state_name_ = "x";
    std::string control_name_ = "lambda";
    Evaluator eval_;
    Predicate domain_;
    Scalar physicality_;
};

/// c * g, same zero set and validity domain.
inline Germ scaled(const Germ& g, double c)
{
    Germ out(g.model(), g.state_name(), g.control_name(),
             [g, c](double x, double l) { return g(x, l) * c; },
             [g](double x, double l) { return g.in_domain(x, l); });
    if (g.has_physicality())
        out.with_physicality([g](double x, double l) { return g.physicality(x, l); });
    return out;
}

}  // namespace unfolder
