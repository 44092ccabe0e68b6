#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <unfolder/jet.hpp>

#include "oracle.hpp"

using unfolder::Jet;
using unfolder::seed_variables;

namespace {

Jet random_jet(std::mt19937_64& rng, double lo = -10.0, double hi = 10.0)
{
    std::uniform_real_distribution<double> d(lo, hi);
    Jet j;
    for (int deg = 0; deg <= 3; ++deg)
        for (int k = 0; k <= deg; ++k) j.set_coeff(deg - k, k, d(rng));
    return j;
}

// tolerance relative to the largest coefficient of a
void expect_jets_near(const Jet& a, const Jet& b, double tol)
{
    double scale = 1.0;
    for (double c : a.coeffs()) scale = std::max(scale, std::abs(c));
    for (int deg = 0; deg <= 3; ++deg)
        for (int k = 0; k <= deg; ++k)
            EXPECT_NEAR(a.coeff(deg - k, k), b.coeff(deg - k, k), tol * scale)
                << "coefficient (" << deg - k << ", " << k << ")";
}

// f(x, l) = x^2 l / (1 + x^2 + l^2)^(3/2) - 3 x l^3 + 2, as a jet and as a plain function
Jet composite_jet(double x0, double l0)
{
    const auto [x, l] = seed_variables(x0, l0);
    return x * x * l / pow(1.0 + x * x + l * l, 1.5) - 3.0 * x * l * l * l + 2.0;
}

oracle::Real composite(oracle::Real x, oracle::Real l)
{
    return x * x * l / std::pow(1 + x * x + l * l, oracle::Real(1.5)) - 3 * x * l * l * l + 2;
}

}  // namespace

TEST(Jet, SeedVariablesHaveUnitGradient)
{
    const auto [x, l] = seed_variables(1.5, -2.0);
    EXPECT_EQ(x.value(), 1.5);
    EXPECT_EQ(x.partial(1, 0), 1.0);
    EXPECT_EQ(x.partial(0, 1), 0.0);
    EXPECT_EQ(l.partial(0, 1), 1.0);
    EXPECT_EQ(l.partial(2, 0), 0.0);
}

TEST(Jet, PolynomialPartialsAreExact)
{
    // x^3 + 2 x^2 l - l^3 at (2, 3)
    const auto [x, l] = seed_variables(2.0, 3.0);
    const Jet f = x * x * x + 2.0 * x * x * l - l * l * l;
    EXPECT_DOUBLE_EQ(f.value(), 8.0 + 24.0 - 27.0);
    EXPECT_DOUBLE_EQ(f.partial(1, 0), 3 * 4.0 + 4 * 2.0 * 3.0);
    EXPECT_DOUBLE_EQ(f.partial(0, 1), 2 * 4.0 - 3 * 9.0);
    EXPECT_DOUBLE_EQ(f.partial(2, 0), 6 * 2.0 + 4 * 3.0);
    EXPECT_DOUBLE_EQ(f.partial(1, 1), 4 * 2.0);
    EXPECT_DOUBLE_EQ(f.partial(0, 2), -6 * 3.0);
    EXPECT_DOUBLE_EQ(f.partial(3, 0), 6.0);
    EXPECT_DOUBLE_EQ(f.partial(2, 1), 4.0);
    EXPECT_DOUBLE_EQ(f.partial(1, 2), 0.0);
    EXPECT_DOUBLE_EQ(f.partial(0, 3), -6.0);
}

TEST(Jet, PartialsMatchFiniteDifferences)
{
    auto rng = oracle::rng(1);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int n = 0; n < 200; ++n) {
        const double x = d(rng), l = d(rng);
        const Jet j = composite_jet(x, l);
        for (int deg = 0; deg <= 3; ++deg)
            for (int k = 0; k <= deg; ++k) {
                const double fd = oracle::fd_partial(composite, x, l, deg - k, k);
                const double rtol = deg == 3 ? 1e-3 : 1e-5;
                EXPECT_NEAR(j.partial(deg - k, k), fd, rtol * std::max(1.0, std::abs(fd)))
                    << "at (" << x << ", " << l << ") order (" << deg - k << ", " << k << ")";
            }
    }
}

TEST(Jet, MultiplicationIsCommutativeAndAssociative)
{
    auto rng = oracle::rng(2);
    for (int n = 0; n < 500; ++n) {
        const Jet a = random_jet(rng), b = random_jet(rng), c = random_jet(rng);
        expect_jets_near(a * b, b * a, 1e-13);
        expect_jets_near((a * b) * c, a * (b * c), 1e-13);
    }
}

TEST(Jet, MultiplicationDistributesOverAddition)
{
    auto rng = oracle::rng(3);
    for (int n = 0; n < 200; ++n) {
        const Jet a = random_jet(rng), b = random_jet(rng), c = random_jet(rng);
        expect_jets_near(a * (b + c), a * b + a * c, 1e-12);
    }
}

TEST(Jet, DivisionInvertsMultiplication)
{
    auto rng = oracle::rng(4);
    for (int n = 0; n < 200; ++n) {
        const Jet a = random_jet(rng);
        const Jet b = random_jet(rng, 0.5, 3.0);
        expect_jets_near((a * b) / b, a, 1e-10);
    }
}

TEST(Jet, PowerLaws)
{
    auto rng = oracle::rng(5);
    for (int n = 0; n < 200; ++n) {
        const Jet a = random_jet(rng, 0.5, 2.0);
        expect_jets_near(pow(a, 2.0), a * a, 1e-11);
        expect_jets_near(pow(a, 0.5) * pow(a, 0.5), a, 1e-11);
        expect_jets_near(pow(a, -1.5) * pow(a, 2.5), a, 1e-10);
        expect_jets_near(pow(pow(a, 3.0), 1.0 / 3.0), a, 1e-10);
    }
}

TEST(Jet, ComposeWithExponentialSeries)
{
    // exp(x + 2 l) at (0.3, -0.1): every partial is 2^j exp(0.1)
    const auto [x, l] = seed_variables(0.3, -0.1);
    const Jet inner = x + 2.0 * l;
    const double e = std::exp(inner.value());
    const Jet f = inner.compose({e, e, e / 2.0, e / 6.0});
    for (int deg = 0; deg <= 3; ++deg)
        for (int k = 0; k <= deg; ++k) EXPECT_NEAR(f.partial(deg - k, k), std::pow(2.0, k) * e, 1e-13);
}

TEST(Jet, ScalarOperations)
{
    const auto [x, l] = seed_variables(2.0, 1.0);
    const Jet f = (3.0 - x) * 2.0 + l / 4.0 - 1.0;
    EXPECT_DOUBLE_EQ(f.value(), 1.25);
    EXPECT_DOUBLE_EQ(f.partial(1, 0), -2.0);
    EXPECT_DOUBLE_EQ(f.partial(0, 1), 0.25);
    EXPECT_TRUE(f.is_finite());
}

TEST(Jet, OrderBeyondThreeThrows)
{
    const Jet a(1.0);
    EXPECT_THROW((void)a.partial(4, 0), unfolder::OrderExceeded);
    EXPECT_THROW((void)a.partial(2, 2), unfolder::OrderExceeded);
    EXPECT_THROW((void)a.coeff(-1, 0), unfolder::OrderExceeded);
    Jet b;
    EXPECT_THROW(b.set_coeff(0, 4, 1.0), unfolder::OrderExceeded);
}

TEST(Jet, NonpositiveBaseThrows)
{
    const auto [x, l] = seed_variables(-1.0, 0.0);
    EXPECT_THROW((void)pow(x, 0.5), unfolder::NonpositiveBase);
    EXPECT_THROW((void)(l / l), unfolder::NonpositiveBase);
}

TEST(Jet, FreePartialMatchesMember)
{
    const Jet f = composite_jet(0.4, 0.7);
    EXPECT_EQ(unfolder::partial(f, 2, 1), f.partial(2, 1));
}
