#pragma once

/** @file jet.hpp

    @brief Truncated bivariate Taylor polynomials ("jets") of total degree 3.

    A jet stores the coefficients c_ij (i + j <= 3) of

        f(x, lambda) ~ sum c_ij (x - x0)^i (lambda - lambda0)^j

    around an implicit expansion point.  Arithmetic on jets propagates all
    mixed partial derivatives up to third order exactly (up to rounding),
    which is everything the singularity recognition conditions need.
*/

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "errors.hpp"

namespace unfolder {

template <typename T>
class BasicJet {
public:
    static constexpr int order = 3;
    static constexpr std::size_t size = 10;

    constexpr BasicJet() = default;

    /// Constant jet.
    constexpr BasicJet(T value) { c_[0] = value; }  // NOLINT: implicit by intent

    /// Coefficient storage index of c_ij, ordered by total degree.
    static constexpr std::size_t index(int i, int j)
    {
        const int d = i + j;
        // offsets of the first coefficient of each degree: 0, 1, 3, 6
        return static_cast<std::size_t>(d * (d + 1) / 2 + j);
    }

    T coeff(int i, int j) const
    {
        if (i < 0 || j < 0 || i + j > order)
            throw OrderExceeded("coefficient (" + std::to_string(i) + "," + std::to_string(j) + ")");
        return c_[index(i, j)];
    }

    void set_coeff(int i, int j, T v)
    {
        if (i < 0 || j < 0 || i + j > order)
            throw OrderExceeded("coefficient (" + std::to_string(i) + "," + std::to_string(j) + ")");
        c_[index(i, j)] = v;
    }

    constexpr T value() const { return c_[0]; }
    constexpr const std::array<T, size>& coeffs() const { return c_; }

    /// d^{i+j} f / dx^i dlambda^j at the expansion point (= i! j! c_ij).
    T partial(int i, int j) const
    {
        const T c = coeff(i, j);
        int f = 1;
        for (int k = 2; k <= i; ++k) f *= k;
        for (int k = 2; k <= j; ++k) f *= k;
        return c * static_cast<T>(f);
    }

    bool is_finite() const
    {
        for (const T& v : c_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    BasicJet& operator+=(const BasicJet& o)
    {
        for (std::size_t k = 0; k < size; ++k) c_[k] += o.c_[k];
        return *this;
    }
    BasicJet& operator-=(const BasicJet& o)
    {
        for (std::size_t k = 0; k < size; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    BasicJet& operator*=(T s)
    {
        for (T& v : c_) v *= s;
        return *this;
    }
    BasicJet& operator*=(const BasicJet& o) { return *this = *this * o; }

    friend BasicJet operator+(BasicJet a, const BasicJet& b) { return a += b; }
    friend BasicJet operator-(BasicJet a, const BasicJet& b) { return a -= b; }
    friend BasicJet operator-(BasicJet a)
    {
        for (T& v : a.c_) v = -v;
        return a;
    }
    friend BasicJet operator*(BasicJet a, T s) { return a *= s; }
    friend BasicJet operator*(T s, BasicJet a) { return a *= s; }
    friend BasicJet operator+(BasicJet a, T s)
    {
        a.c_[0] += s;
        return a;
    }
    friend BasicJet operator+(T s, BasicJet a) { return a + s; }
    friend BasicJet operator-(BasicJet a, T s)
    {
        a.c_[0] -= s;
        return a;
    }
    friend BasicJet operator-(T s, const BasicJet& a) { return -a + s; }

    /// Truncated Cauchy product.
    friend BasicJet operator*(const BasicJet& a, const BasicJet& b)
    {
        BasicJet r;
        for (int i1 = 0; i1 <= order; ++i1)
            for (int j1 = 0; i1 + j1 <= order; ++j1) {
                const T av = a.c_[index(i1, j1)];
                if (av == T(0)) continue;
                for (int i2 = 0; i1 + j1 + i2 <= order; ++i2)
                    for (int j2 = 0; i1 + j1 + i2 + j2 <= order; ++j2)
                        r.c_[index(i1 + i2, j1 + j2)] += av * b.c_[index(i2, j2)];
            }
        return r;
    }

    friend BasicJet operator/(const BasicJet& a, const BasicJet& b) { return a * pow(b, T(-1)); }
    friend BasicJet operator/(BasicJet a, T s) { return a *= T(1) / s; }

    /// Composes a univariate function with this jet.  `taylor` holds the
    /// Taylor coefficients f(t0), f'(t0), f''(t0)/2, f'''(t0)/6 at t0 = value().
    BasicJet compose(const std::array<T, 4>& taylor) const
    {
        BasicJet delta = *this;
        delta.c_[0] = T(0);
        const BasicJet d2 = delta * delta;
        const BasicJet d3 = d2 * delta;
        BasicJet r(taylor[0]);
        r += delta * taylor[1];
        r += d2 * taylor[2];
        r += d3 * taylor[3];
        return r;
    }

    /// a^r for real r; the base must be positive at the expansion point.
    friend BasicJet pow(const BasicJet& a, T r)
    {
        const T t0 = a.value();
        if (!(t0 > T(0)))
            throw NonpositiveBase("jet base " + std::to_string(static_cast<double>(t0)));
        if (r == T(1)) return a;
        // binomial coefficients C(r,k) t0^{r-k}
        std::array<T, 4> taylor{};
        T binom = T(1);
        for (int k = 0; k <= order; ++k) {
            taylor[static_cast<std::size_t>(k)] = binom * std::pow(t0, r - T(k));
            binom *= (r - T(k)) / T(k + 1);
        }
        return a.compose(taylor);
    }

    friend bool operator==(const BasicJet&, const BasicJet&) = default;

private:
    std::array<T, size> c_{};
};

using Jet = BasicJet<double>;

/// Jets of the coordinate functions x and lambda at (x0, lambda0).
template <typename T = double>
std::pair<BasicJet<T>, BasicJet<T>> seed_variables(T x0, T lambda0)
{
    BasicJet<T> x(x0), l(lambda0);
    x.set_coeff(1, 0, T(1));
    l.set_coeff(0, 1, T(1));
    return {x, l};
}

template <typename T>
T partial(const BasicJet<T>& a, int i, int j)
{
    return a.partial(i, j);
}

}  // namespace unfolder
