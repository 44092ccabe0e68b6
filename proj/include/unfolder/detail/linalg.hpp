#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace unfolder::detail {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Mat2 = std::array<Vec2, 2>;
using Mat3 = std::array<Vec3, 3>;

inline double det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

/// Cramer's rule; nullopt when |det| < min_det.
inline std::optional<Vec2> solve2(const Mat2& m, const Vec2& rhs, double min_det)
{
    const double d = det2(m);
    if (!(std::abs(d) >= min_det)) return std::nullopt;
    return Vec2{(rhs[0] * m[1][1] - m[0][1] * rhs[1]) / d, (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / d};
}

/// Gaussian elimination with partial pivoting.
inline std::optional<Vec3> solve3(Mat3 m, Vec3 rhs, double min_pivot = 1e-300)
{
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (!(std::abs(m[piv][col]) > min_pivot)) return std::nullopt;
        std::swap(m[col], m[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vec3 x{};
    for (int r = 2; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
        x[r] = s / m[r][r];
    }
    return x;
}

inline double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }
inline double dot2(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline int sign_of(double v) { return v < 0.0 ? -1 : 1; }

}  // namespace unfolder::detail
