#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace jpa {

using mat4 = std::array<std::array<double, 4>, 4>;

inline mat4 matmul(const mat4& a, const mat4& b) {
    mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline double trace(const mat4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

inline double det4(const mat4& m) {
    // cofactor expansion via 2x2 minors (Laplace along the first two rows)
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    const double s01 = minor2(0, 1, 0, 1), s02 = minor2(0, 1, 0, 2), s03 = minor2(0, 1, 0, 3);
    const double s12 = minor2(0, 1, 1, 2), s13 = minor2(0, 1, 1, 3), s23 = minor2(0, 1, 2, 3);
    const double c01 = minor2(2, 3, 0, 1), c02 = minor2(2, 3, 0, 2), c03 = minor2(2, 3, 0, 3);
    const double c12 = minor2(2, 3, 1, 2), c13 = minor2(2, 3, 1, 3), c23 = minor2(2, 3, 2, 3);
    return s01 * c23 - s02 * c13 + s03 * c12 + s12 * c03 - s13 * c02 + s23 * c01;
}

/// Characteristic polynomial of a 4x4 matrix via Newton's identities:
/// lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0.
inline std::array<double, 4> char_poly(const mat4& a) {
    const mat4 a2 = matmul(a, a);
    const mat4 a3 = matmul(a2, a);
    const mat4 a4 = matmul(a3, a);
    const double t1 = trace(a), t2 = trace(a2), t3 = trace(a3), t4 = trace(a4);
    const double e1 = t1;
    const double e2 = (e1 * t1 - t2) / 2.0;
    const double e3 = (e2 * t1 - e1 * t2 + t3) / 3.0;
    const double e4 = (e3 * t1 - e2 * t2 + e1 * t3 - t4) / 4.0;
    return {e4, -e3, e2, -e1}; // c0, c1, c2, c3
}

/// Roots of a monic quartic by balanced Durand-Kerner iteration with a
/// Newton polish. Accuracy target ~1e-12 absolute on O(1)-scaled roots.
inline std::array<std::complex<double>, 4> quartic_roots(const std::array<double, 4>& c) {
    using cd = std::complex<double>;
    // balance: scale lambda = s mu so the coefficients of the mu-polynomial are O(1)
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (c[i] != 0.0) s = std::max(s, std::pow(std::abs(c[i]), 1.0 / (4 - i)));
    }
    if (s == 0.0) return {cd(0), cd(0), cd(0), cd(0)};
    std::array<cd, 5> p; // p[j] = coefficient of mu^j, monic
    p[4] = 1.0;
    for (int i = 0; i < 4; ++i) p[i] = c[i] / std::pow(s, 4 - i);

    auto eval = [&](cd z) {
        cd r = p[4];
        for (int j = 3; j >= 0; --j) r = r * z + p[j];
        return r;
    };
    auto deriv = [&](cd z) {
        cd r = 4.0 * p[4];
        for (int j = 3; j >= 1; --j) r = r * z + double(j) * p[j];
        return r;
    };

    std::array<cd, 4> z;
    for (int j = 0; j < 4; ++j) {
        const double ang = 2.0 * std::numbers::pi * (j + 0.25) / 4.0;
        z[j] = cd(0.9 * std::cos(ang), 0.9 * std::sin(ang));
    }
    for (int it = 0; it < 200; ++it) {
        double step = 0.0;
        for (int j = 0; j < 4; ++j) {
            cd denom = 1.0;
            for (int k = 0; k < 4; ++k)
                if (k != j) denom *= z[j] - z[k];
            const cd d = eval(z[j]) / denom;
            z[j] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-15) break;
    }
    for (int j = 0; j < 4; ++j) { // Newton refinement
        for (int it = 0; it < 4; ++it) {
            const cd d = deriv(z[j]);
            if (std::abs(d) == 0.0) break;
            z[j] -= eval(z[j]) / d;
        }
        z[j] *= s;
    }
    // deterministic order: by real part, then imaginary part
    std::sort(z.begin(), z.end(), [](cd a, cd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

inline std::array<std::complex<double>, 4> eigenvalues4(const mat4& a) {
    return quartic_roots(char_poly(a));
}

} // namespace jpa
