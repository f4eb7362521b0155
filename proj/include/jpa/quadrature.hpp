#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "jpa/errors.hpp"

namespace jpa {

namespace quad {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double gk_nodes[15] = {
    -0.99145537112081263921, -0.94910791234275852453, -0.86486442335976907279,
    -0.74153118559939443986, -0.58608723546769113029, -0.40584515137739716691,
    -0.20778495500789846760, 0.0,
    0.20778495500789846760,  0.40584515137739716691,  0.58608723546769113029,
    0.74153118559939443986,  0.86486442335976907279,  0.94910791234275852453,
    0.99145537112081263921};

inline constexpr double gk_weights[15] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801, 0.20443294007529889241,
    0.19035057806478540991, 0.16900472663926790283, 0.14065325971552591875,
    0.10479001032225018384, 0.06309209262997855329, 0.02293532201052922496};

inline constexpr double g7_weights[15] = {
    0.0, 0.12948496616886969327, 0.0, 0.27970539148927666790, 0.0,
    0.38183005050511894495, 0.0, 0.41795918367346938776, 0.0,
    0.38183005050511894495, 0.0, 0.27970539148927666790, 0.0,
    0.12948496616886969327, 0.0};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
Estimate gk15(F&& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double m = 0.5 * (a + b);
    double acc_k = 0.0, acc_g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double y = f(m + h * gk_nodes[i]);
        acc_k += gk_weights[i] * y;
        acc_g += g7_weights[i] * y;
    }
    Estimate e;
    e.value = acc_k * h;
    const double diff = std::abs(acc_k - acc_g) * std::abs(h);
    // standard QUADPACK-style sharpened error estimate
    e.error = std::pow(200.0 * diff, 1.5);
    if (e.error > diff) e.error = diff;
    return e;
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
template <class F>
Estimate adaptive(F&& f, double a, double b, double abstol, int max_intervals = 2000) {
    std::priority_queue<Interval> heap;
    Estimate first = gk15(f, a, b);
    heap.push({a, b, first.value, first.error});
    double total = first.value;
    double err = first.error;
    int n = 1;
    while (err > abstol && n < max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) { // cannot split further
            heap.push(worst);
            break;
        }
        Estimate l = gk15(f, worst.a, m);
        Estimate r = gk15(f, m, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push({worst.a, m, l.value, l.error});
        heap.push({m, worst.b, r.value, r.error});
        ++n;
    }
    // recompute the error sum to avoid accumulation drift
    err = 0.0;
    while (!heap.empty()) {
        err += heap.top().error;
        heap.pop();
    }
    return {total, err};
}

} // namespace quad

/// Kernel description for the principal-value self-energy integral.
/// f2(k) must be finite on (0, k_max); beyond a finite k_max the kernel is
/// zero. An infinite k_max requires the large-k power law f2 ~ C k^-p.
struct PvKernel {
    std::function<double(double)> f2;
    double k_max = std::numeric_limits<double>::infinity();
    double tail_exponent = 3.0;
};

struct PvResult {
    std::complex<double> value; // Re: PV integral; Im: -pi/v f2(omega/v)
    double error = 0.0;
};

/// Principal value of int_0^inf dk f2(k)/(omega - v k), with the on-shell
/// imaginary part -(pi/v) f2(omega/v) appended analytically.
///
/// Scheme: subtract f2(k*)/(omega - v k) on the symmetric window
/// [k*/2, 3k*/2] (whose principal value vanishes), integrate the regular
/// remainder adaptively, add the outer pieces in geometric panels up to
/// 1e4 k*, and close with a three-term power-law tail.
inline PvResult pv_self_energy(const PvKernel& kernel, double omega, double v, double abstol) {
    if (!(omega > 0.0)) throw domain_error("pv_self_energy: omega must be positive");
    const double ks = omega / v;
    const double f2s = kernel.f2(ks);

    auto plain = [&](double k) { return kernel.f2(k) / (omega - v * k); };
    auto regular = [&](double k) {
        const double d = omega - v * k;
        if (std::abs(d) < 1e-9 * omega) {
            // removable singularity: limit is -f2'(k*)/v
            const double h = 1e-6 * ks;
            return -(kernel.f2(ks + h) - kernel.f2(ks - h)) / (2.0 * h * v);
        }
        return (kernel.f2(k) - f2s) / d;
    };

    double total = 0.0;
    double err = 0.0;
    const double tol_piece = abstol / 16.0;

    // singular window, subtracted
    {
        auto e = quad::adaptive(regular, 0.5 * ks, std::min(1.5 * ks, kernel.k_max), tol_piece);
        total += e.value;
        err += e.error;
    }
    // below the window
    {
        auto e = quad::adaptive(plain, 0.0, 0.5 * ks, tol_piece);
        total += e.value;
        err += e.error;
    }
    // above the window, geometric panels; slowly decaying kernels (p = 1)
    // need the power-law anchor pushed further out before the tail estimate
    // becomes exact enough
    const double reach = kernel.tail_exponent < 2.0 ? 1e6 : 1e4;
    const double k_top = std::min(reach * ks, kernel.k_max);
    double a = 1.5 * ks;
    while (a < k_top) {
        const double b = std::min(4.0 * a, k_top);
        auto e = quad::adaptive(plain, a, b, tol_piece);
        total += e.value;
        err += e.error;
        a = b;
    }
    // analytic power-law tail: f2 ~ C k^-p matched at k_top
    if (kernel.k_max > k_top) {
        const double p = kernel.tail_exponent;
        const double C = kernel.f2(k_top) * std::pow(k_top, p);
        const double aa = omega / v;
        double tail = std::pow(k_top, -p) / p;
        tail += aa * std::pow(k_top, -p - 1.0) / (p + 1.0);
        tail += aa * aa * std::pow(k_top, -p - 2.0) / (p + 2.0);
        total += -(C / v) * tail;
        err += std::abs(C / v) * std::pow(aa, 3.0) * std::pow(k_top, -p - 3.0) / (p + 3.0);
    }

    if (err > abstol) {
        throw accuracy_error("pv_self_energy: requested tolerance not reached",
                             {total, -std::numbers::pi / v * f2s}, err);
    }
    PvResult r;
    r.value = {total, -std::numbers::pi / v * f2s};
    r.error = err;
    return r;
}

} // namespace jpa
