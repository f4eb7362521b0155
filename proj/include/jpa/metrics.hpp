#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "jpa/response.hpp"

namespace jpa {

/// Sampled gain profile plus the analytic evaluator used for refining
/// crossings. The grid is symmetric about delta = 0 and strictly increasing.
struct GainProfile {
    std::vector<double> delta;
    std::vector<double> gs; // |u(delta)|^2
    std::vector<double> gi; // |v(-delta)|^2
    std::function<double(double)> gs_eval;
    double half_width = 0.0;
    bool unstable = false;
};

/// Sample G_s over [-W, W] (clamped below omega_ref), widening the window
/// up to `widen_steps` times if the ends do not fall below half maximum.
/// The evaluator is stored in the profile for crossing refinement, so it must
/// own its state (capture by value).
inline GainProfile build_profile(std::function<GainPoint(double)> gain, double width_hint,
                                 double omega_ref, int n = 2001, int widen_steps = 3) {
    if (n < 5 || n % 2 == 0) throw domain_error("build_profile: n must be odd and >= 5");
    const double w_cap = 0.95 * omega_ref;
    double w = std::min(2.0 * width_hint, w_cap);

    GainProfile p;
    for (int attempt = 0;; ++attempt) {
        p.delta.assign(n, 0.0);
        p.gs.assign(n, 0.0);
        p.gi.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            const double d = -w + 2.0 * w * i / (n - 1);
            p.delta[i] = d;
            const GainPoint gp = gain(d);
            p.gs[i] = std::norm(gp.u);
            p.gi[i] = std::norm(gain(-d).v);
        }
        const double half = 0.5 * p.gs[n / 2];
        if ((p.gs.front() < half && p.gs.back() < half) || attempt >= widen_steps ||
            w >= w_cap) {
            break;
        }
        w = std::min(2.0 * w, w_cap);
    }
    p.half_width = w;
    p.gs_eval = [gain](double d) { return std::norm(gain(d).u); };
    return p;
}

/// Strict local maxima with a relative prominence floor.
inline int count_peaks(const std::vector<double>& y, double rel_prominence = 1e-6) {
    const int n = static_cast<int>(y.size());
    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, v);
    const double floor = rel_prominence * ymax;
    int peaks = 0;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
        // prominence: drop to the lowest valley before a higher point is met
        double left_min = y[i];
        for (int j = i - 1; j >= 0; --j) {
            left_min = std::min(left_min, y[j]);
            if (y[j] > y[i]) break;
        }
        double right_min = y[i];
        for (int j = i + 1; j < n; ++j) {
            right_min = std::min(right_min, y[j]);
            if (y[j] > y[i]) break;
        }
        if (y[i] - std::max(left_min, right_min) >= floor) ++peaks;
    }
    return peaks;
}

/// Positions (grid indices) of the counted peaks; used for symmetry checks.
inline std::vector<int> peak_indices(const std::vector<double>& y, double rel_prominence = 1e-6) {
    std::vector<int> idx;
    const int n = static_cast<int>(y.size());
    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, v);
    const double floor = rel_prominence * ymax;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
        double left_min = y[i], right_min = y[i];
        for (int j = i - 1; j >= 0; --j) {
            left_min = std::min(left_min, y[j]);
            if (y[j] > y[i]) break;
        }
        for (int j = i + 1; j < n; ++j) {
            right_min = std::min(right_min, y[j]);
            if (y[j] > y[i]) break;
        }
        if (y[i] - std::max(left_min, right_min) >= floor) idx.push_back(i);
    }
    return idx;
}

struct Metrics {
    double g_max = 0.0;        // G_s(0)
    double sigma = 0.0;        // FWHM w.r.t. G_s(0)
    double ripple_ratio = 0.0; // (max G_s - G_s(0))/G_s(0)
    double gbp = 0.0;          // sigma * sqrt(g_max)
    int peaks = 0;
};

/// Amplifier figures of merit. The bandwidth takes the first sub-half-max
/// crossing scanning outward from delta = 0 on each side, refined by
/// bisection on the analytic profile, so side lobes beyond a deep valley do
/// not inflate it.
inline Metrics metrics(const GainProfile& p) {
    const int n = static_cast<int>(p.delta.size());
    const int i0 = n / 2;
    Metrics m;
    m.g_max = p.gs[i0];
    const double half = 0.5 * m.g_max;
    if (p.gs.front() >= half || p.gs.back() >= half)
        throw widen_grid_error("metrics: profile does not fall below half maximum inside grid");

    auto refine = [&](double lo, double hi) {
        // G(lo) >= half > G(hi) or vice versa
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (p.gs_eval(mid) >= half) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    double d_plus = p.delta.back();
    for (int i = i0; i + 1 < n; ++i) {
        if (p.gs[i] >= half && p.gs[i + 1] < half) {
            d_plus = refine(p.delta[i], p.delta[i + 1]);
            break;
        }
    }
    double d_minus = p.delta.front();
    for (int i = i0; i > 0; --i) {
        if (p.gs[i] >= half && p.gs[i - 1] < half) {
            d_minus = refine(p.delta[i], p.delta[i - 1]);
            break;
        }
    }
    m.sigma = d_plus - d_minus;
    const double peak = *std::max_element(p.gs.begin(), p.gs.end());
    m.ripple_ratio = std::max(0.0, (peak - m.g_max) / m.g_max);
    m.gbp = m.sigma * std::sqrt(m.g_max);
    m.peaks = count_peaks(p.gs);
    return m;
}

/// Closed-form Markov gain-bandwidth reference
/// sigma sqrt(G) = |Gamma (Gamma_E - Gamma_I) + |eps|^2| / sqrt(Gamma^2 - 2 Gamma_I^2/G).
inline double tradeoff_reference(double gamma_e, double gamma_i, double epsilon_p, double g_max) {
    const double gamma = gamma_e + gamma_i;
    const double denom2 = gamma * gamma - 2.0 * gamma_i * gamma_i / g_max;
    if (denom2 <= 0.0)
        throw domain_error("tradeoff_reference: G_max must exceed 2 Gamma_I^2/Gamma^2");
    return std::abs(gamma * (gamma_e - gamma_i) + epsilon_p * epsilon_p) / std::sqrt(denom2);
}

} // namespace jpa
