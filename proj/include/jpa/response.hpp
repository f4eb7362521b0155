#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "jpa/quartic.hpp"
#include "jpa/self_energy.hpp"

namespace jpa {

/// Bogoliubov response at one detuning: signal coefficient u, idler
/// coefficient v, parametric determinant d and the 2x2 susceptibility chi
/// mapping (B_in(D), B_in^dag(-D)) onto (A_s(D), A_s^dag(-D)).
struct GainPoint {
    double delta = 0.0;
    complexd u{1.0, 0.0};
    complexd v{0.0, 0.0};
    complexd d{0.0, 0.0};
    std::array<complexd, 4> chi{}; // row-major 2x2
    bool unstable = false;
};

namespace detail {

inline void check_determinant(const complexd& d, double delta, double scale) {
    if (std::abs(d) < 1e-15 * scale * scale)
        throw singular_gain_error("parametric determinant vanished (pump at/above threshold)",
                                  delta);
}

} // namespace detail

/// Markov (frequency-flat) gain coefficients.
inline GainPoint markov_gain(double delta, const PumpSpec& pump, double gamma_e, double gamma_i) {
    if (!(gamma_e > 0.0)) throw domain_error("markov_gain: gamma_e must be positive");
    if (gamma_i < 0.0) throw domain_error("markov_gain: gamma_i must be >= 0");
    const complexd i(0.0, 1.0);
    const double gamma = gamma_e + gamma_i;
    const double dp = pump.delta_p;

    GainPoint gp;
    gp.delta = delta;
    const complexd wp = dp + delta + i * gamma;
    const complexd wm = dp - delta - i * gamma;
    gp.d = wp * wm - std::norm(pump.epsilon_p);
    detail::check_determinant(gp.d, delta, gamma);
    gp.u = 1.0 - 2.0 * i * gamma_e * wm / gp.d;
    gp.v = -2.0 * i * pump.epsilon_p * gamma_e / gp.d;
    const complexd pref = i * std::sqrt(2.0 * gamma_e) / gp.d;
    gp.chi = {pref * wm, pref * pump.epsilon_p, -pref * std::conj(pump.epsilon_p), -pref * wp};
    gp.unstable = (dp * dp + gamma * gamma) <= std::norm(pump.epsilon_p);
    return gp;
}

/// Frequency-dependent gain coefficients for the single-mode variants.
/// Sigma_E is taken at omega_ref +/- delta, never symmetrized; |delta| must
/// stay below omega_ref for the co-rotating branch to exist.
inline GainPoint nonmarkov_gain(double delta, const PumpSpec& pump, const SelfEnergyModel& model,
                                double gamma_i) {
    const complexd i(0.0, 1.0);
    if (model.mode != SigmaMode::markov && std::abs(delta) >= model.omega_ref)
        throw domain_error("nonmarkov_gain: |delta| must be below omega_ref");
    const double dp = pump.delta_p;

    const complexd se_p = model.sigma_e_delta(delta);
    const complexd se_m = model.sigma_e_delta(-delta);
    const complexd sp = se_p - i * gamma_i;              // Sigma(delta)
    const complexd smc = std::conj(se_m) + i * gamma_i;  // Sigma*(-delta)

    GainPoint gp;
    gp.delta = delta;
    const complexd wp = dp + delta - sp;
    const complexd wm = dp - delta - smc;
    gp.d = wp * wm - std::norm(pump.epsilon_p);
    detail::check_determinant(gp.d, delta, model.omega_ref);
    const double im_p = se_p.imag();
    gp.u = 1.0 + 2.0 * i * im_p * wm / gp.d;
    gp.v = 2.0 * i * pump.epsilon_p * im_p / gp.d;
    const complexd pref = i * std::sqrt(2.0 * model.gamma_e) / gp.d;
    gp.chi = {pref * wm, pref * pump.epsilon_p, -pref * std::conj(pump.epsilon_p), -pref * wp};

    const complexd s0 = model.sigma_e_delta(0.0) - i * gamma_i;
    gp.unstable = dp * dp + std::norm(s0) - 2.0 * dp * s0.real() <= std::norm(pump.epsilon_p);
    return gp;
}

/// Gain coefficients for the simple-ladder variant. pump.delta_p is the
/// resonator-branch detuning delta_ps; the a-branch detuning and the
/// hybridization rate g come from the derived circuit.
inline GainPoint ladder_gain(double delta, const PumpSpec& pump, const SelfEnergyModel& model,
                             double gamma_i) {
    if (model.dc.variant != Variant::simple_ladder)
        throw unsupported_variant_error("ladder_gain requires the simple-ladder variant");
    const complexd i(0.0, 1.0);
    if (model.mode != SigmaMode::markov && std::abs(delta) >= model.omega_ref)
        throw domain_error("ladder_gain: |delta| must be below omega_ref");
    const double g = *model.dc.g;
    if (!(g > 0.0)) throw domain_error("ladder_gain: g must be positive");
    const double dps = pump.delta_p;
    const double dpa = pump.delta_pa(model.dc);

    const complexd se_p = model.sigma_e_delta(delta);
    const complexd se_m = model.sigma_e_delta(-delta);
    const complexd da_p = dpa + delta - se_p;                // d_a(delta)
    const complexd da_mc = dpa - delta - std::conj(se_m);    // d_a*(-delta)
    const double scale = model.omega_ref;
    if (std::abs(da_p) < 1e-15 * scale || std::abs(da_mc) < 1e-15 * scale)
        throw singular_gain_error("ladder a-mode response diverged", delta);

    const complexd sp = g * g / da_p - i * gamma_i;              // total Sigma(delta)
    const complexd smc = std::conj(g * g / (dpa - delta - se_m) - i * gamma_i);

    GainPoint gp;
    gp.delta = delta;
    const complexd wp = dps + delta - sp;
    const complexd wm = dps - delta - smc;
    gp.d = wp * wm - std::norm(pump.epsilon_p);
    detail::check_determinant(gp.d, delta, scale);
    const double im_p = se_p.imag();
    gp.u = 1.0 + 2.0 * i * g * g * im_p / (gp.d * da_p) * (gp.d / (g * g) + wm / da_p);
    gp.v = 2.0 * i * pump.epsilon_p * g * g * im_p / (gp.d * da_p * da_mc);
    // the A_s^dag(-delta) row follows from conjugating the -delta equations:
    // chi21 = conj(chi12(-delta)), chi22 = conj(chi11(-delta))
    const complexd pref = -i * g * std::sqrt(2.0 * model.gamma_e) / gp.d;
    gp.chi = {pref * wm / da_p, pref * pump.epsilon_p / da_mc,
              -pref * std::conj(pump.epsilon_p) / da_p, -pref * wp / da_mc};
    return gp;
}

struct UnitarityResiduals {
    double r1;    // |u(D)|^2 - |v(D)|^2 ImSig(-D)/ImSig(D) - 1
    complexd r2;  // u(D)v(-D) - v(D)u(-D) ImSig(-D)/ImSig(D)
};

/// Residuals of the generalized Bogoliubov relations for a +/-delta pair of
/// gain points from the same pump and model; both vanish iff gamma_i = 0.
inline UnitarityResiduals unitarity_residuals(const GainPoint& plus, const GainPoint& minus,
                                              const SelfEnergyModel& model) {
    const double im_p = model.sigma_e_delta(plus.delta).imag();
    const double im_m = model.sigma_e_delta(-plus.delta).imag();
    // at the parallel-LC zero omega_0 the damping ratio loses all meaning
    if (im_p == 0.0 || std::abs(im_m) > 1e15 * std::abs(im_p))
        throw domain_error("unitarity_residuals: Im Sigma_E(delta) vanishes (undefined ratio)");
    const double ratio = im_m / im_p;
    UnitarityResiduals r;
    r.r1 = std::norm(plus.u) - std::norm(plus.v) * ratio - 1.0;
    r.r2 = plus.u * minus.v - plus.v * minus.u * ratio;
    return r;
}

/// Dynamical matrix of the ladder system in (Re A_s, Im A_s, Re A_a, Im A_a),
/// with the memoryless closure Sigma_E -> Sigma_E(0).
inline mat4 ladder_dynamical_matrix(double delta_ps, double epsilon_p, double g,
                                    const SelfEnergyModel& model, double gamma_i) {
    const complexd s0 = model.sigma_e_delta(0.0);
    const double gamma_e = -s0.imag();
    const double dpa_p = (delta_ps + model.dc.omega_s - *model.dc.omega_a) - s0.real();
    return mat4{{{-gamma_i, epsilon_p - delta_ps, 0.0, -g},
                 {epsilon_p + delta_ps, -gamma_i, g, 0.0},
                 {0.0, -g, -gamma_e, -dpa_p},
                 {g, 0.0, dpa_p, -gamma_e}}};
}

struct StabilityEigs {
    std::array<complexd, 4> eigenvalues;
    double det;
};

inline StabilityEigs stability_eigs(double delta_ps, double epsilon_p,
                                    const SelfEnergyModel& model, double gamma_i) {
    if (model.dc.variant != Variant::simple_ladder)
        throw unsupported_variant_error("stability_eigs requires the simple-ladder variant");
    const mat4 a = ladder_dynamical_matrix(delta_ps, epsilon_p, *model.dc.g, model, gamma_i);
    return {eigenvalues4(a), det4(a)};
}

enum class ThresholdMechanism { determinant_root, eigenvalue_crossing };

struct ThresholdResult {
    double epsilon_th = 0.0;
    ThresholdMechanism mechanism = ThresholdMechanism::determinant_root;
    std::array<complexd, 4> eigenvalues{}; // at threshold (ladder only)
};

/// Markov threshold |eps_th|^2 = delta_p^2 + Gamma^2.
inline double markov_threshold(double delta_p, double gamma_e, double gamma_i) {
    const double gamma = gamma_e + gamma_i;
    return std::sqrt(delta_p * delta_p + gamma * gamma);
}

/// Single-mode non-Markov threshold |eps_th|^2 = dp^2 + |Sigma(0)|^2 - 2 dp Re Sigma(0).
inline ThresholdResult threshold(double delta_p, const SelfEnergyModel& model, double gamma_i) {
    const complexd s0 = model.sigma_e_delta(0.0) - complexd(0.0, gamma_i);
    ThresholdResult t;
    t.epsilon_th =
        std::sqrt(delta_p * delta_p + std::norm(s0) - 2.0 * delta_p * s0.real());
    t.mechanism = ThresholdMechanism::determinant_root;
    return t;
}

namespace detail {

inline double max_re_eig(double dps, double eps, const SelfEnergyModel& model, double gamma_i) {
    const auto se = stability_eigs(dps, eps, model, gamma_i);
    double m = se.eigenvalues[0].real();
    for (const auto& z : se.eigenvalues) m = std::max(m, z.real());
    return m;
}

} // namespace detail

/// Ladder threshold: smallest pump strength at which the largest real part of
/// the 4x4 dynamical eigenvalues crosses zero, located by bisection to 1e-8
/// relative. The mechanism distinguishes det-sign-change crossings (outer
/// lobes) from complex-pair crossings (inner lobe).
inline ThresholdResult ladder_threshold(double delta_ps, const SelfEnergyModel& model,
                                        double gamma_i, double eps_max = -1.0) {
    if (eps_max <= 0.0) {
        const complexd s0 = model.sigma_e_delta(0.0);
        eps_max = 5.0 * (-s0.imag() + gamma_i + std::abs(delta_ps) + *model.dc.g);
    }
    const int n = 400;
    double prev_eps = 0.0;
    double prev = detail::max_re_eig(delta_ps, 0.0, model, gamma_i);
    std::vector<std::pair<double, double>> curve;
    curve.reserve(n + 1);
    curve.emplace_back(0.0, prev);
    double lo = -1.0, hi = -1.0;
    for (int i = 1; i <= n; ++i) {
        const double eps = eps_max * i / n;
        const double cur = detail::max_re_eig(delta_ps, eps, model, gamma_i);
        curve.emplace_back(eps, cur);
        if (prev < 0.0 && cur >= 0.0) {
            lo = prev_eps;
            hi = eps;
            break;
        }
        prev_eps = eps;
        prev = cur;
    }
    if (lo < 0.0)
        throw threshold_not_found_error("ladder_threshold: no crossing inside bracket",
                                        std::move(curve));
    while ((hi - lo) > 1e-8 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (detail::max_re_eig(delta_ps, mid, model, gamma_i) < 0.0) lo = mid;
        else hi = mid;
    }
    ThresholdResult t;
    t.epsilon_th = 0.5 * (lo + hi);
    const auto se = stability_eigs(delta_ps, t.epsilon_th, model, gamma_i);
    t.eigenvalues = se.eigenvalues;

    // Outer lobes: det(A) changes sign through the crossing; the inner lobe
    // is a complex-pair crossing and leaves the determinant sign intact.
    const double h = 1e-3 * t.epsilon_th;
    const double det_below =
        stability_eigs(delta_ps, t.epsilon_th - h, model, gamma_i).det;
    const double det_above =
        stability_eigs(delta_ps, t.epsilon_th + h, model, gamma_i).det;
    t.mechanism = (det_below > 0.0) != (det_above > 0.0)
                      ? ThresholdMechanism::determinant_root
                      : ThresholdMechanism::eigenvalue_crossing;
    return t;
}

/// All threshold crossings (full-scan mode): every sign change of the max
/// real eigenvalue part on the pump-strength grid, each refined by bisection.
inline std::vector<ThresholdResult> ladder_threshold_scan(double delta_ps,
                                                          const SelfEnergyModel& model,
                                                          double gamma_i, double eps_max,
                                                          int n = 400) {
    std::vector<ThresholdResult> out;
    double prev_eps = 0.0;
    double prev = detail::max_re_eig(delta_ps, 0.0, model, gamma_i);
    for (int i = 1; i <= n; ++i) {
        const double eps = eps_max * i / n;
        const double cur = detail::max_re_eig(delta_ps, eps, model, gamma_i);
        if ((prev < 0.0) != (cur < 0.0)) {
            double lo = prev_eps, hi = eps;
            while ((hi - lo) > 1e-8 * hi) {
                const double mid = 0.5 * (lo + hi);
                if ((detail::max_re_eig(delta_ps, mid, model, gamma_i) < 0.0) == (prev < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            ThresholdResult t;
            t.epsilon_th = 0.5 * (lo + hi);
            t.eigenvalues = stability_eigs(delta_ps, t.epsilon_th, model, gamma_i).eigenvalues;
            out.push_back(t);
        }
        prev_eps = eps;
        prev = cur;
    }
    return out;
}

struct SystemResponse {
    complexd a_s_plus;       // A_s(delta)
    complexd a_s_dag_minus;  // A_s^dag(-delta)
    complexd b_out;          // B_out(delta)
    std::optional<complexd> a_a_plus; // ladder only
};

/// Solve the susceptibility relation for a given input pair and propagate
/// through the input-output relation.
inline SystemResponse system_response(double delta, const PumpSpec& pump,
                                      const SelfEnergyModel& model, double gamma_i,
                                      complexd b_in_plus, complexd b_in_dag_minus) {
    const bool ladder = model.dc.variant == Variant::simple_ladder;
    const GainPoint gp = ladder ? ladder_gain(delta, pump, model, gamma_i)
                                : nonmarkov_gain(delta, pump, model, gamma_i);
    SystemResponse r;
    r.a_s_plus = gp.chi[0] * b_in_plus + gp.chi[1] * b_in_dag_minus;
    r.a_s_dag_minus = gp.chi[2] * b_in_plus + gp.chi[3] * b_in_dag_minus;
    const double im_p = model.sigma_e_delta(delta).imag();
    const double root = std::sqrt(2.0 * model.gamma_e);
    if (ladder) {
        const complexd se_p = model.sigma_e_delta(delta);
        const complexd da_p = pump.delta_pa(model.dc) + delta - se_p;
        const complexd i(0.0, 1.0);
        const complexd a_a = -*model.dc.g / da_p * r.a_s_plus + i * root / da_p * b_in_plus;
        r.a_a_plus = a_a;
        r.b_out = b_in_plus + 2.0 * im_p / root * a_a;
    } else {
        r.b_out = b_in_plus + 2.0 * im_p / root * r.a_s_plus;
    }
    return r;
}

} // namespace jpa
