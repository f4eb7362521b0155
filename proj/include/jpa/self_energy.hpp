#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "jpa/circuit.hpp"
#include "jpa/modes.hpp"
#include "jpa/quadrature.hpp"

namespace jpa {

using complexd = std::complex<double>;

enum class SigmaMode { exact, resonant, resonant_exact, markov };

inline const char* to_string(SigmaMode m) {
    switch (m) {
    case SigmaMode::exact: return "exact";
    case SigmaMode::resonant: return "res";
    case SigmaMode::resonant_exact: return "res0";
    case SigmaMode::markov: return "markov";
    }
    return "?";
}

namespace detail {

// Discriminant of the root structure of the self-energy denominator:
// 4 beta/alpha for the series boundary, 4 alpha/beta for parallel/ladder.
inline double root_discriminant(const DerivedCircuit& dc) {
    if (dc.variant == Variant::series_lc) return 4.0 * dc.beta / dc.alpha;
    return 4.0 * dc.alpha / dc.beta;
}

// Below the branch point the denominator roots are purely imaginary; their
// magnitudes |x1| <= |x3| obey |x1||x3| = (omega_sigma/omega)^2 exactly,
// which gives a cancellation-free form for the small root.
struct ImagRoots {
    double x1, x3;
};
inline ImagRoots imag_roots(double b, double scale, double r2) {
    // b = small length ratio (< 1/4), scale = v/(sqrt(2)*L*omega), r2 = (omega_sigma/omega)^2
    const double s = std::sqrt((1.0 - 2.0 * b) + std::sqrt(1.0 - 4.0 * b));
    const double x3 = scale * s;
    return {r2 / x3, x3};
}

} // namespace detail

/// Im Sigma_hat_E(omega): exact closed forms per variant; always <= 0 and
/// equal to -(pi/v) f_k^2 at k = omega/v.
inline double im_sigma_hat(const DerivedCircuit& dc, double omega) {
    if (!(omega > 0.0)) throw domain_error("im_sigma_hat: omega must be positive");
    const double v = dc.tl.v;
    const double ws = dc.omega_s;
    switch (dc.variant) {
    case Variant::series_lc: {
        const double t = dc.beta * omega / v - v / (dc.alpha * omega);
        return -ws * (dc.z_s / (2.0 * dc.tl.z0)) * (ws / omega) / (1.0 + t * t);
    }
    case Variant::parallel_lc: {
        const double t = dc.alpha * omega / v - v / (dc.beta * omega);
        const double gc = std::sqrt(dc.two_gamma_cc() * omega / ws);
        const double gl = std::sqrt(dc.two_gamma_lc() * ws / omega);
        return -0.5 * (gc - gl) * (gc - gl) / (1.0 + t * t);
    }
    case Variant::capacitive: {
        const double aw = dc.alpha * omega / v;
        return -dc.gamma_e_eff * (omega / ws) / (1.0 + aw * aw);
    }
    case Variant::inductive: {
        const double bw = dc.beta * omega / v;
        return -dc.gamma_e_eff * (ws / omega) / (1.0 + 1.0 / (bw * bw));
    }
    case Variant::simple_ladder: {
        const double t = dc.alpha * omega / v - v / (dc.beta * omega);
        return -ws * (dc.tl.z0 / (2.0 * *dc.z_a)) * (omega / ws) / (1.0 + t * t);
    }
    }
    return 0.0;
}

std::complex<double> quadrature_oracle(const DerivedCircuit& dc, double omega,
                                       double abstol = -1.0, double* err_out = nullptr);

/// Re Sigma_hat_E(omega): exact closed forms, with branch selection by the
/// root discriminant. Within 1e-12 of the branch point the closed forms lose
/// significance and the quadrature oracle takes over.
inline double re_sigma_hat(const DerivedCircuit& dc, double omega) {
    if (!(omega > 0.0)) throw domain_error("re_sigma_hat: omega must be positive");
    const double v = dc.tl.v;
    const double ws = dc.omega_s;
    const double pi = std::numbers::pi;

    switch (dc.variant) {
    case Variant::capacitive: {
        const double aw = dc.alpha * omega / v;
        return -ws * (dc.gamma_e_eff * v / (2.0 * pi * ws * ws * dc.alpha)) *
               (pi - 2.0 * aw * std::log(aw)) / (1.0 + aw * aw);
    }
    case Variant::inductive: {
        const double bw = dc.beta * omega / v;
        return -ws * (dc.gamma_e_eff * dc.beta / (2.0 * pi * v)) *
               (pi - 2.0 * bw * std::log(bw)) / (1.0 + bw * bw);
    }
    default: break;
    }

    const double disc = detail::root_discriminant(dc);
    if (std::abs(disc - 1.0) < 1e-12)
        return quadrature_oracle(dc, omega).real();

    const double r2 = (dc.omega_sigma / omega) * (dc.omega_sigma / omega);

    if (dc.variant == Variant::series_lc) {
        const double g2 = (dc.z_s / dc.tl.z0) * (ws / omega); // 1/(cs z0 omega)
        const double pref = g2 * v * v / (dc.beta * dc.beta * omega * omega);
        if (disc < 1.0) {
            const double b = dc.beta / dc.alpha;
            const auto [x1, x3] =
                detail::imag_roots(b, v / (std::sqrt(2.0) * dc.beta * omega), r2);
            const double den1 = (x3 + x1) * (1.0 + x1 * x1) * (1.0 + x3 * x3);
            const double t1 = -pref / 4.0 * (-(1.0 - x1 * x3)) / den1;
            const double den2 = (x3 * x3 - x1 * x1) * (1.0 + x1 * x1) * (1.0 + x3 * x3);
            const double t2 = -pref / (2.0 * pi) *
                              ((1.0 + x3 * x3) * std::log(x1) - (1.0 + x1 * x1) * std::log(x3)) /
                              den2;
            return ws * (t1 + t2);
        }
        const double b = dc.beta / dc.alpha;
        const double r = dc.omega_sigma / omega;
        const double phi2 = std::atan2(std::sqrt(4.0 * b - 1.0), 2.0 * b - 1.0); // = 2 phi1
        const double p1 = 0.5 * phi2;
        const double num = (pi - phi2) * (1.0 - r * r * std::cos(phi2)) -
                           pi * r * (r * r - 1.0) * std::cos(p1) -
                           2.0 * r * r * std::log(r) * std::sin(phi2);
        const double den =
            r * r * std::sin(phi2) * (1.0 + r * r * r * r - 2.0 * r * r * std::cos(phi2));
        return ws * (pref / (4.0 * pi)) * num / den;
    }

    // parallel-LC and simple ladder share the boundary; the ladder kernel is
    // the pure-capacitive-weight special case gl = 0.
    const double aw = dc.alpha * omega / v;
    double gc, gl;
    if (dc.variant == Variant::parallel_lc) {
        gc = std::sqrt(dc.two_gamma_cc() / ws * omega / ws);
        gl = std::sqrt(dc.two_gamma_lc() / ws * ws / omega);
    } else {
        gc = std::sqrt(omega * dc.tl.z0 / (ws * *dc.z_a));
        gl = 0.0;
    }

    if (disc < 1.0) {
        const double b = dc.alpha / dc.beta;
        const auto [x1, x3] = detail::imag_roots(b, 1.0 / (std::sqrt(2.0) * aw), r2);
        const double den1 = (x3 + x1) * (1.0 + x1 * x1) * (1.0 + x3 * x3);
        const double den2 = (x3 * x3 - x1 * x1) * (1.0 + x1 * x1) * (1.0 + x3 * x3);
        if (dc.variant == Variant::parallel_lc) {
            const double n1 = gc * gc * (x1 * x1 + x3 * x3 + x1 * x3 + x1 * x1 * x3 * x3) -
                              gl * gl * (1.0 - x1 * x3) + 2.0 * gc * gl * (1.0 - x1 * x3);
            const double n2 =
                (gl * gl - gc * (gc - 2.0 * gl) * x1 * x1) * (1.0 + x3 * x3) * std::log(x1) -
                (gl * gl - gc * (gc - 2.0 * gl) * x3 * x3) * (1.0 + x1 * x1) * std::log(x3);
            return ws * (-(n1 / den1) / (4.0 * aw * aw) - (n2 / den2) / (2.0 * pi * aw * aw));
        }
        const double n1 = x1 * x1 + x3 * x3 + x1 * x3 + x1 * x1 * x3 * x3;
        const double n2 = x1 * x1 * (1.0 + x3 * x3) * std::log(x1) -
                          x3 * x3 * (1.0 + x1 * x1) * std::log(x3);
        return ws * gc * gc * (-(n1 / den1) / (4.0 * aw * aw) + (n2 / den2) / (2.0 * pi * aw * aw));
    }

    const double b = dc.alpha / dc.beta;
    const double r = dc.omega_sigma / omega;
    const double phi2 = std::atan2(std::sqrt(4.0 * b - 1.0), 2.0 * b - 1.0);
    const double p1 = 0.5 * phi2;
    const double r2_ = r * r, r3 = r2_ * r, r4 = r2_ * r2_, r5 = r4 * r;
    const double den = r2_ * std::sin(phi2) * (1.0 + r4 - 2.0 * r2_ * std::cos(phi2));
    if (dc.variant == Variant::parallel_lc) {
        const double num = (gl * gl - gc * (gc - 2.0 * gl) * r4) * (pi - phi2) -
                           pi * r * std::cos(p1) *
                               (gc * gc * r4 + gl * (gl - 2.0 * gc) * (r2_ - 1.0)) +
                           (gc * gc - 2.0 * gc * gl - gl * gl) * r2_ * std::cos(phi2) * (pi - phi2) +
                           pi * gc * gc * r3 * std::cos(3.0 * p1) -
                           2.0 * (gc - gl) * (gc - gl) * r2_ * std::log(r) * std::sin(phi2);
        return ws * num / (4.0 * pi * aw * aw * den);
    }
    const double num = r2_ * (pi - phi2) * (r2_ - std::cos(phi2)) + pi * r5 * std::cos(p1) -
                       pi * r3 * std::cos(3.0 * p1) + 2.0 * r2_ * std::log(r) * std::sin(phi2);
    return ws * (-(gc * gc) / (4.0 * pi * aw * aw)) * num / den;
}

inline complexd sigma_e_hat(const DerivedCircuit& dc, double omega) {
    return {re_sigma_hat(dc, omega), im_sigma_hat(dc, omega)};
}

/// Principal-value quadrature of the defining integral; the independent
/// cross-check for the closed forms. abstol < 0 selects the default target of
/// 1e-8 * omega_s; the achieved error estimate is written to err_out.
inline std::complex<double> quadrature_oracle(const DerivedCircuit& dc, double omega,
                                              double abstol, double* err_out) {
    if (abstol < 0.0) abstol = 1e-8 * dc.omega_s;
    PvKernel kernel;
    kernel.f2 = [&dc](double k) { return fk_squared(k, dc); };
    // large-k decay: series f^2 ~ k^-3; every other variant ends capacitive-
    // or inductive-like with f^2 ~ k^-1
    kernel.tail_exponent = dc.variant == Variant::series_lc ? 3.0 : 1.0;
    const PvResult r = pv_self_energy(kernel, omega, dc.tl.v, abstol);
    if (err_out) *err_out = r.error;
    return r.value;
}

/// Coupling-resonance data: the approximate resonance omega_sigma, the exact
/// maximum omega_sigma0 of -Im Sigma, the interior zero (parallel-LC only)
/// and the Lorentzian half-width of the resonant approximation.
struct ResonanceInfo {
    double omega_sigma;
    double omega_sigma0;
    std::optional<double> omega_zero;
    double width;
};

namespace detail {

// Positive real roots of the stationarity polynomial of f_k^2 for the
// parallel-LC boundary, in t = k v / omega_s:
//   (b-2) t^3 + (b-2) w0 t^2 - t^5/w0 + 3 t^4 + 3 w0 t - w0^2 = 0,
// with b = beta/alpha and w0 = omega_0/omega_s. Bracketed bisection on a
// log grid; the polynomial has at most two admissible maxima.
inline std::vector<double> parallel_stationary_points(double b, double w0) {
    auto p = [&](double t) {
        return (b - 2.0) * t * t * t + (b - 2.0) * w0 * t * t - t * t * t * t * t / w0 +
               3.0 * t * t * t * t + 3.0 * w0 * t - w0 * w0;
    };
    std::vector<double> roots;
    const double lo = 1e-4 * std::min(1.0, w0);
    const double hi = 1e4 * std::max(1.0, w0);
    const int n = 4000;
    double prev_t = lo, prev_p = p(lo);
    for (int i = 1; i <= n; ++i) {
        const double t = lo * std::pow(hi / lo, double(i) / n);
        const double pt = p(t);
        if ((prev_p < 0.0 && pt >= 0.0) || (prev_p > 0.0 && pt <= 0.0)) {
            double a = prev_t, c = t;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + c);
                if ((p(a) < 0.0) == (p(m) < 0.0)) a = m;
                else c = m;
            }
            roots.push_back(0.5 * (a + c));
        }
        prev_t = t;
        prev_p = pt;
    }
    return roots;
}

} // namespace detail

inline ResonanceInfo resonances(const DerivedCircuit& dc) {
    if (!is_resonant(dc.variant))
        throw unsupported_variant_error("resonances: variant has no coupling resonance");
    const double v = dc.tl.v;
    ResonanceInfo info;
    info.omega_sigma = dc.omega_sigma;

    switch (dc.variant) {
    case Variant::series_lc: {
        const double b = dc.beta / dc.alpha;
        const double k0 = 1.0 / (std::sqrt(6.0) * dc.beta) *
                          std::sqrt(2.0 * b - 1.0 + std::sqrt(1.0 - 4.0 * b + 16.0 * b * b));
        info.omega_sigma0 = v * k0;
        info.omega_zero = std::nullopt;
        info.width = dc.tl.z0 / (2.0 * dc.lc);
        break;
    }
    case Variant::simple_ladder: {
        const double a = dc.alpha / dc.beta;
        const double k0 = 1.0 / (std::sqrt(2.0) * dc.alpha) *
                          std::sqrt(1.0 - 2.0 * a + std::sqrt(1.0 - 4.0 * a + 16.0 * a * a));
        info.omega_sigma0 = v * k0;
        info.omega_zero = std::nullopt;
        info.width = 1.0 / (2.0 * dc.tl.z0 * dc.cc);
        break;
    }
    case Variant::parallel_lc: {
        const double w0 = dc.omega_sigma * dc.omega_sigma / dc.omega_s; // interior zero
        info.omega_zero = w0;
        info.width = v / (2.0 * dc.alpha);
        const auto ts = detail::parallel_stationary_points(dc.beta / dc.alpha, w0 / dc.omega_s);
        double best_t = dc.omega_sigma / dc.omega_s, best = 0.0;
        for (double t : ts) {
            const double val = -im_sigma_hat(dc, t * dc.omega_s);
            if (val > best) {
                best = val;
                best_t = t;
            }
        }
        info.omega_sigma0 = best_t * dc.omega_s;
        break;
    }
    default: break;
    }
    return info;
}

enum class ResonantKind { res, res0 };

/// Single-pole Lorentzian approximations of the self-energy. `res` expands
/// around omega_sigma; `res0` around the exact maximum omega_sigma0 with the
/// complex shift parameter of the Lorentzian expansion.
inline complexd resonant_sigma_hat(const DerivedCircuit& dc, double omega, ResonantKind kind) {
    if (!is_resonant(dc.variant))
        throw unsupported_variant_error("resonant_sigma_hat: variant has no coupling resonance");
    const double v = dc.tl.v;
    const double ws = dc.omega_s;
    const complexd i(0.0, 1.0);

    if (kind == ResonantKind::res) {
        switch (dc.variant) {
        case Variant::series_lc:
            return ws / (4.0 * dc.res.cs * dc.lc * dc.omega_sigma) /
                   (omega - dc.omega_sigma + i * dc.tl.z0 / (2.0 * dc.lc));
        case Variant::simple_ladder:
            return ws * dc.omega_sigma / (4.0 * dc.cc * *dc.z_a * ws) /
                   (omega - dc.omega_sigma + i / (2.0 * dc.tl.z0 * dc.cc));
        case Variant::parallel_lc: {
            const double sc = std::sqrt(dc.two_gamma_cc() * dc.omega_sigma / ws);
            const double sl = std::sqrt(dc.two_gamma_lc() * ws / dc.omega_sigma);
            const double pref = v / (4.0 * dc.alpha) * (sc - sl) * (sc - sl);
            return pref / (omega - dc.omega_sigma + i * v / (2.0 * dc.alpha));
        }
        default: break;
        }
    }

    // res0: Lorentzian expansion around k_sigma0 with complex parameter a.
    const ResonanceInfo ri = resonances(dc);
    const double k_sig = dc.omega_sigma / v;
    const double k0 = ri.omega_sigma0 / v;
    const double len = (dc.variant == Variant::series_lc) ? dc.beta : dc.alpha;
    const complexd a =
        (1.0 - i * len * (k_sig * k_sig - k0 * k0) / k0) / (1.0 + i * 2.0 * len * k0);
    const complexd pole = omega - ri.omega_sigma0 + ri.omega_sigma0 * std::conj(a);

    switch (dc.variant) {
    case Variant::series_lc:
        return -i * dc.z_s * ws * ws / (2.0 * dc.tl.z0 * (1.0 - i * 2.0 * dc.beta * k0)) / pole;
    case Variant::parallel_lc: {
        const double c = std::sqrt(dc.two_gamma_cc() / ws) * (ri.omega_sigma0 / ws) -
                         std::sqrt(dc.two_gamma_lc() / ws);
        return -i * ws * ws * c * c / (2.0 * (1.0 - i * 2.0 * dc.alpha * k0)) / pole;
    }
    case Variant::simple_ladder: {
        const double c2 = (dc.tl.z0 / *dc.z_a) * (ri.omega_sigma0 / ws) * (ri.omega_sigma0 / ws);
        return -i * ws * ws * c2 / (2.0 * (1.0 - i * 2.0 * dc.alpha * k0)) / pole;
    }
    default: break;
    }
    return {};
}

/// Frequency-domain self-energy evaluator. Mode selects the exact closed
/// forms, one of the two Lorentzian approximations, or the Markov constant
/// -i Gamma_E with Gamma_E frozen at omega_ref.
struct SelfEnergyModel {
    DerivedCircuit dc;
    SigmaMode mode = SigmaMode::exact;
    double omega_ref = 0.0;
    double gamma_e = 0.0; // -Im Sigma_hat_E^exact(omega_ref)

    static SelfEnergyModel make(const DerivedCircuit& dc, SigmaMode mode, double omega_ref = 0.0) {
        if ((mode == SigmaMode::resonant || mode == SigmaMode::resonant_exact) &&
            !is_resonant(dc.variant))
            throw unsupported_variant_error(
                "resonant self-energy modes require an LC-resonant variant");
        SelfEnergyModel m;
        m.dc = dc;
        m.mode = mode;
        m.omega_ref = omega_ref > 0.0 ? omega_ref : dc.omega_s;
        m.gamma_e = -im_sigma_hat(dc, m.omega_ref);
        return m;
    }

    /// Sigma_hat_E(omega) for this model's mode (no internal loss).
    complexd sigma_e(double omega) const {
        switch (mode) {
        case SigmaMode::exact: return sigma_e_hat(dc, omega);
        case SigmaMode::resonant: return resonant_sigma_hat(dc, omega, ResonantKind::res);
        case SigmaMode::resonant_exact:
            return resonant_sigma_hat(dc, omega, ResonantKind::res0);
        case SigmaMode::markov: return {0.0, -gamma_e};
        }
        return {};
    }

    /// As a function of detuning from omega_ref.
    complexd sigma_e_delta(double delta) const {
        if (mode == SigmaMode::markov) return {0.0, -gamma_e};
        const double omega = omega_ref + delta;
        if (!(omega > 0.0))
            throw domain_error("sigma_e_delta: omega_ref + delta must be positive");
        return sigma_e(omega);
    }
};

inline double im_sigma(double omega, const SelfEnergyModel& m) { return m.sigma_e(omega).imag(); }
inline double re_sigma(double omega, const SelfEnergyModel& m) { return m.sigma_e(omega).real(); }

/// Total self-energy including internal loss: Sigma = Sigma_E - i Gamma_I.
inline complexd sigma(double omega, const SelfEnergyModel& m) {
    if (m.mode == SigmaMode::markov) return {0.0, -(m.gamma_e + m.dc.gamma_i())};
    return m.sigma_e(omega) - complexd(0.0, m.dc.gamma_i());
}

} // namespace jpa
