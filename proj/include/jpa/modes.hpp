#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "jpa/circuit.hpp"

namespace jpa {

/// Dressed transmission-line mode at wavenumber k: boundary phase, boundary
/// amplitude and (series-LC only) the charge-weight w0 = u_k(0) - beta u_k'(0).
///
/// The phase is reduced to (-pi/2, pi/2] so amp0 = sqrt(2/pi) cos(phase) >= 0;
/// the mode sign is not observable and the reduced branch makes the
/// weak-coupling limit read phase -> 0 from either direction.
struct ModePoint {
    double k;
    double phase;
    double amp0;
    std::optional<double> w0;
};

namespace detail {

inline double reduce_phase(double phi) {
    // into (-pi/2, pi/2]
    const double pi = std::numbers::pi;
    while (phi > 0.5 * pi) phi -= pi;
    while (phi <= -0.5 * pi) phi += pi;
    return phi;
}

// Boundary-condition argument: t = beta k - 1/(alpha k) for the series
// boundary, t = alpha k - 1/(beta k) for the parallel/ladder boundary.
inline double series_t(const DerivedCircuit& dc, double k) {
    return dc.beta * k - 1.0 / (dc.alpha * k);
}
inline double parallel_t(const DerivedCircuit& dc, double k) {
    double t = 0.0;
    if (dc.alpha > 0.0) t += dc.alpha * k;
    if (std::isfinite(dc.beta)) t -= 1.0 / (dc.beta * k);
    return t;
}

} // namespace detail

inline ModePoint mode_point(double k, const DerivedCircuit& dc) {
    if (!(k > 0.0)) throw domain_error("mode_point: k must be positive");
    const double root_2_pi = std::sqrt(2.0 / std::numbers::pi);

    ModePoint mp;
    mp.k = k;
    if (dc.variant == Variant::series_lc) {
        // tan(phi) = alpha k / (1 - alpha beta k^2); the two-argument form is
        // regular at the resonant wavenumber k = 1/sqrt(alpha beta).
        mp.phase = detail::reduce_phase(
            std::atan2(dc.alpha * k, 1.0 - dc.alpha * dc.beta * k * k));
        mp.amp0 = root_2_pi * std::cos(mp.phase);
        const double du0 = -root_2_pi * k * std::sin(mp.phase); // u_k'(0)
        mp.w0 = mp.amp0 - dc.beta * du0;
    } else {
        // tan(phi) = (alpha beta k^2 - 1)/(beta k); capacitive (beta = inf)
        // and inductive (alpha = 0) boundaries are covered by parallel_t.
        const double t = detail::parallel_t(dc, k);
        mp.phase = std::atan(t);
        mp.amp0 = root_2_pi * std::cos(mp.phase);
        mp.w0 = std::nullopt;
    }
    return mp;
}

/// Spatial mode function u_k(x) = sqrt(2/pi) cos(k x + phi_k).
inline double mode_function(double k, double x, const DerivedCircuit& dc) {
    if (x < 0.0) throw domain_error("mode_function: x must be >= 0");
    const ModePoint mp = mode_point(k, dc);
    return std::sqrt(2.0 / std::numbers::pi) * std::cos(k * x + mp.phase);
}

/// Coupling coefficient f_k between the system amplitude and dressed mode k,
/// built from the boundary amplitudes. Signs follow the per-variant
/// conventions of the underlying Hamiltonians (negative for series-LC,
/// sign-changing at omega_0 for parallel-LC, positive for the ladder).
inline double coupling_coefficient(double k, const DerivedCircuit& dc) {
    if (!(k > 0.0)) throw domain_error("coupling_coefficient: k must be positive");
    const double c0 = dc.tl.c0();
    const double omega_k = dc.tl.v * k;
    const double root_2_pi = std::sqrt(2.0 / std::numbers::pi);

    switch (dc.variant) {
    case Variant::series_lc: {
        // f_k = sqrt(omega_k c0 / z_s) (alpha/2cs) w0, with the w0 branch of
        // the signed amplitude u_k(0) = sqrt(2/pi) t/sqrt(1+t^2); always < 0.
        const double t = detail::series_t(dc, k);
        const double w0 = -root_2_pi / (dc.alpha * k * std::sqrt(1.0 + t * t));
        return std::sqrt(omega_k * c0 / dc.z_s) * dc.alpha / (2.0 * dc.res.cs) * w0;
    }
    case Variant::capacitive:
    case Variant::inductive:
    case Variant::parallel_lc: {
        const double t = detail::parallel_t(dc, k);
        const double u0 = root_2_pi / std::sqrt(1.0 + t * t);
        double f = 0.0;
        if (dc.alpha > 0.0)
            f += std::sqrt(omega_k * c0 / dc.z_s) * dc.alpha / (2.0 * dc.res.cs) * u0;
        if (std::isfinite(dc.beta))
            f -= std::sqrt(dc.z_s / (omega_k * c0)) / (2.0 * dc.beta * dc.tl.l0()) * u0;
        return f;
    }
    case Variant::simple_ladder: {
        const double t = detail::parallel_t(dc, k);
        const double u0 = root_2_pi / std::sqrt(1.0 + t * t);
        return std::sqrt(omega_k * c0 / *dc.z_a) * dc.alpha / (2.0 * dc.cc) * u0;
    }
    }
    return 0.0;
}

/// f_k^2, the quantity entering the self-energy integrals.
inline double fk_squared(double k, const DerivedCircuit& dc) {
    const double f = coupling_coefficient(k, dc);
    return f * f;
}

} // namespace jpa
