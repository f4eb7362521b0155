#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <variant>

#include "jpa/errors.hpp"

namespace jpa {

namespace constants {
inline constexpr double flux_quantum = 2.067833848e-15; // Wb
inline constexpr double hbar = 1.054571817e-34;         // J s
} // namespace constants

inline constexpr double nan64 = std::numeric_limits<double>::quiet_NaN();
inline constexpr double inf64 = std::numeric_limits<double>::infinity();

inline void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw domain_error(std::string(field) + " must be positive and finite");
}

/// Semi-infinite transmission line, impedance z0 and wave velocity v.
struct TransmissionLine {
    double z0; // Ohm
    double v;  // m/s

    double c0() const { return 1.0 / (z0 * v); } // capacitance per length
    double l0() const { return z0 / v; }         // inductance per length

    void validate() const {
        require_positive(z0, "TransmissionLine.z0");
        require_positive(v, "TransmissionLine.v");
    }
};

/// Lumped-element resonator shunted by capacitance cs and inductance ls,
/// with internal (non-radiative) damping rate gamma_i.
struct Resonator {
    double cs;            // F
    double ls;            // H
    double gamma_i = 0.0; // rad/s

    void validate() const {
        require_positive(cs, "Resonator.cs");
        require_positive(ls, "Resonator.ls");
        if (gamma_i < 0.0 || !std::isfinite(gamma_i))
            throw domain_error("Resonator.gamma_i must be >= 0");
    }
};

struct Capacitive {
    double cc;
};
struct Inductive {
    double lc;
};
struct SeriesLC {
    double cc, lc;
};
struct ParallelLC {
    double cc, lc;
};
// Series-LC (cg, lg) facing the resonator, parallel-LC (cc, lc) facing the line.
struct SimpleLadder {
    double cg, lg, cc, lc;
};

using CouplingNetwork = std::variant<Capacitive, Inductive, SeriesLC, ParallelLC, SimpleLadder>;

enum class Variant { capacitive, inductive, series_lc, parallel_lc, simple_ladder };

inline const char* to_string(Variant v) {
    switch (v) {
    case Variant::capacitive: return "capacitive";
    case Variant::inductive: return "inductive";
    case Variant::series_lc: return "series_lc";
    case Variant::parallel_lc: return "parallel_lc";
    case Variant::simple_ladder: return "simple_ladder";
    }
    return "?";
}

inline Variant variant_of(const CouplingNetwork& n) {
    return std::visit(
        [](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Capacitive>) return Variant::capacitive;
            else if constexpr (std::is_same_v<T, Inductive>) return Variant::inductive;
            else if constexpr (std::is_same_v<T, SeriesLC>) return Variant::series_lc;
            else if constexpr (std::is_same_v<T, ParallelLC>) return Variant::parallel_lc;
            else return Variant::simple_ladder;
        },
        n);
}

inline bool is_resonant(Variant v) {
    return v == Variant::series_lc || v == Variant::parallel_lc || v == Variant::simple_ladder;
}

/// Everything the evaluators need, derived once from the raw element values.
///
/// Conventions for the length parameters: beta = +inf for purely capacitive
/// coupling, alpha = 0 for purely inductive coupling. omega_sigma and omega_c
/// are NaN where the variant has no coupling resonance.
struct DerivedCircuit {
    Variant variant{};
    TransmissionLine tl{};
    Resonator res{};

    double cc = nan64, lc = nan64, cg = nan64, lg = nan64;

    double alpha = 0.0;   // m
    double beta = inf64;  // m
    double omega_s = 0.0; // rad/s
    double z_s = 0.0;     // Ohm

    std::optional<double> omega_a; // rad/s, ladder only
    std::optional<double> z_a;     // Ohm, ladder only
    std::optional<double> g;       // rad/s, ladder only

    double omega_sigma = nan64; // approximate coupling resonance, v/sqrt(alpha*beta)
    double omega_c = nan64;     // bare coupling frequency
    double gamma_e_eff = 0.0;   // rad/s

    double gamma_i() const { return res.gamma_i; }

    // Capacitive/inductive coupling rates of the parallel-LC analysis,
    // 2*Gamma_E^(Cc) and 2*Gamma_E^(Lc). Zero where the element is absent.
    double two_gamma_cc() const {
        if (alpha <= 0.0) return 0.0;
        const double v = tl.v;
        return z_s * omega_s * omega_s * omega_s * alpha * alpha / (tl.z0 * v * v);
    }
    double two_gamma_lc() const {
        if (!std::isfinite(beta)) return 0.0;
        const double v = tl.v;
        return z_s * v * v / (omega_s * tl.z0 * beta * beta);
    }
};

namespace detail {

inline double ladder_g(const DerivedCircuit& dc) {
    return std::sqrt(dc.z_s * *dc.z_a) / (2.0 * dc.lg);
}

} // namespace detail

/// Derive every secondary quantity from the raw element values.
inline DerivedCircuit derive(const CouplingNetwork& network, const Resonator& res,
                             const TransmissionLine& tl) {
    tl.validate();
    res.validate();

    DerivedCircuit dc;
    dc.variant = variant_of(network);
    dc.tl = tl;
    dc.res = res;

    const double c0 = tl.c0();
    const double l0 = tl.l0();
    const double v = tl.v;

    switch (dc.variant) {
    case Variant::capacitive: {
        const auto& n = std::get<Capacitive>(network);
        require_positive(n.cc, "Capacitive.cc");
        dc.cc = n.cc;
        dc.alpha = n.cc * res.cs / (c0 * (n.cc + res.cs));
        dc.beta = inf64;
        dc.omega_s = 1.0 / std::sqrt(res.cs * res.ls);
        dc.z_s = std::sqrt(res.ls / res.cs);
        dc.gamma_e_eff = 0.5 * dc.two_gamma_cc();
        break;
    }
    case Variant::inductive: {
        const auto& n = std::get<Inductive>(network);
        require_positive(n.lc, "Inductive.lc");
        dc.lc = n.lc;
        dc.alpha = 0.0;
        dc.beta = n.lc / l0;
        dc.omega_s = std::sqrt((res.ls + n.lc) / (res.cs * res.ls * n.lc));
        dc.z_s = std::sqrt(res.ls * n.lc / (res.cs * (res.ls + n.lc)));
        dc.gamma_e_eff = 0.5 * dc.two_gamma_lc();
        break;
    }
    case Variant::series_lc: {
        const auto& n = std::get<SeriesLC>(network);
        require_positive(n.cc, "SeriesLC.cc");
        require_positive(n.lc, "SeriesLC.lc");
        dc.cc = n.cc;
        dc.lc = n.lc;
        dc.alpha = n.cc * res.cs / (c0 * (n.cc + res.cs));
        dc.beta = n.lc / l0;
        dc.omega_s = 1.0 / std::sqrt(res.cs * res.ls); // unshifted
        dc.z_s = std::sqrt(res.ls / res.cs);
        dc.omega_sigma = v / std::sqrt(dc.alpha * dc.beta);
        dc.omega_c = 1.0 / std::sqrt(n.cc * n.lc);
        // strength of the boundary phase shift at k = omega_s/v
        const double ks = dc.omega_s / v;
        const double t = dc.beta * ks - 1.0 / (dc.alpha * ks);
        dc.gamma_e_eff = dc.omega_s * dc.z_s / (2.0 * tl.z0 * t * t);
        break;
    }
    case Variant::parallel_lc: {
        const auto& n = std::get<ParallelLC>(network);
        require_positive(n.cc, "ParallelLC.cc");
        require_positive(n.lc, "ParallelLC.lc");
        dc.cc = n.cc;
        dc.lc = n.lc;
        dc.alpha = n.cc * res.cs / (c0 * (n.cc + res.cs));
        dc.beta = n.lc / l0;
        dc.omega_s = std::sqrt((res.ls + n.lc) / (res.cs * res.ls * n.lc)); // lc-shifted
        dc.z_s = std::sqrt(res.ls * n.lc / (res.cs * (res.ls + n.lc)));
        dc.omega_sigma = v / std::sqrt(dc.alpha * dc.beta);
        dc.omega_c = std::sqrt((n.lc + res.ls) / (n.cc * n.lc * res.ls));
        const double sc = std::sqrt(dc.two_gamma_cc());
        const double sl = std::sqrt(dc.two_gamma_lc());
        dc.gamma_e_eff = 0.5 * (sc - sl) * (sc - sl);
        break;
    }
    case Variant::simple_ladder: {
        const auto& n = std::get<SimpleLadder>(network);
        require_positive(n.cg, "SimpleLadder.cg");
        require_positive(n.lg, "SimpleLadder.lg");
        require_positive(n.cc, "SimpleLadder.cc");
        require_positive(n.lc, "SimpleLadder.lc");
        dc.cc = n.cc;
        dc.lc = n.lc;
        dc.cg = n.cg;
        dc.lg = n.lg;
        dc.alpha = n.cc / c0;
        dc.beta = n.lc / l0;
        dc.omega_s = std::sqrt((res.ls + n.lg) / (res.cs * res.ls * n.lg));
        dc.z_s = std::sqrt(res.ls * n.lg / (res.cs * (res.ls + n.lg)));
        dc.omega_a = std::sqrt((n.cc + n.cg) / (n.cc * n.cg * n.lg));
        dc.z_a = std::sqrt(n.lg * (n.cc + n.cg) / (n.cc * n.cg));
        dc.g = detail::ladder_g(dc);
        dc.omega_sigma = v / std::sqrt(dc.alpha * dc.beta);
        dc.omega_c = 1.0 / std::sqrt(n.cc * n.lc); // coincides with omega_sigma
        dc.gamma_e_eff = 0.5 * dc.omega_s * tl.z0 / *dc.z_a;
        break;
    }
    }
    return dc;
}

/// Pump detuning block. For the ladder, delta_p is the detuning of the
/// resonator branch (delta_ps); the a-branch detuning follows from the
/// derived frequencies.
struct PumpSpec {
    double delta_p = 0.0;                     // rad/s
    std::complex<double> epsilon_p{0.0, 0.0}; // rad/s

    double delta_pa(const DerivedCircuit& dc) const {
        if (!dc.omega_a)
            throw unsupported_variant_error("delta_pa requires the simple-ladder variant");
        return delta_p + dc.omega_s - *dc.omega_a;
    }
};

/// Flux-pump drive of an effective junction: mean critical current, modulation
/// amplitude and pump phase.
struct FluxPumpSpec {
    double i_c_bar;       // A
    double delta_ic_hat;  // A
    double theta_p = 0.0; // rad

    void validate() const {
        require_positive(i_c_bar, "FluxPumpSpec.i_c_bar");
        if (delta_ic_hat < 0.0 || delta_ic_hat >= i_c_bar)
            throw domain_error("FluxPumpSpec.delta_ic_hat must satisfy 0 <= delta_ic_hat < i_c_bar");
    }
};

/// Effective pump strength and Kerr coefficient of a flux-pumped junction.
inline std::pair<std::complex<double>, double> pump_from_flux(const FluxPumpSpec& spec,
                                                              const DerivedCircuit& dc) {
    spec.validate();
    if (!std::isfinite(dc.z_s) || dc.z_s <= 0.0)
        throw domain_error("pump_from_flux requires a finite z_s");
    const double k = 2.0 * std::numbers::pi / constants::flux_quantum;
    const std::complex<double> eps =
        k * (dc.z_s / 4.0) * spec.delta_ic_hat *
        std::exp(std::complex<double>(0.0, spec.theta_p));
    const double alpha_nlin = k * k * k * constants::hbar * dc.z_s * dc.z_s * spec.i_c_bar / 8.0;
    return {eps, alpha_nlin};
}

/// Dimensionless description used by the CLI: element ratios with the
/// normalization omega_s = 1, z0 = 1, v = 1.
struct RatioSpec {
    Variant variant = Variant::series_lc;
    double zs_over_z0 = 1.0;
    double cc_over_cs = 0.0;
    double lc_over_ls = 0.0;
    double cg_over_cs = 0.0;
    double lg_over_ls = 0.0;
    double gamma_i_over_ws = 0.0;
};

/// Build SI-level elements realizing the requested ratios in normalized units.
inline std::tuple<CouplingNetwork, Resonator, TransmissionLine> from_ratios(const RatioSpec& r) {
    require_positive(r.zs_over_z0, "zs_over_z0");
    const TransmissionLine tl{1.0, 1.0};
    const double zs = r.zs_over_z0;

    // Choose cs, ls such that the variant's own omega_s evaluates to 1.
    // For every variant z_s * omega_s = 1/cs.
    Resonator res;
    res.cs = 1.0 / zs;
    res.gamma_i = r.gamma_i_over_ws;
    CouplingNetwork network;

    switch (r.variant) {
    case Variant::capacitive: {
        require_positive(r.cc_over_cs, "cc_over_cs");
        res.ls = zs;
        network = Capacitive{r.cc_over_cs * res.cs};
        break;
    }
    case Variant::inductive: {
        require_positive(r.lc_over_ls, "lc_over_ls");
        res.ls = zs * (1.0 + r.lc_over_ls) / r.lc_over_ls;
        network = Inductive{r.lc_over_ls * res.ls};
        break;
    }
    case Variant::series_lc: {
        require_positive(r.cc_over_cs, "cc_over_cs");
        require_positive(r.lc_over_ls, "lc_over_ls");
        res.ls = zs;
        network = SeriesLC{r.cc_over_cs * res.cs, r.lc_over_ls * res.ls};
        break;
    }
    case Variant::parallel_lc: {
        require_positive(r.cc_over_cs, "cc_over_cs");
        require_positive(r.lc_over_ls, "lc_over_ls");
        res.ls = zs * (1.0 + r.lc_over_ls) / r.lc_over_ls;
        network = ParallelLC{r.cc_over_cs * res.cs, r.lc_over_ls * res.ls};
        break;
    }
    case Variant::simple_ladder: {
        require_positive(r.cc_over_cs, "cc_over_cs");
        require_positive(r.lc_over_ls, "lc_over_ls");
        require_positive(r.cg_over_cs, "cg_over_cs");
        require_positive(r.lg_over_ls, "lg_over_ls");
        res.ls = zs * (1.0 + r.lg_over_ls) / r.lg_over_ls;
        network = SimpleLadder{r.cg_over_cs * res.cs, r.lg_over_ls * res.ls,
                               r.cc_over_cs * res.cs, r.lc_over_ls * res.ls};
        break;
    }
    }
    return {network, res, tl};
}

inline DerivedCircuit derive_from_ratios(const RatioSpec& r) {
    auto [network, res, tl] = from_ratios(r);
    return derive(network, res, tl);
}

} // namespace jpa
