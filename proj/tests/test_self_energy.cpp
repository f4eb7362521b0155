#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <thread>
#include <vector>

#include "jpa/self_energy.hpp"

using namespace jpa;
using Catch::Approx;

namespace {

const TransmissionLine tl{1.0, 1.0};

DerivedCircuit fig3_series() {
    RatioSpec r;
    r.variant = Variant::series_lc;
    r.zs_over_z0 = 2.0;
    r.cc_over_cs = 10.0;
    r.lc_over_ls = 0.4;
    return derive_from_ratios(r);
}

DerivedCircuit fig6a_ladder() {
    RatioSpec r;
    r.variant = Variant::simple_ladder;
    r.zs_over_z0 = 0.7;
    r.cg_over_cs = 120.0;
    r.lg_over_ls = 0.002;
    r.cc_over_cs = 1.12;
    r.lc_over_ls = 4.0;
    return derive_from_ratios(r);
}

// test-side golden-section maximizer of -Im Sigma after a coarse bracket scan
double argmax_damping(const DerivedCircuit& dc) {
    double best_w = 0.0, best = -1.0;
    for (int i = 0; i <= 4000; ++i) {
        const double w = 1e-3 * std::pow(1e4, i / 4000.0) * dc.omega_s;
        const double v = -im_sigma_hat(dc, w);
        if (v > best) {
            best = v;
            best_w = w;
        }
    }
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_w * 0.99, b = best_w * 1.01;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (-im_sigma_hat(dc, c) > -im_sigma_hat(dc, d)) b = d;
        else a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    return 0.5 * (a + b);
}

} // namespace

TEST_CASE("Im Sigma closed-form anchors", "[selfenergy]") {
    SECTION("series at omega_sigma hits the unit Lorentzian factor") {
        const DerivedCircuit dc = derive(SeriesLC{0.8, 1.2}, Resonator{1.0, 1.0, 0.0}, tl);
        const double expected = -dc.z_s / (2.0 * dc.tl.z0) * dc.omega_s / dc.omega_sigma * dc.omega_s;
        REQUIRE(im_sigma_hat(dc, dc.omega_sigma) == Approx(expected).epsilon(1e-13));
    }
    SECTION("parallel vanishes exactly at omega_0") {
        const DerivedCircuit dc = derive(ParallelLC{0.5, 2.0}, Resonator{1.0, 1.0, 0.0}, tl);
        const double w0 = dc.omega_sigma * dc.omega_sigma / dc.omega_s;
        REQUIRE(std::abs(im_sigma_hat(dc, w0)) < 1e-24);
    }
    SECTION("ladder value at the pump reference") {
        const DerivedCircuit dc = fig6a_ladder();
        REQUIRE(-im_sigma_hat(dc, 0.64 * dc.omega_s) / dc.omega_s == Approx(0.235).margin(0.01));
    }
}

TEST_CASE("Re Sigma closed-form anchors", "[selfenergy]") {
    SECTION("capacitive low-frequency limit") {
        const DerivedCircuit dc = derive(Capacitive{0.8}, Resonator{1.0, 1.0, 0.0}, tl);
        // exact prefactor is cc/(4 (cc+cs)); the log term dies off as omega -> 0
        const double expected = -0.8 / (4.0 * 1.8);
        REQUIRE(re_sigma_hat(dc, 1e-7 * dc.omega_s) / dc.omega_s ==
                Approx(expected).epsilon(1e-4));
    }
    SECTION("series collapses onto capacitive as lc -> 0") {
        const DerivedCircuit ser = derive(SeriesLC{0.8, 1e-9}, Resonator{1.0, 1.0, 0.0}, tl);
        const DerivedCircuit cap = derive(Capacitive{0.8}, Resonator{1.0, 1.0, 0.0}, tl);
        for (double w : {0.4, 1.0, 2.3}) {
            REQUIRE(re_sigma_hat(ser, w) == Approx(re_sigma_hat(cap, w)).epsilon(1e-8));
        }
    }
    SECTION("series anchor at omega_s") {
        const DerivedCircuit dc = fig3_series();
        REQUIRE(re_sigma_hat(dc, dc.omega_s) / dc.omega_s == Approx(-0.36).margin(0.01));
    }
}

TEST_CASE("sigma combines the parts and the Markov constant", "[selfenergy]") {
    RatioSpec r;
    r.variant = Variant::series_lc;
    r.zs_over_z0 = 2.0;
    r.cc_over_cs = 10.0;
    r.lc_over_ls = 0.4;
    r.gamma_i_over_ws = 0.03;
    const DerivedCircuit dc = derive_from_ratios(r);

    const SelfEnergyModel markov = SelfEnergyModel::make(dc, SigmaMode::markov, dc.omega_s);
    for (double w : {0.2, 1.0, 5.0}) {
        REQUIRE(sigma(w, markov) == complexd(0.0, -(markov.gamma_e + 0.03)));
    }
    const SelfEnergyModel exact = SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s);
    const complexd s = sigma(1.3, exact);
    REQUIRE(s.real() == re_sigma(1.3, exact));
    REQUIRE(s.imag() == Approx(im_sigma(1.3, exact) - 0.03).margin(1e-15));

    const DerivedCircuit lossless = fig3_series();
    const SelfEnergyModel m2 = SelfEnergyModel::make(lossless, SigmaMode::exact, 1.0);
    const complexd s0 = sigma(1.0, m2);
    REQUIRE(s0.real() == Approx(-0.36).margin(0.01));
    REQUIRE(s0.imag() == Approx(-0.34).margin(0.01));
}

TEST_CASE("Im Sigma is non-positive with the variant's zero structure",
          "[selfenergy][property]") {
    const DerivedCircuit cases[] = {
        fig3_series(), fig6a_ladder(), derive(ParallelLC{0.5, 2.0}, Resonator{1.0, 1.0, 0.0}, tl),
        derive(Capacitive{1.0}, Resonator{1.0, 1.0, 0.0}, tl),
        derive(Inductive{2.0}, Resonator{1.0, 1.0, 0.0}, tl)};
    for (const auto& dc : cases) {
        double max_im = -1e300;
        for (int i = 0; i <= 500; ++i) {
            const double w = 0.05 * std::pow(400.0, i / 500.0) * dc.omega_s;
            max_im = std::max(max_im, im_sigma_hat(dc, w));
        }
        REQUIRE(max_im <= 0.0);
        if (dc.variant != Variant::parallel_lc) {
            REQUIRE(max_im < 0.0); // no interior zero
        }
    }
    // parallel: exactly one interior zero, at omega_0
    const DerivedCircuit par = derive(ParallelLC{0.5, 2.0}, Resonator{1.0, 1.0, 0.0}, tl);
    const double w0 = par.omega_sigma * par.omega_sigma / par.omega_s;
    int zero_like = 0;
    for (int i = 0; i <= 2000; ++i) {
        const double w = 0.05 * std::pow(400.0, i / 2000.0) * par.omega_s;
        if (std::abs(im_sigma_hat(par, w)) < 1e-9 * par.omega_s) ++zero_like;
    }
    REQUIRE(zero_like <= 2); // only grid points hugging omega_0
    REQUIRE(std::abs(im_sigma_hat(par, w0)) < 1e-20);
}

TEST_CASE("Re Sigma is continuous across the root-regime boundary", "[selfenergy]") {
    SECTION("series: 4 beta/alpha crossing 1") {
        // cs = ls = 1, cc = 1 -> alpha = 0.5; disc = 8 lc
        const DerivedCircuit lo = derive(SeriesLC{1.0, (1.0 - 1e-6) / 8.0},
                                         Resonator{1.0, 1.0, 0.0}, tl);
        const DerivedCircuit hi = derive(SeriesLC{1.0, (1.0 + 1e-6) / 8.0},
                                         Resonator{1.0, 1.0, 0.0}, tl);
        for (double w : {0.5, 1.0, 2.0}) {
            const double a = re_sigma_hat(lo, w);
            const double b = re_sigma_hat(hi, w);
            REQUIRE(std::abs(a - b) / std::abs(a) < 1e-5);
        }
    }
    SECTION("parallel: 4 alpha/beta crossing 1") {
        // cs = ls = 1, cc = 1 -> alpha = 0.5; disc = 2/lc
        const DerivedCircuit lo =
            derive(ParallelLC{1.0, 2.0 / (1.0 - 1e-6)}, Resonator{1.0, 1.0, 0.0}, tl);
        const DerivedCircuit hi =
            derive(ParallelLC{1.0, 2.0 / (1.0 + 1e-6)}, Resonator{1.0, 1.0, 0.0}, tl);
        for (double w : {0.5, 1.0, 2.0}) {
            const double a = re_sigma_hat(lo, w);
            const double b = re_sigma_hat(hi, w);
            REQUIRE(std::abs(a - b) / std::abs(a) < 1e-5);
        }
    }
    SECTION("exactly degenerate roots fall back to the quadrature oracle") {
        const DerivedCircuit dc = derive(SeriesLC{1.0, 0.125}, Resonator{1.0, 1.0, 0.0}, tl);
        REQUIRE(4.0 * dc.beta / dc.alpha == Approx(1.0).margin(1e-13));
        const double closed = re_sigma_hat(dc, 1.3);
        const double oracle = quadrature_oracle(dc, 1.3).real();
        REQUIRE(closed == Approx(oracle).margin(1e-12));
    }
}

TEST_CASE("resonances across variants", "[selfenergy]") {
    SECTION("ladder resonance coincides with the bare coupling frequency") {
        const DerivedCircuit dc = fig6a_ladder();
        const ResonanceInfo info = resonances(dc);
        REQUIRE(info.omega_sigma == Approx(1.0 / std::sqrt(dc.lc * dc.cc)).epsilon(1e-13));
        REQUIRE(info.width == Approx(1.0 / (2.0 * dc.tl.z0 * dc.cc)).epsilon(1e-13));
        REQUIRE_FALSE(info.omega_zero.has_value());
    }
    SECTION("series omega_sigma0 approaches omega_sigma for beta >> alpha") {
        const DerivedCircuit dc = derive(SeriesLC{1.0, 500.0}, Resonator{1.0, 1.0, 0.0}, tl);
        const ResonanceInfo info = resonances(dc);
        REQUIRE(info.omega_sigma0 <= info.omega_sigma);
        REQUIRE(info.omega_sigma0 / info.omega_sigma == Approx(1.0).margin(1e-3));
        REQUIRE(info.width == Approx(dc.tl.z0 / (2.0 * dc.lc)).epsilon(1e-13));
    }
    SECTION("series omega_sigma0 maximizes the damping") {
        const DerivedCircuit dc = fig3_series();
        const ResonanceInfo info = resonances(dc);
        REQUIRE(info.omega_sigma0 == Approx(argmax_damping(dc)).epsilon(1e-7));
    }
    SECTION("parallel omega_sigma0 equals the brute-force argmax") {
        RatioSpec r;
        r.variant = Variant::parallel_lc;
        r.zs_over_z0 = 0.01;
        r.cc_over_cs = 0.5;
        r.lc_over_ls = 1.0;
        const DerivedCircuit dc = derive_from_ratios(r);
        const ResonanceInfo info = resonances(dc);
        REQUIRE(info.omega_sigma0 == Approx(argmax_damping(dc)).epsilon(1e-6));
        REQUIRE(*info.omega_zero / dc.omega_s ==
                Approx(std::pow(info.omega_sigma / dc.omega_s, 2)).epsilon(1e-13));
        REQUIRE(info.width == Approx(dc.tl.v / (2.0 * dc.alpha)).epsilon(1e-13));
    }
    SECTION("non-resonant variants are rejected") {
        const DerivedCircuit dc = derive(Capacitive{1.0}, Resonator{1.0, 1.0, 0.0}, tl);
        REQUIRE_THROWS_AS(resonances(dc), unsupported_variant_error);
    }
}

TEST_CASE("resonant approximations", "[selfenergy]") {
    // Zs/Z0 = 0.8, Cc/Cs = 1, Lc/Ls = 1.5
    RatioSpec r;
    r.variant = Variant::series_lc;
    r.zs_over_z0 = 0.8;
    r.cc_over_cs = 1.0;
    r.lc_over_ls = 1.5;
    const DerivedCircuit dc = derive_from_ratios(r);
    const ResonanceInfo info = resonances(dc);

    SECTION("res is purely imaginary at omega_sigma and matches the exact Im there") {
        const complexd s = resonant_sigma_hat(dc, dc.omega_sigma, ResonantKind::res);
        REQUIRE(std::abs(s.real()) < 1e-12 * std::abs(s.imag()));
        REQUIRE(s.imag() == Approx(im_sigma_hat(dc, dc.omega_sigma)).epsilon(0.15));
    }
    SECTION("Lorentzian decay far from resonance") {
        const double far = std::abs(resonant_sigma_hat(dc, 100.0 * dc.omega_sigma,
                                                       ResonantKind::res));
        const double peak = std::abs(resonant_sigma_hat(dc, dc.omega_sigma, ResonantKind::res));
        REQUIRE(far < 1e-2 * peak);
    }
    SECTION("res0 reproduces the exact Im at omega_sigma0") {
        const complexd s = resonant_sigma_hat(dc, info.omega_sigma0, ResonantKind::res0);
        REQUIRE(s.imag() == Approx(im_sigma_hat(dc, info.omega_sigma0)).epsilon(1e-9));
    }
    SECTION("unsupported for non-resonant variants") {
        const DerivedCircuit cap = derive(Capacitive{1.0}, Resonator{1.0, 1.0, 0.0}, tl);
        REQUIRE_THROWS_AS(resonant_sigma_hat(cap, 1.0, ResonantKind::res),
                          unsupported_variant_error);
        REQUIRE_THROWS_AS(SelfEnergyModel::make(cap, SigmaMode::resonant, 1.0),
                          unsupported_variant_error);
    }
}

TEST_CASE("Markov gamma_e equals pi f^2/v at the reference frequency",
          "[selfenergy][property]") {
    const DerivedCircuit dc = fig6a_ladder();
    for (double wref : {0.4, 0.64, 1.0, 1.7}) {
        const SelfEnergyModel m = SelfEnergyModel::make(dc, SigmaMode::markov, wref * dc.omega_s);
        const double expected =
            std::numbers::pi / dc.tl.v * fk_squared(wref * dc.omega_s / dc.tl.v, dc);
        REQUIRE(m.gamma_e == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("omega validation", "[selfenergy][errors]") {
    const DerivedCircuit dc = fig3_series();
    REQUIRE_THROWS_AS(im_sigma_hat(dc, 0.0), domain_error);
    REQUIRE_THROWS_AS(re_sigma_hat(dc, -1.0), domain_error);
    const SelfEnergyModel m = SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s);
    REQUIRE_THROWS_AS(m.sigma_e_delta(-2.0 * dc.omega_s), domain_error);
}

TEST_CASE("ladder resonant approximations are anchored at the resonance", "[selfenergy]") {
    const DerivedCircuit dc = fig6a_ladder();
    const ResonanceInfo info = resonances(dc);
    const complexd res = resonant_sigma_hat(dc, dc.omega_sigma, ResonantKind::res);
    REQUIRE(std::abs(res.real()) < 1e-12 * std::abs(res.imag()));
    REQUIRE(res.imag() == Approx(im_sigma_hat(dc, dc.omega_sigma)).epsilon(1e-10));
    const complexd res0 = resonant_sigma_hat(dc, info.omega_sigma0, ResonantKind::res0);
    REQUIRE(res0.imag() == Approx(im_sigma_hat(dc, info.omega_sigma0)).epsilon(1e-9));
    // parallel anchors on a circuit with omega_s != 1, so unit factors count
    const DerivedCircuit par = derive(ParallelLC{0.5, 2.0}, Resonator{1.0, 1.0, 0.0}, tl);
    const ResonanceInfo pinfo = resonances(par);
    const complexd pres0 = resonant_sigma_hat(par, pinfo.omega_sigma0, ResonantKind::res0);
    REQUIRE(pres0.imag() == Approx(im_sigma_hat(par, pinfo.omega_sigma0)).epsilon(1e-9));
    const complexd pres = resonant_sigma_hat(par, par.omega_sigma, ResonantKind::res);
    REQUIRE(pres.imag() == Approx(im_sigma_hat(par, par.omega_sigma)).epsilon(1e-12));
    // series res/res0 anchors away from normalized units
    const DerivedCircuit ser = derive(SeriesLC{0.9, 1.7}, Resonator{0.5, 3.0, 0.0}, tl);
    const complexd sres = resonant_sigma_hat(ser, ser.omega_sigma, ResonantKind::res);
    REQUIRE(sres.imag() == Approx(im_sigma_hat(ser, ser.omega_sigma)).epsilon(1e-12));
    const ResonanceInfo sinfo = resonances(ser);
    const complexd sres0 = resonant_sigma_hat(ser, sinfo.omega_sigma0, ResonantKind::res0);
    REQUIRE(sres0.imag() == Approx(im_sigma_hat(ser, sinfo.omega_sigma0)).epsilon(1e-9));
}

TEST_CASE("evaluators are safe to call concurrently", "[selfenergy][threads]") {
    const DerivedCircuit dc = fig3_series();
    const SelfEnergyModel m = SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s);
    std::vector<complexd> out(64);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < 64; i += 4) out[i] = m.sigma_e(0.2 + 0.05 * i);
        });
    }
    for (auto& th : pool) th.join();
    for (int i = 0; i < 64; ++i) {
        REQUIRE(out[i] == m.sigma_e(0.2 + 0.05 * i)); // deterministic, no shared state
    }
}
