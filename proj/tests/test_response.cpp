#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "jpa/response.hpp"

using namespace jpa;
using Catch::Approx;

namespace {

SelfEnergyModel fig3_model(double delta_p = 0.0) {
    RatioSpec r;
    r.variant = Variant::series_lc;
    r.zs_over_z0 = 2.0;
    r.cc_over_cs = 10.0;
    r.lc_over_ls = 0.4;
    const DerivedCircuit dc = derive_from_ratios(r);
    return SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s + delta_p);
}

SelfEnergyModel fig6a_model(double delta_ps = -0.36) {
    RatioSpec r;
    r.variant = Variant::simple_ladder;
    r.zs_over_z0 = 0.7;
    r.cg_over_cs = 120.0;
    r.lg_over_ls = 0.002;
    r.cc_over_cs = 1.12;
    r.lc_over_ls = 4.0;
    const DerivedCircuit dc = derive_from_ratios(r);
    return SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s + delta_ps);
}

// expanded |u|^2 of the frequency-dependent gain, including the loss term
double usq_expanded(double delta, const PumpSpec& pump, const SelfEnergyModel& m,
                    double gamma_i) {
    const complexd i(0.0, 1.0);
    const complexd se_p = m.sigma_e_delta(delta);
    const complexd se_m = m.sigma_e_delta(-delta);
    const complexd sp = se_p - i * gamma_i;
    const complexd sm = se_m - i * gamma_i;
    const complexd d = (pump.delta_p + delta - sp) * (pump.delta_p - delta - std::conj(sm)) -
                       std::norm(pump.epsilon_p);
    const double ip = se_p.imag(), im = se_m.imag();
    const double d2 = std::norm(d);
    return 1.0 + 4.0 * std::norm(pump.epsilon_p) * ip * im / d2 -
           4.0 * gamma_i * ip / d2 *
               (std::norm(pump.epsilon_p) - std::norm(pump.delta_p - delta - sm));
}

} // namespace

TEST_CASE("Markov gain closed algebra", "[response]") {
    SECTION("no pump reflects without amplification") {
        // the unpumped resonator is an all-pass: |u| = 1 (phase only), v = 0
        for (double delta : {-0.7, 0.0, 1.3}) {
            const GainPoint gp = markov_gain(delta, PumpSpec{0.2, {0.0, 0.0}}, 1.0, 0.0);
            REQUIRE(std::abs(gp.u) == Approx(1.0).epsilon(1e-14));
            REQUIRE(gp.v == complexd(0.0, 0.0));
        }
        // at resonance the reflection phase is pi
        const GainPoint r0 = markov_gain(0.0, PumpSpec{0.0, {0.0, 0.0}}, 1.0, 0.0);
        REQUIRE(r0.u.real() == Approx(-1.0).epsilon(1e-14));
        REQUIRE(std::abs(r0.u.imag()) < 1e-14);
    }
    SECTION("eps = Gamma_E/sqrt(2) gives u(0) = -3 and G_s = 9") {
        const double ge = 1.0;
        const GainPoint gp =
            markov_gain(0.0, PumpSpec{0.0, {ge / std::sqrt(2.0), 0.0}}, ge, 0.0);
        REQUIRE(gp.u.real() == Approx(-3.0).epsilon(1e-12));
        REQUIRE(std::abs(gp.u.imag()) < 1e-12);
        REQUIRE(std::norm(gp.u) == Approx(9.0).epsilon(1e-12));
    }
    SECTION("v(0) = -2 i eps Gamma_E/(Gamma_E^2 - eps^2)") {
        const GainPoint gp = markov_gain(0.0, PumpSpec{0.0, {0.3, 0.0}}, 1.0, 0.0);
        REQUIRE(gp.v.real() == Approx(0.0).margin(1e-14));
        REQUIRE(gp.v.imag() == Approx(-0.6593406593406593).epsilon(1e-12));
    }
    SECTION("determinant vanishing at threshold raises singular_gain_error") {
        const double eth = markov_threshold(0.3, 1.0, 0.0);
        REQUIRE_THROWS_AS(markov_gain(0.0, PumpSpec{0.3, {eth, 0.0}}, 1.0, 0.0),
                          singular_gain_error);
    }
}

TEST_CASE("non-Markov gain reduces to Markov with a constant kernel", "[response]") {
    RatioSpec r;
    r.variant = Variant::series_lc;
    r.zs_over_z0 = 1.0;
    r.cc_over_cs = 10.0;
    r.lc_over_ls = 0.9;
    const DerivedCircuit dc = derive_from_ratios(r);
    const SelfEnergyModel m = SelfEnergyModel::make(dc, SigmaMode::markov, dc.omega_s);
    const PumpSpec pump{0.1, {0.4 * m.gamma_e, 0.1 * m.gamma_e}};
    for (int i = 0; i <= 20; ++i) {
        const double delta = -0.9 + 1.8 * i / 20.0;
        const GainPoint a = nonmarkov_gain(delta, pump, m, 0.02);
        const GainPoint b = markov_gain(delta, pump, m.gamma_e, 0.02);
        REQUIRE(std::abs(a.u - b.u) <= 1e-12 * std::abs(b.u));
        REQUIRE(std::abs(a.v - b.v) <= 1e-12 * std::abs(b.v));
        REQUIRE(std::abs(a.d - b.d) <= 1e-12 * std::abs(b.d));
    }
}

TEST_CASE("unitarity residuals", "[response]") {
    const SelfEnergyModel m = fig3_model();
    const double eth = threshold(0.0, m, 0.0).epsilon_th;
    const PumpSpec pump{0.0, {0.6 * eth, 0.0}};

    SECTION("lossless residuals vanish at delta = 0.3 omega_s") {
        const GainPoint plus = nonmarkov_gain(0.3, pump, m, 0.0);
        const GainPoint minus = nonmarkov_gain(-0.3, pump, m, 0.0);
        const UnitarityResiduals res = unitarity_residuals(plus, minus, m);
        REQUIRE(std::abs(res.r1) < 1e-10);
        REQUIRE(std::abs(res.r2) < 1e-10);
    }
    SECTION("Markov mode reduces to |u|^2 - |v|^2 = 1") {
        const SelfEnergyModel mk =
            SelfEnergyModel::make(m.dc, SigmaMode::markov, m.omega_ref);
        const GainPoint plus = nonmarkov_gain(0.3, pump, mk, 0.0);
        const GainPoint minus = nonmarkov_gain(-0.3, pump, mk, 0.0);
        const UnitarityResiduals res = unitarity_residuals(plus, minus, mk);
        REQUIRE(std::abs(res.r1) < 1e-12);
        REQUIRE(std::norm(plus.u) - std::norm(plus.v) == Approx(1.0).epsilon(1e-12));
        REQUIRE(std::abs(res.r2) < 1e-12);
    }
    SECTION("internal loss removes photons: r1 < 0 at delta = 0") {
        const double gi = 0.1 * m.gamma_e;
        const GainPoint p0 = nonmarkov_gain(1e-9, pump, m, gi);
        const GainPoint m0 = nonmarkov_gain(-1e-9, pump, m, gi);
        REQUIRE(unitarity_residuals(p0, m0, m).r1 < 0.0);
    }
}

TEST_CASE("determinant symmetry D*(delta) = D(-delta)", "[response][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const SelfEnergyModel models[] = {fig3_model(0.07), fig6a_model()};
    for (const auto& m : models) {
        const bool ladder = m.dc.variant == Variant::simple_ladder;
        const double dp = m.omega_ref - m.dc.omega_s;
        const double eth = ladder ? ladder_threshold(dp, m, 0.0).epsilon_th
                                  : threshold(dp, m, 0.0).epsilon_th;
        for (int i = 0; i < 100; ++i) {
            const PumpSpec pump{dp, std::polar(0.7 * eth * u01(rng), 6.28 * u01(rng))};
            const double delta = (0.02 + 0.5 * u01(rng)) * m.omega_ref;
            const GainPoint plus = ladder ? ladder_gain(delta, pump, m, 0.01)
                                          : nonmarkov_gain(delta, pump, m, 0.01);
            const GainPoint minus = ladder ? ladder_gain(-delta, pump, m, 0.01)
                                           : nonmarkov_gain(-delta, pump, m, 0.01);
            REQUIRE(std::abs(std::conj(plus.d) - minus.d) <= 1e-12 * std::abs(plus.d));
        }
    }
}

TEST_CASE("|u|^2 matches its expanded form including the loss term",
          "[response][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const SelfEnergyModel m = fig3_model();
    for (int i = 0; i < 200; ++i) {
        const double gi = 0.2 * u01(rng);
        const PumpSpec pump{0.4 * (u01(rng) - 0.5),
                            std::polar(0.5 * u01(rng), 6.28 * u01(rng))};
        const double delta = (u01(rng) - 0.5) * m.omega_ref;
        const GainPoint gp = nonmarkov_gain(delta, pump, m, gi);
        if (std::abs(gp.d) < 1e-2) continue;
        REQUIRE(std::norm(gp.u) ==
                Approx(usq_expanded(delta, pump, m, gi)).epsilon(1e-10));
    }
}

TEST_CASE("ladder gain structure", "[response]") {
    const SelfEnergyModel m = fig6a_model();
    const double dps = -0.36;
    const double eth = ladder_threshold(dps, m, 0.0).epsilon_th;
    const PumpSpec pump{dps, {0.8 * eth, 0.0}};

    SECTION("two printed routes for u agree") {
        for (double delta : {-0.31, -0.05, 0.12, 0.4}) {
            const GainPoint gp = ladder_gain(delta, pump, m, 0.015);
            const complexd i(0.0, 1.0);
            const complexd se_p = m.sigma_e_delta(delta);
            const complexd se_m = m.sigma_e_delta(-delta);
            const double dpa = pump.delta_pa(m.dc);
            const complexd da_p = dpa + delta - se_p;
            const complexd smc = std::conj(m.dc.g.value() * m.dc.g.value() /
                                               (dpa - delta - se_m) -
                                           i * 0.015);
            const complexd wm = dps - delta - smc;
            const complexd u2 =
                1.0 + 2.0 * i * se_p.imag() / (gp.d * da_p) *
                          (wm * (dps + delta + i * 0.015) - std::norm(pump.epsilon_p));
            REQUIRE(std::abs(gp.u - u2) <= 1e-10 * std::abs(gp.u));
        }
    }
    SECTION("lossless unitarity holds for the ladder") {
        const GainPoint plus = ladder_gain(0.22, pump, m, 0.0);
        const GainPoint minus = ladder_gain(-0.22, pump, m, 0.0);
        const UnitarityResiduals res = unitarity_residuals(plus, minus, m);
        REQUIRE(std::abs(res.r1) < 1e-10);
        REQUIRE(std::abs(res.r2) < 1e-10);
    }
    SECTION("decoupled hybridization limit g -> 0") {
        RatioSpec r;
        r.variant = Variant::simple_ladder;
        r.zs_over_z0 = 0.7;
        r.cg_over_cs = 1.0;
        r.lg_over_ls = 1e6; // g ~ lg^(-3/4)
        r.cc_over_cs = 1.12;
        r.lc_over_ls = 4.0;
        const DerivedCircuit dc = derive_from_ratios(r);
        const SelfEnergyModel weak = SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s);
        const PumpSpec p{0.0, {0.1, 0.0}};
        const GainPoint gp = ladder_gain(0.1, p, weak, 0.0);
        const complexd i(0.0, 1.0);
        const complexd da = p.delta_pa(dc) + 0.1 - weak.sigma_e_delta(0.1);
        REQUIRE(std::abs(gp.u - (1.0 + 2.0 * i * weak.sigma_e_delta(0.1).imag() / da)) < 1e-6);
        REQUIRE(std::abs(gp.v) < 1e-6);
    }
}

TEST_CASE("stability eigenvalues and identities", "[response]") {
    const SelfEnergyModel m = fig6a_model(-0.2);

    SECTION("decoupled blocks give the rotation-damping pairs") {
        const double gi = 0.07, dps = -0.2;
        const mat4 a = ladder_dynamical_matrix(dps, 0.0, 0.0, m, gi);
        const auto eig = eigenvalues4(a);
        const complexd s0 = m.sigma_e_delta(0.0);
        const double ge = -s0.imag();
        const double dpap = (dps + m.dc.omega_s - *m.dc.omega_a) - s0.real();
        // expected: -gi +- i dps, -ge +- i dpa'
        std::vector<complexd> expected = {{-gi, -std::abs(dps)}, {-gi, std::abs(dps)},
                                          {-ge, -std::abs(dpap)}, {-ge, std::abs(dpap)}};
        for (const complexd& e : expected) {
            double best = 1e300;
            for (const auto& z : eig) best = std::min(best, std::abs(z - e));
            REQUIRE(best < 1e-10);
        }
    }
    SECTION("determinant and trace identities") {
        const double dps = -0.2, gi = 0.03, eps = 0.4;
        const auto se = stability_eigs(dps, eps, m, gi);
        const complexd s0 = m.sigma_e_delta(0.0);
        const double ge = -s0.imag();
        const double dpap = (dps + m.dc.omega_s - *m.dc.omega_a) - s0.real();
        const complexd sig0 =
            *m.dc.g * *m.dc.g / (dps + m.dc.omega_s - *m.dc.omega_a - s0) - complexd(0.0, gi);
        const double d0 = std::norm(dps - sig0) - eps * eps;
        REQUIRE(se.det == Approx(d0 * (dpap * dpap + ge * ge)).epsilon(1e-10));
        complexd tr = 0.0;
        for (const auto& z : se.eigenvalues) tr += z;
        REQUIRE(tr.real() == Approx(-2.0 * (gi + ge)).epsilon(1e-12));
        REQUIRE(std::abs(tr.imag()) < 1e-12);
    }
}

TEST_CASE("thresholds", "[response]") {
    SECTION("Markov threshold at zero detuning is Gamma_E") {
        REQUIRE(markov_threshold(0.0, 1.7, 0.0) == 1.7);
    }
    SECTION("series anchor: eps_th = |Sigma(0)|") {
        const SelfEnergyModel m = fig3_model();
        const ThresholdResult t = threshold(0.0, m, 0.0);
        REQUIRE(t.epsilon_th == Approx(0.495).margin(0.02));
        // determinant root: D(0) vanishes identically at the closed-form threshold
        const complexd s0 = m.sigma_e_delta(0.0);
        const double d0 = std::norm(-s0) - t.epsilon_th * t.epsilon_th;
        REQUIRE(std::abs(d0) < 1e-10);
        REQUIRE(t.mechanism == ThresholdMechanism::determinant_root);
    }
    SECTION("frozen-Sigma threshold minimum sits at delta_p = Re Sigma(0)") {
        const SelfEnergyModel m = fig3_model(); // omega_ref fixed at omega_s
        const complexd s0 = m.sigma_e_delta(0.0);
        double best_dp = 0.0, best = 1e300;
        for (int i = 0; i <= 4000; ++i) {
            const double dp = -0.6 + 1.2 * i / 4000.0;
            const double eth = threshold(dp, m, 0.0).epsilon_th;
            if (eth < best) {
                best = eth;
                best_dp = dp;
            }
        }
        REQUIRE(best_dp == Approx(s0.real()).margin(1e-3));
        REQUIRE(best == Approx(std::abs(s0.imag())).epsilon(1e-6));
    }
    SECTION("non-Markov threshold never undercuts the Markov one at zero detuning") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int i = 0; i < 50; ++i) {
            RatioSpec r;
            r.variant = Variant::series_lc;
            r.zs_over_z0 = 0.3 + 2.0 * u01(rng);
            r.cc_over_cs = 0.5 + 15.0 * u01(rng);
            r.lc_over_ls = 0.1 + 2.0 * u01(rng);
            const DerivedCircuit dc = derive_from_ratios(r);
            const SelfEnergyModel m = SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s);
            REQUIRE(threshold(0.0, m, 0.0).epsilon_th >=
                    markov_threshold(0.0, m.gamma_e, 0.0) - 1e-12);
        }
    }
    SECTION("ladder threshold mechanisms distinguish the lobes") {
        const DerivedCircuit dc = fig6a_model().dc;
        auto mech_at = [&](double dps) {
            const SelfEnergyModel m =
                SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s + dps);
            return ladder_threshold(dps, m, 0.0);
        };
        REQUIRE(mech_at(-0.04).mechanism == ThresholdMechanism::eigenvalue_crossing);
        REQUIRE(mech_at(0.38).mechanism == ThresholdMechanism::determinant_root);
        // eigenvalues at threshold: largest real part ~ 0
        const auto t = mech_at(0.38);
        double maxre = -1e300;
        for (const auto& z : t.eigenvalues) maxre = std::max(maxre, z.real());
        REQUIRE(std::abs(maxre) < 1e-6);
    }
    SECTION("no crossing inside the bracket reports the curve") {
        const SelfEnergyModel m = fig6a_model(-0.36);
        try {
            ladder_threshold(-0.36, m, 0.0, 1e-6); // bracket far below threshold
            FAIL("expected threshold_not_found_error");
        } catch (const threshold_not_found_error& e) {
            REQUIRE_FALSE(e.curve().empty());
        }
    }
}

TEST_CASE("system response and input-output consistency", "[response]") {
    const SelfEnergyModel m = fig3_model();
    const double eth = threshold(0.0, m, 0.0).epsilon_th;
    const PumpSpec pump{0.0, {0.7 * eth, 0.0}};
    const complexd bin{0.8, -0.3}, bin_dag{0.1, 0.4};

    SECTION("B_out equals u B_in + v B_in^dag(-delta)") {
        for (double delta : {-0.4, 0.05, 0.33}) {
            const SystemResponse sr = system_response(delta, pump, m, 0.0, bin, bin_dag);
            const GainPoint gp = nonmarkov_gain(delta, pump, m, 0.0);
            const complexd expect = gp.u * bin + gp.v * bin_dag;
            REQUIRE(std::abs(sr.b_out - expect) <= 1e-12 * std::abs(expect));
        }
    }
    SECTION("ladder input-output consistency") {
        const SelfEnergyModel lm = fig6a_model();
        const double leth = ladder_threshold(-0.36, lm, 0.0).epsilon_th;
        const PumpSpec lp{-0.36, {0.8 * leth, 0.0}};
        for (double delta : {-0.2, 0.1, 0.45}) {
            const SystemResponse sr = system_response(delta, lp, lm, 0.0, bin, bin_dag);
            const GainPoint gp = ladder_gain(delta, lp, lm, 0.0);
            const complexd expect = gp.u * bin + gp.v * bin_dag;
            REQUIRE(std::abs(sr.b_out - expect) <= 1e-12 * std::abs(expect));
            REQUIRE(sr.a_a_plus.has_value());
        }
    }
    SECTION("no pump means a diagonal susceptibility") {
        const PumpSpec quiet{0.1, {0.0, 0.0}};
        const GainPoint gp = nonmarkov_gain(0.2, quiet, m, 0.0);
        REQUIRE(std::abs(gp.chi[1]) == 0.0);
        REQUIRE(std::abs(gp.chi[2]) == 0.0);
        const complexd i(0.0, 1.0);
        const complexd wp = 0.1 + 0.2 - (m.sigma_e_delta(0.2));
        const complexd expect = i * std::sqrt(2.0 * m.gamma_e) / wp;
        const SystemResponse sr = system_response(0.2, quiet, m, 0.0, bin, {0.0, 0.0});
        REQUIRE(std::abs(sr.a_s_plus - expect * bin) <= 1e-12 * std::abs(sr.a_s_plus));
    }
    SECTION("zero input gives zero response below threshold") {
        const SystemResponse sr = system_response(0.2, pump, m, 0.0, {0.0, 0.0}, {0.0, 0.0});
        REQUIRE(std::abs(sr.a_s_plus) == 0.0);
        REQUIRE(std::abs(sr.b_out) == 0.0);
    }
    SECTION("detunings beyond the reference frequency are rejected") {
        REQUIRE_THROWS_AS(nonmarkov_gain(1.5 * m.omega_ref, pump, m, 0.0), domain_error);
    }
}

TEST_CASE("quartic eigen-solver accuracy on random stability matrices",
          "[response][property]") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        mat4 a{};
        for (auto& row : a)
            for (auto& x : row) x = 3.0 * u01(rng);
        const auto coeffs = char_poly(a);
        const auto eig = eigenvalues4(a);
        complexd sum = 0.0, prod = 1.0;
        for (const auto& z : eig) {
            sum += z;
            prod *= z;
            // characteristic polynomial residual at each root
            const complexd p =
                (((z + coeffs[3]) * z + coeffs[2]) * z + coeffs[1]) * z + coeffs[0];
            double scale = std::max(1.0, std::pow(std::abs(z), 4.0));
            REQUIRE(std::abs(p) <= 1e-9 * scale);
        }
        REQUIRE(sum.real() == Approx(trace(a)).margin(1e-9));
        REQUIRE(std::abs(sum.imag()) < 1e-9);
        REQUIRE(prod.real() == Approx(det4(a)).margin(1e-8 * std::max(1.0, std::abs(det4(a)))));
    }
}

TEST_CASE("ladder threshold full scan returns ordered crossings", "[response]") {
    const SelfEnergyModel m = fig6a_model(-0.36);
    const double emax = 5.0 * (m.gamma_e + 0.36 + *m.dc.g);
    const auto all = ladder_threshold_scan(-0.36, m, 0.0, emax);
    REQUIRE(!all.empty());
    REQUIRE(all.front().epsilon_th ==
            Approx(ladder_threshold(-0.36, m, 0.0).epsilon_th).epsilon(1e-6));
    for (size_t i = 1; i < all.size(); ++i)
        REQUIRE(all[i].epsilon_th > all[i - 1].epsilon_th);
}

TEST_CASE("unitarity is independent of the self-energy form", "[response][property]") {
    // the Bogoliubov relations hold for any Sigma_E(Delta), so the Lorentzian
    // approximations must satisfy them as exactly as the closed forms do
    RatioSpec r;
    r.variant = Variant::series_lc;
    r.zs_over_z0 = 0.8;
    r.cc_over_cs = 1.0;
    r.lc_over_ls = 1.5;
    const DerivedCircuit dc = derive_from_ratios(r);
    for (SigmaMode mode : {SigmaMode::resonant, SigmaMode::resonant_exact}) {
        const SelfEnergyModel m = SelfEnergyModel::make(dc, mode, dc.omega_s);
        const double eth = threshold(0.0, m, 0.0).epsilon_th;
        const PumpSpec pump{0.0, {0.7 * eth, 0.0}};
        for (double delta : {0.08, 0.31, 0.55}) {
            const GainPoint plus = nonmarkov_gain(delta, pump, m, 0.0);
            const GainPoint minus = nonmarkov_gain(-delta, pump, m, 0.0);
            const UnitarityResiduals res = unitarity_residuals(plus, minus, m);
            REQUIRE(std::abs(res.r1) < 1e-10);
            REQUIRE(std::abs(res.r2) < 1e-10);
        }
    }
}

TEST_CASE("unitarity ratio is undefined where Im Sigma vanishes", "[response][errors]") {
    // parallel-LC damping vanishes at omega_0; the residual ratio is undefined
    RatioSpec r;
    r.variant = Variant::parallel_lc;
    r.zs_over_z0 = 1.0;
    r.cc_over_cs = 0.5;
    r.lc_over_ls = 2.0;
    const DerivedCircuit dc = derive_from_ratios(r);
    const double w0 = dc.omega_sigma * dc.omega_sigma / dc.omega_s;
    const SelfEnergyModel m = SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s);
    const PumpSpec pump{0.0, {0.1, 0.0}};
    const double delta = w0 - m.omega_ref; // lands exactly on the zero
    const GainPoint plus = nonmarkov_gain(delta, pump, m, 0.0);
    const GainPoint minus = nonmarkov_gain(-delta, pump, m, 0.0);
    REQUIRE_THROWS_AS(unitarity_residuals(plus, minus, m), domain_error);
}

TEST_CASE("slope-matched series case has nearly equal thresholds", "[response]") {
    // with |Re Sigma(0)| << |Im Sigma(0)| the Markov and frequency-dependent
    // thresholds coincide at zero detuning
    RatioSpec r;
    r.variant = Variant::series_lc;
    r.zs_over_z0 = 1.0;
    r.cc_over_cs = 10.0;
    r.lc_over_ls = 0.9;
    const DerivedCircuit dc = derive_from_ratios(r);
    const SelfEnergyModel m = SelfEnergyModel::make(dc, SigmaMode::exact, dc.omega_s);
    const double eth = threshold(0.0, m, 0.0).epsilon_th;
    const double eth_markov = markov_threshold(0.0, m.gamma_e, 0.0);
    REQUIRE(eth_markov / eth == Approx(1.0).margin(1e-3));
    const complexd s0 = m.sigma_e_delta(0.0);
    REQUIRE(std::abs(s0.real()) < 0.01 * std::abs(s0.imag()));
}

TEST_CASE("susceptibility rows are conjugation-consistent", "[response][property]") {
    // chi21(+d) = chi12*(-d) and chi22(+d) = chi11*(-d): the A_s^dag(-d) row
    // of the response is the conjugate response at -d with swapped inputs
    const SelfEnergyModel models[] = {fig3_model(0.05), fig6a_model()};
    for (const auto& m : models) {
        const bool ladder = m.dc.variant == Variant::simple_ladder;
        const double dp = m.omega_ref - m.dc.omega_s;
        const double eth = ladder ? ladder_threshold(dp, m, 0.0).epsilon_th
                                  : threshold(dp, m, 0.0).epsilon_th;
        const PumpSpec pump{dp, std::polar(0.6 * eth, 0.7)};
        for (double delta : {0.12, 0.37}) {
            const GainPoint plus = ladder ? ladder_gain(delta, pump, m, 0.0)
                                          : nonmarkov_gain(delta, pump, m, 0.0);
            const GainPoint minus = ladder ? ladder_gain(-delta, pump, m, 0.0)
                                           : nonmarkov_gain(-delta, pump, m, 0.0);
            REQUIRE(std::abs(plus.chi[2] - std::conj(minus.chi[1])) <=
                    1e-12 * std::abs(plus.chi[2]));
            REQUIRE(std::abs(plus.chi[3] - std::conj(minus.chi[0])) <=
                    1e-12 * std::abs(plus.chi[3]));
        }
    }
}
