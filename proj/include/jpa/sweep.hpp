#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "jpa/metrics.hpp"

namespace jpa {

/// Worker cap: JPA_THREADS when set, hardware concurrency otherwise.
inline unsigned worker_count() {
    if (const char* env = std::getenv("JPA_THREADS")) {
        const long n = std::atol(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run fn(i) for i in [0, n) on up to worker_count() threads. Results must be
/// written into preallocated slots so output ordering stays deterministic.
template <class Fn>
inline void parallel_for(int n, Fn&& fn, unsigned max_workers = 0) {
    unsigned workers = max_workers > 0 ? max_workers : worker_count();
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max(1, n)));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

enum class SweepParam { lc_over_ls, cc_over_cs, zs_over_z0, cg_over_cs, lg_over_ls };

inline const char* to_string(SweepParam p) {
    switch (p) {
    case SweepParam::lc_over_ls: return "lc_over_ls";
    case SweepParam::cc_over_cs: return "cc_over_cs";
    case SweepParam::zs_over_z0: return "zs_over_z0";
    case SweepParam::cg_over_cs: return "cg_over_cs";
    case SweepParam::lg_over_ls: return "lg_over_ls";
    }
    return "?";
}

struct SweepRow {
    double value = 0.0; // swept parameter
    double g_max_lin = 0.0;
    double g_max_db = 0.0;
    double sigma = 0.0;
    double ripple_ratio = 0.0;
    double gbp = 0.0;
    double epsilon_th = 0.0;
    double omega_sigma = 0.0;
    double slope = 0.0; // d Re Sigma / d Delta at Delta = 0
    bool ripple_flag = false; // ripple > 20 %
    bool unstable = false;
    bool failed = false;
    std::string error;
};

struct SweepSpec {
    SweepParam param = SweepParam::lc_over_ls;
    double lo = 0.2;
    double hi = 2.0;
    int n = 200;
    double r = 0.98; // epsilon_p / epsilon_th
    int profile_points = 2001;
};

struct SweepSummary {
    std::vector<SweepRow> rows;
    int best_acceptable = -1;       // global gbp maximum among acceptable rows
    int first_interval_best = -1;   // gbp maximum inside the first acceptable interval
    int slope_match = -1;           // row closest to omega_sigma = omega_s
    std::vector<int> interval_best; // per contiguous acceptable interval
};

namespace detail {

inline RatioSpec with_param(RatioSpec base, SweepParam p, double value) {
    switch (p) {
    case SweepParam::lc_over_ls: base.lc_over_ls = value; break;
    case SweepParam::cc_over_cs: base.cc_over_cs = value; break;
    case SweepParam::zs_over_z0: base.zs_over_z0 = value; break;
    case SweepParam::cg_over_cs: base.cg_over_cs = value; break;
    case SweepParam::lg_over_ls: base.lg_over_ls = value; break;
    }
    return base;
}

} // namespace detail

/// One sweep row at the given parameter value: derive, threshold, pump at
/// r * eps_th, profile, figures of merit.
inline SweepRow sweep_row(const RatioSpec& ratios, SigmaMode mode, double delta_p, double r,
                          int profile_points) {
    SweepRow row;
    const DerivedCircuit dc = derive_from_ratios(ratios);
    const double omega_ref = dc.omega_s + delta_p; // omega_p/2
    const SelfEnergyModel model = SelfEnergyModel::make(dc, mode, omega_ref);
    const double gamma_i = dc.gamma_i();
    const bool ladder = dc.variant == Variant::simple_ladder;

    row.epsilon_th = ladder ? ladder_threshold(delta_p, model, gamma_i).epsilon_th
                            : threshold(delta_p, model, gamma_i).epsilon_th;
    const PumpSpec pump{delta_p, complexd(r * row.epsilon_th, 0.0)};

    double width_hint = model.gamma_e;
    if (is_resonant(dc.variant)) width_hint = std::max(width_hint, resonances(dc).width);
    width_hint = std::max(width_hint, std::abs(delta_p));

    auto gain = [ladder, pump, model, gamma_i](double d) {
        return ladder ? ladder_gain(d, pump, model, gamma_i)
                      : nonmarkov_gain(d, pump, model, gamma_i);
    };
    GainProfile profile = build_profile(gain, width_hint, omega_ref, profile_points);
    profile.unstable = r >= 1.0;
    const Metrics m = metrics(profile);

    row.g_max_lin = m.g_max;
    row.g_max_db = 10.0 * std::log10(m.g_max);
    row.sigma = m.sigma;
    row.ripple_ratio = m.ripple_ratio;
    row.gbp = m.gbp;
    row.omega_sigma = std::isfinite(dc.omega_sigma) ? dc.omega_sigma : nan64;
    row.ripple_flag = m.ripple_ratio > 0.20;
    row.unstable = profile.unstable;

    const double h = 1e-6 * dc.omega_s;
    row.slope = (re_sigma_hat(dc, omega_ref + h) - re_sigma_hat(dc, omega_ref - h)) / (2.0 * h);
    return row;
}

/// Parameter sweep with parallel row evaluation and deterministic ordering.
/// Failed rows carry an error tag and do not abort the sweep.
inline SweepSummary sweep(const RatioSpec& base, const SweepSpec& spec, SigmaMode mode,
                          double delta_p = 0.0) {
    if (!(spec.r > 0.0 && spec.r < 1.0)) throw domain_error("sweep: r must lie in (0, 1)");
    SweepSummary s;
    s.rows.assign(spec.n, SweepRow{});
    parallel_for(spec.n, [&](int i) {
        const double value =
            spec.n == 1 ? spec.lo : spec.lo + (spec.hi - spec.lo) * i / (spec.n - 1);
        SweepRow& row = s.rows[i];
        row.value = value;
        try {
            const RatioSpec ratios = detail::with_param(base, spec.param, value);
            SweepRow computed = sweep_row(ratios, mode, delta_p, spec.r, spec.profile_points);
            computed.value = value;
            row = computed;
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
    });

    // acceptable rows and their contiguous intervals
    auto acceptable = [&](const SweepRow& row) {
        return !row.failed && !row.ripple_flag && std::isfinite(row.gbp);
    };
    int interval_start = -1;
    for (int i = 0; i <= spec.n; ++i) {
        const bool acc = i < spec.n && acceptable(s.rows[i]);
        if (acc && interval_start < 0) interval_start = i;
        if (!acc && interval_start >= 0) {
            int best = interval_start;
            for (int j = interval_start; j < i; ++j)
                if (s.rows[j].gbp > s.rows[best].gbp) best = j;
            s.interval_best.push_back(best);
            interval_start = -1;
        }
    }
    for (int b : s.interval_best) {
        if (s.best_acceptable < 0 || s.rows[b].gbp > s.rows[s.best_acceptable].gbp)
            s.best_acceptable = b;
    }
    if (!s.interval_best.empty()) s.first_interval_best = s.interval_best.front();

    // slope-matching diagnostic row: omega_sigma closest to omega_s
    double best_dist = inf64;
    for (int i = 0; i < spec.n; ++i) {
        const SweepRow& row = s.rows[i];
        if (row.failed || !std::isfinite(row.omega_sigma)) continue;
        const double dist = std::abs(row.omega_sigma - 1.0); // normalized omega_s = 1
        if (dist < best_dist) {
            best_dist = dist;
            s.slope_match = i;
        }
    }
    return s;
}

} // namespace jpa
