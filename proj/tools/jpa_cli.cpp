// Command-line front end: self-energy tables, dressed-mode tables, gain
// profiles, threshold scans, parameter sweeps and the built-in verification
// suite. Configuration comes from an optional JSON file plus flag overrides;
// all numeric output is CSV with 17 significant digits.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jpa/config.hpp"
#include "jpa/csv.hpp"
#include "jpa/metrics.hpp"
#include "jpa/response.hpp"
#include "jpa/self_energy.hpp"
#include "jpa/svg.hpp"
#include "jpa/sweep.hpp"
#include "jpa/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_computation = 1;
constexpr int exit_config = 2;
constexpr int exit_verification = 3;

struct Flags {
    std::string config_path;
    std::string variant, mode, grid, out, svg, param, range;
    std::optional<double> zs, cc, lc, cg, lg, delta_p, r, eps, gamma_i;
    std::optional<unsigned long long> seed;
    bool oracle = false;
    bool all_crossings = false;
    bool markov_compare = false;
    std::string r_scan;
};

jpa::GridSpec parse_grid_string(const std::string& s) {
    jpa::GridSpec g;
    char c1 = 0, c2 = 0;
    std::istringstream ss(s);
    if (!(ss >> g.min >> c1 >> g.max >> c2 >> g.n) || c1 != ':' || c2 != ':' || g.n < 2)
        throw jpa::config_error("grid must be min:max:n", "--grid");
    if (!(g.max > g.min)) throw jpa::config_error("grid max must exceed min", "--grid");
    return g;
}

jpa::RunConfig load_config(const Flags& f, const std::string& subcommand) {
    jpa::RunConfig cfg;
    bool have_file = false;
    if (!f.config_path.empty()) {
        std::ifstream is(f.config_path);
        if (!is) throw jpa::config_error("cannot open config file", f.config_path);
        std::stringstream buf;
        buf << is.rdbuf();
        cfg = jpa::parse_config(buf.str());
        have_file = true;
    }
    if (!f.variant.empty()) cfg.variant = jpa::detail::parse_variant(f.variant);
    if (!have_file) {
        jpa::RatioSpec r;
        r.variant = cfg.variant;
        cfg.ratios = r;
    }
    if (cfg.ratios) {
        cfg.ratios->variant = cfg.variant;
        if (f.zs) cfg.ratios->zs_over_z0 = *f.zs;
        if (f.cc) cfg.ratios->cc_over_cs = *f.cc;
        if (f.lc) cfg.ratios->lc_over_ls = *f.lc;
        if (f.cg) cfg.ratios->cg_over_cs = *f.cg;
        if (f.lg) cfg.ratios->lg_over_ls = *f.lg;
    }
    if (f.gamma_i) {
        cfg.gamma_i = *f.gamma_i;
        if (cfg.ratios) cfg.ratios->gamma_i_over_ws = cfg.gamma_i;
        if (cfg.elements) cfg.elements->gamma_i = cfg.gamma_i;
    }
    if (f.delta_p) cfg.delta_p = *f.delta_p;
    if (f.r) {
        if (!(*f.r > 0.0 && *f.r < 1.0))
            throw jpa::config_error("--r must lie in (0,1)", "--r");
        cfg.r = *f.r;
        cfg.epsilon_p.reset();
    }
    if (f.eps) {
        cfg.epsilon_p = *f.eps;
        cfg.r.reset();
    }
    if (!f.mode.empty()) cfg.mode = jpa::detail::parse_mode(f.mode);
    if (!f.grid.empty()) cfg.grid = parse_grid_string(f.grid);
    if (!f.out.empty()) cfg.csv_out = f.out;
    if (!f.svg.empty()) cfg.svg_out = f.svg;
    if (f.seed) cfg.seed = *f.seed;

    if (!f.param.empty() || !f.range.empty()) {
        jpa::SweepSpec s = cfg.sweep.value_or(jpa::SweepSpec{});
        if (!f.param.empty()) s.param = jpa::detail::parse_sweep_param(f.param);
        if (!f.range.empty()) {
            const jpa::GridSpec g = parse_grid_string(f.range);
            s.lo = g.min;
            s.hi = g.max;
            s.n = g.n;
        }
        if (cfg.r) s.r = *cfg.r;
        cfg.sweep = s;
    } else if (cfg.sweep && cfg.r) {
        cfg.sweep->r = *cfg.r;
    }

    if (subcommand == "sweep" && !cfg.sweep)
        throw jpa::config_error("sweep requires --param/--range or a 'sweep' config block",
                                "/sweep");
    return cfg;
}

std::ostream& output_stream(const jpa::RunConfig& cfg, std::ofstream& file) {
    if (cfg.csv_out.empty()) return std::cout;
    file = jpa::open_output(cfg.csv_out);
    return file;
}

// epsilon_p for gain-type subcommands: direct value, or r * eps_th.
std::complex<double> resolve_pump(const jpa::RunConfig& cfg, const jpa::SelfEnergyModel& model,
                                  double* eps_th_out) {
    const bool ladder = model.dc.variant == jpa::Variant::simple_ladder;
    double eps_th;
    if (model.mode == jpa::SigmaMode::markov && !ladder)
        eps_th = jpa::markov_threshold(cfg.delta_p, model.gamma_e, cfg.gamma_i);
    else if (ladder)
        eps_th = jpa::ladder_threshold(cfg.delta_p, model, cfg.gamma_i).epsilon_th;
    else
        eps_th = jpa::threshold(cfg.delta_p, model, cfg.gamma_i).epsilon_th;
    if (eps_th_out) *eps_th_out = eps_th;
    double mag = cfg.epsilon_p ? *cfg.epsilon_p : cfg.r.value_or(0.9) * eps_th;
    return std::polar(mag, cfg.theta_p);
}

int cmd_selfenergy(const jpa::RunConfig& cfg, bool oracle) {
    const jpa::DerivedCircuit dc = cfg.derive_circuit();
    const jpa::SelfEnergyModel model =
        jpa::SelfEnergyModel::make(dc, cfg.mode, dc.omega_s + cfg.delta_p);
    if (std::abs(jpa::detail::root_discriminant(dc) - 1.0) < 1e-12 && jpa::is_resonant(dc.variant))
        std::cerr << "warning: degenerate root regime, closed forms replaced by quadrature\n";

    std::ofstream file;
    std::ostream& os = output_stream(cfg, file);
    jpa::CsvWriter csv(os);
    csv.header({"omega_over_omega_s", "re_sigma_over_omega_s", "im_sigma_over_omega_s"});
    std::vector<double> xs, re, im;
    double worst_err = 0.0;
    for (int i = 0; i < cfg.grid.n; ++i) {
        const double w =
            (cfg.grid.min + (cfg.grid.max - cfg.grid.min) * i / (cfg.grid.n - 1)) * dc.omega_s;
        if (!(w > 0.0)) continue;
        std::complex<double> s;
        if (oracle) {
            double err = 0.0;
            s = jpa::quadrature_oracle(dc, w, -1.0, &err);
            worst_err = std::max(worst_err, err);
        } else {
            s = model.sigma_e(w);
        }
        csv.field(w / dc.omega_s).field(s.real() / dc.omega_s).field(s.imag() / dc.omega_s);
        csv.end_row();
        xs.push_back(w / dc.omega_s);
        re.push_back(s.real() / dc.omega_s);
        im.push_back(s.imag() / dc.omega_s);
    }
    if (oracle)
        std::cerr << "oracle: worst error estimate " << worst_err / dc.omega_s
                  << " (units of omega_s)\n";
    if (!cfg.svg_out.empty()) {
        jpa::SvgPlot plot;
        auto& panel = plot.add_panel("self-energy", "omega/omega_s", "Sigma_E/omega_s");
        jpa::SvgPlot::add_series(panel, xs, re, "Re");
        jpa::SvgPlot::add_series(panel, xs, im, "Im");
        plot.write(cfg.svg_out);
    }
    return exit_ok;
}

int cmd_modes(const jpa::RunConfig& cfg) {
    const jpa::DerivedCircuit dc = cfg.derive_circuit();
    std::ofstream file;
    std::ostream& os = output_stream(cfg, file);
    jpa::CsvWriter csv(os);
    csv.header({"k_v_over_omega_s", "phase", "u0", "f_k"});
    std::vector<double> xs, phases, fks;
    for (int i = 0; i < cfg.grid.n; ++i) {
        const double k = (cfg.grid.min + (cfg.grid.max - cfg.grid.min) * i / (cfg.grid.n - 1)) *
                         dc.omega_s / dc.tl.v;
        if (!(k > 0.0)) continue;
        const jpa::ModePoint mp = jpa::mode_point(k, dc);
        const double fk = jpa::coupling_coefficient(k, dc);
        csv.field(k * dc.tl.v / dc.omega_s).field(mp.phase).field(mp.amp0).field(fk);
        csv.end_row();
        xs.push_back(k * dc.tl.v / dc.omega_s);
        phases.push_back(mp.phase);
        fks.push_back(fk);
    }
    if (!cfg.svg_out.empty()) {
        jpa::SvgPlot plot;
        auto& p1 = plot.add_panel("boundary phase", "", "phi_k");
        jpa::SvgPlot::add_series(p1, xs, phases);
        auto& p2 = plot.add_panel("coupling coefficient", "k v/omega_s", "f_k");
        jpa::SvgPlot::add_series(p2, xs, fks);
        plot.write(cfg.svg_out);
    }
    return exit_ok;
}

// pump-strength scan: peak-count transitions locate where split gain maxima
// merge into a flat top
int cmd_gain_rscan(const jpa::RunConfig& cfg, const std::string& rscan) {
    const jpa::DerivedCircuit dc = cfg.derive_circuit();
    const double omega_ref = dc.omega_s + cfg.delta_p;
    const jpa::SelfEnergyModel model = jpa::SelfEnergyModel::make(dc, cfg.mode, omega_ref);
    const bool ladder = dc.variant == jpa::Variant::simple_ladder;
    const jpa::GridSpec grid = parse_grid_string(rscan);

    double eps_th;
    if (ladder) eps_th = jpa::ladder_threshold(cfg.delta_p, model, cfg.gamma_i).epsilon_th;
    else eps_th = jpa::threshold(cfg.delta_p, model, cfg.gamma_i).epsilon_th;

    std::ofstream file;
    std::ostream& os = output_stream(cfg, file);
    jpa::CsvWriter csv(os);
    csv.header({"r", "eps", "g_max", "sigma", "ripple_ratio", "gbp", "peaks"});
    double width_hint = model.gamma_e;
    if (jpa::is_resonant(dc.variant))
        width_hint = std::max(width_hint, jpa::resonances(dc).width);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.min + (grid.max - grid.min) * i / (grid.n - 1);
        const jpa::PumpSpec pump{cfg.delta_p, std::polar(r * eps_th, cfg.theta_p)};
        auto gain = [ladder, pump, model, gi = cfg.gamma_i](double d) {
            return ladder ? jpa::ladder_gain(d, pump, model, gi)
                          : jpa::nonmarkov_gain(d, pump, model, gi);
        };
        try {
            const jpa::GainProfile p = jpa::build_profile(gain, width_hint, omega_ref);
            const jpa::Metrics m = jpa::metrics(p);
            csv.field(r).field(r * eps_th).field(m.g_max).field(m.sigma).field(m.ripple_ratio)
                .field(m.gbp).field(m.peaks);
            csv.end_row();
        } catch (const std::exception& e) {
            std::cerr << "r = " << r << ": " << e.what() << "\n";
        }
    }
    return exit_ok;
}

int cmd_gain(const jpa::RunConfig& cfg, bool markov_compare) {
    const jpa::DerivedCircuit dc = cfg.derive_circuit();
    const double omega_ref = dc.omega_s + cfg.delta_p;
    const jpa::SelfEnergyModel model = jpa::SelfEnergyModel::make(dc, cfg.mode, omega_ref);
    const bool ladder = dc.variant == jpa::Variant::simple_ladder;

    double eps_th = 0.0;
    jpa::PumpSpec pump{cfg.delta_p, resolve_pump(cfg, model, &eps_th)};
    const bool unstable = std::abs(pump.epsilon_p) >= eps_th;
    if (unstable)
        std::cerr << "warning: pump at/above threshold (eps_th = " << eps_th
                  << "); zero-amplitude state unstable, linear gain not physical\n";

    std::ofstream file;
    std::ostream& os = output_stream(cfg, file);
    jpa::CsvWriter csv(os);
    std::vector<std::string> head = {"delta_over_omega_s", "gs", "gi",   "re_u", "im_u",
                                     "re_v",               "im_v", "abs_d", "unstable"};
    if (markov_compare) head.push_back("gs_markov");
    csv.header(head);
    std::vector<double> xs, gs, gsm;
    for (int i = 0; i < cfg.grid.n; ++i) {
        const double d =
            (cfg.grid.min + (cfg.grid.max - cfg.grid.min) * i / (cfg.grid.n - 1)) * dc.omega_s;
        try {
            const jpa::GainPoint gp = ladder ? jpa::ladder_gain(d, pump, model, cfg.gamma_i)
                                             : jpa::nonmarkov_gain(d, pump, model, cfg.gamma_i);
            const jpa::GainPoint gm = ladder ? jpa::ladder_gain(-d, pump, model, cfg.gamma_i)
                                             : jpa::nonmarkov_gain(-d, pump, model, cfg.gamma_i);
            csv.field(d / dc.omega_s)
                .field(std::norm(gp.u))
                .field(std::norm(gm.v))
                .field(gp.u.real())
                .field(gp.u.imag())
                .field(gp.v.real())
                .field(gp.v.imag())
                .field(std::abs(gp.d))
                .field(unstable);
            if (markov_compare) {
                const jpa::GainPoint mk = jpa::markov_gain(d, pump, model.gamma_e, cfg.gamma_i);
                csv.field(std::norm(mk.u));
                gsm.push_back(std::norm(mk.u));
            }
            csv.end_row();
            xs.push_back(d / dc.omega_s);
            gs.push_back(std::norm(gp.u));
        } catch (const jpa::domain_error&) {
            continue; // outside the RWA window
        }
    }
    if (!cfg.svg_out.empty()) {
        jpa::SvgPlot plot;
        auto& panel = plot.add_panel("signal gain", "delta/omega_s", "G_s");
        panel.logy = true;
        jpa::SvgPlot::add_series(panel, xs, gs, "G_s");
        if (markov_compare) jpa::SvgPlot::add_series(panel, xs, gsm, "Markov");
        plot.write(cfg.svg_out);
    }
    return exit_ok;
}

int cmd_threshold(const jpa::RunConfig& cfg, bool all_crossings) {
    const jpa::DerivedCircuit dc = cfg.derive_circuit();
    const bool ladder = dc.variant == jpa::Variant::simple_ladder;
    std::ofstream file;
    std::ostream& os = output_stream(cfg, file);
    jpa::CsvWriter csv(os);
    csv.header({"delta_p_over_omega_s", "eps_th", "eps_th_markov", "mechanism", "re_sigma0",
                "im_sigma0"});
    std::vector<double> xs, eths, ethms;
    for (int i = 0; i < cfg.grid.n; ++i) {
        const double dp =
            (cfg.grid.min + (cfg.grid.max - cfg.grid.min) * i / (cfg.grid.n - 1)) * dc.omega_s;
        const double omega_ref = dc.omega_s + dp;
        if (!(omega_ref > 0.0)) continue;
        const jpa::SelfEnergyModel model = jpa::SelfEnergyModel::make(dc, cfg.mode, omega_ref);
        const std::complex<double> s0 = model.sigma_e_delta(0.0);
        try {
            jpa::ThresholdResult t;
            if (ladder) {
                t = jpa::ladder_threshold(dp, model, cfg.gamma_i);
                if (all_crossings) {
                    const auto all = jpa::ladder_threshold_scan(
                        dp, model, cfg.gamma_i,
                        5.0 * (model.gamma_e + cfg.gamma_i + std::abs(dp) + *dc.g));
                    std::cerr << "delta_p=" << dp << ": " << all.size() << " crossings\n";
                }
            } else {
                t = jpa::threshold(dp, model, cfg.gamma_i);
            }
            const double markov = jpa::markov_threshold(dp, model.gamma_e, cfg.gamma_i);
            csv.field(dp / dc.omega_s)
                .field(t.epsilon_th)
                .field(markov)
                .field(t.mechanism == jpa::ThresholdMechanism::determinant_root
                           ? std::string("determinant-root")
                           : std::string("eigenvalue-crossing"))
                .field(s0.real())
                .field(s0.imag());
            csv.end_row();
            xs.push_back(dp / dc.omega_s);
            eths.push_back(t.epsilon_th);
            ethms.push_back(markov);
        } catch (const jpa::threshold_not_found_error& e) {
            csv.field(dp / dc.omega_s)
                .field(jpa::nan64)
                .field(jpa::markov_threshold(dp, model.gamma_e, cfg.gamma_i))
                .field(std::string("not-found"))
                .field(s0.real())
                .field(s0.imag());
            csv.end_row();
            (void)e;
        }
    }
    if (!cfg.svg_out.empty()) {
        jpa::SvgPlot plot;
        auto& panel = plot.add_panel("instability threshold", "delta_p/omega_s", "eps_th");
        jpa::SvgPlot::add_series(panel, xs, eths, "eps_th");
        jpa::SvgPlot::add_series(panel, xs, ethms, "Markov");
        plot.write(cfg.svg_out);
    }
    return exit_ok;
}

int cmd_sweep(const jpa::RunConfig& cfg) {
    if (!cfg.ratios)
        throw jpa::config_error("sweep works on the ratio form of the configuration", "/ratios");
    const jpa::SweepSummary s = jpa::sweep(*cfg.ratios, *cfg.sweep, cfg.mode, cfg.delta_p);

    std::ofstream file;
    std::ostream& os = output_stream(cfg, file);
    jpa::CsvWriter csv(os);
    csv.header({"param", "g_max_lin", "g_max_db", "sigma", "ripple_ratio", "gbp", "eps_th",
                "omega_sigma", "slope", "ripple_gt_20pct", "unstable", "failed", "error"});
    for (const jpa::SweepRow& row : s.rows) {
        csv.field(row.value)
            .field(row.g_max_lin)
            .field(row.g_max_db)
            .field(row.sigma)
            .field(row.ripple_ratio)
            .field(row.gbp)
            .field(row.epsilon_th)
            .field(row.omega_sigma)
            .field(row.slope)
            .field(row.ripple_flag)
            .field(row.unstable)
            .field(row.failed)
            .field(row.error);
        csv.end_row();
    }
    if (s.best_acceptable >= 0)
        std::cerr << "best acceptable row: param = " << s.rows[s.best_acceptable].value
                  << ", gbp = " << s.rows[s.best_acceptable].gbp << "\n";
    if (s.first_interval_best >= 0 && s.first_interval_best != s.best_acceptable)
        std::cerr << "first-interval optimum: param = " << s.rows[s.first_interval_best].value
                  << ", gbp = " << s.rows[s.first_interval_best].gbp << "\n";
    if (s.slope_match >= 0)
        std::cerr << "omega_sigma = omega_s nearest row: param = " << s.rows[s.slope_match].value
                  << ", slope = " << s.rows[s.slope_match].slope << "\n";

    if (!cfg.svg_out.empty()) {
        std::vector<double> xs, gmax, sig, rip, gbp;
        for (const auto& row : s.rows) {
            if (row.failed) continue;
            xs.push_back(row.value);
            gmax.push_back(row.g_max_db);
            sig.push_back(row.sigma);
            rip.push_back(row.ripple_ratio);
            gbp.push_back(row.gbp);
        }
        jpa::SvgPlot plot;
        auto& p1 = plot.add_panel("maximum gain", "", "G_max [dB]");
        jpa::SvgPlot::add_series(p1, xs, gmax);
        auto& p2 = plot.add_panel("ripple-to-gain ratio", "", "ripple");
        jpa::SvgPlot::add_series(p2, xs, rip);
        auto& p3 = plot.add_panel("bandwidth", "", "sigma/omega_s");
        jpa::SvgPlot::add_series(p3, xs, sig);
        auto& p4 = plot.add_panel("gain-bandwidth product", "swept parameter", "sigma sqrt(G)");
        jpa::SvgPlot::add_series(p4, xs, gbp);
        plot.write(cfg.svg_out);
    }
    return exit_ok;
}

int cmd_verify(const jpa::RunConfig& cfg, bool verbose) {
    const auto results = jpa::run_acceptance(cfg.seed, verbose ? &std::cerr : nullptr);
    const bool all = jpa::print_acceptance(results, std::cout);
    return all ? exit_ok : exit_verification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain models of parametric amplifiers with "
                 "non-Markovian transmission-line coupling"};
    app.require_subcommand(1);

    Flags f;
    bool verbose = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", f.config_path, "JSON configuration file");
        sub->add_option("--variant", f.variant, "capacitive|inductive|series|parallel|ladder");
        sub->add_option("--zs", f.zs, "Z_s/Z_0");
        sub->add_option("--cc", f.cc, "C_c/C_s");
        sub->add_option("--lc", f.lc, "L_c/L_s");
        sub->add_option("--cg", f.cg, "C_g/C_s");
        sub->add_option("--lg", f.lg, "L_g/L_s");
        sub->add_option("--gamma-i", f.gamma_i, "internal damping rate / omega_s");
        sub->add_option("--delta-p", f.delta_p, "pump detuning / omega_s");
        sub->add_option("--r", f.r, "epsilon_p as a fraction of epsilon_th");
        sub->add_option("--eps", f.eps, "epsilon_p / omega_s (direct)");
        sub->add_option("--mode", f.mode, "exact|res|res0|markov");
        sub->add_option("--grid", f.grid, "min:max:n");
        sub->add_option("--out", f.out, "CSV output path (default stdout)");
        sub->add_option("--svg", f.svg, "SVG plot output path");
    };

    CLI::App* se = app.add_subcommand("selfenergy", "coupling self-energy table");
    add_common(se);
    se->add_flag("--oracle", f.oracle, "evaluate by principal-value quadrature instead");
    CLI::App* modes = app.add_subcommand("modes", "dressed-mode table (k, phase, u0, f_k)");
    add_common(modes);
    CLI::App* gain = app.add_subcommand("gain", "parametric gain profile");
    add_common(gain);
    gain->add_flag("--markov-compare", f.markov_compare, "append the Markov gain column");
    gain->add_option("--r-scan", f.r_scan,
                     "scan epsilon_p over r = lo:hi:n and report peak counts");
    CLI::App* thr = app.add_subcommand("threshold", "instability threshold scan");
    add_common(thr);
    thr->add_flag("--all-crossings", f.all_crossings,
                  "report every max-Re-eigenvalue sign change (ladder)");
    CLI::App* sw = app.add_subcommand("sweep", "coupling-parameter sweep");
    add_common(sw);
    sw->add_option("--param", f.param, "swept ratio: lc|cc|zs|cg|lg");
    sw->add_option("--range", f.range, "lo:hi:n");
    CLI::App* ver = app.add_subcommand("verify", "run the acceptance/property suite");
    ver->add_option("config", f.config_path, "JSON configuration file");
    ver->add_option("--seed", f.seed, "seed for randomized property checks");
    ver->add_flag("--verbose", verbose, "progress to stderr");

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        const jpa::RunConfig cfg = load_config(f, sub);
        if (sub == "selfenergy") return cmd_selfenergy(cfg, f.oracle);
        if (sub == "modes") return cmd_modes(cfg);
        if (sub == "gain")
            return f.r_scan.empty() ? cmd_gain(cfg, f.markov_compare)
                                    : cmd_gain_rscan(cfg, f.r_scan);
        if (sub == "threshold") return cmd_threshold(cfg, f.all_crossings);
        if (sub == "sweep") return cmd_sweep(cfg);
        if (sub == "verify") return cmd_verify(cfg, verbose);
    } catch (const jpa::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_computation;
    }
    return exit_config;
}
