#pragma once

#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "jpa/circuit.hpp"
#include "jpa/self_energy.hpp"
#include "jpa/sweep.hpp"

namespace jpa {

/// Raw SI element values, used instead of ratios when absolute units matter.
struct ElementSpec {
    double z0 = 50.0;  // Ohm
    double v = 1.0e8;  // m/s
    double cs = 0.0, ls = 0.0;
    double cc = 0.0, lc = 0.0, cg = 0.0, lg = 0.0;
    double gamma_i = 0.0; // rad/s
};

struct GridSpec {
    double min = 0.1;
    double max = 10.0;
    int n = 200;
};

/// Parsed run configuration. Exactly one of ratios/elements is present;
/// frequencies are in units of omega_s for the ratio form and rad/s for the
/// SI form.
struct RunConfig {
    Variant variant = Variant::series_lc;
    std::optional<RatioSpec> ratios;
    std::optional<ElementSpec> elements;

    double delta_p = 0.0;               // pump detuning (delta_ps for the ladder)
    std::optional<double> r;            // epsilon_p / epsilon_th
    std::optional<double> epsilon_p;    // direct pump strength
    double theta_p = 0.0;
    double gamma_i = 0.0;

    SigmaMode mode = SigmaMode::exact;
    GridSpec grid;
    std::optional<SweepSpec> sweep;
    std::string csv_out;
    std::string svg_out;
    unsigned long long seed = 0x9e3779b97f4a7c15ULL;
    unsigned threads = 0;

    DerivedCircuit derive_circuit() const {
        if (ratios) return derive_from_ratios(*ratios);
        const ElementSpec& e = *elements;
        const TransmissionLine tl{e.z0, e.v};
        const Resonator res{e.cs, e.ls, e.gamma_i};
        CouplingNetwork net;
        switch (variant) {
        case Variant::capacitive: net = Capacitive{e.cc}; break;
        case Variant::inductive: net = Inductive{e.lc}; break;
        case Variant::series_lc: net = SeriesLC{e.cc, e.lc}; break;
        case Variant::parallel_lc: net = ParallelLC{e.cc, e.lc}; break;
        case Variant::simple_ladder: net = SimpleLadder{e.cg, e.lg, e.cc, e.lc}; break;
        }
        return derive(net, res, tl);
    }
};

namespace detail {

inline std::pair<int, int> line_col(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw config_error("unknown key '" + it.key() + "'", where + "/" + it.key());
    }
}

inline Variant parse_variant(const std::string& s) {
    if (s == "capacitive") return Variant::capacitive;
    if (s == "inductive") return Variant::inductive;
    if (s == "series_lc" || s == "series") return Variant::series_lc;
    if (s == "parallel_lc" || s == "parallel") return Variant::parallel_lc;
    if (s == "simple_ladder" || s == "ladder") return Variant::simple_ladder;
    throw config_error("unknown variant '" + s + "'", "/variant");
}

inline SigmaMode parse_mode(const std::string& s) {
    if (s == "exact") return SigmaMode::exact;
    if (s == "res") return SigmaMode::resonant;
    if (s == "res0") return SigmaMode::resonant_exact;
    if (s == "markov") return SigmaMode::markov;
    throw config_error("unknown mode '" + s + "' (exact|res|res0|markov)", "/mode");
}

inline SweepParam parse_sweep_param(const std::string& s) {
    if (s == "lc" || s == "lc_over_ls") return SweepParam::lc_over_ls;
    if (s == "cc" || s == "cc_over_cs") return SweepParam::cc_over_cs;
    if (s == "zs" || s == "zs_over_z0") return SweepParam::zs_over_z0;
    if (s == "cg" || s == "cg_over_cs") return SweepParam::cg_over_cs;
    if (s == "lg" || s == "lg_over_ls") return SweepParam::lg_over_ls;
    throw config_error("unknown sweep parameter '" + s + "'", "/sweep/param");
}

RunConfig config_from_json(const nlohmann::json& j);

} // namespace detail

/// Parse a JSON-subset configuration document. Unknown keys are rejected with
/// their location; parse errors are reported with line and column; type
/// mismatches surface as configuration errors too.
inline RunConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw config_error(std::string("parse error: ") + e.what(),
                           "line " + std::to_string(line) + ", column " + std::to_string(col));
    }
    try {
        return detail::config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("invalid value: ") + e.what(), "/");
    }
}

namespace detail {

inline RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("top level must be an object", "/");

    detail::check_keys(j,
                       {"variant", "ratios", "elements", "pump", "gamma_i", "mode", "grid",
                        "sweep", "output", "seed", "threads"},
                       "");

    RunConfig cfg;
    if (!j.contains("variant")) throw config_error("missing 'variant'", "/variant");
    cfg.variant = detail::parse_variant(j.at("variant").get<std::string>());

    if (j.contains("ratios") == j.contains("elements"))
        throw config_error("exactly one of 'ratios'/'elements' must be present", "/");

    if (j.contains("gamma_i")) cfg.gamma_i = j.at("gamma_i").get<double>();
    if (cfg.gamma_i < 0.0) throw config_error("'gamma_i' must be >= 0", "/gamma_i");

    if (j.contains("ratios")) {
        const auto& o = j.at("ratios");
        detail::check_keys(
            o, {"zs_over_z0", "cc_over_cs", "lc_over_ls", "cg_over_cs", "lg_over_ls"}, "/ratios");
        RatioSpec r;
        r.variant = cfg.variant;
        r.zs_over_z0 = o.value("zs_over_z0", 1.0);
        r.cc_over_cs = o.value("cc_over_cs", 0.0);
        r.lc_over_ls = o.value("lc_over_ls", 0.0);
        r.cg_over_cs = o.value("cg_over_cs", 0.0);
        r.lg_over_ls = o.value("lg_over_ls", 0.0);
        r.gamma_i_over_ws = cfg.gamma_i;
        cfg.ratios = r;
    } else {
        const auto& o = j.at("elements");
        detail::check_keys(o, {"z0", "v", "cs", "ls", "cc", "lc", "cg", "lg"}, "/elements");
        ElementSpec e;
        e.z0 = o.value("z0", 50.0);
        e.v = o.value("v", 1.0e8);
        e.cs = o.value("cs", 0.0);
        e.ls = o.value("ls", 0.0);
        e.cc = o.value("cc", 0.0);
        e.lc = o.value("lc", 0.0);
        e.cg = o.value("cg", 0.0);
        e.lg = o.value("lg", 0.0);
        e.gamma_i = cfg.gamma_i;
        cfg.elements = e;
    }

    if (j.contains("pump")) {
        const auto& o = j.at("pump");
        detail::check_keys(o, {"delta_p", "r", "epsilon_p", "theta_p"}, "/pump");
        cfg.delta_p = o.value("delta_p", 0.0);
        cfg.theta_p = o.value("theta_p", 0.0);
        if (o.contains("r") && o.contains("epsilon_p"))
            throw config_error("give either 'r' or 'epsilon_p', not both", "/pump");
        if (o.contains("r")) {
            cfg.r = o.at("r").get<double>();
            if (!(*cfg.r > 0.0 && *cfg.r < 1.0))
                throw config_error("'r' must lie in (0, 1)", "/pump/r");
        }
        if (o.contains("epsilon_p")) cfg.epsilon_p = o.at("epsilon_p").get<double>();
    }

    if (j.contains("mode")) cfg.mode = detail::parse_mode(j.at("mode").get<std::string>());

    if (j.contains("grid")) {
        const auto& o = j.at("grid");
        detail::check_keys(o, {"min", "max", "n"}, "/grid");
        cfg.grid.min = o.value("min", cfg.grid.min);
        cfg.grid.max = o.value("max", cfg.grid.max);
        cfg.grid.n = o.value("n", cfg.grid.n);
        if (cfg.grid.n < 2) throw config_error("'grid.n' must be >= 2", "/grid/n");
        if (!(cfg.grid.max > cfg.grid.min))
            throw config_error("'grid.max' must exceed 'grid.min'", "/grid");
    }

    if (j.contains("sweep")) {
        const auto& o = j.at("sweep");
        detail::check_keys(o, {"param", "min", "max", "n", "r", "profile_points"}, "/sweep");
        SweepSpec s;
        s.param = detail::parse_sweep_param(o.value("param", std::string("lc")));
        s.lo = o.value("min", s.lo);
        s.hi = o.value("max", s.hi);
        s.n = o.value("n", s.n);
        s.r = o.value("r", s.r);
        s.profile_points = o.value("profile_points", s.profile_points);
        if (s.n < 1) throw config_error("'sweep.n' must be >= 1", "/sweep/n");
        cfg.sweep = s;
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        detail::check_keys(o, {"csv", "svg"}, "/output");
        cfg.csv_out = o.value("csv", std::string());
        cfg.svg_out = o.value("svg", std::string());
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned long long>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
    return cfg;
}

} // namespace detail

/// Normalized serialization; parse(serialize(cfg)) reproduces cfg.
inline std::string serialize_config(const RunConfig& cfg) {
    nlohmann::json j;
    j["variant"] = to_string(cfg.variant);
    if (cfg.ratios) {
        nlohmann::json o;
        o["zs_over_z0"] = cfg.ratios->zs_over_z0;
        o["cc_over_cs"] = cfg.ratios->cc_over_cs;
        o["lc_over_ls"] = cfg.ratios->lc_over_ls;
        o["cg_over_cs"] = cfg.ratios->cg_over_cs;
        o["lg_over_ls"] = cfg.ratios->lg_over_ls;
        j["ratios"] = o;
    }
    if (cfg.elements) {
        nlohmann::json o;
        o["z0"] = cfg.elements->z0;
        o["v"] = cfg.elements->v;
        o["cs"] = cfg.elements->cs;
        o["ls"] = cfg.elements->ls;
        o["cc"] = cfg.elements->cc;
        o["lc"] = cfg.elements->lc;
        o["cg"] = cfg.elements->cg;
        o["lg"] = cfg.elements->lg;
        j["elements"] = o;
    }
    j["gamma_i"] = cfg.gamma_i;
    nlohmann::json pump;
    pump["delta_p"] = cfg.delta_p;
    pump["theta_p"] = cfg.theta_p;
    if (cfg.r) pump["r"] = *cfg.r;
    if (cfg.epsilon_p) pump["epsilon_p"] = *cfg.epsilon_p;
    j["pump"] = pump;
    j["mode"] = to_string(cfg.mode);
    j["grid"] = {{"min", cfg.grid.min}, {"max", cfg.grid.max}, {"n", cfg.grid.n}};
    if (cfg.sweep) {
        j["sweep"] = {{"param", to_string(cfg.sweep->param)}, {"min", cfg.sweep->lo},
                      {"max", cfg.sweep->hi},                 {"n", cfg.sweep->n},
                      {"r", cfg.sweep->r},                    {"profile_points", cfg.sweep->profile_points}};
    }
    j["output"] = {{"csv", cfg.csv_out}, {"svg", cfg.svg_out}};
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    return j.dump(2) + "\n";
}

} // namespace jpa
