// Command-line front end: spectra, snr, tau, negativity, threshold,
// formfactor, montecarlo, sweep. JSON reports and CSV curves, stdout by
// default; validation failures exit nonzero with a JSON error on stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gravcorr/config.hpp"
#include "gravcorr/constants.hpp"
#include "gravcorr/correlation.hpp"
#include "gravcorr/dynamics.hpp"
#include "gravcorr/entanglement.hpp"
#include "gravcorr/geometry.hpp"
#include "gravcorr/manifest.hpp"
#include "gravcorr/montecarlo.hpp"
#include "gravcorr/params.hpp"

using nlohmann::json;
using namespace gravcorr;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_path;
    std::string format;  // "", "json", "csv"
    std::uint64_t seed = 20240717ull;
};

SystemParams load_system(const GlobalOpts& g) {
    if (g.config_path.empty()) return default_system();
    return parse_config_file(g.config_path);
}

void emit(const GlobalOpts& g, const std::string& payload) {
    if (g.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + g.out_path + "'");
    out << payload;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

json snr_report_json(const SnrReport& rep, const SystemParams& sys, const GlobalOpts& g) {
    json j;
    j["snr_numeric"] = rep.snr_numeric;
    j["snr_closed_form"] = rep.snr_closed_form;
    j["tau_s"] = rep.tau;
    j["tau_years"] = rep.tau / kSecondsPerYear;
    if (rep.optimized_power_b) {
        j["power_b_opt_w"] = *rep.optimized_power_b;
    } else {
        j["power_b_opt_w"] = nullptr;
    }
    j["params_echo"] = config_echo(sys);
    j["manifest"] = manifest_json("snr", sys, g.seed);
    return j;
}

// ---- subcommand bodies ----

int cmd_spectra(const GlobalOpts& g, double fmin_hz, double fmax_hz, int points) {
    SystemParams sys = load_system(g);
    if (auto w = sys.adiabatic_warning()) std::cerr << "warning: " << *w << "\n";
    const double wmin = kTwoPi * fmin_hz;
    const double wmax = kTwoPi * fmax_hz;
    auto grid = make_spectra_grid(sys, wmin, wmax);
    if (points > 1) {
        grid.clear();
        for (int i = 0; i < points; ++i) {
            grid.push_back(wmin + (wmax - wmin) * i / (points - 1));
        }
    }
    const SpectraSet s = output_spectra(grid, sys);
    const ResponseEvaluator ev(sys);

    std::ostringstream os;
    os << manifest_csv_header(manifest_json("spectra", sys, g.seed,
                                            g.out_path.empty()
                                                ? std::vector<std::string>{}
                                                : std::vector<std::string>{g.out_path}));
    os << "freq_hz,s_xx,s_nn,re_s_xy,im_s_xy,abs_g,abs_k,abs_alpha,abs_beta\n";
    os.precision(12);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        const FrequencyResponse r = ev.at(s.grid[i]);
        os << s.grid[i] / kTwoPi << ',' << s.s_xx[i] << ',' << s.s_nn[i] << ','
           << s.s_xy[i].real() << ',' << s.s_xy[i].imag() << ',' << std::abs(r.g_cross) << ','
           << std::abs(r.k_b) << ',' << std::abs(r.alpha_b) << ',' << std::abs(r.beta_b) << '\n';
    }
    emit(g, os.str());
    return 0;
}

int cmd_snr(const GlobalOpts& g, double tau, bool optimize_b) {
    SystemParams sys = load_system(g);
    SnrReport rep = snr_report(sys, tau, optimize_b);
    print_warnings(rep.warnings);
    if (rep.optimized_power_b) sys.cavity_b.opt.power_cav = *rep.optimized_power_b;
    emit(g, snr_report_json(rep, sys, g).dump(2));
    return 0;
}

int cmd_tau(const GlobalOpts& g, double target_snr, bool optimize_b) {
    SystemParams sys = load_system(g);
    std::optional<double> p_opt;
    if (optimize_b) {
        p_opt = optimize_power_b(sys);
        sys.cavity_b.opt.power_cav = *p_opt;
    }
    const RequiredTau rt = required_tau(sys, target_snr);
    json j;
    j["target_snr"] = target_snr;
    j["reachable"] = rt.reachable;
    if (rt.reachable) {
        j["tau_s"] = rt.tau_s;
        j["tau_years"] = rt.tau_s / kSecondsPerYear;
        auto cf = snr_closed_form(sys, rt.tau_s);
        if (cf.warning) std::cerr << "warning: " << *cf.warning << "\n";
        j["snr_closed_form"] = cf.snr;
        j["snr_numeric"] = snr_numeric(sys, rt.tau_s).snr;
    } else {
        j["tau_s"] = nullptr;
        j["tau_years"] = nullptr;
        j["note"] = "no gravitational coupling: the correlation never rises above noise";
    }
    j["power_b_opt_w"] = p_opt ? json(*p_opt) : json(nullptr);
    j["params_echo"] = config_echo(sys);
    j["manifest"] = manifest_json("tau", sys, g.seed);
    emit(g, j.dump(2));
    return 0;
}

int cmd_negativity(const GlobalOpts& g, double delta_omega_gammas, bool symmetrize) {
    SystemParams sys = load_system(g);
    if (symmetrize) {
        sys.cavity_b.opt = sys.cavity_a.opt;
        sys.cavity_b.mech.temperature = sys.cavity_a.mech.temperature;
    }
    const double dw = delta_omega_gammas * sys.gamma_m();
    const NegativityReport rep = negativity_at_resonance(sys, dw);
    const EntanglementCondition cond = entanglement_condition(sys);
    json j;
    j["e_n"] = rep.e_n;
    j["sigma"] = rep.sigma;
    j["det_v"] = rep.det_v;
    j["entangled"] = rep.entangled;
    j["condition_exact"] = {{"satisfied", cond.satisfied_exact},
                            {"lhs", cond.lhs_exact},
                            {"rhs", cond.rhs_exact}};
    j["condition_reduced"] = {{"satisfied", cond.satisfied_reduced},
                              {"lhs_w", cond.lhs_reduced},
                              {"rhs_w", cond.rhs_reduced}};
    j["tq_bound_k"] = cond.tq_bound;
    j["delta_omega_rad_s"] = dw;
    j["params_echo"] = config_echo(sys);
    j["manifest"] = manifest_json("negativity", sys, g.seed);
    emit(g, j.dump(2));
    return 0;
}

int cmd_threshold(const GlobalOpts& g, const std::string& regime, double dxq, double d) {
    SystemParams sys = load_system(g);
    const ThresholdReport t =
        entanglement_threshold(sys.cavity_a.mech, sys.gravity.lambda_form, sys.constants);
    json j;
    j["lhs_w"] = t.lhs;
    j["rhs_w"] = t.rhs;
    j["tq_bound_k"] = t.tq_bound;
    j["satisfied"] = t.satisfied;
    if (!regime.empty()) {
        DecoherenceRegime r;
        if (regime == "gaussian") {
            r = DecoherenceRegime::gaussian;
        } else if (regime == "non-gaussian" || regime == "non_gaussian") {
            r = DecoherenceRegime::non_gaussian;
        } else {
            throw ConfigError("threshold: --regime must be gaussian or non-gaussian");
        }
        const DecoherenceReport rep = decoherence_bound(
            sys.cavity_a.mech, r, DecoherenceGeometry{d, dxq}, sys.gravity.lambda_form,
            sys.constants);
        if (rep.warning) std::cerr << "warning: " << *rep.warning << "\n";
        j["decoherence"] = {{"regime", regime},
                            {"interaction_rate_hz", rep.interaction_rate},
                            {"decoherence_rate_hz", rep.decoherence_rate},
                            {"satisfied", rep.satisfied}};
    }
    j["params_echo"] = config_echo(sys);
    j["manifest"] = manifest_json("threshold", sys, g.seed);
    emit(g, j.dump(2));
    return 0;
}

int cmd_formfactor(const GlobalOpts& g, const std::string& shape, double radius, double aspect,
                   double dmin, double dmax, int points, const std::string& convention) {
    const LambdaConvention conv =
        convention == "paper" ? LambdaConvention::paper : LambdaConvention::derived;
    BodyShape body;
    double unit;  // d column is normalised by this
    std::string dcol;
    const double density = 19000.0;  // irrelevant for Lambda, needed by the force
    if (shape == "sphere") {
        body = BodyShape::sphere(radius, density);
        unit = radius;
        dcol = "d_over_r";
    } else if (shape == "disk") {
        const double h = radius / aspect;
        body = BodyShape::disk(radius, h, density);
        unit = h;
        dcol = "d_over_h";
    } else {
        throw ConfigError("formfactor: --shape must be sphere or disk");
    }
    if (dmin <= 0.0) dmin = contact_separation(body, body);
    if (dmax <= 0.0) dmax = 10.0 * dmin;
    const FormFactorCurve curve = form_factor_curve(body, body, dmin, dmax, points, conv);

    std::ostringstream os;
    SystemParams sys = default_system();  // manifest needs a parameter echo
    os << manifest_csv_header(manifest_json("formfactor", sys, g.seed));
    os << "# shape=" << shape << " radius_m=" << radius;
    if (shape == "disk") os << " thickness_m=" << radius / aspect;
    os << " convention=" << (conv == LambdaConvention::paper ? "paper" : "derived") << "\n";
    os << dcol << ",lambda,est_rel_err\n";
    os.precision(10);
    for (std::size_t i = 0; i < curve.d.size(); ++i) {
        os << curve.d[i] / unit << ',' << curve.lambda[i] << ',' << curve.est_rel_err[i] << '\n';
    }
    emit(g, os.str());
    return 0;
}

int cmd_montecarlo(const GlobalOpts& g, double dt, std::string tau_csv, int trials,
                   double boost, const std::string& trials_csv) {
    SystemParams sys;
    double used_boost;
    DeskPreset preset = desk_scale_preset();
    if (g.config_path.empty()) {
        sys = preset.sys;  // boost already applied
        used_boost = preset.boost;
        if (boost > 0.0) {
            sys = boosted(desk_scale_preset().sys, boost / preset.boost);
            used_boost = boost;
        }
        if (dt <= 0.0) dt = preset.dt;
    } else {
        sys = load_system(g);
        used_boost = boost > 0.0 ? boost : 1.0;
        if (boost > 0.0) sys = boosted(sys, boost);
        if (dt <= 0.0) dt = kTwoPi / (20.0 * sys.omega_m());
    }
    std::vector<double> taus;
    if (tau_csv.empty()) {
        taus = {preset.tau_ref};
    } else {
        std::stringstream ss(tau_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) taus.push_back(std::stod(tok));
    }
    const EnsembleResult res = run_ensemble(sys, dt, taus, trials, g.seed);

    json j;
    j["boost"] = used_boost;  // printed everywhere: the coupling is not physical
    j["dt_s"] = dt;
    j["n_trials"] = trials;
    j["growth_exponent"] = res.growth_exponent;
    j["per_tau"] = json::array();
    for (const auto& st : res.per_tau) {
        j["per_tau"].push_back({{"tau_s", st.tau},
                                {"mu_hat", st.mu_hat},
                                {"sigma_hat", st.sigma_hat},
                                {"snr_empirical", st.snr_empirical},
                                {"snr_analytic", st.snr_analytic}});
    }
    j["params_echo"] = config_echo(sys);
    j["manifest"] = manifest_json("montecarlo", sys, g.seed);
    if (!trials_csv.empty()) {
        std::ofstream out(trials_csv);
        if (!out) throw std::runtime_error("cannot open '" + trials_csv + "'");
        out << manifest_csv_header(j["manifest"]);
        out << "trial,tau_s,c_xy\n";
        out.precision(12);
        for (std::size_t ti = 0; ti < res.per_tau.size(); ++ti) {
            for (std::size_t tr = 0; tr < res.cxy[ti].size(); ++tr) {
                out << tr << ',' << res.per_tau[ti].tau << ',' << res.cxy[ti][tr] << '\n';
            }
        }
    }
    emit(g, j.dump(2));
    return 0;
}

int cmd_sweep(const GlobalOpts& g, const std::string& key, const std::string& values_csv,
              const std::string& command, double tau, double target_snr) {
    SystemParams base = load_system(g);
    json cfg = config_echo(base);
    std::vector<double> values;
    {
        std::stringstream ss(values_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
    }
    if (values.empty()) throw ConfigError("sweep: no values given");

    std::ostringstream os;
    os << manifest_csv_header(manifest_json("sweep", base, g.seed));
    os << "# key=" << key << " command=" << command << "\n";
    os.precision(12);
    if (command == "tau") {
        os << "value,tau_s\n";
    } else if (command == "snr") {
        os << "value,snr_numeric,snr_closed_form\n";
    } else if (command == "negativity") {
        os << "value,e_n,entangled\n";
    } else if (command == "threshold") {
        os << "value,tq_bound_k\n";
    } else {
        throw ConfigError("sweep: command must be tau|snr|negativity|threshold");
    }
    for (double v : values) {
        json c = cfg;
        set_config_value(c, key, v);
        // Mirrored sections stay mirrored when only the A side is swept.
        if (key.rfind("mechanical_a.", 0) == 0) {
            c["mechanical_b"] = c["mechanical_a"];
        }
        const SystemParams sys = system_from_echo(c);
        if (command == "tau") {
            const RequiredTau rt = required_tau(sys, target_snr);
            os << v << ',' << (rt.reachable ? rt.tau_s : std::nan("")) << '\n';
        } else if (command == "snr") {
            os << v << ',' << snr_numeric(sys, tau).snr << ','
               << snr_closed_form(sys, tau).snr << '\n';
        } else if (command == "negativity") {
            const NegativityReport rep = negativity_at_resonance(sys, sys.gamma_m());
            os << v << ',' << rep.e_n << ',' << (rep.entangled ? 1 : 0) << '\n';
        } else {
            const ThresholdReport t =
                entanglement_threshold(sys.cavity_a.mech, sys.gravity.lambda_form, sys.constants);
            os << v << ',' << t.tq_bound << '\n';
        }
    }
    emit(g, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gravcorr: linear dynamics, correlation SNR, entanglement and geometry "
                 "for two gravitationally coupled optomechanical cavities"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "TOML or JSON parameter file");
    app.add_option("--out", g.out_path, "output file (default stdout)");
    app.add_option("--format", g.format, "json|csv (commands pick their natural default)");
    app.add_option("--seed", g.seed, "RNG seed");

    // spectra
    double fmin_hz = 0.0, fmax_hz = 0.0;
    int spectra_points = 0;
    auto* sp = app.add_subcommand("spectra", "output spectral densities over a frequency band");
    sp->add_option("--fmin", fmin_hz, "band start, Hz");
    sp->add_option("--fmax", fmax_hz, "band end, Hz (default 2*omega_m)");
    sp->add_option("--points", spectra_points, "linear grid size (default adaptive)");

    // snr
    double tau = kSecondsPerYear;
    bool optimize_b = false;
    auto* sn = app.add_subcommand("snr", "cross-correlation SNR for an integration time");
    sn->add_option("--tau", tau, "integration time, s");
    sn->add_flag("--optimize-b", optimize_b, "move cavity B to its optimal read-out power");

    // tau
    double target_snr = 1.0;
    bool tau_optimize_b = false;
    auto* ta = app.add_subcommand("tau", "integration time required for a target SNR");
    ta->add_option("--target-snr", target_snr, "target SNR");
    ta->add_flag("--optimize-b", tau_optimize_b, "move cavity B to its optimal read-out power");

    // negativity
    double delta_omega_gammas = 1.0;
    bool symmetrize = false;
    auto* ne = app.add_subcommand("negativity", "logarithmic negativity at the resonance");
    ne->add_option("--delta-omega-gammas", delta_omega_gammas,
                   "sideband bandwidth in units of gamma_m (>= 1)");
    ne->add_flag("--symmetrize", symmetrize, "copy cavity A optics/temperature onto B first");

    // threshold
    std::string regime;
    double dxq = 0.0, dsep = 0.0;
    auto* th = app.add_subcommand("threshold", "thermal decoherence thresholds");
    th->add_option("--regime", regime, "gaussian|non-gaussian (adds the rate comparison)");
    th->add_option("--dxq", dxq, "characteristic quantum scale, m");
    th->add_option("--d", dsep, "mean separation, m");

    // formfactor
    std::string shape = "disk";
    double radius = 0.05, aspect = 1.5, dmin = 0.0, dmax = 0.0;
    int ff_points = 20;
    std::string convention = "derived";
    auto* ff = app.add_subcommand("formfactor", "geometric coupling factor by quadrature");
    ff->add_option("--shape", shape, "sphere|disk");
    ff->add_option("--radius", radius, "body radius, m");
    ff->add_option("--aspect", aspect, "disk radius/thickness ratio");
    ff->add_option("--dmin", dmin, "smallest separation, m (default contact)");
    ff->add_option("--dmax", dmax, "largest separation, m (default 10*dmin)");
    ff->add_option("--points", ff_points, "curve points");
    ff->add_option("--convention", convention,
                   "derived|paper (paper doubles lambda to match the published "
                   "touching-sphere value)");

    // montecarlo
    double mc_dt = 0.0, mc_boost = 0.0;
    std::string mc_tau_csv;
    int mc_trials = 200;
    std::string trials_csv;
    auto* mc = app.add_subcommand("montecarlo",
                                  "time-domain ensemble validation of the correlation SNR");
    mc->add_option("--dt", mc_dt, "sample interval, s (default resonance/20)");
    mc->add_option("--tau", mc_tau_csv, "comma-separated integration times, s");
    mc->add_option("--trials", mc_trials, "trials per tau");
    mc->add_option("--boost", mc_boost, "coupling boost factor (default: preset solves for SNR~5)");
    mc->add_option("--trials-csv", trials_csv, "write per-trial estimator values to this CSV");

    // sweep
    std::string sweep_key, sweep_values, sweep_command = "tau";
    double sweep_tau = kSecondsPerYear, sweep_target = 1.0;
    auto* sw = app.add_subcommand("sweep", "rerun a scalar command over a config key");
    sw->add_option("--key", sweep_key, "dotted config key, e.g. mechanical_a.q_m")->required();
    sw->add_option("--values", sweep_values, "comma-separated values")->required();
    sw->add_option("--command", sweep_command, "tau|snr|negativity|threshold");
    sw->add_option("--tau", sweep_tau, "integration time for command=snr");
    sw->add_option("--target-snr", sweep_target, "target for command=tau");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json err{{"error", {{"message", e.what()}, {"kind", "usage"}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (sp->parsed()) {
            SystemParams sys = load_system(g);
            if (fmax_hz <= 0.0) fmax_hz = 2.0 * sys.omega_m() / kTwoPi;
            return cmd_spectra(g, fmin_hz, fmax_hz, spectra_points);
        }
        if (sn->parsed()) return cmd_snr(g, tau, optimize_b);
        if (ta->parsed()) return cmd_tau(g, target_snr, tau_optimize_b);
        if (ne->parsed()) return cmd_negativity(g, delta_omega_gammas, symmetrize);
        if (th->parsed()) return cmd_threshold(g, regime, dxq, dsep);
        if (ff->parsed())
            return cmd_formfactor(g, shape, radius, aspect, dmin, dmax, ff_points, convention);
        if (mc->parsed())
            return cmd_montecarlo(g, mc_dt, mc_tau_csv, mc_trials, mc_boost, trials_csv);
        if (sw->parsed())
            return cmd_sweep(g, sweep_key, sweep_values, sweep_command, sweep_tau, sweep_target);
    } catch (const std::exception& e) {
        json err{{"error", {{"message", e.what()}, {"kind", "validation"}}}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
