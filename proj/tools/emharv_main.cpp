// Command-line front end: design / sweep / flux / transient studies with CSV
// (and optional SVG) output.

#include <emharv/config.hpp>
#include <emharv/csv.hpp>
#include <emharv/magnetics.hpp>
#include <emharv/optimizer.hpp>
#include <emharv/svg.hpp>
#include <emharv/transient.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>

namespace {

using namespace emharv;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvalidInput = 2;

struct CliOptions {
    std::string config_path;
    RunConfig cfg;

    // flag presence trackers; flags override config-file values
    std::optional<double> frequency, acceleration, q_fixed;
    std::optional<double> density, remanence, resistivity, fill_factor;
    std::optional<double> min_wire_diameter, min_feature, r_load_min;
    std::optional<double> coil_inner_frac, coil_outer_frac, micro_inner_frac, micro_outer_frac;
    std::optional<std::string> q_mode, technology, output, plot;
    std::optional<int> flux_samples, flux_turn_radii;

    // subcommand-specific
    double d = 6e-3;
    std::optional<double> dmin, dmax;
    std::optional<int> steps;
    int turns = 100;
    double r_load = -1;  // transient; < 0 means open circuit
    int periods_total = 50, periods_recorded = 5, steps_per_period = 200;
    std::string flux_model = "curve";  // curve | line-fit
    bool no_parallel = false;
};

void merge_flags(CliOptions& o) {
    RunConfig& c = o.cfg;
    if (o.frequency) c.frequency = *o.frequency;
    if (o.acceleration) c.acceleration = *o.acceleration;
    if (o.q_fixed) {
        c.q_fixed = *o.q_fixed;
        if (!o.q_mode) c.q_mode = QMode::Fixed;
    }
    if (o.q_mode) {
        if (*o.q_mode == "displacement-rule") {
            c.q_mode = QMode::DisplacementRule;
        } else if (*o.q_mode == "fixed") {
            c.q_mode = QMode::Fixed;
        } else {
            throw config_error("--q-mode expects displacement-rule or fixed");
        }
    }
    if (o.density) c.materials.magnet_density = *o.density;
    if (o.remanence) c.materials.remanence = *o.remanence;
    if (o.resistivity) c.materials.conductor_resistivity = *o.resistivity;
    if (o.fill_factor) c.materials.copper_fill_factor = *o.fill_factor;
    if (o.min_wire_diameter) c.limits.min_wire_diameter = *o.min_wire_diameter;
    if (o.min_feature) c.limits.min_feature = *o.min_feature;
    if (o.r_load_min) c.r_load_min = *o.r_load_min;
    if (o.coil_inner_frac) c.coil_r_inner_frac = *o.coil_inner_frac;
    if (o.coil_outer_frac) c.coil_r_outer_frac = *o.coil_outer_frac;
    if (o.micro_inner_frac) c.micro_d_inner_frac = *o.micro_inner_frac;
    if (o.micro_outer_frac) c.micro_d_outer_frac = *o.micro_outer_frac;
    if (o.technology) c.technology = *o.technology;
    if (o.output) c.output = *o.output;
    if (o.plot) c.plot = *o.plot;
    if (o.flux_samples) c.flux_samples = *o.flux_samples;
    if (o.flux_turn_radii) c.flux_turn_radii = *o.flux_turn_radii;
    if (o.dmin) c.sweep_d_min = *o.dmin;
    if (o.dmax) c.sweep_d_max = *o.dmax;
    if (o.steps) c.sweep_steps = *o.steps;
    c.validate();
}

std::vector<CoilTechnology> selected_technologies(const RunConfig& cfg) {
    if (cfg.technology == "both") {
        return {CoilTechnology::WireWound, CoilTechnology::MicroFabricated};
    }
    if (cfg.technology == "micro") return {CoilTechnology::MicroFabricated};
    return {CoilTechnology::WireWound};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write output file: " + path);
    return out;
}

void print_result(std::ostream& os, double d, CoilTechnology tech, double q,
                  const DesignResult& r) {
    os << "design summary\n"
       << "  d                = " << format_scalar(d) << " m\n"
       << "  technology       = " << to_string(tech) << "\n"
       << "  Q_oc             = " << format_scalar(q) << "\n"
       << "  strategy         = " << to_string(r.strategy) << "\n"
       << "  N                = " << r.turns << "\n"
       << "  R_coil           = " << format_scalar(r.r_coil) << " ohm\n"
       << "  R_load           = " << format_scalar(r.r_load) << " ohm\n"
       << "  D_p              = " << format_scalar(r.d_parasitic) << " N s/m\n"
       << "  D_e              = " << format_scalar(r.d_em) << " N s/m\n"
       << "  displacement     = " << format_scalar(r.displacement) << " m"
       << (r.displacement_limited ? "  (end-stop limited)" : "") << "\n"
       << "  P_max            = " << format_scalar(r.p_max) << " W\n"
       << "  P_extracted      = " << format_scalar(r.p_extracted) << " W\n"
       << "  P_load           = " << format_scalar(r.p_load) << " W\n"
       << "  V_load (rms)     = " << format_scalar(r.v_load_rms) << " V\n"
       << "  V_load (peak)    = " << format_scalar(r.v_load_rms * std::sqrt(2.0)) << " V\n";
}

int run_design(CliOptions& o) {
    merge_flags(o);
    const auto techs = selected_technologies(o.cfg);
    if (techs.size() != 1) throw config_error("design: pick one technology (wirewound or micro)");
    const SweepConfig sc = o.cfg.to_sweep_config();
    const DesignProblem problem = make_problem(o.d, techs[0], sc);
    DesignResult result;
    try {
        result = optimize_design(problem);
    } catch (const no_feasible_design& e) {
        std::cerr << "infeasible design: " << e.what() << "\n";
        return kExitInfeasible;
    }
    print_result(std::cout, o.d, techs[0], problem.q_oc, result);
    if (!o.cfg.output.empty()) {
        SweepPoint pt;
        pt.d = o.d;
        pt.technology = techs[0];
        pt.q_mode = o.cfg.q_mode;
        pt.q_oc = problem.q_oc;
        pt.feasible = true;
        pt.result = result;
        auto out = open_output(o.cfg.output);
        write_sweep_csv(out, {pt});
    }
    return kExitOk;
}

int run_sweep(CliOptions& o) {
    merge_flags(o);
    const RunConfig& c = o.cfg;
    std::vector<double> dims;
    if (c.sweep_steps == 1) {
        dims.push_back(c.sweep_d_min);
    } else {
        for (int i = 0; i < c.sweep_steps; ++i) {
            dims.push_back(c.sweep_d_min +
                           (c.sweep_d_max - c.sweep_d_min) * i / (c.sweep_steps - 1));
        }
    }
    SweepConfig sc = c.to_sweep_config();
    sc.parallel = !o.no_parallel;
    const auto techs = selected_technologies(c);
    const auto points = sweep_dimensions(dims, techs, sc);

    const std::string out_path = c.output.empty() ? "sweep.csv" : c.output;
    auto out = open_output(out_path);
    write_sweep_csv(out, points);

    int feasible = 0;
    for (const auto& pt : points) feasible += pt.feasible ? 1 : 0;
    std::cout << "sweep: " << points.size() << " rows (" << feasible << " feasible) -> "
              << out_path << "\n";

    if (!c.plot.empty()) {
        std::vector<PlotSeries> series;
        for (const auto tech : techs) {
            PlotSeries load{"P_load " + to_string(tech), {}};
            for (const auto& pt : points) {
                if (pt.technology == tech && pt.feasible) {
                    load.points.emplace_back(pt.d, pt.result.p_load);
                }
            }
            series.push_back(std::move(load));
        }
        PlotSeries pmax{"P_max", {}};
        for (const auto& pt : points) {
            if (pt.technology == techs[0] && pt.feasible) {
                pmax.points.emplace_back(pt.d, pt.result.p_max);
            }
        }
        series.push_back(std::move(pmax));
        auto plot = open_output(c.plot);
        write_loglog_svg(plot, "Load power vs. dimension (" + to_string(c.q_mode) + " Q)",
                         "d [m]", "P [W]", series);
        std::cout << "plot -> " << c.plot << "\n";
    }
    if (feasible == 0) return kExitInfeasible;
    return kExitOk;
}

int run_flux(CliOptions& o) {
    merge_flags(o);
    const RunConfig& c = o.cfg;
    const DeviceGeometry geom = derive_geometry(o.d, c.ratios);
    const FluxLinkageCurve curve =
        flux_linkage_curve(geom, c.materials, c.coil_r_inner_frac * o.d,
                           c.coil_r_outer_frac * o.d, c.flux_samples, c.flux_turn_radii);
    const std::string out_path = c.output.empty() ? "flux.csv" : c.output;
    auto out = open_output(out_path);
    write_flux_csv(out, curve);
    std::cout << "flux curve: d = " << format_scalar(o.d) << " m, fitted dphi/dx = "
              << format_scalar(curve.fitted_gradient) << " Wb/m (rms residual "
              << format_scalar(curve.fit_rms_residual) << " Wb) -> " << out_path << "\n";
    return kExitOk;
}

int run_transient(CliOptions& o) {
    merge_flags(o);
    const RunConfig& c = o.cfg;
    const double omega = 2.0 * std::numbers::pi * c.frequency;
    const DeviceGeometry geom = derive_geometry(o.d, c.ratios);
    const double mass = moving_mass(geom, c.materials);
    const SweepConfig sc = c.to_sweep_config();
    const double q = q_for_geometry(sc, geom);
    const double d_p = parasitic_damping_from_q(mass, omega, q);

    const FluxLinkageCurve curve =
        flux_linkage_curve(geom, c.materials, c.coil_r_inner_frac * o.d,
                           c.coil_r_outer_frac * o.d, c.flux_samples, c.flux_turn_radii);
    const FluxInterpolant flux = (o.flux_model == "line-fit")
                                     ? FluxInterpolant::constant_gradient(curve.fitted_gradient)
                                     : FluxInterpolant::from_curve(curve);

    ElectricalLink link;
    link.turns = o.turns;
    link.flux_gradient = curve.fitted_gradient;
    {
        WireWoundCoil coil;
        coil.r_inner = c.coil_r_inner_frac * o.d;
        coil.r_outer = c.coil_r_outer_frac * o.d;
        coil.thickness = geom.coil_thickness;
        coil.turns = o.turns;
        coil.fill_factor = c.materials.copper_fill_factor;
        coil.resistivity = c.materials.conductor_resistivity;
        link.r_coil = wirewound_resistance(coil, c.limits);
    }
    link.r_load = (o.r_load < 0) ? std::numeric_limits<double>::infinity() : o.r_load;

    OperatingPoint op = resonant_operating_point(mass, omega, c.acceleration, d_p, 0.0);
    SimulationConfig cfg;
    cfg.steps_per_period = o.steps_per_period;
    cfg.periods_total = o.periods_total;
    cfg.periods_recorded = o.periods_recorded;

    const WaveformRecord rec = simulate(op, link, flux, cfg);
    const std::string out_path = c.output.empty() ? "transient.csv" : c.output;
    auto out = open_output(out_path);
    write_waveform_csv(out, rec);

    const double thd = harmonic_distortion(rec.load_voltage, o.periods_recorded);
    std::cout << "transient: d = " << format_scalar(o.d) << " m, N = " << o.turns << ", "
              << (std::isinf(link.r_load) ? std::string("open circuit")
                                          : "R_load = " + format_scalar(link.r_load) + " ohm")
              << "\n  mean load power  = " << format_scalar(rec.mean_load_power) << " W"
              << "\n  voltage THD      = " << format_scalar(thd) << " -> " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"electromagnetic vibration energy harvester design studies"};
    app.require_subcommand(1);

    CliOptions o;

    app.add_option("--config", o.config_path, "key = value config file");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--freq", o.frequency, "vibration frequency [Hz]");
        cmd->add_option("--accel", o.acceleration, "acceleration amplitude [m/s^2]");
        cmd->add_option("--q-mode", o.q_mode, "displacement-rule | fixed");
        cmd->add_option("--q", o.q_fixed, "fixed open-circuit Q (implies --q-mode fixed)");
        cmd->add_option("--density", o.density, "magnet density [kg/m^3]");
        cmd->add_option("--remanence", o.remanence, "magnet remanence [T]");
        cmd->add_option("--resistivity", o.resistivity, "conductor resistivity [ohm m]");
        cmd->add_option("--fill-factor", o.fill_factor, "copper fill factor");
        cmd->add_option("--min-wire-diameter", o.min_wire_diameter, "wire limit [m]");
        cmd->add_option("--min-feature", o.min_feature, "lithography limit [m]");
        cmd->add_option("--rl-min", o.r_load_min, "matched-solve load floor [ohm]");
        cmd->add_option("--coil-inner-frac", o.coil_inner_frac, "coil r_inner / d");
        cmd->add_option("--coil-outer-frac", o.coil_outer_frac, "coil r_outer / d");
        cmd->add_option("--micro-inner-frac", o.micro_inner_frac, "micro d_inner / d");
        cmd->add_option("--micro-outer-frac", o.micro_outer_frac, "micro d_outer / d");
        cmd->add_option("--flux-samples", o.flux_samples, "displacement samples (odd)");
        cmd->add_option("--flux-radii", o.flux_turn_radii, "representative turn radii");
        cmd->add_option("--out", o.output, "output CSV path");
    };

    CLI::App* design = app.add_subcommand("design", "optimize one device");
    design->add_option("--d", o.d, "outer dimension [m]")->required();
    design->add_option("--tech", o.technology, "wirewound | micro");
    add_common(design);

    CLI::App* sweep = app.add_subcommand("sweep", "optimize across a dimension range");
    sweep->add_option("--dmin", o.dmin, "smallest dimension [m]");
    sweep->add_option("--dmax", o.dmax, "largest dimension [m]");
    sweep->add_option("--steps", o.steps, "number of dimensions");
    sweep->add_option("--tech", o.technology, "wirewound | micro | both");
    sweep->add_option("--plot", o.plot, "write SVG plot to this path");
    sweep->add_flag("--no-parallel", o.no_parallel, "solve sweep points sequentially");
    add_common(sweep);

    CLI::App* flux = app.add_subcommand("flux", "flux-linkage curve of one device");
    flux->add_option("--d", o.d, "outer dimension [m]")->required();
    add_common(flux);

    CLI::App* transient = app.add_subcommand("transient", "time-domain waveform study");
    transient->add_option("--d", o.d, "outer dimension [m]")->required();
    transient->add_option("--turns", o.turns, "coil turns");
    transient->add_option("--rload", o.r_load, "load resistance [ohm]; omit for open circuit");
    transient->add_option("--periods", o.periods_total, "periods simulated");
    transient->add_option("--record-periods", o.periods_recorded, "periods recorded");
    transient->add_option("--steps-per-period", o.steps_per_period, "integrator resolution");
    transient->add_option("--flux-model", o.flux_model, "curve | line-fit");
    add_common(transient);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (!o.config_path.empty()) o.cfg = emharv::load_config(o.config_path);
        if (design->parsed()) return run_design(o);
        if (sweep->parsed()) return run_sweep(o);
        if (flux->parsed()) return run_flux(o);
        if (transient->parsed()) return run_transient(o);
    } catch (const emharv::no_feasible_design& e) {
        std::cerr << "infeasible design: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
