#pragma once

#include <emharv/optimizer.hpp>
#include <emharv/types.hpp>

#include <stdexcept>
#include <string>

namespace emharv {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run-level settings shared by the CLI subcommands. Defaults follow the
/// headline operating condition (1 kHz, 9.81 m/s^2, displacement-rule Q).
struct RunConfig {
    Scalar frequency = 1000.0;    // [Hz]
    Scalar acceleration = 9.81;   // [m/s^2]
    QMode q_mode = QMode::DisplacementRule;
    Scalar q_fixed = 300.0;
    std::string technology = "wirewound";  // wirewound | micro | both

    MaterialProps materials;
    GeometryRatios ratios;
    TechnologyLimits limits;

    Scalar coil_r_inner_frac = 0.15;
    Scalar coil_r_outer_frac = 0.45;
    Scalar micro_d_inner_frac = 0.30;
    Scalar micro_d_outer_frac = 0.90;
    Scalar r_load_min = 0.1;  // [ohm]

    int flux_samples = 21;
    int flux_turn_radii = 5;

    Scalar sweep_d_min = 1e-3;   // [m]
    Scalar sweep_d_max = 10e-3;  // [m]
    int sweep_steps = 10;

    std::string output;  // CSV path; subcommand default when empty
    std::string plot;    // SVG path; no plot when empty

    void validate() const;  // throws config_error on range violations
    SweepConfig to_sweep_config() const;
};

/// Parses a line-oriented `key = value` file ('#' starts a comment). Unknown
/// keys and malformed lines raise config_error with the line number. Values
/// not present keep their defaults; callers apply flag overrides afterwards.
RunConfig load_config(const std::string& path);

/// Applies one key/value pair (also used by the file parser).
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace emharv
