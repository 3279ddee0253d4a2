#pragma once

#include <emharv/coils.hpp>
#include <emharv/dynamics.hpp>
#include <emharv/geometry.hpp>
#include <emharv/types.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace emharv {

enum class CoilTechnology { WireWound, MicroFabricated };
enum class QMode { DisplacementRule, Fixed };
enum class Strategy { MatchedDamping, ImpedanceMatched };

struct no_feasible_design : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One fully specified design task: device, coil technology, transduction
/// strength and drive. Coil lateral extents are absolute lengths.
struct DesignProblem {
    DeviceGeometry geometry;
    MaterialProps materials;
    CoilTechnology technology = CoilTechnology::WireWound;
    Scalar flux_gradient = 0;  // dphi/dx per turn [Wb/m]
    Scalar q_oc = 0;           // open-circuit quality factor
    Scalar omega = 0;          // drive = natural frequency [rad/s]
    Scalar acceleration = 0;   // [m/s^2]
    Scalar coil_r_inner = 0;   // wire-wound annulus [m]
    Scalar coil_r_outer = 0;
    Scalar micro_d_inner = 0;  // micro square coil [m]
    Scalar micro_d_outer = 0;
    Scalar r_load_min = 0.1;   // floor for the matched-damping solve [ohm]
    TechnologyLimits limits;
    long exhaustive_turns_cap = 100000;
};

struct DesignResult {
    Strategy strategy = Strategy::ImpedanceMatched;
    long turns = 0;
    Scalar r_load = 0;       // [ohm]
    Scalar r_coil = 0;       // [ohm]
    Scalar d_em = 0;         // [N s/m]
    Scalar d_parasitic = 0;  // [N s/m]
    Scalar displacement = 0; // steady-state amplitude, <= x_m [m]
    Scalar p_max = 0;        // theoretical maximum (D_e = D_p) [W]
    Scalar p_extracted = 0;  // total electrical power [W]
    Scalar p_load = 0;       // delivered to the load [W]
    Scalar v_load_rms = 0;   // [V]
    bool displacement_limited = false;  // amplitude pinned at x_m by the housing
};

/// Load resistance making D_e equal D_p at the given turn count:
/// R_l = N^2 (dphi/dx)^2 / D_p - R_c, or nullopt when below r_load_min.
std::optional<Scalar> solve_matched_load(long turns, Scalar flux_gradient,
                                         Scalar d_parasitic, Scalar r_coil,
                                         Scalar r_load_min);

/// Evaluates one (N, R_l) candidate at resonance. When the linear response
/// would exceed x_m the amplitude is pinned at x_m (end-stop limited) and the
/// powers follow from v = omega x_m.
DesignResult evaluate_candidate(const DesignProblem& problem, long turns, Scalar r_load);

/// Coil resistance at N turns for the problem's technology.
Scalar coil_resistance(const DesignProblem& problem, long turns);

/// Admissible turn-count range for the problem's technology.
long max_turns(const DesignProblem& problem);

/// Searches integer N and the per-N strategy candidates (matched-damping
/// solve, impedance match R_l = R_c, and displacement repair of the latter)
/// for maximum load power subject to displacement <= x_m. Ties go to higher
/// load voltage, then smaller N. Throws no_feasible_design when no coil can
/// be built.
DesignResult optimize_design(const DesignProblem& problem);

enum class FluxGradientMode { Analytic, ScalingLaw };

/// Everything needed to pose design problems across a dimension sweep.
struct SweepConfig {
    GeometryRatios ratios;
    MaterialProps materials;
    TechnologyLimits limits;
    Scalar frequency = 1000.0;     // [Hz]
    Scalar acceleration = 9.81;    // [m/s^2]
    QMode q_mode = QMode::DisplacementRule;
    Scalar q_fixed = 300.0;
    Scalar coil_r_inner_frac = 0.15;
    Scalar coil_r_outer_frac = 0.45;
    Scalar micro_d_inner_frac = 0.30;
    Scalar micro_d_outer_frac = 0.90;
    Scalar r_load_min = 0.1;
    int flux_samples = 21;
    int flux_turn_radii = 5;
    FluxGradientMode flux_mode = FluxGradientMode::Analytic;
    Scalar scaling_k_phi = 0;  // [Wb/m per m], used with FluxGradientMode::ScalingLaw
    bool parallel = true;
};

/// Q_oc for a device of this geometry under the config's Q mode.
Scalar q_for_geometry(const SweepConfig& cfg, const DeviceGeometry& geom);

/// Flux-linkage gradient for a device of dimension d under the config.
Scalar gradient_for_dimension(const SweepConfig& cfg, Scalar d);

/// Poses the single-dimension problem (computes geometry, gradient, Q).
/// gradient_override skips the flux evaluation when the caller already has it.
DesignProblem make_problem(Scalar d, CoilTechnology tech, const SweepConfig& cfg,
                           std::optional<Scalar> gradient_override = {});

struct SweepPoint {
    Scalar d = 0;
    CoilTechnology technology = CoilTechnology::WireWound;
    QMode q_mode = QMode::DisplacementRule;
    Scalar q_oc = 0;
    bool feasible = false;
    DesignResult result;  // meaningful when feasible
};

/// One optimized design per (dimension, technology), dimension-major order.
/// Per-point failures are returned as infeasible rows, never thrown.
std::vector<SweepPoint> sweep_dimensions(const std::vector<Scalar>& dims,
                                         const std::vector<CoilTechnology>& technologies,
                                         const SweepConfig& cfg);

}  // namespace emharv
