#pragma once

#include <emharv/types.hpp>

namespace emharv {

/// One operating condition of the resonant mass-spring-damper generator.
/// spring_k = mass * omega_n^2; force is the inertial drive m*a.
struct OperatingPoint {
    Scalar mass = 0;         // [kg]
    Scalar spring_k = 0;     // [N/m]
    Scalar omega = 0;        // drive [rad/s]
    Scalar omega_n = 0;      // natural [rad/s]
    Scalar acceleration = 0; // [m/s^2]
    Scalar force = 0;        // m*a [N]
    Scalar d_parasitic = 0;  // [N s/m]
    Scalar d_em = 0;         // [N s/m]
};

/// Electrical side of the transducer. Inductance is carried for the damping
/// formula's shape but fixed at zero (resistive impedance dominates at 1 kHz).
/// r_load may be +infinity for open circuit.
struct ElectricalLink {
    long turns = 0;
    Scalar flux_gradient = 0;  // dphi/dx, per turn [Wb/m]
    Scalar r_coil = 0;         // [ohm]
    Scalar l_coil = 0;         // [H], always 0 here
    Scalar r_load = 0;         // [ohm]
};

/// Builds a resonant operating point (omega_n = omega, spring_k = m omega^2).
OperatingPoint resonant_operating_point(Scalar mass, Scalar omega, Scalar acceleration,
                                        Scalar d_parasitic, Scalar d_em = 0);

/// D_p = m omega_n / Q_oc (from zeta_p = D_p/(2 m omega_n), Q = 1/(2 zeta)).
Scalar parasitic_damping_from_q(Scalar mass, Scalar omega_n, Scalar q_oc);

/// Inverse of parasitic_damping_from_q.
Scalar q_from_parasitic_damping(Scalar mass, Scalar omega_n, Scalar d_parasitic);

/// D_e = N^2 (dphi/dx)^2 / (R_c + R_l), the resistive-circuit damping.
Scalar em_damping(const ElectricalLink& link);

/// Steady-state displacement amplitude
///   F_o / sqrt((k - m omega^2)^2 + (D_p + D_e)^2 omega^2).
Scalar displacement_amplitude(const OperatingPoint& op);

/// Average electrical power extracted through D_e (dissipated in coil + load):
///   D_e F_o^2 omega^2 / (2 [(k - m omega^2)^2 + (D_p + D_e)^2 omega^2]).
Scalar average_power(const OperatingPoint& op);

/// Power at resonance, D_e F_o^2 / (2 (D_p + D_e)^2).
Scalar resonant_power(Scalar d_em, Scalar force, Scalar d_parasitic);

/// Theoretical maximum (D_e = D_p): (m a)^2 / (8 D_p).
Scalar max_power(Scalar mass, Scalar acceleration, Scalar d_parasitic);

/// Same maximum via the quality factor: m a^2 Q_oc / (8 omega_n).
Scalar max_power_from_q(Scalar mass, Scalar acceleration, Scalar q_oc, Scalar omega_n);

struct LoadOutput {
    Scalar power = 0;        // delivered to R_l [W]
    Scalar voltage_rms = 0;  // across R_l [V]
};

/// Splits extracted power across the resistive divider and reports the rms
/// load voltage N (dphi/dx) v_peak/sqrt(2) * R_l/(R_c+R_l). Satisfies
/// P_load = V_rms^2 / R_l when p_extracted is consistent with v_peak.
LoadOutput load_power_and_voltage(Scalar p_extracted, const ElectricalLink& link,
                                  Scalar velocity_amplitude);

/// Q_oc giving an unloaded resonant amplitude of exactly 2 x_m:
///   Q = 2 x_m omega_n^2 / a.
Scalar required_q_for_displacement(Scalar x_m, Scalar omega_n, Scalar acceleration);

}  // namespace emharv
