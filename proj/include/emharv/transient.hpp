#pragma once

#include <emharv/dynamics.hpp>
#include <emharv/magnetics.hpp>
#include <emharv/types.hpp>

namespace emharv {

/// Displacement-to-flux map used by the time-domain model: either a constant
/// gradient (line-fit) or a monotone piecewise-cubic interpolant of a sampled
/// curve, extrapolated flat beyond the sampled range.
class FluxInterpolant {
public:
    static FluxInterpolant constant_gradient(Scalar gradient);
    static FluxInterpolant from_curve(const FluxLinkageCurve& curve);

    Scalar phi(Scalar x) const;   // [Wb] per turn
    Scalar dphi(Scalar x) const;  // [Wb/m] per turn

private:
    FluxInterpolant() = default;
    bool constant_ = true;
    Scalar gradient_ = 0;
    VecX x_, y_, slopes_;  // pchip data when !constant_
};

struct SimulationConfig {
    int steps_per_period = 200;
    int periods_total = 50;
    int periods_recorded = 5;
    void validate() const;  // throws std::invalid_argument
};

/// Uniformly sampled waveforms over the recorded tail of the simulation.
struct WaveformRecord {
    VecX time;          // [s]
    VecX displacement;  // [m]
    VecX velocity;      // [m/s]
    VecX flux_linkage;  // N * phi(x) [Wb turns]
    VecX load_voltage;  // [V]
    Scalar mean_load_power = 0;  // over the recorded window [W]
};

struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrates m x'' + D_p x' + k x = m a sin(omega t) - N phi'(x) i with
/// i = N phi'(x) x' / (R_c + R_l), by fixed-step RK4, and records the last
/// periods_recorded periods. With r_load = +inf the electrical reaction
/// vanishes and load_voltage is the open-circuit voltage N phi'(x) x'.
WaveformRecord simulate(const OperatingPoint& op, const ElectricalLink& link,
                        const FluxInterpolant& flux, const SimulationConfig& cfg = {});

/// sqrt(sum_{k>=2} |c_k|^2) / |c_1| over harmonics of the drive frequency,
/// from the DFT of a whole number of periods.
Scalar harmonic_distortion(const VecX& samples, int periods);

}  // namespace emharv
