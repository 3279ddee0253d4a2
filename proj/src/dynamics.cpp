#include <emharv/dynamics.hpp>

#include <cmath>
#include <stdexcept>

namespace emharv {

OperatingPoint resonant_operating_point(Scalar mass, Scalar omega, Scalar acceleration,
                                        Scalar d_parasitic, Scalar d_em) {
    OperatingPoint op;
    op.mass = mass;
    op.omega = omega;
    op.omega_n = omega;
    op.spring_k = mass * omega * omega;
    op.acceleration = acceleration;
    op.force = mass * acceleration;
    op.d_parasitic = d_parasitic;
    op.d_em = d_em;
    return op;
}

Scalar parasitic_damping_from_q(Scalar mass, Scalar omega_n, Scalar q_oc) {
    if (!(q_oc > 0)) {
        throw std::invalid_argument("parasitic_damping_from_q: Q must be > 0");
    }
    return mass * omega_n / q_oc;
}

Scalar q_from_parasitic_damping(Scalar mass, Scalar omega_n, Scalar d_parasitic) {
    if (!(d_parasitic > 0)) {
        throw std::invalid_argument("q_from_parasitic_damping: D_p must be > 0");
    }
    return mass * omega_n / d_parasitic;
}

Scalar em_damping(const ElectricalLink& link) {
    const Scalar total_r = link.r_coil + link.r_load;
    if (std::isinf(total_r)) return 0.0;  // open circuit
    if (!(total_r > 0)) {
        throw std::invalid_argument("em_damping: R_c + R_l must be > 0");
    }
    const Scalar n = static_cast<Scalar>(link.turns);
    return n * n * link.flux_gradient * link.flux_gradient / total_r;
}

namespace {
Scalar response_denominator(const OperatingPoint& op) {
    const Scalar detune = op.spring_k - op.mass * op.omega * op.omega;
    const Scalar damping = (op.d_parasitic + op.d_em) * op.omega;
    return detune * detune + damping * damping;
}
}  // namespace

Scalar displacement_amplitude(const OperatingPoint& op) {
    const Scalar den = response_denominator(op);
    if (!(den > 0)) {
        throw std::domain_error("displacement_amplitude: undamped response at resonance");
    }
    return op.force / std::sqrt(den);
}

Scalar average_power(const OperatingPoint& op) {
    const Scalar den = response_denominator(op);
    if (!(den > 0)) {
        throw std::domain_error("average_power: undamped response at resonance");
    }
    return op.d_em * op.force * op.force * op.omega * op.omega / (2.0 * den);
}

Scalar resonant_power(Scalar d_em, Scalar force, Scalar d_parasitic) {
    const Scalar total = d_parasitic + d_em;
    if (!(total > 0)) {
        throw std::domain_error("resonant_power: zero total damping");
    }
    return d_em * force * force / (2.0 * total * total);
}

Scalar max_power(Scalar mass, Scalar acceleration, Scalar d_parasitic) {
    if (!(d_parasitic > 0)) {
        throw std::invalid_argument("max_power: D_p must be > 0");
    }
    const Scalar f = mass * acceleration;
    return f * f / (8.0 * d_parasitic);
}

Scalar max_power_from_q(Scalar mass, Scalar acceleration, Scalar q_oc, Scalar omega_n) {
    if (!(q_oc > 0) || !(omega_n > 0)) {
        throw std::invalid_argument("max_power_from_q: Q and omega_n must be > 0");
    }
    return mass * acceleration * acceleration * q_oc / (8.0 * omega_n);
}

LoadOutput load_power_and_voltage(Scalar p_extracted, const ElectricalLink& link,
                                  Scalar velocity_amplitude) {
    if (p_extracted < 0) {
        throw std::invalid_argument("load_power_and_voltage: negative extracted power");
    }
    LoadOutput out;
    const Scalar n = static_cast<Scalar>(link.turns);
    Scalar share;
    if (std::isinf(link.r_load)) {
        share = 1.0;  // degenerate: no current flows, D_e -> 0
    } else {
        share = link.r_load / (link.r_coil + link.r_load);
    }
    out.power = p_extracted * share;
    out.voltage_rms = n * link.flux_gradient * velocity_amplitude * share / std::sqrt(2.0);
    return out;
}

Scalar required_q_for_displacement(Scalar x_m, Scalar omega_n, Scalar acceleration) {
    if (!(acceleration > 0)) {
        throw std::invalid_argument("required_q_for_displacement: a must be > 0");
    }
    return 2.0 * x_m * omega_n * omega_n / acceleration;
}

}  // namespace emharv
