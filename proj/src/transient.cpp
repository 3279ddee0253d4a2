#include <emharv/transient.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace emharv {

FluxInterpolant FluxInterpolant::constant_gradient(Scalar gradient) {
    FluxInterpolant f;
    f.constant_ = true;
    f.gradient_ = gradient;
    return f;
}

FluxInterpolant FluxInterpolant::from_curve(const FluxLinkageCurve& curve) {
    const auto n = curve.displacements.size();
    if (n < 3 || curve.flux_per_turn.size() != n) {
        throw std::invalid_argument("FluxInterpolant: need >= 3 curve samples");
    }
    FluxInterpolant f;
    f.constant_ = false;
    f.x_ = curve.displacements;
    f.y_ = curve.flux_per_turn;
    f.slopes_ = VecX::Zero(n);

    // Fritsch-Carlson monotone cubic slopes.
    VecX h(n - 1), delta(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        h[i] = f.x_[i + 1] - f.x_[i];
        if (!(h[i] > 0)) {
            throw std::invalid_argument("FluxInterpolant: displacements must increase");
        }
        delta[i] = (f.y_[i + 1] - f.y_[i]) / h[i];
    }
    f.slopes_[0] = delta[0];
    f.slopes_[n - 1] = delta[n - 2];
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0) {
            f.slopes_[i] = 0;
        } else {
            const Scalar w1 = 2 * h[i] + h[i - 1];
            const Scalar w2 = h[i] + 2 * h[i - 1];
            f.slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    return f;
}

Scalar FluxInterpolant::phi(Scalar x) const {
    if (constant_) return gradient_ * x;
    const auto n = x_.size();
    if (x <= x_[0]) return y_[0];           // flat extrapolation
    if (x >= x_[n - 1]) return y_[n - 1];
    Eigen::Index lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const Eigen::Index mid = (lo + hi) / 2;
        (x_[mid] <= x ? lo : hi) = mid;
    }
    const Scalar h = x_[lo + 1] - x_[lo];
    const Scalar t = (x - x_[lo]) / h;
    const Scalar t2 = t * t, t3 = t2 * t;
    const Scalar h00 = 2 * t3 - 3 * t2 + 1;
    const Scalar h10 = t3 - 2 * t2 + t;
    const Scalar h01 = -2 * t3 + 3 * t2;
    const Scalar h11 = t3 - t2;
    return h00 * y_[lo] + h10 * h * slopes_[lo] + h01 * y_[lo + 1] + h11 * h * slopes_[lo + 1];
}

Scalar FluxInterpolant::dphi(Scalar x) const {
    if (constant_) return gradient_;
    const auto n = x_.size();
    if (x <= x_[0] || x >= x_[n - 1]) return 0.0;  // flat beyond the samples
    Eigen::Index lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const Eigen::Index mid = (lo + hi) / 2;
        (x_[mid] <= x ? lo : hi) = mid;
    }
    const Scalar h = x_[lo + 1] - x_[lo];
    const Scalar t = (x - x_[lo]) / h;
    const Scalar t2 = t * t;
    const Scalar dh00 = (6 * t2 - 6 * t) / h;
    const Scalar dh10 = 3 * t2 - 4 * t + 1;
    const Scalar dh01 = (-6 * t2 + 6 * t) / h;
    const Scalar dh11 = 3 * t2 - 2 * t;
    return dh00 * y_[lo] + dh10 * slopes_[lo] + dh01 * y_[lo + 1] + dh11 * slopes_[lo + 1];
}

void SimulationConfig::validate() const {
    if (steps_per_period < 50) {
        throw std::invalid_argument("SimulationConfig: steps_per_period must be >= 50");
    }
    if (periods_recorded < 1 || periods_recorded > periods_total) {
        throw std::invalid_argument("SimulationConfig: periods_recorded must be in [1, periods_total]");
    }
}

WaveformRecord simulate(const OperatingPoint& op, const ElectricalLink& link,
                        const FluxInterpolant& flux, const SimulationConfig& cfg) {
    cfg.validate();
    if (!(op.mass > 0) || !(op.omega > 0)) {
        throw std::invalid_argument("simulate: need positive mass and drive frequency");
    }

    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar period = 2.0 * pi / op.omega;
    const Scalar dt = period / cfg.steps_per_period;
    const Scalar n_turns = static_cast<Scalar>(link.turns);
    const bool open_circuit = std::isinf(link.r_load);
    const Scalar inv_total_r = open_circuit ? 0.0 : 1.0 / (link.r_coil + link.r_load);
    const Scalar load_frac = open_circuit ? 1.0 : link.r_load * inv_total_r;

    auto accel = [&](Scalar t, Scalar x, Scalar v) {
        const Scalar g = n_turns * flux.dphi(x);
        const Scalar d_total = op.d_parasitic + g * g * inv_total_r;
        return (op.force * std::sin(op.omega * t) - d_total * v - op.spring_k * x) / op.mass;
    };

    const long total_steps = static_cast<long>(cfg.steps_per_period) * cfg.periods_total;
    const long recorded = static_cast<long>(cfg.steps_per_period) * cfg.periods_recorded;
    const long record_from = total_steps - recorded;

    WaveformRecord rec;
    rec.time.resize(recorded + 1);
    rec.displacement.resize(recorded + 1);
    rec.velocity.resize(recorded + 1);
    rec.flux_linkage.resize(recorded + 1);
    rec.load_voltage.resize(recorded + 1);

    Scalar x = 0, v = 0;
    Scalar power_acc = 0;
    for (long step = 0; step <= total_steps; ++step) {
        const Scalar t = step * dt;
        if (step >= record_from) {
            const long i = step - record_from;
            const Scalar g = n_turns * flux.dphi(x);
            rec.time[i] = t;
            rec.displacement[i] = x;
            rec.velocity[i] = v;
            rec.flux_linkage[i] = n_turns * flux.phi(x);
            rec.load_voltage[i] = g * v * load_frac;
            if (i < recorded) {
                // instantaneous load power (g v)^2 R_l / (R_c + R_l)^2
                const Scalar emf = g * v;
                power_acc += emf * emf * inv_total_r * load_frac;
            }
        }
        if (step == total_steps) break;

        const Scalar k1x = v, k1v = accel(t, x, v);
        const Scalar k2x = v + 0.5 * dt * k1v, k2v = accel(t + 0.5 * dt, x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
        const Scalar k3x = v + 0.5 * dt * k2v, k3v = accel(t + 0.5 * dt, x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
        const Scalar k4x = v + dt * k3v, k4v = accel(t + dt, x + dt * k3x, v + dt * k3v);
        x += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        if (!std::isfinite(x) || !std::isfinite(v)) {
            throw integration_error("simulate: integration diverged");
        }
    }
    rec.mean_load_power = power_acc / static_cast<Scalar>(recorded);
    return rec;
}

Scalar harmonic_distortion(const VecX& samples, int periods) {
    if (periods < 1) throw std::invalid_argument("harmonic_distortion: periods must be >= 1");
    // Drop a duplicated endpoint so the window is a whole number of periods.
    Eigen::Index n = samples.size();
    if (n < 4) throw std::invalid_argument("harmonic_distortion: too few samples");
    const VecX* data = &samples;
    VecX trimmed;
    if (n % periods != 0 && (n - 1) % periods == 0) {
        trimmed = samples.head(n - 1);
        data = &trimmed;
        n -= 1;
    }
    if (n % periods != 0) {
        throw std::invalid_argument("harmonic_distortion: samples not a whole number of periods");
    }

    const Scalar two_pi = 2.0 * std::numbers::pi_v<Scalar>;
    const int max_harmonic = static_cast<int>(n / periods / 2);
    Scalar fundamental = 0, overtones = 0;
    for (int k = 1; k <= max_harmonic; ++k) {
        const Eigen::Index bin = static_cast<Eigen::Index>(k) * periods;
        std::complex<Scalar> c(0, 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Scalar angle = -two_pi * static_cast<Scalar>(bin) * static_cast<Scalar>(i) / static_cast<Scalar>(n);
            c += (*data)[i] * std::complex<Scalar>(std::cos(angle), std::sin(angle));
        }
        const Scalar mag2 = std::norm(c);
        if (k == 1) {
            fundamental = mag2;
        } else {
            overtones += mag2;
        }
    }
    if (!(fundamental > 0)) {
        throw std::domain_error("harmonic_distortion: zero fundamental");
    }
    return std::sqrt(overtones / fundamental);
}

}  // namespace emharv
