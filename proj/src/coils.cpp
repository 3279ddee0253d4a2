#include <emharv/coils.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emharv {

namespace {
constexpr Scalar pi = std::numbers::pi_v<Scalar>;

void check_wirewound(const WireWoundCoil& c) {
    if (!(c.r_inner > 0) || !(c.r_outer > c.r_inner) || !(c.thickness > 0)) {
        throw std::invalid_argument("WireWoundCoil: require r_outer > r_inner > 0, thickness > 0");
    }
    if (c.turns < 1) throw std::invalid_argument("WireWoundCoil: turns must be >= 1");
    if (c.fill_factor <= 0 || c.fill_factor > 1 || c.resistivity <= 0) {
        throw std::invalid_argument("WireWoundCoil: bad fill factor or resistivity");
    }
}

void check_micro(const MicroCoil& c) {
    if (!(c.d_inner > 0) || !(c.d_outer > c.d_inner)) {
        throw std::invalid_argument("MicroCoil: require d_outer > d_inner > 0");
    }
    if (c.turns < 1) throw std::invalid_argument("MicroCoil: turns must be >= 1");
    if (c.resistivity <= 0) throw std::invalid_argument("MicroCoil: bad resistivity");
}
}  // namespace

Scalar wirewound_wire_diameter(const WireWoundCoil& coil) {
    const Scalar a_coil = (coil.r_outer - coil.r_inner) * coil.thickness;
    return 2.0 * std::sqrt(coil.fill_factor * a_coil / (pi * static_cast<Scalar>(coil.turns)));
}

Scalar micro_track_width(Scalar d_outer, Scalar d_inner, long turns) {
    return (d_outer - d_inner) / (2.0 * (2.0 * static_cast<Scalar>(turns) - 1.0));
}

Scalar wirewound_resistance(const WireWoundCoil& coil, const TechnologyLimits& limits) {
    check_wirewound(coil);
    if (wirewound_wire_diameter(coil) < limits.min_wire_diameter) {
        throw std::invalid_argument("wirewound_resistance: implied wire diameter below limit");
    }
    const Scalar n = static_cast<Scalar>(coil.turns);
    return coil.resistivity * n * n * pi * (coil.r_outer + coil.r_inner) /
           (coil.fill_factor * (coil.r_outer - coil.r_inner) * coil.thickness);
}

Scalar microcoil_resistance(const MicroCoil& coil, const TechnologyLimits& limits) {
    check_micro(coil);
    if (micro_track_width(coil.d_outer, coil.d_inner, coil.turns) < limits.min_feature) {
        throw std::invalid_argument("microcoil_resistance: track width below minimum feature");
    }
    const Scalar n = static_cast<Scalar>(coil.turns);
    const Scalar span = coil.d_outer - coil.d_inner;
    return 8.0 * coil.resistivity * (coil.d_outer + coil.d_inner) / (span * span) *
           (4.0 * n * n * n - 4.0 * n * n + n);
}

CoilElectrical wirewound_electrical(const WireWoundCoil& coil, const TechnologyLimits& limits) {
    return CoilElectrical{wirewound_resistance(coil, limits), 0.0, coil.turns};
}

CoilElectrical microcoil_electrical(const MicroCoil& coil, const TechnologyLimits& limits) {
    return CoilElectrical{microcoil_resistance(coil, limits), 0.0, coil.turns};
}

long max_turns_wirewound(Scalar coil_cross_section_area, Scalar fill_factor,
                         const TechnologyLimits& limits) {
    if (!(coil_cross_section_area > 0) || !(fill_factor > 0)) {
        throw std::invalid_argument("max_turns_wirewound: bad geometry");
    }
    const Scalar wire_area = pi * limits.min_wire_diameter * limits.min_wire_diameter / 4.0;
    const long n = static_cast<long>(std::floor(fill_factor * coil_cross_section_area / wire_area));
    if (n < 1) {
        throw std::invalid_argument("max_turns_wirewound: cross-section smaller than one wire");
    }
    return n;
}

long max_turns_microcoil(Scalar d_outer, Scalar d_inner, const TechnologyLimits& limits) {
    if (!(d_outer > d_inner) || !(d_inner > 0)) {
        throw std::invalid_argument("max_turns_microcoil: bad geometry");
    }
    // (d_o - d_i) / (2 (2N - 1)) >= f  =>  N <= ((d_o - d_i)/(2f) + 1) / 2
    const Scalar bound = ((d_outer - d_inner) / (2.0 * limits.min_feature) + 1.0) / 2.0;
    const long n = static_cast<long>(std::floor(bound));
    if (n < 1) {
        throw std::invalid_argument("max_turns_microcoil: annulus narrower than one feature");
    }
    return n;
}

}  // namespace emharv
