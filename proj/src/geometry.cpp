#include <emharv/geometry.hpp>

#include <cmath>
#include <stdexcept>

namespace emharv {

namespace {
constexpr Scalar kClosureTol = 1e-12;

bool in_unit_interval(Scalar v) { return v > 0.0 && v < 1.0; }
}  // namespace

void GeometryRatios::validate() const {
    if (!in_unit_interval(magnet_x_fraction) || !in_unit_interval(magnet_z_fraction) ||
        !in_unit_interval(gap_fraction) || !in_unit_interval(coil_thickness_fraction_of_gap)) {
        throw std::invalid_argument("GeometryRatios: all fractions must lie in (0, 1)");
    }
    if (std::abs(2.0 * magnet_z_fraction + gap_fraction - 1.0) > kClosureTol) {
        throw std::invalid_argument(
            "GeometryRatios: 2*magnet_z_fraction + gap_fraction must equal 1");
    }
    if (2.0 * magnet_x_fraction >= 1.0) {
        throw std::invalid_argument("GeometryRatios: moving mass must leave displacement room");
    }
}

void MaterialProps::validate() const {
    if (magnet_density <= 0.0 || remanence <= 0.0 || conductor_resistivity <= 0.0) {
        throw std::invalid_argument("MaterialProps: density, remanence, resistivity must be > 0");
    }
    if (copper_fill_factor <= 0.0 || copper_fill_factor > 1.0) {
        throw std::invalid_argument("MaterialProps: copper_fill_factor must lie in (0, 1]");
    }
}

DeviceGeometry derive_geometry(Scalar d, const GeometryRatios& ratios) {
    if (!(d > 0.0)) {
        throw std::invalid_argument("derive_geometry: d must be > 0");
    }
    ratios.validate();

    DeviceGeometry g;
    g.d = d;
    g.magnet_x = ratios.magnet_x_fraction * d;
    g.x_mass = 2.0 * g.magnet_x;
    g.magnet_y = d;
    g.magnet_z = ratios.magnet_z_fraction * d;
    g.gap = ratios.gap_fraction * d;
    g.coil_thickness = ratios.coil_thickness_fraction_of_gap * g.gap;
    g.x_m = (d - g.x_mass) / 2.0;
    return g;
}

Scalar moving_mass(const DeviceGeometry& geom, const MaterialProps& mat) {
    return mat.magnet_density * geom.x_mass * geom.magnet_y * (2.0 * geom.magnet_z);
}

Scalar kinetic_energy(Scalar x_mass, Scalar x, Scalar y, Scalar z_mass,
                      Scalar density, Scalar omega) {
    if (x_mass < 0.0 || x_mass > x) {
        throw std::invalid_argument("kinetic_energy: require 0 <= x_mass <= x");
    }
    if (omega < 0.0) {
        throw std::invalid_argument("kinetic_energy: omega must be >= 0");
    }
    const Scalar dx = x - x_mass;
    return density * y * z_mass * x_mass * omega * omega * dx * dx / 8.0;
}

Scalar optimal_mass_extent(Scalar x) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("optimal_mass_extent: x must be > 0");
    }
    return x / 3.0;
}

}  // namespace emharv
