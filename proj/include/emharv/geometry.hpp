#pragma once

#include <emharv/types.hpp>

namespace emharv {

/// Fixed aspect ratios of the cubic generator. The two magnet layers plus
/// the gap must close the device height exactly: 2*magnet_z_fraction +
/// gap_fraction = 1.
struct GeometryRatios {
    Scalar magnet_x_fraction = 1.0 / 6.0;          // single magnet, two side by side
    Scalar magnet_z_fraction = 0.4;                // per layer
    Scalar gap_fraction = 0.2;                     // between the layers
    Scalar coil_thickness_fraction_of_gap = 0.5;

    void validate() const;  // throws std::invalid_argument
};

/// All derived dimensions of a generator with outer dimension d (x = y = z = d).
struct DeviceGeometry {
    Scalar d = 0;               // outer dimension [m]
    Scalar magnet_x = 0;        // single magnet x-extent [m]
    Scalar x_mass = 0;          // moving-mass x-extent, two magnets [m]
    Scalar magnet_y = 0;        // full y-dimension [m]
    Scalar magnet_z = 0;        // per-layer magnet height [m]
    Scalar gap = 0;             // gap between magnet layers [m]
    Scalar coil_thickness = 0;  // [m]
    Scalar x_m = 0;             // peak displacement (d - x_mass)/2 [m]
};

struct MaterialProps {
    Scalar magnet_density = 7600.0;          // sintered NdFeB [kg/m^3]
    Scalar remanence = 1.2;                  // [T]
    Scalar conductor_resistivity = 1.72e-8;  // copper [ohm m]
    Scalar copper_fill_factor = 0.55;

    void validate() const;  // throws std::invalid_argument
};

/// Derives every internal dimension from the outer dimension d.
DeviceGeometry derive_geometry(Scalar d, const GeometryRatios& ratios = {});

/// Mass of the four moving magnets (the coil is stationary).
Scalar moving_mass(const DeviceGeometry& geom, const MaterialProps& mat);

/// Peak kinetic energy of a mass of extents (x_mass, y, z_mass) vibrating
/// sinusoidally at omega with peak displacement (x - x_mass)/2:
///   KE = rho * y * z_mass * x_mass * omega^2 * (x - x_mass)^2 / 8
Scalar kinetic_energy(Scalar x_mass, Scalar x, Scalar y, Scalar z_mass,
                      Scalar density, Scalar omega);

/// The mass extent x_mass = x/3 that maximizes kinetic_energy for given x
/// (equivalently peak displacement x_m = x/3).
Scalar optimal_mass_extent(Scalar x);

}  // namespace emharv
