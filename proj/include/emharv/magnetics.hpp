#pragma once

#include <emharv/geometry.hpp>
#include <emharv/types.hpp>

#include <array>
#include <stdexcept>

namespace emharv {

/// Evaluation landed on an edge/corner of a magnet face, where the
/// surface-charge kernel is singular.
struct singular_point_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Disc quadrature failed to reach its tolerance within the refinement cap.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniformly z-magnetized cuboid, described by its center and half extents.
struct CuboidMagnet {
    Vec3 center = Vec3::Zero();
    Vec3 half_extents = Vec3::Zero();
    Scalar magnetization_sign = 1.0;  // +1 or -1, along z
    Scalar remanence = 1.2;           // [T]
};

/// The four-magnet arrangement: two columns side by side in x with opposite
/// polarity, each column one magnet above and one below the gap. The gap
/// field is z-directed and reverses sign across the x-midplane.
struct MagnetArray {
    std::array<CuboidMagnet, 4> magnets;
};

/// Sampled average flux linkage per turn vs. magnet displacement, plus the
/// least-squares line-fit gradient over the full sampled range.
struct FluxLinkageCurve {
    VecX displacements;          // strictly increasing, symmetric about 0 [m]
    VecX flux_per_turn;          // [Wb]
    Scalar fitted_gradient = 0;  // [Wb/m]
    Scalar fit_rms_residual = 0; // [Wb]
};

/// z-component of B of a uniformly z-magnetized cuboid, from the closed-form
/// surface-charge solution (arctan kernel over the two charged faces).
/// Valid anywhere off the charged-face edges; throws singular_point_error on
/// an edge or corner.
Scalar bz_cuboid(const CuboidMagnet& magnet, const Vec3& point);

/// Superposition over the four magnets.
Scalar bz_array(const MagnetArray& array, const Vec3& point);

/// Builds the four-magnet array of the device, centered (zero displacement).
MagnetArray make_magnet_array(const DeviceGeometry& geom, const MaterialProps& mat);

/// Copy of the array with every magnet shifted by dx along x (magnets move,
/// coil stays fixed).
MagnetArray displaced(const MagnetArray& array, Scalar dx);

struct TurnQuadratureOptions {
    Scalar rel_tol = 1e-3;   // successive-refinement criterion
    int initial_radial = 8;  // Gauss-Legendre points in r (doubles per level)
    int max_levels = 7;
};

/// Flux of Bz through a horizontal circular turn (disc) centered at
/// turn_center, by product quadrature (Gauss-Legendre in r, periodic
/// trapezoid in theta), refined until successive levels agree to rel_tol.
Scalar flux_through_turn(const MagnetArray& array, Scalar turn_radius,
                         const Vec3& turn_center,
                         const TurnQuadratureOptions& opts = {});

/// Samples the average per-turn flux over displacements in [-x_m, +x_m].
/// Per sample the flux is averaged over n_turn_radii representative turn
/// radii uniform in [coil_r_inner, coil_r_outer], evaluated on the coil
/// mid-plane z = 0. n_samples must be odd and >= 5 so x = 0 is included.
/// The returned curve already carries the line fit.
FluxLinkageCurve flux_linkage_curve(const DeviceGeometry& geom, const MaterialProps& mat,
                                    Scalar coil_r_inner, Scalar coil_r_outer,
                                    int n_samples = 21, int n_turn_radii = 5);

/// Least-squares slope of flux vs. displacement over the full sampled range;
/// stores slope and rms residual in the curve and returns the slope.
Scalar fit_gradient(FluxLinkageCurve& curve);

/// Fast-path gradient from the linear scaling law: k_phi * d.
Scalar gradient_from_scaling_law(Scalar d, Scalar k_phi);

}  // namespace emharv
