#pragma once

#include <emharv/types.hpp>

namespace emharv {

/// Multilayer circular coil wound from round wire; the wire cross-section is
/// tied to the winding window by the copper fill factor.
struct WireWoundCoil {
    Scalar r_inner = 0;      // [m]
    Scalar r_outer = 0;      // [m]
    Scalar thickness = 0;    // [m]
    long turns = 1;
    Scalar fill_factor = 0.55;
    Scalar resistivity = 1.72e-8;  // [ohm m]
};

/// Single-layer square spiral with track width = spacing = thickness,
/// so the annular span holds N tracks and N-1 gaps:
///   w = (d_outer - d_inner) / (2 (2N - 1)).
struct MicroCoil {
    Scalar d_outer = 0;  // [m]
    Scalar d_inner = 0;  // [m]
    long turns = 1;
    Scalar resistivity = 1.72e-8;  // [ohm m]
};

struct TechnologyLimits {
    Scalar min_wire_diameter = 12e-6;  // wire winding [m]
    Scalar min_feature = 1e-6;         // photolithography [m]
};

struct CoilElectrical {
    Scalar resistance = 0;  // [ohm]
    Scalar inductance = 0;  // neglected throughout [H]
    long turns = 0;
};

/// Implied wire diameter of a wire-wound coil at N turns.
Scalar wirewound_wire_diameter(const WireWoundCoil& coil);

/// Track width (= spacing = thickness) of the micro coil layout.
Scalar micro_track_width(Scalar d_outer, Scalar d_inner, long turns);

/// R_c = rho N^2 pi (r_o + r_i) / (k_cu (r_o - r_i) t). Throws when the
/// implied wire diameter falls below limits.min_wire_diameter.
Scalar wirewound_resistance(const WireWoundCoil& coil, const TechnologyLimits& limits = {});

/// R_c = 8 rho (d_o + d_i) / (d_o - d_i)^2 * (4N^3 - 4N^2 + N). Throws when
/// the track width falls below limits.min_feature.
Scalar microcoil_resistance(const MicroCoil& coil, const TechnologyLimits& limits = {});

/// Electrical summary of a coil. Inductance is always zero in this model;
/// the resistive impedance dominates at the frequencies of interest.
CoilElectrical wirewound_electrical(const WireWoundCoil& coil, const TechnologyLimits& limits = {});
CoilElectrical microcoil_electrical(const MicroCoil& coil, const TechnologyLimits& limits = {});

/// Largest N whose wire area k_cu A_coil / N still admits the minimum wire
/// diameter. Throws when even one turn does not fit.
long max_turns_wirewound(Scalar coil_cross_section_area, Scalar fill_factor,
                         const TechnologyLimits& limits);

/// Largest N with track width >= min_feature. Throws when the annulus is
/// narrower than one feature.
long max_turns_microcoil(Scalar d_outer, Scalar d_inner, const TechnologyLimits& limits);

}  // namespace emharv
