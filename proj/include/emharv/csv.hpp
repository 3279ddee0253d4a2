#pragma once

#include <emharv/magnetics.hpp>
#include <emharv/optimizer.hpp>
#include <emharv/transient.hpp>

#include <ostream>
#include <string>

namespace emharv {

/// Deterministic decimal rendering: shortest round-trip digits, '.' decimal
/// separator, scientific notation once the decimal exponent reaches +-4
/// ("2.43e-5", "1.5e6"), plain fixed notation otherwise.
std::string format_scalar(Scalar value);

std::string to_string(CoilTechnology tech);
std::string to_string(QMode mode);
std::string to_string(Strategy strategy);

/// Columns: x_m, flux_Wb
void write_flux_csv(std::ostream& os, const FluxLinkageCurve& curve);

/// Columns: d_m, tech, q_mode, Q, N, R_c_ohm, R_l_ohm, D_p, D_e, strategy,
/// x_amp_m, P_max_W, P_extracted_W, P_load_W, V_load_rms_V, feasible
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

/// Columns: t_s, x_m, v_mps, flux_Wbturns, v_load_V
void write_waveform_csv(std::ostream& os, const WaveformRecord& record);

}  // namespace emharv
