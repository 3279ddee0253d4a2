#include <emharv/csv.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace emharv {

std::string format_scalar(Scalar value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";

    // shortest round-trip digits via scientific to_chars, then re-render
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific);
    if (ec != std::errc()) throw std::runtime_error("format_scalar: to_chars failed");
    std::string sci(buf, end);

    const bool negative = sci[0] == '-';
    if (negative) sci.erase(0, 1);
    const auto epos = sci.find('e');
    std::string digits = sci.substr(0, epos);
    const int exponent = std::atoi(sci.c_str() + epos + 1);
    const auto dot = digits.find('.');
    if (dot != std::string::npos) digits.erase(dot, 1);
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out;
    if (exponent >= 4 || exponent <= -4) {
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(exponent);
    } else if (exponent >= 0) {
        const auto e = static_cast<size_t>(exponent);
        if (digits.size() > e + 1) {
            out = digits.substr(0, e + 1) + "." + digits.substr(e + 1);
        } else {
            out = digits + std::string(e + 1 - digits.size(), '0');
        }
    } else {
        out = "0." + std::string(static_cast<size_t>(-exponent - 1), '0') + digits;
    }
    return negative ? "-" + out : out;
}

std::string to_string(CoilTechnology tech) {
    return tech == CoilTechnology::WireWound ? "wirewound" : "micro";
}

std::string to_string(QMode mode) {
    return mode == QMode::DisplacementRule ? "displacement-rule" : "fixed";
}

std::string to_string(Strategy strategy) {
    return strategy == Strategy::MatchedDamping ? "matched-damping" : "impedance-matched";
}

void write_flux_csv(std::ostream& os, const FluxLinkageCurve& curve) {
    os << "x_m, flux_Wb\n";
    for (Eigen::Index i = 0; i < curve.displacements.size(); ++i) {
        os << format_scalar(curve.displacements[i]) << ", "
           << format_scalar(curve.flux_per_turn[i]) << "\n";
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
    os << "d_m, tech, q_mode, Q, N, R_c_ohm, R_l_ohm, D_p, D_e, strategy, x_amp_m, "
          "P_max_W, P_extracted_W, P_load_W, V_load_rms_V, feasible\n";
    for (const auto& pt : points) {
        os << format_scalar(pt.d) << ", " << to_string(pt.technology) << ", "
           << to_string(pt.q_mode) << ", " << format_scalar(pt.q_oc) << ", ";
        if (pt.feasible) {
            const DesignResult& r = pt.result;
            os << r.turns << ", " << format_scalar(r.r_coil) << ", "
               << format_scalar(r.r_load) << ", " << format_scalar(r.d_parasitic) << ", "
               << format_scalar(r.d_em) << ", " << to_string(r.strategy) << ", "
               << format_scalar(r.displacement) << ", " << format_scalar(r.p_max) << ", "
               << format_scalar(r.p_extracted) << ", " << format_scalar(r.p_load) << ", "
               << format_scalar(r.v_load_rms) << ", true\n";
        } else {
            os << "0, 0, 0, 0, 0, none, 0, 0, 0, 0, 0, false\n";
        }
    }
}

void write_waveform_csv(std::ostream& os, const WaveformRecord& rec) {
    os << "t_s, x_m, v_mps, flux_Wbturns, v_load_V\n";
    for (Eigen::Index i = 0; i < rec.time.size(); ++i) {
        os << format_scalar(rec.time[i]) << ", " << format_scalar(rec.displacement[i]) << ", "
           << format_scalar(rec.velocity[i]) << ", " << format_scalar(rec.flux_linkage[i])
           << ", " << format_scalar(rec.load_voltage[i]) << "\n";
    }
}

}  // namespace emharv
