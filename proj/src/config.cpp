#include <emharv/config.hpp>

#include <cctype>
#include <fstream>

namespace emharv {

namespace {

Scalar parse_scalar(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const Scalar v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid number for key '" + key + "': " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const Scalar v = parse_scalar(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<Scalar>(i) != v) {
        throw config_error("key '" + key + "' expects an integer, got " + value);
    }
    return i;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

void require_positive(const std::string& key, Scalar v) {
    if (!(v > 0)) throw config_error("key '" + key + "' must be > 0");
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "frequency") {
        cfg.frequency = parse_scalar(key, value);
        require_positive(key, cfg.frequency);
    } else if (key == "acceleration") {
        cfg.acceleration = parse_scalar(key, value);
        require_positive(key, cfg.acceleration);
    } else if (key == "q_mode") {
        if (value == "displacement-rule") {
            cfg.q_mode = QMode::DisplacementRule;
        } else if (value == "fixed") {
            cfg.q_mode = QMode::Fixed;
        } else {
            throw config_error("key 'q_mode' expects displacement-rule or fixed, got " + value);
        }
    } else if (key == "q_fixed") {
        cfg.q_fixed = parse_scalar(key, value);
        require_positive(key, cfg.q_fixed);
    } else if (key == "technology") {
        if (value != "wirewound" && value != "micro" && value != "both") {
            throw config_error("key 'technology' expects wirewound, micro or both, got " + value);
        }
        cfg.technology = value;
    } else if (key == "magnet_density") {
        cfg.materials.magnet_density = parse_scalar(key, value);
    } else if (key == "remanence") {
        cfg.materials.remanence = parse_scalar(key, value);
    } else if (key == "conductor_resistivity") {
        cfg.materials.conductor_resistivity = parse_scalar(key, value);
    } else if (key == "copper_fill_factor") {
        cfg.materials.copper_fill_factor = parse_scalar(key, value);
    } else if (key == "magnet_x_fraction") {
        cfg.ratios.magnet_x_fraction = parse_scalar(key, value);
    } else if (key == "magnet_z_fraction") {
        cfg.ratios.magnet_z_fraction = parse_scalar(key, value);
    } else if (key == "gap_fraction") {
        cfg.ratios.gap_fraction = parse_scalar(key, value);
    } else if (key == "coil_thickness_fraction_of_gap") {
        cfg.ratios.coil_thickness_fraction_of_gap = parse_scalar(key, value);
    } else if (key == "min_wire_diameter") {
        cfg.limits.min_wire_diameter = parse_scalar(key, value);
        require_positive(key, cfg.limits.min_wire_diameter);
    } else if (key == "min_feature") {
        cfg.limits.min_feature = parse_scalar(key, value);
        require_positive(key, cfg.limits.min_feature);
    } else if (key == "coil_r_inner_fraction") {
        cfg.coil_r_inner_frac = parse_scalar(key, value);
    } else if (key == "coil_r_outer_fraction") {
        cfg.coil_r_outer_frac = parse_scalar(key, value);
    } else if (key == "micro_d_inner_fraction") {
        cfg.micro_d_inner_frac = parse_scalar(key, value);
    } else if (key == "micro_d_outer_fraction") {
        cfg.micro_d_outer_frac = parse_scalar(key, value);
    } else if (key == "r_load_min") {
        cfg.r_load_min = parse_scalar(key, value);
        require_positive(key, cfg.r_load_min);
    } else if (key == "flux_samples") {
        cfg.flux_samples = parse_int(key, value);
    } else if (key == "flux_turn_radii") {
        cfg.flux_turn_radii = parse_int(key, value);
    } else if (key == "sweep_d_min") {
        cfg.sweep_d_min = parse_scalar(key, value);
    } else if (key == "sweep_d_max") {
        cfg.sweep_d_max = parse_scalar(key, value);
    } else if (key == "sweep_steps") {
        cfg.sweep_steps = parse_int(key, value);
    } else if (key == "output") {
        cfg.output = value;
    } else if (key == "plot") {
        cfg.plot = value;
    } else {
        throw config_error("unknown key '" + key + "'");
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);

    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw config_error(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw config_error(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_config_entry(cfg, key, value);
        } catch (const config_error& e) {
            throw config_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

void RunConfig::validate() const {
    if (!(frequency > 0)) throw config_error("frequency must be > 0");
    if (!(acceleration > 0)) throw config_error("acceleration must be > 0");
    if (!(q_fixed > 0)) throw config_error("q_fixed must be > 0");
    if (sweep_d_min < 1e-4 || sweep_d_max > 0.1 || !(sweep_d_min <= sweep_d_max)) {
        throw config_error("sweep range must lie within [0.1 mm, 100 mm]");
    }
    if (sweep_steps < 1) throw config_error("sweep_steps must be >= 1");
    if (flux_samples < 5 || flux_samples % 2 == 0) {
        throw config_error("flux_samples must be odd and >= 5");
    }
    if (flux_turn_radii < 1) throw config_error("flux_turn_radii must be >= 1");
    if (!(coil_r_inner_frac > 0) || !(coil_r_outer_frac > coil_r_inner_frac) ||
        coil_r_outer_frac > 0.5) {
        throw config_error("coil radius fractions must satisfy 0 < inner < outer <= 0.5");
    }
    if (!(micro_d_inner_frac > 0) || !(micro_d_outer_frac > micro_d_inner_frac) ||
        micro_d_outer_frac > 1.0) {
        throw config_error("micro coil fractions must satisfy 0 < inner < outer <= 1");
    }
    materials.validate();
    ratios.validate();
}

SweepConfig RunConfig::to_sweep_config() const {
    SweepConfig sc;
    sc.ratios = ratios;
    sc.materials = materials;
    sc.limits = limits;
    sc.frequency = frequency;
    sc.acceleration = acceleration;
    sc.q_mode = q_mode;
    sc.q_fixed = q_fixed;
    sc.coil_r_inner_frac = coil_r_inner_frac;
    sc.coil_r_outer_frac = coil_r_outer_frac;
    sc.micro_d_inner_frac = micro_d_inner_frac;
    sc.micro_d_outer_frac = micro_d_outer_frac;
    sc.r_load_min = r_load_min;
    sc.flux_samples = flux_samples;
    sc.flux_turn_radii = flux_turn_radii;
    return sc;
}

}  // namespace emharv
