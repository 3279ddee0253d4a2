#pragma once

#include <emharv/types.hpp>

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace emharv {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<Scalar, Scalar>> points;  // (x, y), positive
};

/// Minimal log-log line chart: one labeled polyline per series, decade grid
/// lines, well-formed standalone SVG. Non-positive points are skipped (they
/// cannot be placed on log axes).
void write_loglog_svg(std::ostream& os, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series);

}  // namespace emharv
