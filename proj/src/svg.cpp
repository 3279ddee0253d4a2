#include <emharv/svg.hpp>

#include <emharv/csv.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace emharv {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                         "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_loglog_svg(std::ostream& os, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series) {
    Scalar xmin = std::numeric_limits<Scalar>::max(), xmax = 0;
    Scalar ymin = std::numeric_limits<Scalar>::max(), ymax = 0;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (x > 0 && y > 0) {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    const bool empty = !(xmax > 0 && ymax > 0);
    if (empty) {
        xmin = 1e-3;
        xmax = 1.0;
        ymin = 1e-3;
        ymax = 1.0;
    }
    if (xmin == xmax) {
        xmin /= 2;
        xmax *= 2;
    }
    if (ymin == ymax) {
        ymin /= 2;
        ymax *= 2;
    }

    const Scalar lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const Scalar ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    const Scalar plot_w = kWidth - kMarginLeft - kMarginRight;
    const Scalar plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](Scalar x) { return kMarginLeft + (std::log10(x) - lx0) / (lx1 - lx0) * plot_w; };
    auto py = [&](Scalar y) { return kMarginTop + (ly1 - std::log10(y)) / (ly1 - ly0) * plot_h; };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">"
       << xml_escape(title) << "</text>\n";

    // decade grid
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        const Scalar x = px(std::pow(10.0, e));
        os << "  <line x1=\"" << x << "\" y1=\"" << kMarginTop << "\" x2=\"" << x << "\" y2=\""
           << kMarginTop + plot_h << "\" stroke=\"#dddddd\"/>\n";
        os << "  <text x=\"" << x << "\" y=\"" << kMarginTop + plot_h + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
           << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        const Scalar y = py(std::pow(10.0, e));
        os << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << y << "\" x2=\""
           << kMarginLeft + plot_w << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
        os << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << y + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
           << "</text>\n";
    }

    os << "  <rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
       << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << xml_escape(x_label) << "</text>\n";
    os << "  <text x=\"18\" y=\"" << kMarginTop + plot_h / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 18 "
       << kMarginTop + plot_h / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

    int color_idx = 0;
    int legend_y = kMarginTop + 10;
    for (const auto& s : series) {
        const char* color = kColors[color_idx % 8];
        ++color_idx;
        os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (!(x > 0 && y > 0)) continue;
            if (!first) os << " ";
            os << px(x) << "," << py(y);
            first = false;
        }
        os << "\"/>\n";
        const int lx = kWidth - kMarginRight + 12;
        os << "  <line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 22
           << "\" y2=\"" << legend_y << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "  <text x=\"" << lx + 28 << "\" y=\"" << legend_y + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label)
           << "</text>\n";
        legend_y += 20;
    }
    os << "</svg>\n";
}

}  // namespace emharv
