#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ddomp/harness.hpp"

namespace ddomp {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0, kRight = 24.0, kTop = 28.0, kBottom = 56.0;
constexpr double kFloor = 1e-16;  // log-plot clamp for exact zeros

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_sweep_svg(const SweepResult& result, std::ostream& os) {
    // series per solver, in first-appearance order
    std::vector<std::string> solvers;
    for (const PointAggregate& r : result.rows)
        if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end())
            solvers.push_back(r.solver);

    double x_min = 1e300, x_max = -1e300;
    double log_min = 1e300, log_max = -1e300;
    for (const PointAggregate& r : result.rows) {
        x_min = std::min(x_min, r.sweep_value);
        x_max = std::max(x_max, r.sweep_value);
        const double y = std::log10(std::max(r.nmse_mean, kFloor));
        log_min = std::min(log_min, y);
        log_max = std::max(log_max, y);
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    log_min = std::floor(log_min);
    log_max = std::ceil(log_max);
    if (log_max <= log_min) log_max = log_min + 1.0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double nmse_mean) {
        const double y = std::log10(std::max(nmse_mean, kFloor));
        return kTop + (log_max - y) / (log_max - log_min) * plot_h;
    };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
       << "\">\n";
    {
        std::istringstream cfg_lines(result.resolved.serialize());
        std::string line;
        os << "<!--\n";
        while (std::getline(cfg_lines, line)) os << line << "\n";
        os << "-->\n";
    }
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"white\"/>\n";

    // decade gridlines + y labels
    for (double e = log_min; e <= log_max + 0.5; e += 1.0) {
        const double y = kTop + (log_max - e) / (log_max - log_min) * plot_h;
        os << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(y) << "\" x2=\""
           << kWidth - kRight << "\" y2=\"" << fmt(y)
           << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(y + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e"
           << static_cast<int>(e) << "</text>\n";
    }
    // x ticks at swept values
    std::vector<double> xs;
    for (const PointAggregate& r : result.rows)
        if (std::find(xs.begin(), xs.end(), r.sweep_value) == xs.end())
            xs.push_back(r.sweep_value);
    std::sort(xs.begin(), xs.end());
    for (double v : xs) {
        os << "<line x1=\"" << fmt(sx(v)) << "\" y1=\"" << kHeight - kBottom
           << "\" x2=\"" << fmt(sx(v)) << "\" y2=\"" << kHeight - kBottom + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(sx(v)) << "\" y=\"" << kHeight - kBottom + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           << fmt(v) << "</text>\n";
    }
    // axes
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << fmt(plot_w)
       << "\" height=\"" << fmt(plot_h)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << kHeight - 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << result.sweep_variable << "</text>\n";
    os << "<text x=\"18\" y=\"" << fmt(kTop + plot_h / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 18 "
       << fmt(kTop + plot_h / 2) << ")\">NMSE</text>\n";

    // series
    for (std::size_t s = 0; s < solvers.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string pts;
        for (const PointAggregate& r : result.rows) {
            if (r.solver != solvers[s]) continue;
            pts += fmt(sx(r.sweep_value)) + "," + fmt(sy(r.nmse_mean)) + " ";
        }
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.8\" points=\"" << pts << "\"/>\n";
        for (const PointAggregate& r : result.rows) {
            if (r.solver != solvers[s]) continue;
            os << "<circle cx=\"" << fmt(sx(r.sweep_value)) << "\" cy=\""
               << fmt(sy(r.nmse_mean)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        // legend entry
        const double ly = kTop + 14 + 16.0 * s;
        os << "<line x1=\"" << kLeft + plot_w - 170 << "\" y1=\"" << fmt(ly)
           << "\" x2=\"" << kLeft + plot_w - 146 << "\" y2=\"" << fmt(ly)
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kLeft + plot_w - 140 << "\" y=\"" << fmt(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << solvers[s]
           << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace ddomp
