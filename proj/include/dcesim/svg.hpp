#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dcesim/core.hpp"
#include "dcesim/output.hpp"
#include "dcesim/photon_number.hpp"

// Self-contained SVG line plot of a PhotonNumberSeries: every method on shared
// log-log axes (t/tau vs <N>), a dashed horizontal line at the saturation
// level sinh^2(nu0/gamma), and a legend. No plotting dependency; the output is
// deterministic except for an optional timestamp comment.

namespace dcesim {

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline const char* method_color(Method m) {
    switch (m) {
        case Method::quadrature: return "#1f77b4";
        case Method::closed_weak: return "#2ca02c";
        case Method::closed_general: return "#d62728";
        case Method::phenomenological: return "#9467bd";
        case Method::ode_oracle: return "#ff7f0e";
    }
    return "#000000";
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

inline std::string series_svg(const PhotonNumberSeries& series, double nu0, double gamma,
                              bool with_timestamp) {
    constexpr double W = 880, H = 560;
    constexpr double ml = 80, mr = 180, mt = 40, mb = 60;
    const double pw = W - ml - mr, ph = H - mt - mb;

    // Plot range from the positive finite data.
    double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
    double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double x = series.times[i] * series.linewidth;
        if (x <= 0.0) continue;
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        for (const auto& [m, vals] : series.values) {
            const double y = vals[i];
            if (y > 0.0 && std::isfinite(y)) {
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    const double n_inf = sinh_sq(nu0 / gamma);
    if (n_inf > 0.0) {
        ymin = std::min(ymin, n_inf);
        ymax = std::max(ymax, n_inf);
    }
    if (!(xmax > 0.0) || !(ymax > 0.0)) {
        xmin = 1e-3; xmax = 10.0; ymin = 1e-12; ymax = 1.0;
    }
    // Pad to whole decades.
    const double lx0 = std::floor(std::log10(xmin)), lx1 = std::ceil(std::log10(xmax));
    double ly0 = std::floor(std::log10(ymin)), ly1 = std::ceil(std::log10(ymax));
    if (ly1 - ly0 > 24.0) ly0 = ly1 - 24.0;   // keep divergent comparison curves readable
    if (lx1 == lx0) { ly1 += 1.0; }

    auto px = [&](double x) { return ml + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double y) { return mt + ph - (std::log10(y) - ly0) / (ly1 - ly0) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    if (with_timestamp) out << "<!-- generated " << detail::utc_timestamp() << " -->\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

    // Axes frame and decade grid.
    out << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (double d = lx0; d <= lx1 + 0.5; d += 1.0) {
        const double x = px(std::pow(10.0, d));
        out << "<line x1=\"" << detail::svg_num(x) << "\" y1=\"" << mt << "\" x2=\""
            << detail::svg_num(x) << "\" y2=\"" << mt + ph << "\"/>\n";
    }
    for (double d = ly0; d <= ly1 + 0.5; d += 1.0) {
        const double y = py(std::pow(10.0, d));
        out << "<line x1=\"" << ml << "\" y1=\"" << detail::svg_num(y) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << detail::svg_num(y) << "\"/>\n";
    }
    out << "</g>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // Tick labels.
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (double d = lx0; d <= lx1 + 0.5; d += 1.0)
        out << "<text x=\"" << detail::svg_num(px(std::pow(10.0, d))) << "\" y=\""
            << mt + ph + 18 << "\" text-anchor=\"middle\">1e" << static_cast<int>(d)
            << "</text>\n";
    for (double d = ly0; d <= ly1 + 0.5; d += 1.0)
        out << "<text x=\"" << ml - 8 << "\" y=\"" << detail::svg_num(py(std::pow(10.0, d)) + 4)
            << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 16
        << "\" text-anchor=\"middle\">t / tau</text>\n";
    out << "<text x=\"20\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << mt + ph / 2
        << ")\">mean pair number</text>\n";
    out << "<text x=\"" << ml << "\" y=\"" << mt - 12 << "\" font-size=\"14\">pair creation, "
        << "nu0/gamma = " << format_g17(nu0 / gamma) << "</text>\n";
    out << "</g>\n";

    // Saturation asymptote.
    if (n_inf > 0.0 && std::log10(n_inf) >= ly0 && std::log10(n_inf) <= ly1) {
        const double y = py(n_inf);
        out << "<line x1=\"" << ml << "\" y1=\"" << detail::svg_num(y) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << detail::svg_num(y)
            << "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
        out << "<text x=\"" << ml + pw - 4 << "\" y=\"" << detail::svg_num(y - 5)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\" "
               "text-anchor=\"end\">sinh^2(nu0/gamma)</text>\n";
    }

    // Data polylines, clipped to the frame.
    out << "<clipPath id=\"frame\"><rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\"/></clipPath>\n";
    for (const auto& [m, vals] : series.values) {
        out << "<polyline fill=\"none\" clip-path=\"url(#frame)\" stroke=\""
            << detail::method_color(m) << "\" stroke-width=\"1.8\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            const double x = series.times[i] * series.linewidth;
            const double y = vals[i];
            if (x <= 0.0 || y <= 0.0 || !std::isfinite(y)) continue;
            out << (first ? "" : " ") << detail::svg_num(px(x)) << ',' << detail::svg_num(py(y));
            first = false;
        }
        out << "\"/>\n";
    }

    // Legend.
    double ly = mt + 10;
    for (const auto& [m, vals] : series.values) {
        out << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 36
            << "\" y2=\"" << ly << "\" stroke=\"" << detail::method_color(m)
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << ml + pw + 42 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << method_tag(m)
            << "</text>\n";
        ly += 18;
    }

    out << "</svg>\n";
    return out.str();
}

} // namespace dcesim
