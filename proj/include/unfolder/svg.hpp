#pragma once

/** @file svg.hpp

    @brief Minimal SVG rendering of a bifurcation diagram: control parameter
    horizontal, state vertical, stable segments solid, unstable dashed.
*/

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "continuation.hpp"
#include "window.hpp"

namespace unfolder {

struct SvgStyle {
    double width = 640.0;
    double height = 480.0;
    double margin = 60.0;
    int ticks = 5;
};

namespace detail {

inline std::string fixed6(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string short_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace detail

inline std::string render_svg(const std::vector<Branch>& diagram, const Window& w, const std::string& state_name,
                              const std::string& control_name, const SvgStyle& st = {})
{
    using detail::fixed6;
    const double pw = st.width - 2.0 * st.margin, ph = st.height - 2.0 * st.margin;
    auto px = [&](double lambda) { return st.margin + (lambda - w.lambda_min) / w.lambda_span() * pw; };
    auto py = [&](double x) { return st.height - st.margin - (x - w.x_min) / w.x_span() * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed6(st.width) << "\" height=\""
       << fixed6(st.height) << "\" viewBox=\"0 0 " << fixed6(st.width) << ' ' << fixed6(st.height) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << fixed6(st.width) << "\" height=\"" << fixed6(st.height)
       << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << fixed6(st.margin) << "\" y=\"" << fixed6(st.margin) << "\" width=\"" << fixed6(pw)
       << "\" height=\"" << fixed6(ph) << "\" fill=\"none\" stroke=\"gray\"/>\n";

    for (int k = 0; k <= st.ticks; ++k) {
        const double fl = w.lambda_min + k * w.lambda_span() / st.ticks;
        const double fx = w.x_min + k * w.x_span() / st.ticks;
        os << "<text x=\"" << fixed6(px(fl)) << "\" y=\"" << fixed6(st.height - st.margin + 18.0)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << detail::short_num(fl) << "</text>\n";
        os << "<text x=\"" << fixed6(st.margin - 6.0) << "\" y=\"" << fixed6(py(fx) + 4.0)
           << "\" font-size=\"11\" text-anchor=\"end\">" << detail::short_num(fx) << "</text>\n";
    }
    os << "<text x=\"" << fixed6(st.margin + 0.5 * pw) << "\" y=\"" << fixed6(st.height - 15.0)
       << "\" font-size=\"14\" text-anchor=\"middle\">" << control_name << "</text>\n";
    os << "<text x=\"15\" y=\"" << fixed6(st.margin + 0.5 * ph) << "\" font-size=\"14\" text-anchor=\"middle\""
       << " transform=\"rotate(-90 15 " << fixed6(st.margin + 0.5 * ph) << ")\">" << state_name << "</text>\n";

    for (const auto& b : diagram) {
        std::size_t i = 0;
        while (i + 1 < b.points.size()) {
            const Stability s = b.points[i + 1].stability;
            std::size_t j = i + 1;
            while (j + 1 < b.points.size() && b.points[j + 1].stability == s) ++j;
            os << "<path d=\"M";
            for (std::size_t k = i; k <= j; ++k)
                os << (k == i ? "" : " L") << ' ' << fixed6(px(b.points[k].lambda)) << ' ' << fixed6(py(b.points[k].x));
            os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\""
               << (s == Stability::Stable ? "" : " stroke-dasharray=\"6,4\"") << "/>\n";
            i = j;
        }
        for (const auto& sp : b.special_points) {
            if (sp.kind == SpecialKind::Fold)
                os << "<circle cx=\"" << fixed6(px(sp.lambda)) << "\" cy=\"" << fixed6(py(sp.x))
                   << "\" r=\"4\" fill=\"none\" stroke=\"red\"/>\n";
            else
                os << "<rect x=\"" << fixed6(px(sp.lambda) - 4.0) << "\" y=\"" << fixed6(py(sp.x) - 4.0)
                   << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"blue\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace unfolder
