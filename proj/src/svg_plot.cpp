#include "spinphase/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spinphase {
namespace {

constexpr double width = 640.0;
constexpr double height = 420.0;
constexpr double margin_left = 70.0;
constexpr double margin_right = 20.0;
constexpr double margin_top = 40.0;
constexpr double margin_bottom = 55.0;
constexpr int ticks = 5;

std::string fmt(double v, char const* spec = "%.4g")
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string escape(std::string const& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg_polyline(std::span<double const> xs,
                                std::span<double const> ys,
                                PlotLabels const& labels)
{
    std::size_t const n = std::min(xs.size(), ys.size());
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
        {
            continue;
        }
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    if (!(xmin <= xmax))
    {
        xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    }
    if (xmax - xmin < 1e-12)
    {
        xmin -= 0.5, xmax += 0.5;
    }
    if (ymax - ymin < 1e-12)
    {
        ymin -= 0.5, ymax += 0.5;
    }

    double const plot_w = width - margin_left - margin_right;
    double const plot_h = height - margin_top - margin_bottom;
    auto px = [&](double x) { return margin_left + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return margin_top + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << escape(labels.title) << "</text>\n";

    // axes box
    svg << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= ticks; ++i)
    {
        double const fx = xmin + (xmax - xmin) * i / ticks;
        double const fy = ymin + (ymax - ymin) * i / ticks;
        double const x = px(fx);
        double const y = py(fy);
        double const bottom = margin_top + plot_h;
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << bottom << "\" x2=\"" << fmt(x) << "\" y2=\""
            << bottom + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(x) << "\" y=\"" << bottom + 19
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fx)
            << "</text>\n"
            << "<line x1=\"" << margin_left - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << margin_left
            << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << margin_left - 8 << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fy)
            << "</text>\n";
    }
    svg << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(labels.x_label)
        << "</text>\n"
        << "<text x=\"18\" y=\"" << margin_top + plot_h / 2 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " << margin_top + plot_h / 2
        << ")\">" << escape(labels.y_label) << "</text>\n";

    // one polyline per finite run
    std::string points;
    auto flush = [&]() {
        if (!points.empty())
        {
            svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"" << points
                << "\"/>\n";
            points.clear();
        }
    };
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
        {
            flush();
            continue;
        }
        if (!points.empty())
        {
            points += ' ';
        }
        points += fmt(px(xs[i]), "%.2f") + ',' + fmt(py(ys[i]), "%.2f");
    }
    flush();
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace spinphase
