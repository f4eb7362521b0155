#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jpa/errors.hpp"

namespace jpa {

/// Minimal multi-panel line-plot SVG writer: axes with ticks, optional
/// log-scale y, per-series legend. No external plotting dependency.
class SvgPlot {
public:
    struct Series {
        std::vector<double> x, y;
        std::string label;
        std::string color;
    };

    struct Panel {
        std::vector<Series> series;
        std::string title, xlabel, ylabel;
        bool logy = false;
    };

    Panel& add_panel(const std::string& title = "", const std::string& xlabel = "",
                     const std::string& ylabel = "") {
        panels_.push_back({{}, title, xlabel, ylabel, false});
        return panels_.back();
    }

    static void add_series(Panel& p, std::vector<double> x, std::vector<double> y,
                           std::string label = "") {
        static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b"};
        Series s;
        s.x = std::move(x);
        s.y = std::move(y);
        s.label = std::move(label);
        s.color = palette[p.series.size() % 6];
        p.series.push_back(std::move(s));
    }

    void write(const std::string& path, int panel_w = 640, int panel_h = 300) const {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw domain_error("cannot open SVG output: " + path);
        const int n = static_cast<int>(panels_.size());
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << panel_w << "\" height=\""
           << panel_h * n << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        for (int i = 0; i < n; ++i) render_panel(os, panels_[i], 0, i * panel_h, panel_w, panel_h);
        os << "</svg>\n";
    }

private:
    static double tx(double v, double lo, double hi, double a, double b) {
        return a + (v - lo) / (hi - lo) * (b - a);
    }

    static std::string fmt(double v) {
        std::ostringstream ss;
        ss.precision(4);
        ss << v;
        return ss.str();
    }

    void render_panel(std::ofstream& os, const Panel& p, int ox, int oy, int w, int h) const {
        const double ml = 70, mr = 15, mt = 30, mb = 45;
        const double x0 = ox + ml, x1 = ox + w - mr;
        const double y0 = oy + h - mb, y1 = oy + mt;

        double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
        for (const auto& s : p.series) {
            for (size_t i = 0; i < s.x.size(); ++i) {
                double yv = s.y[i];
                if (p.logy) {
                    if (!(yv > 0.0)) continue;
                    yv = std::log10(yv);
                }
                if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
                xlo = std::min(xlo, s.x[i]);
                xhi = std::max(xhi, s.x[i]);
                ylo = std::min(ylo, yv);
                yhi = std::max(yhi, yv);
            }
        }
        if (xhi <= xlo) { xlo -= 0.5; xhi += 0.5; }
        if (yhi <= ylo) { ylo -= 0.5; yhi += 0.5; }
        const double pad = 0.05 * (yhi - ylo);
        ylo -= pad;
        yhi += pad;

        os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << (x1 - x0)
           << "\" height=\"" << (y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
        if (!p.title.empty())
            os << "<text x=\"" << 0.5 * (x0 + x1) << "\" y=\"" << y1 - 8
               << "\" text-anchor=\"middle\" font-size=\"14\">" << p.title << "</text>\n";

        const int nticks = 5;
        for (int i = 0; i <= nticks; ++i) {
            const double fx = xlo + (xhi - xlo) * i / nticks;
            const double px = tx(fx, xlo, xhi, x0, x1);
            os << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px << "\" y2=\""
               << y0 + 5 << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << px << "\" y=\"" << y0 + 18
               << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(fx) << "</text>\n";
            const double fy = ylo + (yhi - ylo) * i / nticks;
            const double py = tx(fy, ylo, yhi, y0, y1);
            os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0 << "\" y2=\""
               << py << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4
               << "\" text-anchor=\"end\" font-size=\"11\">"
               << (p.logy ? "1e" + fmt(fy) : fmt(fy)) << "</text>\n";
        }
        if (!p.xlabel.empty())
            os << "<text x=\"" << 0.5 * (x0 + x1) << "\" y=\"" << y0 + 36
               << "\" text-anchor=\"middle\" font-size=\"12\">" << p.xlabel << "</text>\n";
        if (!p.ylabel.empty())
            os << "<text x=\"" << x0 - 52 << "\" y=\"" << 0.5 * (y0 + y1)
               << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " << x0 - 52
               << " " << 0.5 * (y0 + y1) << ")\">" << p.ylabel << "</text>\n";

        double ly = y1 + 14;
        for (const auto& s : p.series) {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.3\" points=\"";
            bool pen_up = true;
            for (size_t i = 0; i < s.x.size(); ++i) {
                double yv = s.y[i];
                if (p.logy) {
                    if (!(yv > 0.0)) { pen_up = true; continue; }
                    yv = std::log10(yv);
                }
                if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) { pen_up = true; continue; }
                (void)pen_up;
                pen_up = false;
                os << tx(s.x[i], xlo, xhi, x0, x1) << "," << tx(yv, ylo, yhi, y0, y1) << " ";
            }
            os << "\"/>\n";
            if (!s.label.empty()) {
                os << "<line x1=\"" << x1 - 120 << "\" y1=\"" << ly << "\" x2=\"" << x1 - 100
                   << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
                os << "<text x=\"" << x1 - 95 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
                   << s.label << "</text>\n";
                ly += 15;
            }
        }
    }

    std::vector<Panel> panels_;
};

} // namespace jpa
