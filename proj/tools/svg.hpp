#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace bmcli {

// Minimal SVG line-chart writer: axes box, polylines, optional log scales.
class SvgChart {
  public:
    SvgChart(std::string title, bool logx, bool logy)
        : title_(std::move(title)), logx_(logx), logy_(logy) {}

    void add_series(std::string name, std::vector<double> x, std::vector<double> y) {
        series_.push_back({std::move(name), std::move(x), std::move(y)});
    }

    std::string render() const {
        const double W = 720, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
        double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
        for (const auto& s : series_)
            for (size_t i = 0; i < s.x.size(); ++i) {
                const double xv = tx(s.x[i]), yv = ty(s.y[i]);
                if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
                xlo = std::min(xlo, xv); xhi = std::max(xhi, xv);
                ylo = std::min(ylo, yv); yhi = std::max(yhi, yv);
            }
        if (!(xlo < xhi)) { xlo -= 1; xhi += 1; }
        if (!(ylo < yhi)) { ylo -= 1; yhi += 1; }
        const double xpad = 0.05 * (xhi - xlo), ypad = 0.05 * (yhi - ylo);
        xlo -= xpad; xhi += xpad; ylo -= ypad; yhi += ypad;
        auto px = [&](double v) { return ml + (tx(v) - xlo) / (xhi - xlo) * (W - ml - mr); };
        auto py = [&](double v) { return H - mb - (ty(v) - ylo) / (yhi - ylo) * (H - mt - mb); };

        static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                       "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
           << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
           << "\" height=\"" << H - mt - mb
           << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
              "font-family=\"sans-serif\" font-size=\"16\">" << title_ << "</text>\n";
        int ci = 0;
        for (const auto& s : series_) {
            os << "<polyline fill=\"none\" stroke=\"" << colors[ci % 8]
               << "\" stroke-width=\"1.5\" points=\"";
            for (size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(tx(s.x[i])) || !std::isfinite(ty(s.y[i]))) continue;
                os << px(s.x[i]) << "," << py(s.y[i]) << " ";
            }
            os << "\"/>\n";
            os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 18 + 16 * ci
               << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
               << colors[ci % 8] << "\">" << s.name << "</text>\n";
            ++ci;
        }
        os << "</svg>\n";
        return os.str();
    }

  private:
    struct Series {
        std::string name;
        std::vector<double> x, y;
    };
    double tx(double v) const { return logx_ ? std::log10(std::max(v, 1e-300)) : v; }
    double ty(double v) const { return logy_ ? std::log10(std::max(v, 1e-300)) : v; }

    std::string title_;
    bool logx_, logy_;
    std::vector<Series> series_;
};

}  // namespace bmcli
