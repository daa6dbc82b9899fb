#include "svarkit/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace svarkit::app {

namespace {

constexpr double kPanelWidth = 360.0;
constexpr double kPanelHeight = 240.0;
constexpr double kMargin = 40.0;
constexpr double kTitleHeight = 30.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
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

// Tick label with enough digits for small IRF magnitudes.
std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::vector<Panel>& panels) {
    const double width = kMargin + static_cast<double>(panels.size()) * (kPanelWidth + kMargin);
    const double height = kTitleHeight + kPanelHeight + 2.0 * kMargin;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        const double x0 = kMargin + static_cast<double>(p) * (kPanelWidth + kMargin);
        const double y0 = kTitleHeight + kMargin;
        double lo = 0.0;
        double hi = 0.0;
        std::size_t n = 1;
        for (const auto& line : panel.lines) {
            for (double v : line.values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            n = std::max(n, line.values.size());
        }
        if (hi - lo <= 0.0) {
            lo -= 1.0;
            hi += 1.0;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
        const auto sx = [&](double i) { return x0 + (n > 1 ? i / static_cast<double>(n - 1) : 0.5) * kPanelWidth; };
        const auto sy = [&](double v) { return y0 + (hi - v) / (hi - lo) * kPanelHeight; };

        svg << "<g>\n";
        svg << "<text x=\"" << num(x0 + kPanelWidth / 2) << "\" y=\"" << num(y0 - 8)
            << "\" text-anchor=\"middle\">" << escape(panel.title) << "</text>\n";
        svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(kPanelWidth)
            << "\" height=\"" << num(kPanelHeight) << "\" fill=\"none\" stroke=\"#999\"/>\n";
        svg << "<line x1=\"" << num(x0) << "\" y1=\"" << num(sy(0.0)) << "\" x2=\"" << num(x0 + kPanelWidth)
            << "\" y2=\"" << num(sy(0.0)) << "\" stroke=\"#666\" stroke-dasharray=\"4 3\"/>\n";
        for (double v : {lo + pad, hi - pad}) {
            svg << "<text x=\"" << num(x0 - 4) << "\" y=\"" << num(sy(v) + 4) << "\" text-anchor=\"end\">" << tick(v)
                << "</text>\n";
        }
        for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 10)) {
            svg << "<text x=\"" << num(sx(static_cast<double>(i))) << "\" y=\"" << num(y0 + kPanelHeight + 14)
                << "\" text-anchor=\"middle\">" << i << "</text>\n";
        }
        for (std::size_t l = 0; l < panel.lines.size(); ++l) {
            const Line& line = panel.lines[l];
            const char* color = kColors[l % std::size(kColors)];
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < line.values.size(); ++i) {
                if (i > 0) svg << ' ';
                svg << num(sx(static_cast<double>(i))) << ',' << num(sy(line.values[i]));
            }
            svg << "\"/>\n";
            const double ly = y0 + 14.0 + 14.0 * static_cast<double>(l);
            svg << "<line x1=\"" << num(x0 + 8) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(x0 + 24)
                << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << num(x0 + 28) << "\" y=\"" << num(ly) << "\">" << escape(line.name) << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace svarkit::app
