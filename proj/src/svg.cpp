#include <algorithm>
#include <cstdio>
#include <sstream>

#include "tritile/report.hpp"

namespace tritile {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values) {
    const int bars = static_cast<int>(values.size());
    const double bw = 40, gap = 10, h = 200, left = 50, top = 40;
    const double width = left + bars * (bw + gap) + gap, height = top + h + 60;
    double vmax = 0;
    for (double v : values) vmax = std::max(vmax, v);
    if (vmax <= 0) vmax = 1;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\">\n";
    o << "<text x=\"" << num(left) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
      << "</text>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + h) << "\" x2=\"" << num(width) << "\" y2=\""
      << num(top + h) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i < bars; ++i) {
        const double bh = h * values[i] / vmax;
        const double x = left + gap + i * (bw + gap);
        o << "<rect x=\"" << num(x) << "\" y=\"" << num(top + h - bh) << "\" width=\"" << num(bw) << "\" height=\""
          << num(bh) << "\" fill=\"steelblue\"/>\n";
        o << "<text x=\"" << num(x + bw / 2) << "\" y=\"" << num(top + h - bh - 4)
          << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << num(values[i]) << "</text>\n";
        const std::string lab = i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i);
        o << "<text x=\"" << num(x + bw / 2) << "\" y=\"" << num(top + h + 14)
          << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << escape(lab) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_heatmap(const std::string& title, const std::vector<std::vector<double>>& cells) {
    const double cs = 16, left = 20, top = 40;
    size_t cols = 0;
    for (const auto& r : cells) cols = std::max(cols, r.size());
    const double width = left * 2 + cols * cs, height = top + cells.size() * cs + 20;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(std::max(width, 200.0)) << "\" height=\""
      << num(height) << "\">\n";
    o << "<text x=\"" << num(left) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
      << "</text>\n";
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = 0; j < cells[i].size(); ++j) {
            const double v = std::clamp(cells[i][j], 0.0, 1.0);
            const int r = static_cast<int>(255 - 225 * v), g = static_cast<int>(255 - 185 * v),
                      b = static_cast<int>(255 - 100 * v);
            o << "<rect x=\"" << num(left + j * cs) << "\" y=\"" << num(top + i * cs) << "\" width=\"" << num(cs)
              << "\" height=\"" << num(cs) << "\" fill=\"rgb(" << r << "," << g << "," << b << ")\"/>\n";
        }
    o << "</svg>\n";
    return o.str();
}

}  // namespace tritile
