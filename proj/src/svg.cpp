#include "cclust/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <sstream>

namespace cclust::svg {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

void open(std::ostringstream& os, double w, double h, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
       << "\" viewBox=\"0 0 " << fmt(w) << ' ' << fmt(h) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << fmt(w / 2) << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"14\">" << escape(title) << "</text>\n";
}

}

std::string heatmap(const Matrix& values, const std::string& title) {
    const double margin = 40;
    const double side = 600;
    const std::size_t n = values.rows();
    const double cell = n > 0 ? side / static_cast<double>(n) : side;
    std::ostringstream os;
    open(os, side + 2 * margin, side + 2 * margin, title);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < values.cols(); ++j) {
            const double v = std::clamp(values(i, j), 0.0, 1.0);
            const int r = static_cast<int>(255 - v * (255 - 8));
            const int g = static_cast<int>(255 - v * (255 - 48));
            const int b = static_cast<int>(255 - v * (255 - 107));
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", r, g, b);
            os << "<rect x=\"" << fmt(margin + cell * static_cast<double>(j)) << "\" y=\""
               << fmt(margin + cell * static_cast<double>(i)) << "\" width=\"" << fmt(cell) << "\" height=\""
               << fmt(cell) << "\" fill=\"" << color << "\"/>\n";
        }
    }
    os << "<rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\"" << fmt(side) << "\" height=\""
       << fmt(side) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

std::string cdf_plot(const std::vector<Series>& curves, const std::string& title) {
    const double left = 60, top = 40, plot = 480;
    std::ostringstream os;
    open(os, left + plot + 140, top + plot + 60, title);
    auto px = [&](double x) { return left + plot * x; };
    auto py = [&](double y) { return top + plot * (1 - y); };

    os << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(plot) << "\" height=\""
       << fmt(plot) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 10; t += 2) {
        const double v = t / 10.0;
        os << "<text x=\"" << fmt(px(v)) << "\" y=\"" << fmt(top + plot + 18)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v) << "</text>\n";
        os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(py(v) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v) << "</text>\n";
    }
    os << "<text x=\"" << fmt(px(0.5)) << "\" y=\"" << fmt(top + plot + 40)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">consensus index</text>\n";

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& s = curves[c];
        const char* color = kPalette[c % std::size(kPalette)];
        os << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i == 0) {
                os << 'M' << fmt(px(s.x[i])) << ' ' << fmt(py(s.y[i]));
            } else {
                os << " H" << fmt(px(s.x[i])) << " V" << fmt(py(s.y[i]));
            }
        }
        os << "\"/>\n";
        const double ly = top + 16 * static_cast<double>(c + 1);
        os << "<line x1=\"" << fmt(left + plot + 15) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(left + plot + 35)
           << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fmt(left + plot + 40) << "\" y=\"" << fmt(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string silhouette_plot(const std::vector<std::vector<double>>& cluster_widths, double asw,
                            const std::string& title) {
    std::size_t total = 0;
    for (const auto& c : cluster_widths) {
        total += c.size();
    }
    const double left = 80, top = 40, width = 480;
    const double gap = 6;
    const double bar = total > 0 ? std::clamp(500.0 / static_cast<double>(total), 1.0, 12.0) : 12.0;
    const double height = bar * static_cast<double>(total) + gap * static_cast<double>(cluster_widths.size());
    std::ostringstream os;
    open(os, left + width + 60, top + height + 60, title);
    auto px = [&](double w) { return left + width * (w + 1) / 2; };

    double y = top;
    for (std::size_t c = 0; c < cluster_widths.size(); ++c) {
        const char* color = kPalette[c % std::size(kPalette)];
        const double start = y;
        for (double w : cluster_widths[c]) {
            const double x0 = std::min(px(0), px(w));
            os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(std::abs(px(w) - px(0)))
               << "\" height=\"" << fmt(bar) << "\" fill=\"" << color << "\"/>\n";
            y += bar;
        }
        os << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt((start + y) / 2 + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << (c + 1) << ": "
           << cluster_widths[c].size() << "</text>\n";
        y += gap;
    }
    os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(0)) << "\" y2=\"" << fmt(y)
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << fmt(px(asw)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(asw)) << "\" y2=\""
       << fmt(y) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    for (int t = -10; t <= 10; t += 5) {
        const double v = t / 10.0;
        os << "<text x=\"" << fmt(px(v)) << "\" y=\"" << fmt(y + 16)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v) << "</text>\n";
    }
    os << "<text x=\"" << fmt(px(0)) << "\" y=\"" << fmt(y + 36)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">silhouette width, ASW = " << fmt(asw)
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}
