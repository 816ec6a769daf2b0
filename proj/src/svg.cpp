#include "dnf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dnf {

namespace {

constexpr int width = 640;
constexpr int height = 420;
constexpr int margin_left = 60;
constexpr int margin_right = 20;
constexpr int margin_top = 30;
constexpr int margin_bottom = 50;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#8c564b", "#e377c2"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Axes {
    double x_min, x_max, y_min, y_max;
    double sx(double x) const {
        return margin_left + (x - x_min) / (x_max - x_min) * (width - margin_left - margin_right);
    }
    double sy(double y) const {
        return height - margin_bottom -
               (y - y_min) / (y_max - y_min) * (height - margin_top - margin_bottom);
    }
};

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" << title << "</text>\n";
}

void draw_axes(std::ostringstream& out, const Axes& ax, const std::string& x_label,
               const std::string& y_label) {
    out << "<line x1=\"" << margin_left << "\" y1=\"" << height - margin_bottom << "\" x2=\""
        << width - margin_right << "\" y2=\"" << height - margin_bottom
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\"" << margin_left
        << "\" y2=\"" << height - margin_bottom << "\" stroke=\"black\"/>\n";
    // endpoint ticks with values
    for (double frac : {0.0, 0.5, 1.0}) {
        const double xv = ax.x_min + frac * (ax.x_max - ax.x_min);
        const double yv = ax.y_min + frac * (ax.y_max - ax.y_min);
        out << "<text x=\"" << fmt(ax.sx(xv)) << "\" y=\"" << height - margin_bottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(xv) << "</text>\n"
            << "<text x=\"" << margin_left - 8 << "\" y=\"" << fmt(ax.sy(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(yv)
            << "</text>\n";
    }
    out << "<text x=\"" << (margin_left + width - margin_right) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n"
        << "<text x=\"16\" y=\"" << (margin_top + height - margin_bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " << (margin_top + height - margin_bottom) / 2 << ")\">"
        << y_label << "</text>\n";
}

void draw_legend(std::ostringstream& out, const std::vector<std::string>& labels) {
    int y = margin_top + 10;
    for (size_t i = 0; i < labels.size(); ++i) {
        out << "<rect x=\"" << width - margin_right - 130 << "\" y=\"" << y - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << palette[i % 6] << "\"/>\n"
            << "<text x=\"" << width - margin_right - 112 << "\" y=\"" << y + 2
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << labels[i] << "</text>\n";
        y += 18;
    }
}

std::vector<std::string> condition_order(const std::vector<SimRecord>& records) {
    std::vector<std::string> order;
    for (const auto& r : records)
        if (std::find(order.begin(), order.end(), r.condition) == order.end())
            order.push_back(r.condition);
    return order;
}

std::string hist_svg(const std::vector<SimRecord>& records, const std::string& title,
                     const std::string& x_label, double lo, double hi, double bin_width,
                     bool use_peak) {
    if (records.empty()) throw std::invalid_argument("plot: no rows");
    const auto order = condition_order(records);
    const int bins = static_cast<int>(std::ceil((hi - lo) / bin_width));

    std::map<std::string, std::vector<int>> counts;
    for (const auto& c : order) counts[c].assign(static_cast<size_t>(bins), 0);
    int max_count = 1;
    for (const auto& r : records) {
        double v;
        if (use_peak) {
            if (!r.peak_conn) continue;
            v = *r.peak_conn;
        } else {
            if (!r.acceptability) continue;
            v = *r.acceptability;
        }
        int b = static_cast<int>((v - lo) / bin_width);
        b = std::clamp(b, 0, bins - 1);
        max_count = std::max(max_count, ++counts[r.condition][static_cast<size_t>(b)]);
    }

    Axes ax{lo, hi, 0.0, static_cast<double>(max_count)};
    std::ostringstream out;
    open_svg(out, title);
    draw_axes(out, ax, x_label, "count");
    for (size_t ci = 0; ci < order.size(); ++ci) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[ci % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        const auto& cs = counts[order[ci]];
        for (int b = 0; b < bins; ++b) {
            // step outline over each bin
            const double x0 = lo + b * bin_width, x1 = x0 + bin_width;
            const double y = cs[static_cast<size_t>(b)];
            out << fmt(ax.sx(x0)) << ',' << fmt(ax.sy(y)) << ' ' << fmt(ax.sx(x1)) << ','
                << fmt(ax.sy(y)) << ' ';
        }
        out << "\"/>\n";
    }
    draw_legend(out, order);
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string svg_peak_hist(const std::vector<SimRecord>& records) {
    return hist_svg(records, "conn peak location by context", "conn peak (neuron)", 1.0, 99.0,
                    2.0, true);
}

std::string svg_acc_hist(const std::vector<SimRecord>& records) {
    return hist_svg(records, "acceptability by context", "acceptability", 0.0, 1.0, 0.02, false);
}

std::string svg_rt_acc_scatter(const std::vector<SimRecord>& records) {
    if (records.empty()) throw std::invalid_argument("plot: no rows");
    const auto order = condition_order(records);

    double rt_max = 1.0;
    for (const auto& r : records)
        if (r.rt) rt_max = std::max(rt_max, static_cast<double>(*r.rt));

    Axes ax{0.0, 1.0, 0.0, rt_max};
    std::ostringstream out;
    open_svg(out, "response time by acceptability");
    draw_axes(out, ax, "acceptability", "response time (timesteps)");
    for (size_t ci = 0; ci < order.size(); ++ci) {
        for (const auto& r : records) {
            if (r.condition != order[ci] || !r.acceptability || !r.rt) continue;
            out << "<circle cx=\"" << fmt(ax.sx(*r.acceptability)) << "\" cy=\""
                << fmt(ax.sy(static_cast<double>(*r.rt))) << "\" r=\"2\" fill=\""
                << palette[ci % 6] << "\" fill-opacity=\"0.5\"/>\n";
        }
    }
    draw_legend(out, order);
    out << "</svg>\n";
    return out.str();
}

std::string svg_sweep(const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("plot: no rows");
    std::vector<std::string> order;
    for (const auto& r : rows)
        if (std::find(order.begin(), order.end(), r.condition) == order.end())
            order.push_back(r.condition);

    double x_min = rows.front().c_dnf, x_max = rows.front().c_dnf;
    double y_min = rows.front().ci_lo, y_max = rows.front().ci_hi;
    for (const auto& r : rows) {
        x_min = std::min(x_min, r.c_dnf);
        x_max = std::max(x_max, r.c_dnf);
        y_min = std::min(y_min, r.ci_lo);
        y_max = std::max(y_max, r.ci_hi);
    }
    if (x_max == x_min) {
        x_min -= 0.05;
        x_max += 0.05;
    }
    const double pad = 0.1 * (y_max - y_min + 1e-12);
    Axes ax{x_min, x_max, y_min - pad, y_max + pad};

    std::ostringstream out;
    open_svg(out, "mean acceptability by context across c_dnf");
    draw_axes(out, ax, "c_dnf", "mean acceptability");
    for (size_t ci = 0; ci < order.size(); ++ci) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[ci % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& r : rows)
            if (r.condition == order[ci])
                out << fmt(ax.sx(r.c_dnf)) << ',' << fmt(ax.sy(r.mean_acceptability)) << ' ';
        out << "\"/>\n";
        for (const auto& r : rows) {
            if (r.condition != order[ci]) continue;
            const double x = ax.sx(r.c_dnf);
            out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(ax.sy(r.ci_lo)) << "\" x2=\""
                << fmt(x) << "\" y2=\"" << fmt(ax.sy(r.ci_hi)) << "\" stroke=\""
                << palette[ci % 6] << "\"/>\n"
                << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(ax.sy(r.mean_acceptability))
                << "\" r=\"3\" fill=\"" << palette[ci % 6] << "\"/>\n";
        }
    }
    draw_legend(out, order);
    out << "</svg>\n";
    return out.str();
}

}  // namespace dnf
