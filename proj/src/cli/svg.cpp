#include "sa/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace sa::cli {

namespace {

constexpr double W = 800, H = 480, ML = 80, MR = 30, MT = 40, MB = 60;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

} // namespace

std::string render_svg(std::span<const double> xs, std::span<const double> ys, const PlotSpec& spec) {
    if (xs.size() != ys.size()) throw std::invalid_argument("render_svg: length mismatch");
    std::vector<double> px, py;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
        if (spec.logx && !(xs[i] > 0.0)) continue;
        px.push_back(spec.logx ? std::log10(xs[i]) : xs[i]);
        py.push_back(ys[i]);
    }
    if (px.empty()) throw std::invalid_argument("render_svg: nothing to plot");

    double x0 = *std::min_element(px.begin(), px.end()), x1 = *std::max_element(px.begin(), px.end());
    double y0 = *std::min_element(py.begin(), py.end()), y1 = *std::max_element(py.begin(), py.end());
    if (spec.target) {
        y0 = std::min(y0, *spec.target);
        y1 = std::max(y1, *spec.target);
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    auto sx = [&](double x) { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); };
    auto sy = [&](double y) { return H - MB - (y - y0) / (y1 - y0) * (H - MT - MB); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" viewBox=\"0 0 800 480\">\n";
    s += "<rect width=\"800\" height=\"480\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(spec.title) + "</text>\n";
    // axes
    s += "<line x1=\"" + num(ML) + "\" y1=\"" + num(H - MB) + "\" x2=\"" + num(W - MR) + "\" y2=\"" + num(H - MB) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(ML) + "\" y1=\"" + num(MT) + "\" x2=\"" + num(ML) + "\" y2=\"" + num(H - MB) +
         "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = x0 + (x1 - x0) * k / 5.0;
        const double yv = y0 + (y1 - y0) * k / 5.0;
        s += "<line x1=\"" + num(sx(xv)) + "\" y1=\"" + num(H - MB) + "\" x2=\"" + num(sx(xv)) + "\" y2=\"" +
             num(H - MB + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(H - MB + 20) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
             label(spec.logx ? std::pow(10.0, xv) : xv) + "</text>\n";
        s += "<line x1=\"" + num(ML - 5) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(ML) + "\" y2=\"" +
             num(sy(yv)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(ML - 8) + "\" y=\"" + num(sy(yv) + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label(yv) + "</text>\n";
    }
    s += "<text x=\"" + num((ML + W - MR) / 2) + "\" y=\"" + num(H - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(spec.x_label + (spec.logx ? " (log scale)" : "")) + "</text>\n";
    s += "<text x=\"18\" y=\"" + num((MT + H - MB) / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " + num((MT + H - MB) / 2) + ")\">" + escape(spec.y_label) +
         "</text>\n";
    if (spec.target) {
        s += "<line x1=\"" + num(ML) + "\" y1=\"" + num(sy(*spec.target)) + "\" x2=\"" + num(W - MR) + "\" y2=\"" +
             num(sy(*spec.target)) + "\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n";
    }
    s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < px.size(); ++i) s += (i ? " " : "") + num(sx(px[i])) + "," + num(sy(py[i]));
    s += "\"/>\n</svg>\n";
    return s;
}

std::string plot_channel(const CsvTable& table, const std::string& channel, std::optional<double> target,
                         bool logx) {
    if (channel.empty())
        throw std::invalid_argument("empty channel name; available channels: " + table.available());
    const auto y = table.column(channel);
    const auto x = table.column(table.header.front());
    PlotSpec spec;
    spec.title = channel;
    spec.x_label = table.header.front();
    spec.y_label = channel;
    spec.target = target;
    spec.logx = logx;
    return render_svg(x, y, spec);
}

} // namespace sa::cli
