// plot.hpp
// Static SVG line charts from sweep CSV files.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qswitch {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(const std::string& name) const {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline CsvTable parse_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            t.header = split_csv_line(line);
            first = false;
        } else {
            t.rows.push_back(split_csv_line(line));
        }
    }
    return t;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return parse_csv(f);
}

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace detail

/// One polyline per requested column against phi; byte-identical output for identical input.
inline std::string render_svg(const CsvTable& table, const std::vector<std::string>& columns) {
    if (table.header.empty() || table.rows.empty()) {
        throw std::invalid_argument("plot: CSV has no data rows");
    }
    auto available = [&] {
        std::string s;
        for (std::size_t i = 0; i < table.header.size(); ++i) s += (i ? ", " : "") + table.header[i];
        return s;
    };
    const auto phi_col = table.column("phi");
    if (!phi_col) throw std::invalid_argument("plot: missing column 'phi'; available: " + available());
    if (columns.empty()) throw std::invalid_argument("plot: no columns requested");

    std::vector<std::size_t> cols;
    for (const auto& c : columns) {
        const auto idx = table.column(c);
        if (!idx) {
            throw std::invalid_argument("plot: missing column '" + c + "'; available: " + available());
        }
        cols.push_back(*idx);
    }

    auto value = [](const std::string& cell) -> std::optional<double> {
        if (cell.empty()) return std::nullopt;
        if (cell == "true") return 1.0;
        if (cell == "false") return 0.0;
        return std::stod(cell);
    };

    std::vector<double> xs;
    std::vector<std::vector<std::optional<double>>> ys(cols.size());
    for (const auto& row : table.rows) {
        if (row.size() <= *phi_col) continue;
        const auto x = value(row[*phi_col]);
        if (!x) continue;
        xs.push_back(*x);
        for (std::size_t k = 0; k < cols.size(); ++k)
            ys[k].push_back(cols[k] < row.size() ? value(row[cols[k]]) : std::nullopt);
    }
    if (xs.empty()) throw std::invalid_argument("plot: CSV has no data rows");

    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double ymin = 0.0, ymax = 0.0;
    bool any = false;
    for (const auto& series : ys)
        for (const auto& y : series)
            if (y) {
                ymin = any ? std::min(ymin, *y) : *y;
                ymax = any ? std::max(ymax, *y) : *y;
                any = true;
            }
    if (!any) throw std::invalid_argument("plot: requested columns hold no values");
    ymin = std::min(ymin, 0.0);
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

    constexpr double W = 640, H = 420, L = 60, R = 150, T = 20, B = 50;
    const double pw = W - L - R, ph = H - T - B;
    auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return T + ph - (y - ymin) / (ymax - ymin) * ph; };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    using detail::fmt;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
        << "\" viewBox=\"0 0 " << fmt(W) << ' ' << fmt(H) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << fmt(L) << "\" y1=\"" << fmt(T + ph) << "\" x2=\"" << fmt(L + pw)
        << "\" y2=\"" << fmt(T + ph) << "\"/>\n"
        << "<line x1=\"" << fmt(L) << "\" y1=\"" << fmt(T) << "\" x2=\"" << fmt(L) << "\" y2=\""
        << fmt(T + ph) << "\"/>\n</g>\n"
        << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        svg << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << fmt(T + ph + 16)
            << "\" text-anchor=\"middle\">" << detail::tick_label(xv) << "</text>\n"
            << "<text x=\"" << fmt(L - 6) << "\" y=\"" << fmt(sy(yv) + 4)
            << "\" text-anchor=\"end\">" << detail::tick_label(yv) << "</text>\n";
    }
    svg << "<text x=\"" << fmt(L + pw / 2) << "\" y=\"" << fmt(H - 12)
        << "\" text-anchor=\"middle\">phi (rad)</text>\n"
        << "<text x=\"14\" y=\"" << fmt(T + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << fmt(T + ph / 2) << ")\">value</text>\n</g>\n";

    for (std::size_t k = 0; k < cols.size(); ++k) {
        const char* color = palette[k % std::size(palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!ys[k][i]) continue;
            svg << (first ? "" : " ") << fmt(sx(xs[i])) << ',' << fmt(sy(*ys[k][i]));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = T + 14 + 18.0 * static_cast<double>(k);
        svg << "<line x1=\"" << fmt(L + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(L + pw + 36) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << fmt(L + pw + 42) << "\" y=\"" << fmt(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << columns[k] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qswitch
