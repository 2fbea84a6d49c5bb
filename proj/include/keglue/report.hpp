#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "keglue/params.hpp"

namespace keglue {

/// Deterministic CSV writer: fixed "%.12g" formatting, atomic tmp+rename so a
/// partially written file is never observed.
struct CsvWriter {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    explicit CsvWriter(std::vector<std::string> cols) : columns(std::move(cols)) {}

    void add_row(const std::vector<double>& row) {
        if (row.size() != columns.size())
            throw DegenerateDataError("CsvWriter: row width does not match header");
        rows.push_back(row);
    }

    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

    std::string serialize() const {
        std::string out;
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += columns[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += format(row[i]);
            }
            out += '\n';
        }
        return out;
    }

    void write(const std::string& path) const {
        namespace fs = std::filesystem;
        const fs::path target(path);
        if (target.has_parent_path()) fs::create_directories(target.parent_path());
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw DegenerateDataError("CsvWriter: cannot open " + tmp.string());
            out << serialize();
        }
        fs::rename(tmp, target);
    }
};

/// Minimal native SVG log-log scatter+line plot with a reference slope line.
struct SvgPlot {
    std::string title, xlabel, ylabel;
    struct Series {
        std::string name, color;
        std::vector<double> x, y;
    };
    std::vector<Series> series;
    int width = 640, height = 480;

    void add_series(const std::string& name, const std::string& color,
                    const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() != y.size() || x.empty())
            throw DegenerateDataError("SvgPlot: inconsistent series");
        series.push_back({name, color, x, y});
    }

    std::string render_loglog() const {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& s : series)
            for (size_t i = 0; i < s.x.size(); ++i) {
                if (s.x[i] <= 0.0 || s.y[i] <= 0.0)
                    throw DegenerateDataError("SvgPlot: log plot needs positive data");
                xmin = std::min(xmin, std::log10(s.x[i]));
                xmax = std::max(xmax, std::log10(s.x[i]));
                ymin = std::min(ymin, std::log10(s.y[i]));
                ymax = std::max(ymax, std::log10(s.y[i]));
            }
        if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
        if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
        const double ml = 70, mr = 20, mt = 40, mb = 50;
        const double pw = width - ml - mr, ph = height - mt - mb;
        auto X = [&](double x) { return ml + pw * (std::log10(x) - xmin) / (xmax - xmin); };
        auto Y = [&](double y) { return mt + ph * (ymax - std::log10(y)) / (ymax - ymin); };
        std::string svg;
        char buf[256];
        svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
               std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
        svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">%s</text>\n",
                      ml + pw / 2, title.c_str());
        svg += buf;
        // frame
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
                      "stroke=\"black\"/>\n", ml, mt, pw, ph);
        svg += buf;
        // decade grid lines and tick labels
        for (int d = int(std::ceil(xmin)); d <= int(std::floor(xmax)); ++d) {
            const double px = ml + pw * (d - xmin) / (xmax - xmin);
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#ddd\"/>\n"
                          "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"middle\">"
                          "1e%d</text>\n",
                          px, mt, px, mt + ph, px, mt + ph + 16, d);
            svg += buf;
        }
        for (int d = int(std::ceil(ymin)); d <= int(std::floor(ymax)); ++d) {
            const double py = mt + ph * (ymax - d) / (ymax - ymin);
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#ddd\"/>\n"
                          "<text x=\"%g\" y=\"%g\" font-size=\"11\" text-anchor=\"end\">"
                          "1e%d</text>\n",
                          ml, py, ml + pw, py, ml - 6, py + 4, d);
            svg += buf;
        }
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-size=\"13\" text-anchor=\"middle\">%s</text>\n",
                      ml + pw / 2, double(height) - 10, xlabel.c_str());
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"16\" y=\"%g\" font-size=\"13\" text-anchor=\"middle\" "
                      "transform=\"rotate(-90 16 %g)\">%s</text>\n",
                      mt + ph / 2, mt + ph / 2, ylabel.c_str());
        svg += buf;
        int legend_y = int(mt) + 14;
        for (const auto& s : series) {
            std::string pts;
            for (size_t i = 0; i < s.x.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", i ? " " : "", X(s.x[i]),
                              Y(s.y[i]));
                pts += buf;
            }
            std::snprintf(buf, sizeof buf,
                          "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" "
                          "stroke-width=\"1.5\"/>\n", pts.c_str(), s.color.c_str());
            svg += buf;
            for (size_t i = 0; i < s.x.size(); ++i) {
                std::snprintf(buf, sizeof buf,
                              "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"3\" fill=\"%s\"/>\n",
                              X(s.x[i]), Y(s.y[i]), s.color.c_str());
                svg += buf;
            }
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%g\" y=\"%d\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                          ml + pw - 150, legend_y, s.color.c_str(), s.name.c_str());
            svg += buf;
            legend_y += 16;
        }
        svg += "</svg>\n";
        return svg;
    }

    void write(const std::string& path) const {
        namespace fs = std::filesystem;
        const fs::path target(path);
        if (target.has_parent_path()) fs::create_directories(target.parent_path());
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw DegenerateDataError("SvgPlot: cannot open " + tmp.string());
            out << render_loglog();
        }
        fs::rename(tmp, target);
    }
};

inline void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DegenerateDataError("write_text_atomic: cannot open " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

}  // namespace keglue
