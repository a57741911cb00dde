#include "funbialign/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "funbialign/errors.hpp"
#include "funbialign/io.hpp"

namespace funbialign::plot {
namespace {

constexpr double kWidth = 800.0;
constexpr double kPanelHeight = 240.0;
constexpr double kMargin = 40.0;

constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                                    "#e6ab02", "#a6761d", "#1f78b4", "#b2182b", "#4d4d4d"};

const char* colour(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

std::string header(double height) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(height) + "\">\n" +
           "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
           "\" fill=\"white\"/>\n";
}

std::string frame(double top, double height, const std::string& title) {
    const double x0 = kMargin, x1 = kWidth - kMargin;
    const double y0 = top + kMargin, y1 = top + height - kMargin;
    std::string s;
    s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y1) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y1) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + num(x0) + "\" y=\"" + num(top + kMargin * 0.6) +
         "\" font-family=\"sans-serif\" font-size=\"14\">" + escape(title) + "</text>\n";
    return s;
}

std::string polyline(std::span<const double> ys, double x_first, double x_step, const Range& yr, double top,
                     double height, std::size_t x_count, const char* stroke, double width) {
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = height - 2 * kMargin;
    const double dx = x_count > 1 ? plot_w / static_cast<double>(x_count - 1) : 0.0;
    std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
                    num(width) + "\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double x = kMargin + (x_first + x_step * static_cast<double>(i)) * dx;
        const double y = top + kMargin + plot_h * (1.0 - (ys[i] - yr.lo) / yr.span());
        if (i) s += ' ';
        s += num(x) + "," + num(y);
    }
    s += "\"/>\n";
    return s;
}

} // namespace

std::string motif_svg(const ReportedMotif& motif, const CurveSet& curves) {
    Range yr;
    std::size_t len = 0;
    std::vector<std::span<const double>> views;
    for (const auto& p : motif.portions) {
        const PortionRef ref{curves.index_of(p.curve_id), p.start, p.length};
        views.push_back(portion_values(ref, curves));
        for (double v : views.back()) yr.add(v);
        len = std::max(len, p.length);
    }
    std::string s = header(kPanelHeight);
    s += frame(0.0, kPanelHeight,
               "motif " + std::to_string(motif.final_rank) + " (" + std::to_string(views.size()) + " portions)");
    for (std::size_t k = 0; k < views.size(); ++k) {
        s += polyline(views[k], 0.0, 1.0, yr, 0.0, kPanelHeight, len, colour(k), 1.2);
    }
    s += "</svg>\n";
    return s;
}

std::string curves_svg(const CurveSet& curves, const std::vector<ReportedMotif>& motifs) {
    const double height = kPanelHeight * static_cast<double>(curves.size());
    std::string s = header(height);
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& curve = curves[c];
        const double top = kPanelHeight * static_cast<double>(c);
        const double plot_w = kWidth - 2 * kMargin;
        const double dx = plot_w / static_cast<double>(curve.size() - 1);
        Range yr;
        for (double v : curve.values()) yr.add(v);
        s += frame(top, kPanelHeight, curve.id());
        for (std::size_t m = 0; m < motifs.size(); ++m) {
            for (const auto& p : motifs[m].portions) {
                if (p.curve_id != curve.id()) continue;
                const double x = kMargin + static_cast<double>(p.start) * dx;
                const double w = static_cast<double>(p.length - 1) * dx;
                s += "<rect x=\"" + num(x) + "\" y=\"" + num(top + kMargin) + "\" width=\"" + num(w) +
                     "\" height=\"" + num(kPanelHeight - 2 * kMargin) + "\" fill=\"" + std::string(colour(m)) +
                     "\" fill-opacity=\"0.3\"/>\n";
            }
        }
        s += polyline(curve.values(), 0.0, 1.0, yr, top, kPanelHeight, curve.size(), "black", 0.8);
    }
    s += "</svg>\n";
    return s;
}

std::vector<std::filesystem::path> write_plots(const std::vector<ReportedMotif>& motifs,
                                               const CurveSet& curves,
                                               const std::filesystem::path& out_dir) {
    std::vector<std::filesystem::path> written;
    const auto curve_path = out_dir / "curves.svg";
    io::atomic_write(curve_path, curves_svg(curves, motifs));
    written.push_back(curve_path);
    for (const auto& m : motifs) {
        char name[32];
        std::snprintf(name, sizeof name, "motif_%03zu.svg", m.final_rank);
        const auto path = out_dir / name;
        io::atomic_write(path, motif_svg(m, curves));
        written.push_back(path);
    }
    return written;
}

} // namespace funbialign::plot
