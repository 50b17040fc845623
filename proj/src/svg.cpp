#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "agentmetrics/charts.hpp"
#include "agentmetrics/csv.hpp"

namespace agentmetrics::report {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 560.0;  // legend sits to the right of this
constexpr double kTop = 60.0;
constexpr double kBottom = 380.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

const char* colour(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string num(double v) { return csv::format_fixed(v, 2); }

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

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range value_range(const ChartData& c, bool include_zero) {
    double lo = include_zero ? 0.0 : INFINITY;
    double hi = include_zero ? 0.0 : -INFINITY;
    for (const auto& s : c.series) {
        for (const auto& v : s.values) {
            if (!v) continue;
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
    }
    if (!std::isfinite(lo)) return {};
    if (hi == lo) {
        hi = lo + 1.0;
    } else if (!include_zero) {
        const double pad = 0.08 * (hi - lo);
        lo -= pad;
        hi += pad;
    } else {
        if (hi > 0.0) hi += 0.05 * (hi - lo);
        if (lo < 0.0) lo -= 0.05 * (hi - lo);
    }
    return {lo, hi};
}

class Canvas {
public:
    explicit Canvas(const ChartData& c) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
             << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\">\n";
        out_ << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
             << "\" fill=\"white\"/>\n";
        text(kWidth / 2, 28, c.title, 16, "middle");
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0) {
        out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
             << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill) {
        out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
             << "\" fill=\"" << fill << "\"/>\n";
    }

    void circle(double x, double y, double r, const std::string& fill) {
        out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
             << "\"/>\n";
    }

    void poly(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, bool closed) {
        out_ << '<' << (closed ? "polygon" : "polyline") << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out_ << ' ';
            out_ << num(pts[i].first) << ',' << num(pts[i].second);
        }
        out_ << "\" fill=\"" << (closed ? stroke : "none") << "\" fill-opacity=\"" << (closed ? "0.15" : "1")
             << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size = 11, const char* anchor = "start") {
        out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size << "\" text-anchor=\""
             << anchor << "\">" << escape(s) << "</text>\n";
    }

    void legend(const std::vector<ChartSeries>& series) {
        double y = kTop + 10;
        for (std::size_t i = 0; i < series.size(); ++i) {
            rect(kRight + 30, y - 9, 12, 12, colour(i));
            text(kRight + 48, y + 1, series[i].name);
            y += 20;
        }
    }

    void y_axis(const Range& r, const std::string& label) {
        line(kLeft, kTop, kLeft, kBottom, "#333");
        for (int i = 0; i <= 5; ++i) {
            const double v = r.lo + (r.hi - r.lo) * i / 5.0;
            const double y = r.map(v, kBottom, kTop);
            line(kLeft - 4, y, kLeft, y, "#333");
            line(kLeft, y, kRight, y, "#eee");
            text(kLeft - 6, y + 4, num(v), 10, "end");
        }
        out_ << "<text x=\"20\" y=\"" << num((kTop + kBottom) / 2) << "\" font-size=\"12\" text-anchor=\"middle\""
             << " transform=\"rotate(-90 20 " << num((kTop + kBottom) / 2) << ")\">" << escape(label) << "</text>\n";
    }

    void x_label(const std::string& label) { text((kLeft + kRight) / 2, kHeight - 20, label, 12, "middle"); }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    std::ostringstream out_;
};

std::string axis_title(const ChartData& c) {
    return c.units.empty() ? c.y_label : c.y_label + " (" + c.units + ")";
}

void draw_radar(Canvas& cv, const ChartData& c) {
    const double cx = (kLeft + kRight) / 2;
    const double cy = (kTop + kBottom) / 2 + 10;
    const double radius = (kBottom - kTop) / 2 - 10;
    const std::size_t n = c.categories.size();
    auto point = [&](std::size_t i, double v) {
        const double angle = -std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        return std::pair{cx + radius * v * std::cos(angle), cy + radius * v * std::sin(angle)};
    };
    for (double ring : {0.25, 0.5, 0.75, 1.0}) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back(point(i, ring));
        if (!pts.empty()) pts.push_back(pts.front());
        cv.poly(pts, "#ccc", false);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, y] = point(i, 1.0);
        cv.line(cx, cy, x, y, "#ccc");
        const auto [lx, ly] = point(i, 1.12);
        cv.text(lx, ly + 4, c.categories[i], 11, "middle");
    }
    for (std::size_t s = 0; s < c.series.size(); ++s) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back(point(i, c.series[s].values[i].value_or(0.0)));
        cv.poly(pts, colour(s), true);
    }
}

std::string heat_colour(double t) {
    // White to deep blue.
    const auto channel = [&](double from, double to) { return static_cast<int>(std::lround(from + (to - from) * t)); };
    std::ostringstream s;
    s << "rgb(" << channel(247, 8) << ',' << channel(251, 48) << ',' << channel(255, 107) << ')';
    return s.str();
}

void draw_heatmap(Canvas& cv, const ChartData& c) {
    const Range r = value_range(c, false);
    const double w = (kRight - kLeft) / static_cast<double>(std::max<std::size_t>(1, c.categories.size()));
    const double h = (kBottom - kTop) / static_cast<double>(std::max<std::size_t>(1, c.series.size()));
    for (std::size_t s = 0; s < c.series.size(); ++s) {
        const double y = kTop + h * static_cast<double>(s);
        cv.text(kLeft - 6, y + h / 2 + 4, c.series[s].name, 11, "end");
        for (std::size_t i = 0; i < c.categories.size(); ++i) {
            const double x = kLeft + w * static_cast<double>(i);
            const auto& v = c.series[s].values[i];
            const double t = v ? std::clamp((*v - r.lo) / (r.hi - r.lo), 0.0, 1.0) : 0.0;
            cv.rect(x, y, w - 2, h - 2, v ? heat_colour(t) : "#ddd");
            if (v) cv.text(x + w / 2, y + h / 2 + 4, num(*v), 12, "middle");
        }
    }
    for (std::size_t i = 0; i < c.categories.size(); ++i) {
        cv.text(kLeft + w * (static_cast<double>(i) + 0.5), kBottom + 18, c.categories[i], 11, "middle");
    }
    cv.x_label(c.x_label + " (values in " + c.units + ")");
}

void draw_scatter(Canvas& cv, const ChartData& c) {
    Range xr{INFINITY, -INFINITY};
    Range yr{INFINITY, -INFINITY};
    for (const auto& s : c.series) {
        if (s.values.size() < 2 || !s.values[0] || !s.values[1]) continue;
        xr.lo = std::min(xr.lo, *s.values[0]);
        xr.hi = std::max(xr.hi, *s.values[0]);
        yr.lo = std::min(yr.lo, *s.values[1]);
        yr.hi = std::max(yr.hi, *s.values[1]);
    }
    for (Range* r : {&xr, &yr}) {
        if (!std::isfinite(r->lo)) *r = {};
        const double pad = r->hi > r->lo ? 0.1 * (r->hi - r->lo) : 0.5 * std::max(1e-3, std::abs(r->lo));
        r->lo -= pad;
        r->hi += pad;
    }
    cv.y_axis(yr, c.y_label);
    cv.line(kLeft, kBottom, kRight, kBottom, "#333");
    for (int i = 0; i <= 5; ++i) {
        const double v = xr.lo + (xr.hi - xr.lo) * i / 5.0;
        const double x = xr.map(v, kLeft, kRight);
        cv.line(x, kBottom, x, kBottom + 4, "#333");
        cv.text(x, kBottom + 16, csv::format_fixed(v, 3), 10, "middle");
    }
    for (std::size_t s = 0; s < c.series.size(); ++s) {
        const auto& v = c.series[s].values;
        if (v.size() < 2 || !v[0] || !v[1]) continue;
        const double x = xr.map(*v[0], kLeft, kRight);
        const double y = yr.map(*v[1], kBottom, kTop);
        cv.circle(x, y, 6, colour(s));
        cv.text(x + 9, y - 6, c.series[s].name, 10);
    }
    cv.x_label(c.x_label);
}

void draw_bars(Canvas& cv, const ChartData& c) {
    const Range r = value_range(c, true);
    cv.y_axis(r, axis_title(c));
    const double zero = r.map(0.0, kBottom, kTop);
    cv.line(kLeft, zero, kRight, zero, "#333");
    const double group = (kRight - kLeft) / static_cast<double>(std::max<std::size_t>(1, c.categories.size()));
    const double bar = group * 0.8 / static_cast<double>(std::max<std::size_t>(1, c.series.size()));
    for (std::size_t i = 0; i < c.categories.size(); ++i) {
        const double x0 = kLeft + group * static_cast<double>(i) + group * 0.1;
        for (std::size_t s = 0; s < c.series.size(); ++s) {
            const auto& v = c.series[s].values[i];
            if (!v) continue;
            const double y = r.map(*v, kBottom, kTop);
            cv.rect(x0 + bar * static_cast<double>(s), std::min(y, zero), bar - 1, std::abs(zero - y), colour(s));
        }
        cv.text(kLeft + group * (static_cast<double>(i) + 0.5), kBottom + 16, c.categories[i], 11, "middle");
    }
    cv.x_label(c.x_label);
}

void draw_lines(Canvas& cv, const ChartData& c) {
    const Range r = value_range(c, false);
    cv.y_axis(r, axis_title(c));
    cv.line(kLeft, kBottom, kRight, kBottom, "#333");
    const std::size_t n = c.categories.size();
    auto x_at = [&](std::size_t i) {
        return n < 2 ? (kLeft + kRight) / 2 : kLeft + 40 + (kRight - kLeft - 80) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    for (std::size_t i = 0; i < n; ++i) cv.text(x_at(i), kBottom + 16, c.categories[i], 11, "middle");
    for (std::size_t s = 0; s < c.series.size(); ++s) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = c.series[s].values[i];
            if (!v) continue;
            pts.emplace_back(x_at(i), r.map(*v, kBottom, kTop));
            cv.circle(pts.back().first, pts.back().second, 3.5, colour(s));
        }
        cv.poly(pts, colour(s), false);
    }
    cv.x_label(c.x_label);
}

}  // namespace

std::string render_svg(const ChartData& chart) {
    Canvas cv(chart);
    switch (chart.kind) {
        case ChartKind::Radar: draw_radar(cv, chart); break;
        case ChartKind::GcrHeatmap: draw_heatmap(cv, chart); return cv.finish();
        case ChartKind::AixDttScatter: draw_scatter(cv, chart); return cv.finish();
        case ChartKind::AdaptabilityLines: draw_lines(cv, chart); break;
        case ChartKind::CesBars:
        case ChartKind::ResilienceBars:
        case ChartKind::BieBars:
        case ChartKind::RoiBars: draw_bars(cv, chart); break;
    }
    cv.legend(chart.series);
    return cv.finish();
}

}  // namespace agentmetrics::report
