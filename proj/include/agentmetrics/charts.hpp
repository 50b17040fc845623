#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agentmetrics/model.hpp"

// Chart datasets derived from evaluation results, plus a small SVG renderer.
namespace agentmetrics::report {

enum class ChartKind { Radar, GcrHeatmap, AixDttScatter, CesBars, ResilienceBars, AdaptabilityLines, BieBars, RoiBars };

std::string_view to_string(ChartKind kind);  // file stem, e.g. "chart_radar"
const std::array<ChartKind, 8>& all_chart_kinds();

struct ChartSeries {
    std::string name;
    std::vector<std::optional<double>> values;  // one per category

    bool operator==(const ChartSeries&) const = default;
};

/// A matrix of series x categories with labels. For the scatter kind the
/// categories are the two coordinates and each series is one point.
struct ChartData {
    ChartKind kind = ChartKind::Radar;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string units;
    std::vector<std::string> categories;
    std::vector<ChartSeries> series;

    bool operator==(const ChartData&) const = default;
};

/// Radar: per-metric min-max over agents, DTT and CES inverted so that 1 is
/// best; a metric on which all agents tie maps to 1. Metrics absent for any
/// agent are left out. IncompleteGrid unless `cells` covers every agent x
/// domain pair and `overall` has a row for each agent; the adaptability
/// chart also needs a cell per agent x domain in `adaptability`.
ChartData chart_data(ChartKind kind, std::span<const MetricCell> cells, std::span<const OverallRow> overall,
                     std::span<const AdaptabilityCell> adaptability = {});

/// Header "series,<categories...>", then one row per series; absent values
/// are empty fields.
void write_chart_csv(std::ostream& out, const ChartData& chart);

/// Standalone SVG document. Deterministic: coordinates use two decimals.
std::string render_svg(const ChartData& chart);

}  // namespace agentmetrics::report
