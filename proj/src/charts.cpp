#include "agentmetrics/charts.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "agentmetrics/csv.hpp"
#include "agentmetrics/error.hpp"

namespace agentmetrics::report {

namespace {

struct Grid {
    std::vector<AgentId> agents;
    std::vector<DomainId> domains;
    std::map<std::pair<AgentId, DomainId>, const MetricCell*> cells;
    std::map<AgentId, const OverallRow*> overall;

    const MetricCell& cell(const AgentId& a, const DomainId& d) const { return *cells.at({a, d}); }
    const OverallRow& row(const AgentId& a) const { return *overall.at(a); }
};

Grid build_grid(std::span<const MetricCell> cells, std::span<const OverallRow> overall) {
    if (cells.empty()) fail(ErrorKind::IncompleteGrid, "no metric cells to chart");
    Grid g;
    std::set<AgentId> agents;
    std::set<DomainId> domains;
    for (const auto& c : cells) {
        agents.insert(c.agent);
        domains.insert(c.domain);
        g.cells[{c.agent, c.domain}] = &c;
    }
    g.agents.assign(agents.begin(), agents.end());
    g.domains.assign(domains.begin(), domains.end());
    for (const auto& a : g.agents) {
        for (const auto& d : g.domains) {
            if (!g.cells.contains({a, d})) {
                fail(ErrorKind::IncompleteGrid, "no cell for " + a.str() + " x " + d.str());
            }
        }
    }
    for (const auto& r : overall) g.overall[r.agent] = &r;
    for (const auto& a : g.agents) {
        if (!g.overall.contains(a)) fail(ErrorKind::IncompleteGrid, "no overall row for " + a.str());
    }
    return g;
}

std::vector<std::string> agent_names(const Grid& g) {
    std::vector<std::string> out;
    for (const auto& a : g.agents) out.push_back(display_name(a));
    return out;
}

std::vector<std::string> domain_names(const Grid& g) {
    std::vector<std::string> out;
    for (const auto& d : g.domains) out.push_back(display_name(d));
    return out;
}

ChartData radar(const Grid& g) {
    struct Axis {
        const char* name;
        std::optional<double> (*get)(const OverallRow&);
        bool lower_is_better;
    };
    static const Axis axes[] = {
        {"GCR", [](const OverallRow& r) -> std::optional<double> { return r.gcr; }, false},
        {"AIx", [](const OverallRow& r) -> std::optional<double> { return r.aix; }, false},
        {"DTT", [](const OverallRow& r) -> std::optional<double> { return r.dtt_mean; }, true},
        {"CES", [](const OverallRow& r) { return r.ces; }, true},
        {"MTR", [](const OverallRow& r) { return r.mtr; }, false},
        {"TDI", [](const OverallRow& r) { return r.tdi_norm; }, false},
        {"OAS", [](const OverallRow& r) { return r.oas; }, false},
        {"CRS", [](const OverallRow& r) { return r.crs; }, false},
        {"CQI", [](const OverallRow& r) { return r.cqi; }, false},
    };

    ChartData c;
    c.kind = ChartKind::Radar;
    c.title = "Normalized overall performance";
    c.x_label = "Metric";
    c.y_label = "Normalized score";
    c.units = "0 = worst agent, 1 = best agent";
    for (const auto& a : g.agents) c.series.push_back({display_name(a), {}});

    for (const auto& axis : axes) {
        std::vector<double> v;
        for (const auto& a : g.agents) {
            const auto x = axis.get(g.row(a));
            if (!x) break;
            v.push_back(*x);
        }
        if (v.size() != g.agents.size()) continue;
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        const double min = *lo;
        const double span = *hi - *lo;
        c.categories.emplace_back(axis.name);
        for (std::size_t i = 0; i < v.size(); ++i) {
            double n = 1.0;
            if (span > 0.0) n = axis.lower_is_better ? (*hi - v[i]) / span : (v[i] - min) / span;
            c.series[i].values.push_back(n);
        }
    }
    return c;
}

// One series per agent over the domain categories.
ChartData by_domain(const Grid& g, std::optional<double> (*get)(const MetricCell&)) {
    ChartData c;
    c.categories = domain_names(g);
    for (const auto& a : g.agents) {
        ChartSeries s{display_name(a), {}};
        for (const auto& d : g.domains) s.values.push_back(get(g.cell(a, d)));
        c.series.push_back(std::move(s));
    }
    return c;
}

ChartData adaptability_lines(const Grid& g, std::span<const AdaptabilityCell> cells) {
    std::map<std::pair<AgentId, DomainId>, const AdaptabilityCell*> index;
    for (const auto& c : cells) index[{c.agent, c.domain}] = &c;
    ChartData c;
    c.kind = ChartKind::AdaptabilityLines;
    c.title = "Zero-shot vs few-shot GCR";
    c.x_label = "Setting";
    c.y_label = "Mean GCR across domains";
    c.units = "%";
    c.categories = {"Zero-shot", "Few-shot"};
    for (const auto& a : g.agents) {
        double zero = 0.0;
        double few = 0.0;
        for (const auto& d : g.domains) {
            const auto it = index.find({a, d});
            if (it == index.end()) fail(ErrorKind::IncompleteGrid, "no adaptability cell for " + a.str() + " x " + d.str());
            zero += it->second->gcr_zero_shot;
            few += it->second->gcr_few_shot;
        }
        const double n = static_cast<double>(g.domains.size());
        c.series.push_back({display_name(a), {100.0 * zero / n, 100.0 * few / n}});
    }
    return c;
}

// One series over the agent categories.
ChartSeries per_agent(const Grid& g, std::string name, std::optional<double> (*get)(const OverallRow&)) {
    ChartSeries s{std::move(name), {}};
    for (const auto& a : g.agents) s.values.push_back(get(g.row(a)));
    return s;
}

}  // namespace

std::string_view to_string(ChartKind kind) {
    switch (kind) {
        case ChartKind::Radar: return "chart_radar";
        case ChartKind::GcrHeatmap: return "chart_gcr_heatmap";
        case ChartKind::AixDttScatter: return "chart_aix_dtt_scatter";
        case ChartKind::CesBars: return "chart_ces_bars";
        case ChartKind::ResilienceBars: return "chart_resilience_bars";
        case ChartKind::AdaptabilityLines: return "chart_adaptability_lines";
        case ChartKind::BieBars: return "chart_bie_bars";
        case ChartKind::RoiBars: return "chart_roi_bars";
    }
    return "chart";
}

const std::array<ChartKind, 8>& all_chart_kinds() {
    static const std::array<ChartKind, 8> kinds = {
        ChartKind::Radar,   ChartKind::GcrHeatmap,        ChartKind::AixDttScatter, ChartKind::CesBars,
        ChartKind::ResilienceBars, ChartKind::AdaptabilityLines, ChartKind::BieBars,   ChartKind::RoiBars,
    };
    return kinds;
}

ChartData chart_data(ChartKind kind, std::span<const MetricCell> cells, std::span<const OverallRow> overall,
                     std::span<const AdaptabilityCell> adaptability) {
    const Grid g = build_grid(cells, overall);
    ChartData c;
    switch (kind) {
        case ChartKind::Radar:
            return radar(g);
        case ChartKind::GcrHeatmap:
            c = by_domain(g, [](const MetricCell& m) -> std::optional<double> { return m.gcr; });
            c.title = "Goal completion rate by agent and domain";
            c.x_label = "Domain";
            c.y_label = "Agent";
            c.units = "%";
            break;
        case ChartKind::AixDttScatter:
            c.title = "Autonomy vs turnaround time";
            c.x_label = "AIx";
            c.y_label = "DTT (s)";
            c.units = "AIx ratio; seconds";
            c.categories = {"AIx", "DTT"};
            for (const auto& a : g.agents) c.series.push_back({display_name(a), {g.row(a).aix, g.row(a).dtt_mean}});
            break;
        case ChartKind::CesBars:
            c.title = "Cognitive efficiency (lower is better)";
            c.x_label = "Agent";
            c.y_label = "CES";
            c.units = "tokens per successful task";
            c.categories = agent_names(g);
            c.series.push_back(per_agent(g, "CES", [](const OverallRow& r) { return r.ces; }));
            break;
        case ChartKind::ResilienceBars:
            c.title = "Multi-step resilience and chain robustness";
            c.x_label = "Agent";
            c.y_label = "Rate";
            c.units = "%";
            c.categories = agent_names(g);
            c.series.push_back(per_agent(g, "MTR", [](const OverallRow& r) { return r.mtr; }));
            c.series.push_back(per_agent(g, "CRS", [](const OverallRow& r) { return r.crs; }));
            break;
        case ChartKind::AdaptabilityLines:
            return adaptability_lines(g, adaptability);
        case ChartKind::BieBars:
            c = by_domain(g, [](const MetricCell& m) { return m.bie; });
            c.title = "Business impact efficiency by domain";
            c.x_label = "Domain";
            c.y_label = "BIE";
            c.units = "KPI dollars per operational dollar";
            break;
        case ChartKind::RoiBars:
            c.title = "Return on investment";
            c.x_label = "Agent";
            c.y_label = "ROI";
            c.units = "%";
            c.categories = agent_names(g);
            c.series.push_back(per_agent(g, "ROI", [](const OverallRow& r) { return r.roi; }));
            break;
    }
    c.kind = kind;
    return c;
}

void write_chart_csv(std::ostream& out, const ChartData& chart) {
    std::vector<std::string> header = {"series"};
    header.insert(header.end(), chart.categories.begin(), chart.categories.end());
    csv::write_row(out, header);
    for (const auto& s : chart.series) {
        std::vector<std::string> row = {s.name};
        for (const auto& v : s.values) row.push_back(v ? csv::format_exact(*v) : std::string());
        csv::write_row(out, row);
    }
}

}  // namespace agentmetrics::report
