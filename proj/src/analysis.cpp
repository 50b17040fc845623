#include "agentmetrics/analysis.hpp"

#include <algorithm>
#include <map>

#include "agentmetrics/error.hpp"
#include "agentmetrics/metrics.hpp"

namespace agentmetrics::analysis {

namespace {

void fill_comparisons(StatReport& r, double alpha) {
    if (r.groups.size() < 2) fail(ErrorKind::InvalidInput, "analysis needs at least two agents");
    r.anova = stats::one_way_anova(std::span<const stats::Sample>(r.groups));
    r.tukey = stats::tukey_hsd(r.groups, alpha);
    for (std::size_t i = 0; i < r.groups.size(); ++i) {
        for (std::size_t j = i + 1; j < r.groups.size(); ++j) {
            EffectComparison e;
            e.group_a = r.groups[i].label;
            e.group_b = r.groups[j].label;
            try {
                e.effect = stats::cohens_d(r.groups[i].values, r.groups[j].values);
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::DegenerateData) throw;
                continue;  // no spread in either sample: effect size undefined
            }
            r.effects.push_back(e);
        }
    }
}

// Keeps only the columns whose variance is positive so one constant metric
// does not void the whole matrix.
stats::CorrelationMatrix correlate(std::vector<stats::Column> columns) {
    std::erase_if(columns, [](const stats::Column& c) {
        if (c.values.size() < 3) return true;
        const auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
        return *lo == *hi;
    });
    if (columns.size() < 2) return {};
    return stats::pearson_matrix(columns);
}

}  // namespace

std::string_view to_string(Grouping g) { return g == Grouping::Cells ? "cells" : "tasks"; }

StatReport analyze_cells(std::span<const MetricCell> cells, double alpha) {
    StatReport r;
    r.grouping = Grouping::Cells;
    r.metric = "gcr";
    std::map<AgentId, std::vector<const MetricCell*>> by_agent;
    for (const auto& c : cells) by_agent[c.agent].push_back(&c);
    for (const auto& [agent, list] : by_agent) {
        stats::Sample s{agent.str(), {}};
        std::int64_t successes = 0;
        std::int64_t n = 0;
        for (const auto* c : list) {
            s.values.push_back(c->gcr);
            successes += c->n_success;
            n += c->n_tasks;
        }
        r.groups.push_back(std::move(s));
        if (n > 0) r.gcr_intervals.push_back({agent.str(), successes, n, stats::wilson_interval(successes, n)});
    }
    fill_comparisons(r, alpha);

    std::vector<stats::Column> cols = {{"gcr", {}}, {"aix", {}}, {"dtt", {}}, {"ces", {}}, {"mtr", {}},
                                       {"tdi", {}}, {"oas", {}}, {"crs", {}}, {"cqi", {}}};
    std::vector<bool> complete(cols.size(), true);
    for (const auto& c : cells) {
        const std::optional<double> v[] = {c.gcr, c.aix, c.dtt_mean, c.ces, c.mtr, c.tdi_norm, c.oas, c.crs, c.cqi};
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (v[k]) {
                cols[k].values.push_back(*v[k]);
            } else {
                complete[k] = false;
            }
        }
    }
    std::vector<stats::Column> kept;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (complete[k]) kept.push_back(std::move(cols[k]));
    }
    r.correlations = correlate(std::move(kept));
    return r;
}

StatReport analyze_tasks(std::span<const TaskRecord> records, const CostModel& cost, double alpha) {
    StatReport r;
    r.grouping = Grouping::Tasks;
    r.metric = "success";
    std::map<AgentId, stats::Sample> by_agent;
    for (const auto& t : records) {
        auto& s = by_agent[t.agent];
        s.label = t.agent.str();
        s.values.push_back(t.success ? 100.0 : 0.0);
    }
    for (auto& [agent, s] : by_agent) {
        const auto successes =
            static_cast<std::int64_t>(std::count(s.values.begin(), s.values.end(), 100.0));
        const auto n = static_cast<std::int64_t>(s.values.size());
        r.gcr_intervals.push_back({s.label, successes, n, stats::wilson_interval(successes, n)});
        r.groups.push_back(std::move(s));
    }
    fill_comparisons(r, alpha);

    std::vector<stats::Column> cols = {{"success", {}}, {"aix", {}}, {"dtt", {}}, {"resources", {}}, {"steps", {}}};
    for (const auto& t : records) {
        cols[0].values.push_back(t.success ? 1.0 : 0.0);
        cols[1].values.push_back(metrics::aix(t));
        cols[2].values.push_back(metrics::dtt(t));
        cols[3].values.push_back(static_cast<double>(t.tokens) + static_cast<double>(t.api_calls) * cost.token_equivalent);
        cols[4].values.push_back(static_cast<double>(t.total_steps));
    }
    r.correlations = correlate(std::move(cols));
    return r;
}

}  // namespace agentmetrics::analysis
