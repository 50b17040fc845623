#include "agentmetrics/report.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "agentmetrics/error.hpp"
#include "agentmetrics/metrics.hpp"

namespace agentmetrics::report {

namespace {

std::string cell_label(const AgentId& a, const DomainId& d) { return a.str() + "/" + d.str(); }

// Mean of per-rater unweighted rubric means over all rated tasks.
std::optional<double> cell_oas(std::span<const TaskRecord> records) {
    std::vector<double> scores;
    for (const auto& r : records) {
        if (!r.rater_scores) continue;
        for (const auto& rater : r.rater_scores->raters) {
            scores.push_back((rater.correctness + rater.completeness + rater.relevance + rater.presentation) / 4.0);
        }
    }
    if (scores.empty()) return std::nullopt;
    return metrics::oas(scores);
}

std::optional<double> cell_oas_weighted(std::span<const TaskRecord> records) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : records) {
        if (!r.rater_scores) continue;
        sum += metrics::oas_weighted(*r.rater_scores);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

std::optional<double> cell_cqi(std::span<const TaskRecord> records) {
    std::vector<CollabScores> sessions;
    for (const auto& r : records) {
        if (r.collab_scores) sessions.push_back(*r.collab_scores);
    }
    if (sessions.empty()) return std::nullopt;
    return metrics::cqi(sessions);
}

template <class F>
auto or_absent(F&& f) -> std::optional<decltype(f())> {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::EmptySlice || e.kind() == ErrorKind::NoSuccesses) return std::nullopt;
        throw;
    }
}

// Weighted mean, clamped to the observed range so rounding never lets the
// roll-up escape the per-domain bounds.
struct Weighted {
    double num = 0.0;
    double den = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double w, double v) {
        num += w * v;
        den += w;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void add(double w, const std::optional<double>& v) {
        if (v) add(w, *v);
    }
    double value() const { return den > 0.0 ? std::clamp(num / den, lo, hi) : 0.0; }
    std::optional<double> optional() const {
        if (den > 0.0) return value();
        return std::nullopt;
    }
};

}  // namespace

MetricCell aggregate_cell(std::span<const TaskRecord> records, const DomainConfig& domain,
                          const EvalOptions& options) {
    if (records.empty()) fail(ErrorKind::EmptySlice, "cannot aggregate an empty cell");
    MetricCell c;
    c.agent = records.front().agent;
    c.domain = records.front().domain;
    try {
        for (const auto& r : records) {
            if (r.agent != c.agent || r.domain != c.domain) {
                fail(ErrorKind::InvalidInput, "records belong to more than one cell");
            }
        }
        c.n_tasks = static_cast<std::int64_t>(records.size());
        c.n_success = std::count_if(records.begin(), records.end(), [](const TaskRecord& r) { return r.success; });
        c.gcr = metrics::gcr(records);
        c.aix = metrics::aix_mean(records);
        c.aix_weighted = metrics::aix_weighted(records, options.weights);
        const auto dtt = metrics::dtt_summary(records, options.baseline_dtt);
        c.dtt_mean = dtt.mean;
        c.dtt_median = dtt.median;
        c.dtt_p95 = dtt.p95;
        c.dtt_efficiency = dtt.efficiency;
        c.ces = or_absent([&] { return metrics::ces(records, options.cost); });
        if (c.ces && options.baseline_ces && *c.ces > 0.0) {
            c.ces_efficiency = metrics::efficiency_ratio(*options.baseline_ces, *c.ces);
        }
        c.mtr = or_absent([&] { return metrics::mtr(records); });
        c.tdi_raw = metrics::tdi(records);
        if (c.tdi_raw) c.tdi_norm = metrics::tdi_normalize(*c.tdi_raw);
        c.oas = cell_oas(records);
        c.oas_weighted = cell_oas_weighted(records);
        c.crs = or_absent([&] { return metrics::crs(records); });
        c.cqi = cell_cqi(records);
        for (const auto& r : records) c.kpi_value += r.kpi_contribution;
        c.kpi_monetary = metrics::kpi_to_monetary(domain, c.kpi_value);
        c.op_cost = metrics::operational_cost(records, options.cost);
        if (c.op_cost > Money{}) {
            c.bie = metrics::bie(c.kpi_monetary, c.op_cost);
            c.roi = metrics::roi(c.kpi_monetary, c.op_cost);
        }
    } catch (const Error& e) {
        throw Error(e.kind(), "cell " + cell_label(c.agent, c.domain) + ": " + e.what());
    }
    return c;
}

DomainConfig fallback_domain(std::int64_t observed_tasks) {
    DomainConfig d;
    d.task_count = std::max<std::int64_t>(1, observed_tasks);
    d.kpi_unit = KpiUnit::Dollars;
    d.kpi_conversion = Money::parse("1");
    return d;
}

std::vector<MetricCell> aggregate_grid(std::span<const TaskRecord> records,
                                       std::span<const std::pair<DomainId, DomainConfig>> domains,
                                       const EvalOptions& options) {
    std::map<std::pair<AgentId, DomainId>, std::vector<TaskRecord>> groups;
    for (const auto& r : records) groups[{r.agent, r.domain}].push_back(r);
    std::vector<MetricCell> out;
    out.reserve(groups.size());
    for (const auto& [key, recs] : groups) {
        const auto it = std::find_if(domains.begin(), domains.end(),
                                     [&](const auto& d) { return d.first == key.second; });
        const DomainConfig cfg =
            it != domains.end() ? it->second : fallback_domain(static_cast<std::int64_t>(recs.size()));
        out.push_back(aggregate_cell(recs, cfg, options));
    }
    return out;
}

OverallRow aggregate_overall(std::span<const MetricCell> cells, const DomainCounts& counts) {
    if (cells.empty()) fail(ErrorKind::IncompleteGrid, "no cells to aggregate");
    OverallRow o;
    o.agent = cells.front().agent;
    for (const auto& c : cells) {
        if (c.agent != o.agent) fail(ErrorKind::InvalidInput, "cells belong to more than one agent");
    }
    std::vector<std::pair<const MetricCell*, double>> used;
    for (const auto& [domain, count] : counts) {
        const auto it = std::find_if(cells.begin(), cells.end(), [&](const MetricCell& c) { return c.domain == domain; });
        if (it == cells.end()) {
            fail(ErrorKind::IncompleteGrid, "agent " + o.agent.str() + " has no cell for domain " + domain.str());
        }
        if (count <= 0) fail(ErrorKind::InvalidInput, "domain " + domain.str() + " has a non-positive task count");
        used.emplace_back(&*it, static_cast<double>(count));
    }
    if (used.empty()) fail(ErrorKind::IncompleteGrid, "no domains to aggregate over");

    const bool by_success = std::all_of(used.begin(), used.end(), [](const auto& u) { return u.first->n_success > 0; });
    Weighted gcr, aix, aixw, dmean, dmed, dp95, ces, mtr, tdi_raw, tdi_norm, oas, oasw, crs, cqi, kpi, cost, bie, roi;
    for (const auto& [c, w] : used) {
        o.n_tasks += c->n_tasks;
        gcr.add(w, c->gcr);
        aix.add(w, c->aix);
        aixw.add(w, c->aix_weighted);
        dmean.add(w, c->dtt_mean);
        dmed.add(w, c->dtt_median);
        dp95.add(w, c->dtt_p95);
        ces.add(by_success ? static_cast<double>(c->n_success) : w, c->ces);
        mtr.add(w, c->mtr);
        tdi_raw.add(w, c->tdi_raw);
        tdi_norm.add(w, c->tdi_norm);
        oas.add(w, c->oas);
        oasw.add(w, c->oas_weighted);
        crs.add(w, c->crs);
        cqi.add(w, c->cqi);
        kpi.add(w, c->kpi_monetary.dollars());
        cost.add(w, c->op_cost.dollars());
        bie.add(w, c->bie);
        roi.add(w, c->roi);
    }
    o.gcr = gcr.value();
    o.aix = aix.value();
    o.aix_weighted = aixw.value();
    o.dtt_mean = dmean.value();
    o.dtt_median = dmed.value();
    o.dtt_p95 = dp95.value();
    o.ces = ces.optional();
    o.mtr = mtr.optional();
    o.tdi_raw = tdi_raw.optional();
    o.tdi_norm = tdi_norm.optional();
    o.oas = oas.optional();
    o.oas_weighted = oasw.optional();
    o.crs = crs.optional();
    o.cqi = cqi.optional();
    o.kpi_monetary = kpi.value();
    o.op_cost = cost.value();
    o.bie = bie.optional();
    o.roi = roi.optional();
    return o;
}

DomainCounts counts_from_cells(std::span<const MetricCell> cells) {
    std::map<DomainId, std::int64_t> counts;
    for (const auto& c : cells) counts.emplace(c.domain, c.n_tasks);
    return DomainCounts(counts.begin(), counts.end());
}

std::vector<OverallRow> aggregate_all(std::span<const MetricCell> cells) {
    std::set<DomainId> domains;
    std::map<AgentId, std::vector<MetricCell>> by_agent;
    for (const auto& c : cells) {
        domains.insert(c.domain);
        by_agent[c.agent].push_back(c);
    }
    std::vector<OverallRow> out;
    for (const auto& [agent, agent_cells] : by_agent) {
        DomainCounts counts;
        for (const auto& d : domains) {
            const auto it = std::find_if(agent_cells.begin(), agent_cells.end(),
                                         [&](const MetricCell& c) { return c.domain == d; });
            if (it == agent_cells.end()) {
                fail(ErrorKind::IncompleteGrid, "agent " + agent.str() + " has no cell for domain " + d.str());
            }
            counts.emplace_back(d, it->n_tasks);
        }
        out.push_back(aggregate_overall(agent_cells, counts));
    }
    return out;
}

}  // namespace agentmetrics::report
