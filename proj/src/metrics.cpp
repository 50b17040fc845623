#include "agentmetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "agentmetrics/error.hpp"

namespace agentmetrics::metrics {

namespace {

void require_nonempty(std::size_t n, const char* what) {
    if (n == 0) fail(ErrorKind::EmptySlice, std::string(what) + " over an empty slice");
}

bool in_closed(double v, double lo, double hi) { return v >= lo && v <= hi; }

}  // namespace

double gcr(std::span<const TaskRecord> records) {
    require_nonempty(records.size(), "gcr");
    const auto wins = std::count_if(records.begin(), records.end(), [](const TaskRecord& r) { return r.success; });
    return 100.0 * static_cast<double>(wins) / static_cast<double>(records.size());
}

double aix(std::int64_t total_steps, std::int64_t interventions) {
    if (total_steps < 1) fail(ErrorKind::InvalidInput, "aix needs at least one step");
    if (interventions < 0) fail(ErrorKind::InvalidInput, "negative intervention count");
    if (interventions > total_steps) {
        fail(ErrorKind::InvalidInput, "interventions (" + std::to_string(interventions) + ") exceed steps (" +
                                          std::to_string(total_steps) + ")");
    }
    return 1.0 - static_cast<double>(interventions) / static_cast<double>(total_steps);
}

double aix(const TaskRecord& record) { return aix(record.total_steps, record.interventions.total()); }

double aix_mean(std::span<const TaskRecord> records) {
    require_nonempty(records.size(), "aix");
    double sum = 0.0;
    for (const auto& r : records) sum += aix(r);
    return sum / static_cast<double>(records.size());
}

double aix_weighted(std::span<const TaskRecord> records, const ComplexityWeights& weights) {
    require_nonempty(records.size(), "aix_weighted");
    double num = 0.0;
    double den = 0.0;
    for (const auto& r : records) {
        const double w = weights.weight_for(r.total_steps);
        num += w * aix(r);
        den += w;
    }
    return num / den;
}

double dtt(const TaskRecord& record) {
    const double value = (record.t_end - record.t_start) - record.human_wait;
    if (!(value >= 0.0)) {
        fail(ErrorKind::InvalidInput, "task " + record.task_id + ": negative decision turnaround time");
    }
    return value;
}

DttSummary dtt_summary(std::span<const TaskRecord> records, std::optional<double> baseline_dtt) {
    require_nonempty(records.size(), "dtt_summary");
    std::vector<double> values;
    values.reserve(records.size());
    double sum = 0.0;
    for (const auto& r : records) {
        values.push_back(dtt(r));
        sum += values.back();
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    DttSummary s;
    s.mean = sum / static_cast<double>(n);
    s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    // Nearest rank, computed in integers so 0.95 * n never lands a hair above
    // an integer through rounding.
    const std::size_t rank = std::max<std::size_t>(1, (95 * n + 99) / 100);
    s.p95 = values[rank - 1];
    if (baseline_dtt) s.efficiency = efficiency_ratio(*baseline_dtt, s.median);
    return s;
}

double ces(std::span<const TaskRecord> records, const CostModel& cost) {
    double resources = 0.0;
    std::int64_t successes = 0;
    for (const auto& r : records) {
        if (!r.success) continue;
        ++successes;
        resources += static_cast<double>(r.tokens) + static_cast<double>(r.api_calls) * cost.token_equivalent;
    }
    if (successes == 0) fail(ErrorKind::NoSuccesses, "ces undefined without successful tasks");
    return resources / static_cast<double>(successes);
}

double efficiency_ratio(double baseline, double value) {
    if (!(baseline > 0.0)) fail(ErrorKind::InvalidInput, "baseline must be positive");
    if (!(value > 0.0)) fail(ErrorKind::InvalidInput, "efficiency needs a positive measured value");
    return baseline / value;
}

double tdi(std::span<const ToolEvent> events) {
    require_nonempty(events.size(), "tdi");
    double sum = 0.0;
    for (const auto& e : events) sum += e.score();
    return sum / static_cast<double>(events.size());
}

std::optional<double> tdi(std::span<const TaskRecord> records) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : records) {
        for (const auto& e : r.tool_events) sum += e.score();
        n += r.tool_events.size();
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

double tdi_normalize(double raw) {
    if (!in_closed(raw, -1.0, 1.0)) fail(ErrorKind::InvalidInput, "raw tdi must lie in [-1, 1]");
    return (raw + 1.0) / 2.0;
}

double oas(std::span<const double> scores) {
    require_nonempty(scores.size(), "oas");
    double sum = 0.0;
    for (double s : scores) {
        if (!in_closed(s, 1.0, 10.0)) fail(ErrorKind::InvalidInput, "evaluator score outside [1, 10]");
        sum += s;
    }
    return sum / static_cast<double>(scores.size());
}

double rater_weighted_score(const RaterScores& s) {
    for (int v : {s.correctness, s.completeness, s.relevance, s.presentation}) {
        if (v < 1 || v > 10) fail(ErrorKind::InvalidInput, "rater score outside [1, 10]");
    }
    return 0.4 * s.correctness + 0.3 * s.completeness + 0.2 * s.relevance + 0.1 * s.presentation;
}

double oas_weighted(const RaterPanel& panel) {
    double sum = 0.0;
    for (const auto& r : panel.raters) sum += rater_weighted_score(r);
    return sum / static_cast<double>(panel.raters.size());
}

double cqi(std::span<const CollabScores> sessions) {
    require_nonempty(sessions.size(), "cqi");
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& s : sessions) {
        for (int v : s.values()) {
            if (v < 1 || v > 5) fail(ErrorKind::InvalidInput, "collaboration score outside [1, 5]");
            sum += v;
            ++n;
        }
    }
    return sum / static_cast<double>(n);
}

bool is_resilient(const TaskRecord& r) {
    return r.chain.is_multistep && r.chain.had_initial_error && r.chain.self_recovered && r.success;
}

double mtr(std::span<const TaskRecord> records) {
    std::int64_t multistep = 0;
    std::int64_t resilient = 0;
    for (const auto& r : records) {
        if (!r.chain.is_multistep) continue;
        ++multistep;
        if (is_resilient(r)) ++resilient;
    }
    if (multistep == 0) fail(ErrorKind::EmptySlice, "mtr needs at least one multi-step task");
    return 100.0 * static_cast<double>(resilient) / static_cast<double>(multistep);
}

double crs(std::span<const TaskRecord> records, std::int64_t min_steps) {
    std::int64_t chains = 0;
    std::int64_t good = 0;
    for (const auto& r : records) {
        if (r.chain.chain_len < min_steps) continue;
        ++chains;
        if (r.chain.chain_success) ++good;
    }
    if (chains == 0) {
        fail(ErrorKind::EmptySlice, "crs needs a chain of at least " + std::to_string(min_steps) + " steps");
    }
    return 100.0 * static_cast<double>(good) / static_cast<double>(chains);
}

double adaptability_delta(double zero_shot_gcr, double few_shot_gcr) {
    if (!in_closed(zero_shot_gcr, 0.0, 1.0) || !in_closed(few_shot_gcr, 0.0, 1.0)) {
        fail(ErrorKind::InvalidInput, "zero-shot and few-shot GCR must be proportions in [0, 1]");
    }
    return few_shot_gcr - zero_shot_gcr;
}

Adaptability adaptability(double zero_shot_gcr, double few_shot_gcr) {
    Adaptability a;
    a.ad = adaptability_delta(zero_shot_gcr, few_shot_gcr);
    if (zero_shot_gcr == 0.0) fail(ErrorKind::DegenerateBaseline, "adaptation rate undefined for zero-shot GCR of 0");
    a.ar = 100.0 * a.ad / zero_shot_gcr;
    return a;
}

Money operational_cost(std::span<const TaskRecord> records, const CostModel& cost) {
    std::int64_t tokens = 0;
    std::int64_t calls = 0;
    std::int64_t interventions = 0;
    for (const auto& r : records) {
        tokens += r.tokens;
        calls += r.api_calls;
        interventions += r.interventions.total();
    }
    return cost.token_price.times(tokens) + cost.api_call_price.times(calls) +
           cost.intervention_price.times(interventions);
}

Money kpi_to_monetary(const DomainConfig& domain, double kpi_value) {
    if (!(kpi_value >= 0.0) || !std::isfinite(kpi_value)) fail(ErrorKind::InvalidInput, "KPI value must be >= 0");
    return domain.kpi_conversion.scaled(kpi_value);
}

namespace {

void require_cost(Money op_cost) {
    if (op_cost == Money{}) fail(ErrorKind::DivideByZero, "operational cost is zero");
    if (op_cost < Money{}) fail(ErrorKind::InvalidInput, "operational cost is negative");
}

}  // namespace

double bie(Money kpi_monetary, Money op_cost) {
    require_cost(op_cost);
    return static_cast<double>(kpi_monetary.nanos()) / static_cast<double>(op_cost.nanos());
}

double roi(Money kpi_monetary, Money op_cost) {
    require_cost(op_cost);
    const Money gain = kpi_monetary - op_cost;
    return 100.0 * static_cast<double>(gain.nanos()) / static_cast<double>(op_cost.nanos());
}

}  // namespace agentmetrics::metrics
