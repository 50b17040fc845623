#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agentmetrics/model.hpp"
#include "agentmetrics/stats.hpp"

// Statistics report comparing agents. Two sample units are supported:
// per-cell metric values (one observation per agent x domain) and per-task
// observations (one per record).
namespace agentmetrics::analysis {

enum class Grouping { Cells, Tasks };
std::string_view to_string(Grouping g);

struct EffectComparison {
    std::string group_a;
    std::string group_b;
    stats::EffectSize effect;
};

struct ProportionInterval {
    std::string label;
    std::int64_t successes = 0;
    std::int64_t n = 0;
    stats::WilsonInterval interval;
};

struct StatReport {
    Grouping grouping = Grouping::Cells;
    std::string metric;  // the compared outcome
    std::vector<stats::Sample> groups;
    stats::AnovaTable anova;
    std::vector<stats::TukeyPair> tukey;
    std::vector<EffectComparison> effects;  // every agent pair, input order
    stats::CorrelationMatrix correlations;
    std::vector<ProportionInterval> gcr_intervals;
};

/// GCR compared across agents using each agent's domain cells as samples;
/// correlations across cells over GCR, AIx, DTT, CES, MTR, TDI, OAS, CRS and
/// CQI (metrics absent in any cell are dropped). InvalidInput with fewer
/// than two agents.
StatReport analyze_cells(std::span<const MetricCell> cells, double alpha = 0.05);

/// Task success (0/100) compared across agents using tasks as samples;
/// correlations across tasks over success, AIx, DTT, resources and steps.
StatReport analyze_tasks(std::span<const TaskRecord> records, const CostModel& cost, double alpha = 0.05);

}  // namespace agentmetrics::analysis
