#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "agentmetrics/model.hpp"

// Aggregation of task records into per-cell and per-agent metric rows.
namespace agentmetrics::report {

struct EvalOptions {
    CostModel cost;
    ComplexityWeights weights;
    std::optional<double> baseline_dtt;
    std::optional<double> baseline_ces;
};

/// Every metric for one agent x domain record set. Metrics that are
/// undefined for the set (no tool opportunities, no successes, no rated
/// tasks) stay absent. EmptySlice on no records; other metric errors are
/// rethrown with the cell named.
MetricCell aggregate_cell(std::span<const TaskRecord> records, const DomainConfig& domain,
                          const EvalOptions& options);

/// Domain settings used when evaluating a record whose domain the caller
/// does not configure: dollars at 1:1 and the observed task count.
DomainConfig fallback_domain(std::int64_t observed_tasks);

/// One cell per (agent, domain) pair present in the records, sorted by
/// agent then domain. Domains missing from `domains` use fallback_domain.
std::vector<MetricCell> aggregate_grid(std::span<const TaskRecord> records,
                                       std::span<const std::pair<DomainId, DomainConfig>> domains,
                                       const EvalOptions& options);

using DomainCounts = std::vector<std::pair<DomainId, std::int64_t>>;

/// Weighted roll-up of one agent's cells: sum(count_d * value_d) / sum(count_d)
/// for every metric, except CES which is weighted by each cell's success
/// count when every cell has one. Optional metrics are averaged over the
/// cells where present. IncompleteGrid when a domain in `counts` has no
/// cell; InvalidInput when cells belong to different agents.
OverallRow aggregate_overall(std::span<const MetricCell> cells, const DomainCounts& counts);

/// Task counts taken from the cells themselves, in canonical domain order.
DomainCounts counts_from_cells(std::span<const MetricCell> cells);

/// Overall rows for every agent in the grid, each over the full domain set
/// of the grid (IncompleteGrid when an agent misses a domain).
std::vector<OverallRow> aggregate_all(std::span<const MetricCell> cells);

}  // namespace agentmetrics::report
