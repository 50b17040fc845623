#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "agentmetrics/model.hpp"

// Outcome metrics over task records. Every function is pure; failures throw
// agentmetrics::Error with the kind noted on each declaration.
namespace agentmetrics::metrics {

/// Goal completion rate, percent of records with success. EmptySlice.
double gcr(std::span<const TaskRecord> records);

/// 1 - interventions / total_steps. InvalidInput when steps < 1,
/// interventions < 0, or interventions > steps.
double aix(std::int64_t total_steps, std::int64_t interventions);
double aix(const TaskRecord& record);

/// Unweighted mean of per-task autonomy. EmptySlice.
double aix_mean(std::span<const TaskRecord> records);

/// Sum of w(task) * aix(task) over sum of w(task), with w from the task's
/// step-count band. EmptySlice.
double aix_weighted(std::span<const TaskRecord> records, const ComplexityWeights& weights);

/// (t_end - t_start) - human_wait in seconds. InvalidInput when negative.
double dtt(const TaskRecord& record);

struct DttSummary {
    double mean = 0.0;
    double median = 0.0;
    double p95 = 0.0;  // nearest rank: ceil(0.95 n)-th order statistic
    std::optional<double> efficiency;  // baseline / median, when a baseline is given
};

/// EmptySlice on no records; InvalidInput on a non-positive baseline.
DttSummary dtt_summary(std::span<const TaskRecord> records, std::optional<double> baseline_dtt = std::nullopt);

/// Resource units per success: sum over successful records of
/// tokens + api_calls * token_equivalent, divided by the success count.
/// Failed records contribute nothing. NoSuccesses when none succeeded.
double ces(std::span<const TaskRecord> records, const CostModel& cost);

/// baseline / value for lower-is-better quantities (DTT, CES).
/// InvalidInput when either side is not positive.
double efficiency_ratio(double baseline, double value);

/// Mean rubric score over tool events, in [-1, 1]. EmptySlice.
double tdi(std::span<const ToolEvent> events);
/// Pooled TDI over every event of every record; nullopt when no record had
/// a tool opportunity.
std::optional<double> tdi(std::span<const TaskRecord> records);
/// (raw + 1) / 2. InvalidInput outside [-1, 1].
double tdi_normalize(double raw);

/// Mean evaluator score. EmptySlice; InvalidInput for scores outside [1, 10].
double oas(std::span<const double> scores);
/// One rater: 0.4 correctness + 0.3 completeness + 0.2 relevance + 0.1 presentation.
double rater_weighted_score(const RaterScores& scores);
/// Mean of the three raters' weighted scores. InvalidInput for out-of-range scores.
double oas_weighted(const RaterPanel& panel);

/// Mean over all dimension scores of all sessions. EmptySlice; InvalidInput
/// for scores outside [1, 5].
double cqi(std::span<const CollabScores> sessions);

/// Percent of multi-step records that had an initial error, self-recovered
/// and succeeded. EmptySlice when no record is multi-step.
double mtr(std::span<const TaskRecord> records);
bool is_resilient(const TaskRecord& record);

/// Percent of chains with chain_len >= min_steps that succeeded. EmptySlice
/// when no chain qualifies.
double crs(std::span<const TaskRecord> records, std::int64_t min_steps = 3);

struct Adaptability {
    double ad = 0.0;  // few - zero, proportion
    double ar = 0.0;  // percent of the zero-shot baseline
};

/// InvalidInput unless both proportions lie in [0, 1].
double adaptability_delta(double zero_shot_gcr, double few_shot_gcr);
/// Also DegenerateBaseline when zero_shot_gcr is 0.
Adaptability adaptability(double zero_shot_gcr, double few_shot_gcr);

/// Token, API-call and human-oversight cost over all records.
Money operational_cost(std::span<const TaskRecord> records, const CostModel& cost);

/// kpi_value * domain.kpi_conversion. InvalidInput for a negative KPI.
Money kpi_to_monetary(const DomainConfig& domain, double kpi_value);

/// kpi_monetary / op_cost. DivideByZero when op_cost is 0; InvalidInput when negative.
double bie(Money kpi_monetary, Money op_cost);
/// 100 * (kpi_monetary - op_cost) / op_cost. Same errors as bie.
double roi(Money kpi_monetary, Money op_cost);

}  // namespace agentmetrics::metrics
