#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agentmetrics/money.hpp"

namespace agentmetrics {

/// Open enumeration backed by a label. Known labels sort in their canonical
/// order; unknown labels sort after them, lexicographically.
template <class Tag>
class Label {
public:
    Label() = default;
    explicit Label(std::string value) : value_(std::move(value)) {}

    const std::string& str() const { return value_; }
    bool empty() const { return value_.empty(); }

    bool operator==(const Label&) const = default;
    std::strong_ordering operator<=>(const Label& other) const {
        const int a = Tag::rank(value_);
        const int b = Tag::rank(other.value_);
        if (a != b) return a <=> b;
        return value_.compare(other.value_) <=> 0;
    }

private:
    std::string value_;
};

struct AgentTag {
    static int rank(std::string_view label);
};
struct DomainTag {
    static int rank(std::string_view label);
};

using AgentId = Label<AgentTag>;
using DomainId = Label<DomainTag>;

namespace agents {
inline const AgentId ReAct{"ReAct"};
inline const AgentId CoT{"CoT"};
inline const AgentId ToolAugmented{"ToolAugmented"};
inline const AgentId Hybrid{"Hybrid"};
}  // namespace agents

namespace domains {
inline const DomainId Healthcare{"Healthcare"};
inline const DomainId Finance{"Finance"};
inline const DomainId Marketing{"Marketing"};
inline const DomainId Legal{"Legal"};
inline const DomainId CustomerService{"CustomerService"};
}  // namespace domains

/// Accepts canonical labels and common display spellings ("Tool-Aug.",
/// "Customer Service"); anything else becomes a new label verbatim.
AgentId parse_agent(std::string_view text);
DomainId parse_domain(std::string_view text);
std::string display_name(const AgentId& agent);
std::string display_name(const DomainId& domain);

// ---------------------------------------------------------------------------
// Task-level observables

enum class ToolOutcome { OptimalUse, Misuse, IgnoredBetterTool, NoToolNeeded };

/// Rubric score: +1 optimal, -1 misuse, -0.5 ignored better tool, 0 no tool needed.
double tool_score(ToolOutcome outcome);
char tool_outcome_code(ToolOutcome outcome);
std::optional<ToolOutcome> parse_tool_outcome_code(char code);

struct ToolEvent {
    ToolOutcome outcome = ToolOutcome::NoToolNeeded;

    double score() const { return tool_score(outcome); }
    bool operator==(const ToolEvent&) const = default;
};

struct RaterScores {
    int correctness = 1;
    int completeness = 1;
    int relevance = 1;
    int presentation = 1;

    bool operator==(const RaterScores&) const = default;
};

/// Three independent raters, four rubric dimensions each, integers 1..10.
struct RaterPanel {
    std::array<RaterScores, 3> raters{};
    bool operator==(const RaterPanel&) const = default;
};

/// Five collaboration dimensions on a 1..5 Likert scale.
struct CollabScores {
    int communication_clarity = 1;
    int responsiveness = 1;
    int contextual_awareness = 1;
    int helpful_suggestions = 1;
    int overall_satisfaction = 1;

    std::array<int, 5> values() const {
        return {communication_clarity, responsiveness, contextual_awareness, helpful_suggestions,
                overall_satisfaction};
    }
    bool operator==(const CollabScores&) const = default;
};

enum class ErrorType { AmbiguousInput, IntermediateStepFailure, ToolApiError, ContextLoss };
enum class ComplexityLevel { L1, L2, L3 };

std::string_view to_string(ErrorType type);
std::optional<ErrorType> parse_error_type(std::string_view text);
std::string_view to_string(ComplexityLevel level);
std::optional<ComplexityLevel> parse_complexity_level(std::string_view text);

/// Chain complexity band for a chain length; absent below three steps.
std::optional<ComplexityLevel> level_for_chain(std::int64_t chain_len);

struct ChainOutcome {
    bool is_multistep = false;
    bool had_initial_error = false;
    std::optional<ErrorType> error_type;
    bool self_recovered = false;
    std::int64_t chain_len = 0;
    std::optional<ComplexityLevel> complexity_level;
    bool chain_success = false;

    bool operator==(const ChainOutcome&) const = default;
};

struct Interventions {
    std::int64_t clarification = 0;
    std::int64_t error_correction = 0;
    std::int64_t approval_gate = 0;

    std::int64_t total() const { return clarification + error_correction + approval_gate; }
    bool operator==(const Interventions&) const = default;
};

struct TaskRecord {
    std::string task_id;
    AgentId agent;
    DomainId domain;
    bool success = false;
    std::int64_t total_steps = 1;
    Interventions interventions;
    double t_start = 0.0;
    double t_end = 0.0;
    double human_wait = 0.0;
    std::int64_t tokens = 0;
    std::int64_t api_calls = 0;
    std::vector<ToolEvent> tool_events;
    std::optional<RaterPanel> rater_scores;
    std::optional<CollabScores> collab_scores;
    ChainOutcome chain;
    double kpi_contribution = 0.0;

    bool operator==(const TaskRecord&) const = default;
};

struct Violation {
    std::string field;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

/// Checks every record invariant; one entry per violated rule. Never throws.
std::vector<Violation> validate(const TaskRecord& record);

// ---------------------------------------------------------------------------
// Generation-time parameters

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
    bool operator==(const MeanStd&) const = default;
};

/// Per-agent baseline distributions in metric-native units: gcr, aix, mtr and
/// crs are proportions, tdi is the raw [-1, 1] score, dtt is seconds, ces is
/// resource units per success, oas is 1..10, cqi is 1..5, ad is a proportion.
struct AgentProfile {
    MeanStd gcr, aix, dtt, ces, mtr, tdi, oas, crs, cqi, ad;

    std::vector<std::string> problems() const;
    bool operator==(const AgentProfile&) const = default;
};

/// Additive offsets for bounded metrics, multiplicative factors for dtt/ces.
struct DomainModifiers {
    double gcr = 0.0;
    double aix = 0.0;
    double dtt = 1.0;
    double ces = 1.0;
    double mtr = 0.0;
    double tdi = 0.0;
    double oas = 0.0;
    double crs = 0.0;
    double cqi = 0.0;
    double ad = 0.0;

    bool operator==(const DomainModifiers&) const = default;
};

enum class KpiUnit { Dollars, PercentagePoints, Hours };
std::string_view to_string(KpiUnit unit);
std::optional<KpiUnit> parse_kpi_unit(std::string_view text);

struct DomainConfig {
    std::int64_t task_count = 0;
    DomainModifiers modifiers;
    KpiUnit kpi_unit = KpiUnit::Dollars;
    /// Dollars per KPI unit.
    Money kpi_conversion = Money::parse("1");
    /// Mean KPI units contributed by one successful task (profile mode).
    double kpi_per_success = 0.0;

    std::vector<std::string> problems() const;
    bool operator==(const DomainConfig&) const = default;
};

struct CostModel {
    Money token_price = Money::parse("0.00002");
    Money api_call_price = Money::parse("0.01");
    Money intervention_price = Money::parse("5");
    /// Tokens charged per tool/API call when computing resource usage.
    double token_equivalent = 1000.0;

    std::vector<std::string> problems() const;
    bool operator==(const CostModel&) const = default;
};

struct ComplexityWeights {
    double simple = 1.0;   // 1-5 steps
    double medium = 1.5;   // 6-15 steps
    double complex = 2.0;  // 16+ steps

    double weight_for(std::int64_t steps) const;
    std::vector<std::string> problems() const;
    bool operator==(const ComplexityWeights&) const = default;
};

// ---------------------------------------------------------------------------
// Aggregates

/// All metrics for one agent x domain slice. Optional fields are absent when
/// the metric is undefined for the slice (e.g. no tool opportunities).
struct MetricCell {
    AgentId agent;
    DomainId domain;
    std::int64_t n_tasks = 0;
    std::int64_t n_success = 0;

    double gcr = 0.0;           // percent
    double aix = 0.0;           // mean per-task autonomy
    double aix_weighted = 0.0;  // complexity weighted
    double dtt_mean = 0.0;
    double dtt_median = 0.0;
    double dtt_p95 = 0.0;
    std::optional<double> dtt_efficiency;
    std::optional<double> ces;
    std::optional<double> ces_efficiency;
    std::optional<double> mtr;  // percent
    std::optional<double> tdi_raw;
    std::optional<double> tdi_norm;
    std::optional<double> oas;
    std::optional<double> oas_weighted;
    std::optional<double> crs;  // percent
    std::optional<double> cqi;
    double kpi_value = 0.0;  // native KPI units
    Money kpi_monetary;
    Money op_cost;
    std::optional<double> bie;
    std::optional<double> roi;  // percent

    bool operator==(const MetricCell&) const = default;
};

/// Task-count weighted roll-up of one agent's cells.
struct OverallRow {
    AgentId agent;
    std::int64_t n_tasks = 0;
    double gcr = 0.0;
    double aix = 0.0;
    double aix_weighted = 0.0;
    double dtt_mean = 0.0;
    double dtt_median = 0.0;
    double dtt_p95 = 0.0;
    std::optional<double> ces;
    std::optional<double> mtr;
    std::optional<double> tdi_raw;
    std::optional<double> tdi_norm;
    std::optional<double> oas;
    std::optional<double> oas_weighted;
    std::optional<double> crs;
    std::optional<double> cqi;
    double kpi_monetary = 0.0;  // dollars, per-cell weighted mean
    double op_cost = 0.0;       // dollars, per-cell weighted mean
    std::optional<double> bie;
    std::optional<double> roi;

    bool operator==(const OverallRow&) const = default;
};

struct AdaptabilityCell {
    AgentId agent;
    DomainId domain;
    double gcr_zero_shot = 0.0;  // proportion
    double gcr_few_shot = 0.0;   // proportion
    double ad = 0.0;
    std::optional<double> ar;  // percent; absent when zero-shot GCR is 0

    bool operator==(const AdaptabilityCell&) const = default;
};

}  // namespace agentmetrics
