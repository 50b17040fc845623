#include "agentmetrics/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace agentmetrics {

namespace {

std::string normalized(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string trimmed(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return std::string(text);
}

constexpr std::array<std::string_view, 4> kAgentOrder = {"ReAct", "CoT", "ToolAugmented", "Hybrid"};
constexpr std::array<std::string_view, 5> kDomainOrder = {"Healthcare", "Finance", "Marketing", "Legal",
                                                          "CustomerService"};

template <std::size_t N>
int rank_in(const std::array<std::string_view, N>& order, std::string_view label) {
    const auto it = std::find(order.begin(), order.end(), label);
    return it == order.end() ? static_cast<int>(N) : static_cast<int>(it - order.begin());
}

bool in_range(int v, int lo, int hi) { return v >= lo && v <= hi; }

}  // namespace

int AgentTag::rank(std::string_view label) { return rank_in(kAgentOrder, label); }
int DomainTag::rank(std::string_view label) { return rank_in(kDomainOrder, label); }

AgentId parse_agent(std::string_view text) {
    const std::string key = normalized(text);
    if (key == "react" || key == "reactagent") return agents::ReAct;
    if (key == "cot" || key == "cotagent" || key == "chainofthought") return agents::CoT;
    if (key == "toolaugmented" || key == "toolaug" || key == "toolaugagent" || key == "toolaugmentedagent") {
        return agents::ToolAugmented;
    }
    if (key == "hybrid" || key == "hybridagent") return agents::Hybrid;
    return AgentId(trimmed(text));
}

DomainId parse_domain(std::string_view text) {
    const std::string key = normalized(text);
    if (key == "healthcare") return domains::Healthcare;
    if (key == "finance") return domains::Finance;
    if (key == "marketing") return domains::Marketing;
    if (key == "legal") return domains::Legal;
    if (key == "customerservice") return domains::CustomerService;
    return DomainId(trimmed(text));
}

std::string display_name(const AgentId& agent) {
    if (agent == agents::ToolAugmented) return "Tool-Aug.";
    return agent.str();
}

std::string display_name(const DomainId& domain) {
    if (domain == domains::CustomerService) return "Customer Service";
    return domain.str();
}

double tool_score(ToolOutcome outcome) {
    switch (outcome) {
        case ToolOutcome::OptimalUse: return 1.0;
        case ToolOutcome::Misuse: return -1.0;
        case ToolOutcome::IgnoredBetterTool: return -0.5;
        case ToolOutcome::NoToolNeeded: return 0.0;
    }
    return 0.0;
}

char tool_outcome_code(ToolOutcome outcome) {
    switch (outcome) {
        case ToolOutcome::OptimalUse: return 'O';
        case ToolOutcome::Misuse: return 'M';
        case ToolOutcome::IgnoredBetterTool: return 'I';
        case ToolOutcome::NoToolNeeded: return 'N';
    }
    return 'N';
}

std::optional<ToolOutcome> parse_tool_outcome_code(char code) {
    switch (code) {
        case 'O': return ToolOutcome::OptimalUse;
        case 'M': return ToolOutcome::Misuse;
        case 'I': return ToolOutcome::IgnoredBetterTool;
        case 'N': return ToolOutcome::NoToolNeeded;
        default: return std::nullopt;
    }
}

std::string_view to_string(ErrorType type) {
    switch (type) {
        case ErrorType::AmbiguousInput: return "ambiguous_input";
        case ErrorType::IntermediateStepFailure: return "intermediate_step_failure";
        case ErrorType::ToolApiError: return "tool_api_error";
        case ErrorType::ContextLoss: return "context_loss";
    }
    return "";
}

std::optional<ErrorType> parse_error_type(std::string_view text) {
    for (auto t : {ErrorType::AmbiguousInput, ErrorType::IntermediateStepFailure, ErrorType::ToolApiError,
                   ErrorType::ContextLoss}) {
        if (text == to_string(t)) return t;
    }
    return std::nullopt;
}

std::string_view to_string(ComplexityLevel level) {
    switch (level) {
        case ComplexityLevel::L1: return "L1";
        case ComplexityLevel::L2: return "L2";
        case ComplexityLevel::L3: return "L3";
    }
    return "";
}

std::optional<ComplexityLevel> parse_complexity_level(std::string_view text) {
    if (text == "L1") return ComplexityLevel::L1;
    if (text == "L2") return ComplexityLevel::L2;
    if (text == "L3") return ComplexityLevel::L3;
    return std::nullopt;
}

std::optional<ComplexityLevel> level_for_chain(std::int64_t chain_len) {
    if (chain_len < 3) return std::nullopt;
    if (chain_len <= 5) return ComplexityLevel::L1;
    if (chain_len <= 10) return ComplexityLevel::L2;
    return ComplexityLevel::L3;
}

std::string_view to_string(KpiUnit unit) {
    switch (unit) {
        case KpiUnit::Dollars: return "dollars";
        case KpiUnit::PercentagePoints: return "percentage_points";
        case KpiUnit::Hours: return "hours";
    }
    return "";
}

std::optional<KpiUnit> parse_kpi_unit(std::string_view text) {
    for (auto u : {KpiUnit::Dollars, KpiUnit::PercentagePoints, KpiUnit::Hours}) {
        if (text == to_string(u)) return u;
    }
    return std::nullopt;
}

std::vector<Violation> validate(const TaskRecord& r) {
    std::vector<Violation> out;
    auto flag = [&out](std::string field, std::string rule) { out.push_back({std::move(field), std::move(rule)}); };

    if (r.task_id.empty()) flag("task_id", "non-empty identifier");
    if (r.agent.empty()) flag("agent", "non-empty label");
    if (r.domain.empty()) flag("domain", "non-empty label");
    if (r.total_steps < 1) flag("total_steps", "at least one step");

    const auto& iv = r.interventions;
    if (iv.clarification < 0 || iv.error_correction < 0 || iv.approval_gate < 0) {
        flag("interventions", "non-negative counts");
    } else if (r.total_steps >= 1 && iv.total() > r.total_steps) {
        flag("interventions", "intervention bound");
    }

    const bool finite_times = std::isfinite(r.t_start) && std::isfinite(r.t_end) && std::isfinite(r.human_wait);
    if (!finite_times) {
        flag("t_start/t_end/human_wait", "finite values");
    } else {
        if (r.t_end < r.t_start) flag("t_end", "timestamps");
        if (r.human_wait < 0.0) {
            flag("human_wait", "non-negative wait");
        } else if (r.t_end >= r.t_start && r.human_wait > r.t_end - r.t_start) {
            flag("human_wait", "wait within elapsed time");
        }
    }

    if (r.tokens < 0) flag("tokens", "non-negative count");
    if (r.api_calls < 0) flag("api_calls", "non-negative count");

    if (r.rater_scores) {
        for (std::size_t i = 0; i < r.rater_scores->raters.size(); ++i) {
            const auto& s = r.rater_scores->raters[i];
            if (!in_range(s.correctness, 1, 10) || !in_range(s.completeness, 1, 10) || !in_range(s.relevance, 1, 10) ||
                !in_range(s.presentation, 1, 10)) {
                flag("rater_scores[" + std::to_string(i) + "]", "scores in [1,10]");
            }
        }
    }
    if (r.collab_scores) {
        for (int v : r.collab_scores->values()) {
            if (!in_range(v, 1, 5)) {
                flag("collab_scores", "scores in [1,5]");
                break;
            }
        }
    }

    const auto& c = r.chain;
    if (c.self_recovered && !c.had_initial_error) flag("chain.self_recovered", "recovery requires an initial error");
    if (c.error_type.has_value() != c.had_initial_error) flag("chain.error_type", "present iff had_initial_error");
    if (c.chain_len < 0) {
        flag("chain.chain_len", "non-negative length");
    } else if (c.complexity_level != level_for_chain(c.chain_len)) {
        flag("chain.complexity_level", "consistent with chain length bands");
    }

    if (!std::isfinite(r.kpi_contribution)) flag("kpi_contribution", "finite value");
    return out;
}

std::vector<std::string> AgentProfile::problems() const {
    std::vector<std::string> out;
    const std::array<std::pair<const char*, const MeanStd*>, 10> all = {{{"gcr", &gcr},
                                                                         {"aix", &aix},
                                                                         {"dtt", &dtt},
                                                                         {"ces", &ces},
                                                                         {"mtr", &mtr},
                                                                         {"tdi", &tdi},
                                                                         {"oas", &oas},
                                                                         {"crs", &crs},
                                                                         {"cqi", &cqi},
                                                                         {"ad", &ad}}};
    for (const auto& [name, ms] : all) {
        if (!std::isfinite(ms->mean) || !std::isfinite(ms->std)) out.push_back(std::string(name) + ": non-finite");
        if (ms->std < 0.0) out.push_back(std::string(name) + ": std must be >= 0");
    }
    for (const auto& [name, ms] : {std::pair{"gcr", &gcr}, {"aix", &aix}, {"mtr", &mtr}, {"crs", &crs}}) {
        if (ms->mean < 0.0 || ms->mean > 1.0) out.push_back(std::string(name) + ": mean must be a proportion");
    }
    if (ad.mean < -1.0 || ad.mean > 1.0) out.push_back("ad: mean must lie in [-1,1]");
    if (tdi.mean < -1.0 || tdi.mean > 1.0) out.push_back("tdi: mean must lie in [-1,1]");
    if (!(dtt.mean > 0.0)) out.push_back("dtt: mean must be > 0");
    if (!(ces.mean > 0.0)) out.push_back("ces: mean must be > 0");
    if (oas.mean < 1.0 || oas.mean > 10.0) out.push_back("oas: mean must lie in [1,10]");
    if (cqi.mean < 1.0 || cqi.mean > 5.0) out.push_back("cqi: mean must lie in [1,5]");
    return out;
}

std::vector<std::string> DomainConfig::problems() const {
    std::vector<std::string> out;
    if (task_count <= 0) out.push_back("task_count must be > 0");
    if (!(modifiers.dtt > 0.0)) out.push_back("dtt factor must be > 0");
    if (!(modifiers.ces > 0.0)) out.push_back("ces factor must be > 0");
    if (kpi_conversion < Money{}) out.push_back("kpi_conversion must be >= 0");
    if (!(kpi_per_success >= 0.0)) out.push_back("kpi_per_success must be >= 0");
    return out;
}

std::vector<std::string> CostModel::problems() const {
    std::vector<std::string> out;
    if (token_price < Money{}) out.push_back("token_price must be >= 0");
    if (api_call_price < Money{}) out.push_back("api_call_price must be >= 0");
    if (intervention_price < Money{}) out.push_back("intervention_price must be >= 0");
    if (!(token_equivalent >= 0.0) || !std::isfinite(token_equivalent)) out.push_back("token_equivalent must be >= 0");
    return out;
}

double ComplexityWeights::weight_for(std::int64_t steps) const {
    if (steps <= 5) return simple;
    if (steps <= 15) return medium;
    return complex;
}

std::vector<std::string> ComplexityWeights::problems() const {
    std::vector<std::string> out;
    if (!(simple > 0.0) || !(medium > 0.0) || !(complex > 0.0)) out.push_back("complexity weights must be > 0");
    return out;
}

}  // namespace agentmetrics
