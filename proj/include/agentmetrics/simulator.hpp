#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agentmetrics/model.hpp"
#include "agentmetrics/rng.hpp"

namespace agentmetrics {

/// Profile: agent profile means adjusted by domain modifiers. Calibrated:
/// per-cell targets read from the calibration tables.
enum class SimMode { Profile, Calibrated };
std::string_view to_string(SimMode mode);
std::optional<SimMode> parse_sim_mode(std::string_view text);

/// Step-count mixture over the three complexity bands: 1-5, 6-15 and
/// 16..complex_max steps, each uniform within its band.
struct StepMix {
    double simple = 0.4;
    double medium = 0.4;
    double complex = 0.2;
    std::int64_t complex_max = 30;

    double expected_steps() const;
    bool operator==(const StepMix&) const = default;
};

/// Published per-cell targets for calibrated generation. Percent-valued
/// inputs (gcr) stay in percent to match the source tables.
struct CalibrationCell {
    AgentId agent;
    DomainId domain;
    std::int64_t tasks = 0;  // published cell size, used to weight roll-ups
    double gcr = 0.0;  // percent
    double aix = 0.0;
    double dtt = 0.0;  // seconds, cell mean
    double oas = 0.0;
    double kpi_value = 0.0;  // native KPI units, cell total
    double op_cost = 0.0;    // dollars, informational only
    double zero_shot = 0.0;  // proportion
    double few_shot = 0.0;   // proportion

    bool operator==(const CalibrationCell&) const = default;
};

/// Published per-agent roll-ups used where no per-cell value exists.
struct CalibrationAgent {
    AgentId agent;
    double ces = 0.0;
    double mtr = 0.0;  // percent
    double tdi_norm = 0.0;
    double crs = 0.0;  // percent
    double cqi = 0.0;

    bool operator==(const CalibrationAgent&) const = default;
};

/// Dispersion used in calibrated mode, where the tables carry means only.
struct CalibrationDispersion {
    double aix_std = 0.05;
    double dtt_cv = 0.20;
    double ces_cv = 0.15;
    double oas_std = 0.8;
    double cqi_std = 0.7;

    bool operator==(const CalibrationDispersion&) const = default;
};

struct Calibration {
    std::vector<CalibrationCell> cells;
    std::vector<CalibrationAgent> agents;
    CalibrationDispersion dispersion;

    const CalibrationCell* find(const AgentId& agent, const DomainId& domain) const;
    const CalibrationAgent* find(const AgentId& agent) const;
    bool operator==(const Calibration&) const = default;
};

struct SimConfig {
    std::uint64_t seed = 42;
    SimMode mode = SimMode::Calibrated;
    std::vector<std::pair<AgentId, AgentProfile>> agents;
    std::vector<std::pair<DomainId, DomainConfig>> domains;
    CostModel cost_model;
    ComplexityWeights complexity_weights;
    StepMix step_mix;
    Calibration calibration;

    /// Four agents, five domains, the published base parameters and the
    /// published tables as calibration targets.
    static SimConfig defaults();

    const DomainConfig* find_domain(const DomainId& domain) const;
    const AgentProfile* find_agent(const AgentId& agent) const;
    /// Structural problems; empty when the config is usable.
    std::vector<std::string> problems() const;
    bool operator==(const SimConfig&) const = default;
};

/// Expected per-cell values the generator aims for, in generator units:
/// proportions for gcr/aix/mtr/crs, raw tdi, seconds for dtt.
struct CellTarget {
    double gcr = 0.0;
    double aix = 0.0;
    double aix_std = 0.0;
    double dtt = 0.0;
    double dtt_cv = 0.0;
    double ces = 0.0;
    double ces_cv = 0.0;
    double mtr = 0.0;
    double crs = 0.0;
    double tdi_raw = 0.0;
    double oas = 0.0;
    double oas_std = 0.0;
    double cqi = 0.0;
    double cqi_std = 0.0;
    std::optional<double> kpi_total;  // calibrated mode: exact cell total
    double kpi_per_success = 0.0;     // profile mode: mean per success
    double zero_shot = 0.0;
    double few_shot = 0.0;
};

/// Target for one cell. CalibrationError naming the cell when a target is
/// missing or infeasible (outside its legal range after modifiers).
CellTarget cell_target(const SimConfig& config, const AgentId& agent, const DomainId& domain);

/// Full grid: for each agent in config order, each domain in config order.
/// ConfigError when problems() is non-empty.
std::vector<TaskRecord> generate(const SimConfig& config);
/// One cell, identical to that cell's slice of generate().
std::vector<TaskRecord> generate_cell(const SimConfig& config, const AgentId& agent, const DomainId& domain);

/// Zero-shot and few-shot GCR on n_test held-out tasks per cell.
/// InvalidInput when n_test < 1.
std::vector<AdaptabilityCell> generate_adaptability(const SimConfig& config, std::int64_t n_test = 50);

}  // namespace agentmetrics
