#include "agentmetrics/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "agentmetrics/error.hpp"

namespace agentmetrics {

namespace {

// Microstructure constants. The published material fixes cell means only;
// these shape the per-task spread around them without moving the means.
constexpr double kDurationCoupling = 0.3;   // share of DTT/resources that scales with step count
constexpr double kCallShare = 0.3;          // share of resource units spent as API calls
constexpr double kToolOpportunityRate = 0.5;
constexpr double kIgnoredShare = 0.10;      // tool events scored -0.5
constexpr double kNoToolShare = 0.10;       // tool events scored 0
constexpr double kWaitPerIntervention = 45.0;
constexpr double kGapBetweenTasks = 30.0;
constexpr double kBackgroundErrorRate = 0.3;
constexpr double kFailedRecoveryRate = 0.25;
constexpr double kQualityShiftOnSuccess = 0.6;
constexpr double kRaterNoise = 0.5;
constexpr double kKpiNoiseCv = 0.1;
constexpr std::array<double, 3> kInterventionSplit = {0.40, 0.35, 0.25};  // clarify, correct, approve

std::string cell_name(const AgentId& agent, const DomainId& domain) { return agent.str() + "x" + domain.str(); }

[[noreturn]] void infeasible(const AgentId& agent, const DomainId& domain, const std::string& what) {
    fail(ErrorKind::CalibrationError, "cell " + cell_name(agent, domain) + ": " + what);
}

void check_range(const AgentId& agent, const DomainId& domain, const char* name, double value, double lo, double hi) {
    if (!(value >= lo && value <= hi) || !std::isfinite(value)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s target %.6g outside [%g, %g]", name, value, lo, hi);
        infeasible(agent, domain, buf);
    }
}

std::int64_t round_half_up(double v) { return static_cast<std::int64_t>(std::floor(v + 0.5)); }

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

int clamp_score(double v, int lo, int hi) {
    return static_cast<int>(std::clamp<std::int64_t>(round_half_up(v), lo, hi));
}

/// Randomized rounding of target * n: floor plus one with the fractional
/// probability, so the expected count equals target * n exactly.
std::int64_t exact_count(Rng& rng, double target, std::int64_t n) {
    const double expected = target * static_cast<double>(n);
    const double base = std::floor(expected);
    std::int64_t k = static_cast<std::int64_t>(base);
    if (rng.uniform() < expected - base) ++k;
    return std::clamp<std::int64_t>(k, 0, n);
}

std::vector<bool> exact_successes(Rng& rng, double target, std::int64_t n) {
    const std::int64_t k = exact_count(rng, target, n);
    std::vector<bool> flags(static_cast<std::size_t>(n), false);
    std::fill_n(flags.begin(), k, true);
    rng.shuffle(flags.begin(), flags.end());
    return flags;
}

std::int64_t draw_steps(Rng& rng, const StepMix& mix) {
    const std::array<double, 3> w = {mix.simple, mix.medium, mix.complex};
    switch (rng.categorical(w)) {
        case 0: return rng.uniform_int(1, 5);
        case 1: return rng.uniform_int(6, 15);
        default: return rng.uniform_int(16, mix.complex_max);
    }
}

double draw_propensity(Rng& rng, double mean, double sd) {
    if (sd <= 0.0 || mean <= 0.0 || mean >= 1.0) return mean;
    const double k = mean * (1.0 - mean) / (sd * sd) - 1.0;
    const double x = rng.gamma(mean * k);
    const double y = rng.gamma((1.0 - mean) * k);
    return x + y > 0.0 ? x / (x + y) : mean;
}

struct ToolMix {
    std::array<double, 4> weights;  // optimal, misuse, ignored, no-tool
};

std::optional<ToolMix> tool_mix_for(double raw_target) {
    const double active = 1.0 - kIgnoredShare - kNoToolShare;
    const double optimal = (active + raw_target + 0.5 * kIgnoredShare) / 2.0;
    const double misuse = active - optimal;
    if (optimal < 0.0 || misuse < 0.0) return std::nullopt;
    return ToolMix{{optimal, misuse, kIgnoredShare, kNoToolShare}};
}

/// Success-weighted mean of a per-cell quantity over the agent's published
/// cells. Depends only on calibration data, never on which cells are
/// generated.
double success_weighted(const Calibration& cal, const AgentId& agent, double (*value)(const CalibrationCell&)) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : cal.cells) {
        if (c.agent != agent) continue;
        const double w = static_cast<double>(c.tasks) * c.gcr;
        num += w * value(c);
        den += w;
    }
    return den > 0.0 ? num / den : 0.0;
}

double task_weighted_gcr(const Calibration& cal, const AgentId& agent) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : cal.cells) {
        if (c.agent != agent) continue;
        num += static_cast<double>(c.tasks) * c.gcr;
        den += static_cast<double>(c.tasks);
    }
    return den > 0.0 ? num / den / 100.0 : 0.0;
}

}  // namespace

std::string_view to_string(SimMode mode) {
    return mode == SimMode::Profile ? "appendix-d" : "table-calibrated";
}

std::optional<SimMode> parse_sim_mode(std::string_view text) {
    if (text == "appendix-d" || text == "profile") return SimMode::Profile;
    if (text == "table-calibrated" || text == "calibrated") return SimMode::Calibrated;
    return std::nullopt;
}

double StepMix::expected_steps() const {
    const double total = simple + medium + complex;
    const double hi = static_cast<double>(complex_max);
    return (simple * 3.0 + medium * 10.5 + complex * (16.0 + hi) / 2.0) / total;
}

const CalibrationCell* Calibration::find(const AgentId& agent, const DomainId& domain) const {
    for (const auto& c : cells) {
        if (c.agent == agent && c.domain == domain) return &c;
    }
    return nullptr;
}

const CalibrationAgent* Calibration::find(const AgentId& agent) const {
    for (const auto& a : agents) {
        if (a.agent == agent) return &a;
    }
    return nullptr;
}

const DomainConfig* SimConfig::find_domain(const DomainId& domain) const {
    for (const auto& [id, cfg] : domains) {
        if (id == domain) return &cfg;
    }
    return nullptr;
}

const AgentProfile* SimConfig::find_agent(const AgentId& agent) const {
    for (const auto& [id, profile] : agents) {
        if (id == agent) return &profile;
    }
    return nullptr;
}

std::vector<std::string> SimConfig::problems() const {
    std::vector<std::string> out;
    if (agents.empty()) out.push_back("at least one agent is required");
    if (domains.empty()) out.push_back("at least one domain is required");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto& [id, profile] = agents[i];
        if (id.empty()) out.push_back("agent " + std::to_string(i) + ": empty id");
        for (std::size_t j = 0; j < i; ++j) {
            if (agents[j].first == id) out.push_back("agent " + id.str() + ": duplicated");
        }
        for (const auto& p : profile.problems()) out.push_back("agent " + id.str() + ": " + p);
    }
    for (std::size_t i = 0; i < domains.size(); ++i) {
        const auto& [id, cfg] = domains[i];
        if (id.empty()) out.push_back("domain " + std::to_string(i) + ": empty id");
        for (std::size_t j = 0; j < i; ++j) {
            if (domains[j].first == id) out.push_back("domain " + id.str() + ": duplicated");
        }
        for (const auto& p : cfg.problems()) out.push_back("domain " + id.str() + ": " + p);
    }
    for (const auto& p : cost_model.problems()) out.push_back("cost_model: " + p);
    for (const auto& p : complexity_weights.problems()) out.push_back("complexity_weights: " + p);
    if (step_mix.simple < 0 || step_mix.medium < 0 || step_mix.complex < 0 ||
        !(step_mix.simple + step_mix.medium + step_mix.complex > 0)) {
        out.push_back("step_mix: weights must be >= 0 with a positive sum");
    }
    if (step_mix.complex_max < 16) out.push_back("step_mix: complex_max must be >= 16");
    const auto& d = calibration.dispersion;
    if (d.aix_std < 0 || d.dtt_cv < 0 || d.ces_cv < 0 || d.oas_std < 0 || d.cqi_std < 0) {
        out.push_back("calibration.dispersion: values must be >= 0");
    }
    for (const auto& c : calibration.cells) {
        if (c.tasks <= 0) out.push_back("calibration cell " + cell_name(c.agent, c.domain) + ": tasks must be > 0");
    }
    return out;
}

CellTarget cell_target(const SimConfig& config, const AgentId& agent, const DomainId& domain) {
    const AgentProfile* profile = config.find_agent(agent);
    const DomainConfig* dom = config.find_domain(domain);
    if (!profile) infeasible(agent, domain, "agent not configured");
    if (!dom) infeasible(agent, domain, "domain not configured");
    const DomainModifiers& m = dom->modifiers;

    CellTarget t;
    if (config.mode == SimMode::Profile) {
        t.gcr = profile->gcr.mean + m.gcr;
        t.aix = profile->aix.mean + m.aix;
        t.aix_std = profile->aix.std;
        t.dtt = profile->dtt.mean * m.dtt;
        t.dtt_cv = profile->dtt.std / profile->dtt.mean;
        t.ces = profile->ces.mean * m.ces;
        t.ces_cv = profile->ces.std / profile->ces.mean;
        t.mtr = profile->mtr.mean + m.mtr;
        t.crs = profile->crs.mean + m.crs;
        t.tdi_raw = profile->tdi.mean + m.tdi;
        t.oas = profile->oas.mean + m.oas;
        t.oas_std = profile->oas.std;
        t.cqi = profile->cqi.mean + m.cqi;
        t.cqi_std = profile->cqi.std;
        t.kpi_per_success = dom->kpi_per_success;
        const double ad = profile->ad.mean + m.ad;
        // Centered on the cell GCR, shifted back inside [0, 1] keeping the delta.
        t.zero_shot = t.gcr - ad / 2.0;
        t.few_shot = t.gcr + ad / 2.0;
        if (t.few_shot > 1.0) {
            t.zero_shot -= t.few_shot - 1.0;
            t.few_shot = 1.0;
        } else if (t.zero_shot < 0.0) {
            t.few_shot -= t.zero_shot;
            t.zero_shot = 0.0;
        }
    } else {
        const Calibration& cal = config.calibration;
        const CalibrationCell* cell = cal.find(agent, domain);
        const CalibrationAgent* overall = cal.find(agent);
        if (!cell) infeasible(agent, domain, "no calibration cell");
        if (!overall) infeasible(agent, domain, "no calibration roll-up for the agent");
        const auto& disp = cal.dispersion;
        t.gcr = cell->gcr / 100.0;
        t.aix = cell->aix;
        t.aix_std = disp.aix_std;
        t.dtt = cell->dtt;
        t.dtt_cv = disp.dtt_cv;
        // Per-cell CES follows the cell's DTT relative to the agent's
        // success-weighted DTT, so the success-weighted roll-up equals the
        // published agent value.
        const double dtt_bar = success_weighted(cal, agent, [](const CalibrationCell& c) { return c.dtt; });
        t.ces = dtt_bar > 0.0 ? overall->ces * cell->dtt / dtt_bar : overall->ces;
        t.ces_cv = disp.ces_cv;
        // MTR and CRS scale with the cell's GCR; the task-weighted roll-up
        // reproduces the agent value.
        const double gcr_bar = task_weighted_gcr(cal, agent);
        const double scale = gcr_bar > 0.0 ? t.gcr / gcr_bar : 1.0;
        t.mtr = overall->mtr / 100.0 * scale;
        t.crs = overall->crs / 100.0 * scale;
        t.tdi_raw = 2.0 * overall->tdi_norm - 1.0;
        t.oas = cell->oas;
        t.oas_std = disp.oas_std;
        t.cqi = overall->cqi;
        t.cqi_std = disp.cqi_std;
        t.kpi_total = cell->kpi_value;
        t.zero_shot = cell->zero_shot;
        t.few_shot = cell->few_shot;
    }

    check_range(agent, domain, "gcr", t.gcr, 0.0, 1.0);
    check_range(agent, domain, "aix", t.aix, 0.0, 1.0);
    check_range(agent, domain, "mtr", t.mtr, 0.0, t.gcr);
    check_range(agent, domain, "crs", t.crs, 0.0, t.gcr);
    check_range(agent, domain, "tdi", t.tdi_raw, -1.0, 1.0);
    check_range(agent, domain, "oas", t.oas, 1.0, 10.0);
    check_range(agent, domain, "cqi", t.cqi, 1.0, 5.0);
    check_range(agent, domain, "zero-shot gcr", t.zero_shot, 0.0, 1.0);
    check_range(agent, domain, "few-shot gcr", t.few_shot, 0.0, 1.0);
    if (!(t.dtt > 0.0)) infeasible(agent, domain, "dtt target must be > 0");
    if (!(t.ces >= 0.0)) infeasible(agent, domain, "ces target must be >= 0");
    if (t.kpi_total && *t.kpi_total < 0.0) infeasible(agent, domain, "kpi total must be >= 0");
    const double p = 1.0 - t.aix;
    if (t.aix_std > 0.0 && p > 0.0 && p < 1.0 && t.aix_std * t.aix_std >= p * (1.0 - p)) {
        infeasible(agent, domain, "aix std too large for its mean");
    }
    if (!tool_mix_for(t.tdi_raw)) infeasible(agent, domain, "tdi target not reachable with the tool rubric mix");
    return t;
}

std::vector<TaskRecord> generate_cell(const SimConfig& config, const AgentId& agent, const DomainId& domain) {
    const CellTarget t = cell_target(config, agent, domain);
    const DomainConfig& dom = *config.find_domain(domain);
    const std::int64_t n = dom.task_count;
    Rng rng = substream(config.seed, agent.str(), domain.str());

    const std::vector<bool> success = exact_successes(rng, t.gcr, n);
    const double realized_gcr = static_cast<double>(std::count(success.begin(), success.end(), true)) /
                                static_cast<double>(n);
    const double mean_steps = config.step_mix.expected_steps();
    const double resilient_given_success = t.gcr > 0.0 ? t.mtr / t.gcr : 0.0;
    const double chain_ok_given_success = t.gcr > 0.0 ? t.crs / t.gcr : 0.0;
    const ToolMix tools = *tool_mix_for(t.tdi_raw);
    const double te = config.cost_model.token_equivalent;

    std::vector<TaskRecord> out;
    out.reserve(static_cast<std::size_t>(n));
    double clock = 0.0;
    char id_buf[32];
    for (std::int64_t i = 0; i < n; ++i) {
        TaskRecord r;
        std::snprintf(id_buf, sizeof id_buf, "%04lld", static_cast<long long>(i + 1));
        r.task_id = agent.str() + "-" + domain.str() + "-" + id_buf;
        r.agent = agent;
        r.domain = domain;
        r.success = success[static_cast<std::size_t>(i)];
        r.total_steps = draw_steps(rng, config.step_mix);

        const double propensity = draw_propensity(rng, 1.0 - t.aix, t.aix_std);
        // Rounded rather than binomial so per-task AIx spread stays near aix_std.
        const std::int64_t iv = exact_count(rng, propensity, r.total_steps);
        r.interventions.clarification = rng.binomial(iv, kInterventionSplit[0]);
        r.interventions.error_correction =
            rng.binomial(iv - r.interventions.clarification,
                         kInterventionSplit[1] / (kInterventionSplit[1] + kInterventionSplit[2]));
        r.interventions.approval_gate = iv - r.interventions.clarification - r.interventions.error_correction;

        const double complexity =
            1.0 + kDurationCoupling * (static_cast<double>(r.total_steps) / mean_steps - 1.0);
        const double duration = round_ms(t.dtt * complexity * rng.lognormal_unit_mean(t.dtt_cv));
        double wait = 0.0;
        for (std::int64_t k = 0; k < iv; ++k) wait += rng.exponential(kWaitPerIntervention);
        wait = round_ms(wait);
        r.t_start = round_ms(clock);
        r.human_wait = wait;
        r.t_end = round_ms(r.t_start + duration + wait);
        // Rounding must never push the wait past the elapsed time.
        r.human_wait = std::min(r.human_wait, r.t_end - r.t_start);
        clock = r.t_end + rng.exponential(kGapBetweenTasks);

        const auto resources = std::max<std::int64_t>(
            0, round_half_up(t.ces * complexity * rng.lognormal_unit_mean(t.ces_cv)));
        r.api_calls = te > 0.0 ? static_cast<std::int64_t>(std::floor(kCallShare * static_cast<double>(resources) / te)) : 0;
        r.tokens = std::max<std::int64_t>(0, resources - round_half_up(static_cast<double>(r.api_calls) * te));

        const std::int64_t opportunities = rng.binomial(r.total_steps, kToolOpportunityRate);
        for (std::int64_t k = 0; k < opportunities; ++k) {
            static constexpr std::array<ToolOutcome, 4> kinds = {ToolOutcome::OptimalUse, ToolOutcome::Misuse,
                                                                 ToolOutcome::IgnoredBetterTool,
                                                                 ToolOutcome::NoToolNeeded};
            r.tool_events.push_back(ToolEvent{kinds[rng.categorical(tools.weights)]});
        }

        const double quality = t.oas + kQualityShiftOnSuccess * ((r.success ? 1.0 : 0.0) - realized_gcr) +
                               t.oas_std * rng.normal();
        RaterPanel panel;
        for (auto& rater : panel.raters) {
            rater.correctness = clamp_score(quality + kRaterNoise * rng.normal(), 1, 10);
            rater.completeness = clamp_score(quality + kRaterNoise * rng.normal(), 1, 10);
            rater.relevance = clamp_score(quality + kRaterNoise * rng.normal(), 1, 10);
            rater.presentation = clamp_score(quality + kRaterNoise * rng.normal(), 1, 10);
        }
        r.rater_scores = panel;

        if (iv > 0) {
            CollabScores cs;
            cs.communication_clarity = clamp_score(rng.normal(t.cqi, t.cqi_std), 1, 5);
            cs.responsiveness = clamp_score(rng.normal(t.cqi, t.cqi_std), 1, 5);
            cs.contextual_awareness = clamp_score(rng.normal(t.cqi, t.cqi_std), 1, 5);
            cs.helpful_suggestions = clamp_score(rng.normal(t.cqi, t.cqi_std), 1, 5);
            cs.overall_satisfaction = clamp_score(rng.normal(t.cqi, t.cqi_std), 1, 5);
            r.collab_scores = cs;
        }

        auto& c = r.chain;
        c.chain_len = r.total_steps;
        c.is_multistep = r.total_steps >= 2;
        c.complexity_level = level_for_chain(c.chain_len);
        const bool resilient = c.is_multistep && r.success && rng.bernoulli(resilient_given_success);
        if (resilient) {
            c.had_initial_error = true;
            c.self_recovered = true;
        } else {
            c.had_initial_error = rng.bernoulli(kBackgroundErrorRate);
            // Recovered-but-failed only; a successful recovery would be resilient.
            c.self_recovered = c.had_initial_error && !r.success && rng.bernoulli(kFailedRecoveryRate);
        }
        if (c.had_initial_error) c.error_type = static_cast<ErrorType>(rng.uniform_int(0, 3));
        c.chain_success = c.chain_len >= 3 ? r.success && rng.bernoulli(chain_ok_given_success) : r.success;

        if (!t.kpi_total && r.success) r.kpi_contribution = t.kpi_per_success * rng.lognormal_unit_mean(kKpiNoiseCv);
        out.push_back(std::move(r));
    }

    if (t.kpi_total) {
        // Uniform split across successes with noise, renormalized to the total.
        std::vector<double> weights(out.size(), 0.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (!out[i].success) continue;
            weights[i] = 0.5 + rng.uniform();
            sum += weights[i];
        }
        if (sum == 0.0 && *t.kpi_total > 0.0) infeasible(agent, domain, "KPI total needs at least one successful task");
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (weights[i] > 0.0) out[i].kpi_contribution = *t.kpi_total * weights[i] / sum;
        }
    }
    return out;
}

std::vector<TaskRecord> generate(const SimConfig& config) {
    const auto problems = config.problems();
    if (!problems.empty()) fail(ErrorKind::ConfigError, problems.front());
    std::vector<TaskRecord> all;
    for (const auto& [agent, profile] : config.agents) {
        for (const auto& [domain, dom] : config.domains) {
            auto cell = generate_cell(config, agent, domain);
            std::move(cell.begin(), cell.end(), std::back_inserter(all));
        }
    }
    return all;
}

std::vector<AdaptabilityCell> generate_adaptability(const SimConfig& config, std::int64_t n_test) {
    if (n_test < 1) fail(ErrorKind::InvalidInput, "adaptability test set needs at least one task");
    const auto problems = config.problems();
    if (!problems.empty()) fail(ErrorKind::ConfigError, problems.front());
    std::vector<AdaptabilityCell> out;
    for (const auto& [agent, profile] : config.agents) {
        for (const auto& [domain, dom] : config.domains) {
            const CellTarget t = cell_target(config, agent, domain);
            Rng rng = substream(config.seed, agent.str(), domain.str(), "adaptability");
            auto measure = [&](double target) {
                const auto flags = exact_successes(rng, target, n_test);
                return static_cast<double>(std::count(flags.begin(), flags.end(), true)) / static_cast<double>(n_test);
            };
            AdaptabilityCell cell;
            cell.agent = agent;
            cell.domain = domain;
            cell.gcr_zero_shot = measure(t.zero_shot);
            cell.gcr_few_shot = measure(t.few_shot);
            cell.ad = cell.gcr_few_shot - cell.gcr_zero_shot;
            if (cell.gcr_zero_shot > 0.0) cell.ar = 100.0 * cell.ad / cell.gcr_zero_shot;
            out.push_back(cell);
        }
    }
    return out;
}

}  // namespace agentmetrics
