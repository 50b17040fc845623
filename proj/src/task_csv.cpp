#include "agentmetrics/task_csv.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "agentmetrics/csv.hpp"
#include "agentmetrics/error.hpp"

namespace agentmetrics {

namespace {

constexpr std::array<const char*, 4> kRaterDims = {"correct", "complete", "relevant", "present"};
constexpr std::array<const char*, 5> kCollabCols = {"cq_comm", "cq_resp", "cq_ctx", "cq_sugg", "cq_sat"};

std::vector<std::string> build_header() {
    std::vector<std::string> h = {"task_id",    "agent",     "domain",      "success",      "total_steps",
                                  "iv_clarify", "iv_correct", "iv_approve", "t_start_s",    "t_end_s",
                                  "human_wait_s", "tokens",  "api_calls",   "tool_opps",    "tool_score_sum"};
    for (int r = 1; r <= 3; ++r) {
        for (const char* dim : kRaterDims) h.push_back("r" + std::to_string(r) + "_" + dim);
    }
    for (const char* c : kCollabCols) h.emplace_back(c);
    for (const char* c : {"is_multistep", "had_error", "error_type", "self_recovered", "chain_len", "chain_level",
                          "chain_success", "kpi_contribution", "tool_outcomes"}) {
        h.emplace_back(c);
    }
    return h;
}

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

const std::vector<std::string>& task_csv_header() {
    static const std::vector<std::string> header = build_header();
    return header;
}

std::vector<ToolEvent> canonical_tool_events(std::int64_t opportunities, double score_sum) {
    const double twice = score_sum * 2.0;
    if (opportunities < 0 || !std::isfinite(score_sum) || std::fabs(twice - std::round(twice)) > 1e-9) {
        fail(ErrorKind::SchemaError, "tool score sum must be a multiple of 0.5");
    }
    const auto halves = static_cast<std::int64_t>(std::llround(twice));
    std::vector<ToolEvent> events;
    if (halves >= 0) {
        std::int64_t optimal = halves / 2;
        const bool half = halves % 2 != 0;
        if (half) ++optimal;
        events.assign(static_cast<std::size_t>(optimal), ToolEvent{ToolOutcome::OptimalUse});
        if (half) events.push_back(ToolEvent{ToolOutcome::IgnoredBetterTool});
    } else {
        const std::int64_t misuse = (-halves) / 2;
        const bool half = (-halves) % 2 != 0;
        events.assign(static_cast<std::size_t>(misuse), ToolEvent{ToolOutcome::Misuse});
        if (half) events.push_back(ToolEvent{ToolOutcome::IgnoredBetterTool});
    }
    if (static_cast<std::int64_t>(events.size()) > opportunities) {
        fail(ErrorKind::SchemaError, "tool score sum is not reachable with the given opportunities");
    }
    events.resize(static_cast<std::size_t>(opportunities), ToolEvent{ToolOutcome::NoToolNeeded});
    return events;
}

void write_task_csv(std::ostream& out, std::span<const TaskRecord> records) {
    csv::write_row(out, task_csv_header());
    csv::Row row;
    for (const auto& r : records) {
        row.clear();
        double score_sum = 0.0;
        std::string outcomes;
        for (const auto& e : r.tool_events) {
            score_sum += e.score();
            outcomes += tool_outcome_code(e.outcome);
        }
        row = {r.task_id,
               r.agent.str(),
               r.domain.str(),
               flag(r.success),
               std::to_string(r.total_steps),
               std::to_string(r.interventions.clarification),
               std::to_string(r.interventions.error_correction),
               std::to_string(r.interventions.approval_gate),
               csv::format_exact(r.t_start),
               csv::format_exact(r.t_end),
               csv::format_exact(r.human_wait),
               std::to_string(r.tokens),
               std::to_string(r.api_calls),
               std::to_string(r.tool_events.size()),
               csv::format_exact(score_sum)};
        for (std::size_t i = 0; i < 3; ++i) {
            if (r.rater_scores) {
                const auto& s = r.rater_scores->raters[i];
                for (int v : {s.correctness, s.completeness, s.relevance, s.presentation}) row.push_back(std::to_string(v));
            } else {
                row.insert(row.end(), 4, "");
            }
        }
        if (r.collab_scores) {
            for (int v : r.collab_scores->values()) row.push_back(std::to_string(v));
        } else {
            row.insert(row.end(), 5, "");
        }
        const auto& c = r.chain;
        row.push_back(flag(c.is_multistep));
        row.push_back(flag(c.had_initial_error));
        row.emplace_back(c.error_type ? to_string(*c.error_type) : "");
        row.push_back(flag(c.self_recovered));
        row.push_back(std::to_string(c.chain_len));
        row.emplace_back(c.complexity_level ? to_string(*c.complexity_level) : "");
        row.push_back(flag(c.chain_success));
        row.push_back(csv::format_exact(r.kpi_contribution));
        row.push_back(outcomes);
        csv::write_row(out, row);
    }
}

void write_task_csv_file(const std::filesystem::path& path, std::span<const TaskRecord> records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
    write_task_csv(out, records);
    out.flush();
    if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

std::vector<TaskRecord> read_task_csv(std::istream& in, const std::string& source) {
    const csv::Table table = csv::read(in, source);
    const auto& header = task_csv_header();
    // Every column except the optional trailing tool_outcomes is required.
    std::vector<std::size_t> idx(header.size());
    for (std::size_t i = 0; i + 1 < header.size(); ++i) idx[i] = table.require(header[i]);
    const auto outcomes_col = table.find("tool_outcomes");

    std::vector<TaskRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t row_no = 0; row_no < table.rows.size(); ++row_no) {
        const auto& row = table.rows[row_no];
        std::size_t col = 0;
        auto ctx = [&](std::size_t c) { return source + ": row " + std::to_string(row_no + 1) + ", column '" + header[c] + "'"; };
        auto cell = [&](std::size_t c) -> const std::string& { return row[idx[c]]; };
        auto next_int = [&] {
            const std::size_t c = col++;
            return csv::parse_int(cell(c), ctx(c));
        };
        auto next_double = [&] {
            const std::size_t c = col++;
            return csv::parse_double(cell(c), ctx(c));
        };
        auto next_bool = [&] {
            const std::size_t c = col++;
            return csv::parse_bool(cell(c), ctx(c));
        };

        TaskRecord r;
        r.task_id = cell(col++);
        r.agent = parse_agent(cell(col++));
        r.domain = parse_domain(cell(col++));
        r.success = next_bool();
        r.total_steps = next_int();
        r.interventions.clarification = next_int();
        r.interventions.error_correction = next_int();
        r.interventions.approval_gate = next_int();
        r.t_start = next_double();
        r.t_end = next_double();
        r.human_wait = next_double();
        r.tokens = next_int();
        r.api_calls = next_int();
        const std::size_t opps_col = col;
        const std::int64_t opps = next_int();
        const std::size_t sum_col = col;
        const double score_sum = next_double();

        const std::size_t rater_first = col;
        bool any_rater = false;
        bool all_rater = true;
        for (std::size_t k = 0; k < 12; ++k) {
            if (cell(rater_first + k).empty()) {
                all_rater = false;
            } else {
                any_rater = true;
            }
        }
        if (any_rater && !all_rater) {
            fail(ErrorKind::SchemaError, ctx(rater_first) + ": rater panel must be complete or entirely empty");
        }
        if (any_rater) {
            RaterPanel panel;
            for (auto& s : panel.raters) {
                s.correctness = static_cast<int>(next_int());
                s.completeness = static_cast<int>(next_int());
                s.relevance = static_cast<int>(next_int());
                s.presentation = static_cast<int>(next_int());
            }
            r.rater_scores = panel;
        } else {
            col += 12;
        }

        const std::size_t collab_first = col;
        bool any_collab = false;
        bool all_collab = true;
        for (std::size_t k = 0; k < 5; ++k) {
            if (cell(collab_first + k).empty()) {
                all_collab = false;
            } else {
                any_collab = true;
            }
        }
        if (any_collab && !all_collab) {
            fail(ErrorKind::SchemaError, ctx(collab_first) + ": collaboration scores must be complete or entirely empty");
        }
        if (any_collab) {
            CollabScores cs;
            cs.communication_clarity = static_cast<int>(next_int());
            cs.responsiveness = static_cast<int>(next_int());
            cs.contextual_awareness = static_cast<int>(next_int());
            cs.helpful_suggestions = static_cast<int>(next_int());
            cs.overall_satisfaction = static_cast<int>(next_int());
            r.collab_scores = cs;
        } else {
            col += 5;
        }

        r.chain.is_multistep = next_bool();
        r.chain.had_initial_error = next_bool();
        {
            const std::size_t c = col++;
            if (!cell(c).empty()) {
                r.chain.error_type = parse_error_type(cell(c));
                if (!r.chain.error_type) fail(ErrorKind::SchemaError, ctx(c) + ": unknown error type '" + cell(c) + "'");
            }
        }
        r.chain.self_recovered = next_bool();
        r.chain.chain_len = next_int();
        {
            const std::size_t c = col++;
            if (!cell(c).empty()) {
                r.chain.complexity_level = parse_complexity_level(cell(c));
                if (!r.chain.complexity_level) fail(ErrorKind::SchemaError, ctx(c) + ": unknown chain level '" + cell(c) + "'");
            }
        }
        r.chain.chain_success = next_bool();
        r.kpi_contribution = next_double();

        const std::string outcomes = outcomes_col ? row[*outcomes_col] : std::string();
        if (!outcomes.empty()) {
            for (char code : outcomes) {
                auto o = parse_tool_outcome_code(code);
                if (!o) {
                    fail(ErrorKind::SchemaError, source + ": row " + std::to_string(row_no + 1) +
                                                     ", column 'tool_outcomes': unknown code '" + std::string(1, code) + "'");
                }
                r.tool_events.push_back(ToolEvent{*o});
            }
            double sum = 0.0;
            for (const auto& e : r.tool_events) sum += e.score();
            if (static_cast<std::int64_t>(r.tool_events.size()) != opps) {
                fail(ErrorKind::SchemaError, ctx(opps_col) + ": does not match tool_outcomes length");
            }
            if (std::fabs(sum - score_sum) > 1e-9) fail(ErrorKind::SchemaError, ctx(sum_col) + ": does not match tool_outcomes");
        } else {
            try {
                r.tool_events = canonical_tool_events(opps, score_sum);
            } catch (const Error& e) {
                fail(ErrorKind::SchemaError, ctx(sum_col) + ": " + e.what());
            }
        }

        const auto problems = validate(r);
        if (!problems.empty()) {
            fail(ErrorKind::SchemaError, source + ": row " + std::to_string(row_no + 1) + ", field '" +
                                             problems.front().field + "': violates " + problems.front().rule);
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<TaskRecord> read_task_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
    return read_task_csv(in, path.string());
}

}  // namespace agentmetrics
