// agentmetrics: simulate, evaluate, analyze and report from the command line.
//
// Exit codes: 0 success, 2 usage or validation error, 3 I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "agentmetrics/analysis.hpp"
#include "agentmetrics/charts.hpp"
#include "agentmetrics/config.hpp"
#include "agentmetrics/csv.hpp"
#include "agentmetrics/error.hpp"
#include "agentmetrics/report.hpp"
#include "agentmetrics/report_io.hpp"
#include "agentmetrics/simulator.hpp"
#include "agentmetrics/task_csv.hpp"
#include "agentmetrics/text_tables.hpp"

namespace fs = std::filesystem;
using namespace agentmetrics;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

constexpr const char* kMetaFile = "simulate_meta.json";
constexpr const char* kReportFile = "report.txt";
constexpr const char* kStatsText = "stats_report.txt";

struct SimulateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string mode;
    std::int64_t n_test = 50;
    std::string out;
};

struct EvaluateArgs {
    std::string input;
    std::string config;
    std::string cost_model;
    std::optional<double> baseline_dtt;
    std::optional<double> baseline_ces;
    std::string out;
};

struct AnalyzeArgs {
    std::string input;
    std::string config;
    std::string grouping = "cells";
    double alpha = 0.05;
    std::string out;
};

struct ReportArgs {
    std::string in;
    std::string out;
    std::vector<std::string> formats = {"csv", "txt", "svg"};
};

struct Formats {
    bool csv = false;
    bool txt = false;
    bool svg = false;
};

Formats parse_formats(const std::vector<std::string>& items) {
    Formats f;
    for (const auto& raw : items) {
        std::stringstream ss(raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "csv") {
                f.csv = true;
            } else if (item == "txt") {
                f.txt = true;
            } else if (item == "svg" || item == "svg-like") {
                f.svg = true;
            } else if (!item.empty()) {
                fail(ErrorKind::InvalidInput, "unknown format '" + item + "' (expected csv, txt or svg-like)");
            }
        }
    }
    return f;
}

SimConfig config_or_defaults(const std::string& path) {
    return path.empty() ? SimConfig::defaults() : load_config(path);
}

// ---------------------------------------------------------------------------

struct SimulateResult {
    SimConfig config;
    std::vector<TaskRecord> records;
    std::vector<AdaptabilityCell> adaptability;
};

SimulateResult simulate(const SimulateArgs& a) {
    SimulateResult r;
    r.config = config_or_defaults(a.config);
    if (a.seed) r.config.seed = *a.seed;
    if (!a.mode.empty()) {
        const auto mode = parse_sim_mode(a.mode);
        if (!mode) fail(ErrorKind::InvalidInput, "unknown mode '" + a.mode + "'");
        r.config.mode = *mode;
    }
    r.records = generate(r.config);
    r.adaptability = generate_adaptability(r.config, a.n_test);

    const fs::path out(a.out);
    write_task_csv_file(out / report::kTaskLevelFile, r.records);
    std::ostringstream ad;
    report::write_adaptability_csv(ad, r.adaptability);
    report::write_text_file(out / report::kAdaptabilityFile, ad.str());

    nlohmann::ordered_json meta;
    meta["seed"] = r.config.seed;
    meta["mode"] = std::string(to_string(r.config.mode));
    meta["config"] = a.config.empty() ? std::string("<defaults>") : a.config;
    meta["task_records"] = r.records.size();
    meta["adaptability_rows"] = r.adaptability.size();
    meta["adaptability_test_tasks"] = a.n_test;
    report::write_text_file(out / kMetaFile, meta.dump(2) + "\n");

    std::cout << "simulate: " << r.records.size() << " task records, " << r.adaptability.size()
              << " adaptability rows (seed " << r.config.seed << ", mode " << to_string(r.config.mode) << ") -> "
              << out.string() << "\n";
    return r;
}

struct EvaluateResult {
    std::vector<MetricCell> cells;
    std::vector<OverallRow> overall;
    std::vector<report::BusinessRow> business;
};

EvaluateResult evaluate(const std::vector<TaskRecord>& records, const SimConfig& config, const EvaluateArgs& a) {
    report::EvalOptions opt;
    opt.cost = a.cost_model.empty() ? config.cost_model : load_cost_model(a.cost_model);
    opt.weights = config.complexity_weights;
    opt.baseline_dtt = a.baseline_dtt;
    opt.baseline_ces = a.baseline_ces;

    EvaluateResult r;
    r.cells = report::aggregate_grid(records, config.domains, opt);
    r.business = report::business_rows(r.cells, config.domains);
    try {
        r.overall = report::aggregate_all(r.cells);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::IncompleteGrid) throw;
        std::cerr << "warning: overall rows skipped: " << e.what() << "\n";
    }

    const fs::path out(a.out);
    std::ostringstream agg;
    std::ostringstream biz;
    report::write_aggregate_csv(agg, r.cells);
    report::write_business_csv(biz, r.business);
    report::write_text_file(out / report::kAggregateFile, agg.str());
    report::write_text_file(out / report::kBusinessFile, biz.str());
    if (!r.overall.empty()) {
        std::ostringstream ov;
        report::write_overall_csv(ov, r.overall);
        report::write_text_file(out / report::kOverallFile, ov.str());
    }
    std::cout << "evaluate: " << records.size() << " records -> " << r.cells.size() << " aggregate rows, "
              << r.overall.size() << " overall rows, " << r.business.size() << " business rows -> " << out.string()
              << "\n";
    return r;
}

void write_stats(const fs::path& out, const analysis::StatReport& s) {
    report::write_text_file(out / kStatsText, report::stat_report_text(s));
    const std::pair<const char*, void (*)(std::ostream&, const analysis::StatReport&)> files[] = {
        {"stats_anova.csv", report::write_anova_csv},
        {"stats_tukey.csv", report::write_tukey_csv},
        {"stats_effects.csv", report::write_effects_csv},
        {"stats_correlations.csv", report::write_correlation_csv},
        {"stats_intervals.csv", report::write_intervals_csv},
    };
    for (const auto& [name, writer] : files) {
        std::ostringstream ss;
        writer(ss, s);
        report::write_text_file(out / name, ss.str());
    }
}

bool looks_like_task_csv(const fs::path& path) {
    const std::string text = report::read_text_file(path);
    const std::string first = text.substr(0, text.find('\n'));
    return first.rfind(task_csv_header().front() + ",", 0) == 0;
}

void analyze(const AnalyzeArgs& a) {
    const fs::path input(a.input);
    const bool tasks_input = looks_like_task_csv(input);
    analysis::StatReport s;
    if (a.grouping == "tasks") {
        if (!tasks_input) fail(ErrorKind::InvalidInput, "--grouping tasks needs a task-level CSV");
        const SimConfig config = config_or_defaults(a.config);
        s = analysis::analyze_tasks(read_task_csv_file(input), config.cost_model, a.alpha);
    } else if (tasks_input) {
        const SimConfig config = config_or_defaults(a.config);
        const report::EvalOptions opt{config.cost_model, config.complexity_weights, {}, {}};
        s = analysis::analyze_cells(report::aggregate_grid(read_task_csv_file(input), config.domains, opt), a.alpha);
    } else {
        s = analysis::analyze_cells(report::read_aggregate_file(input), a.alpha);
    }
    write_stats(a.out, s);
    std::cout << "analyze: " << s.groups.size() << " groups, F = " << s.anova.f_stat << ", p = " << s.anova.p_value
              << ", " << s.tukey.size() << " Tukey pairs -> " << a.out << "\n";
}

void report_files(const std::vector<MetricCell>& cells, const std::vector<OverallRow>& overall,
                  const std::vector<AdaptabilityCell>& adaptability, const std::vector<report::BusinessRow>& business,
                  const fs::path& out, const Formats& formats) {
    int charts = 0;
    for (const auto kind : report::all_chart_kinds()) {
        const auto chart = report::chart_data(kind, cells, overall, adaptability);
        const std::string stem(report::to_string(kind));
        if (formats.csv) {
            std::ostringstream ss;
            report::write_chart_csv(ss, chart);
            report::write_text_file(out / (stem + ".csv"), ss.str());
        }
        if (formats.svg) report::write_text_file(out / (stem + ".svg"), report::render_svg(chart));
        ++charts;
    }
    if (formats.txt) {
        std::ostringstream t;
        t << "Overall performance averaged across domains\n\n" << report::overall_table(overall) << "\n";
        t << "Performance by domain\n\n" << report::domain_table(cells) << "\n";
        const auto heat = report::chart_data(report::ChartKind::GcrHeatmap, cells, overall, adaptability);
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : heat.series) {
            std::vector<std::string> row = {s.name};
            for (const auto& v : s.values) row.push_back(v ? csv::format_fixed(*v, 2) : "-");
            rows.push_back(std::move(row));
        }
        std::vector<std::string> header = {"GCR (%)"};
        header.insert(header.end(), heat.categories.begin(), heat.categories.end());
        t << "Goal completion rate matrix\n\n" << report::render_table(header, rows) << "\n";
        t << "Adaptability\n\n" << report::adaptability_table(adaptability) << "\n";
        t << "Business impact\n\n" << report::business_table(business) << "\n";
        t << report::stat_report_text(analysis::analyze_cells(cells));
        report::write_text_file(out / kReportFile, t.str());
    }
    std::cout << "report: " << charts << " charts" << (formats.csv ? " csv" : "") << (formats.svg ? " svg" : "")
              << (formats.txt ? ", text report" : "") << " -> " << out.string() << "\n";
}

void report_from_dir(const ReportArgs& a) {
    const Formats formats = parse_formats(a.formats);
    const fs::path in(a.in);
    std::vector<std::string> missing;
    for (const char* name :
         {report::kAggregateFile, report::kOverallFile, report::kAdaptabilityFile, report::kBusinessFile}) {
        if (!fs::is_regular_file(in / name)) missing.push_back((in / name).string());
    }
    if (!missing.empty()) {
        std::string msg = "missing input files:";
        for (const auto& m : missing) msg += "\n  " + m;
        fail(ErrorKind::InvalidInput, msg);
    }
    report_files(report::read_aggregate_file(in / report::kAggregateFile),
                 report::read_overall_file(in / report::kOverallFile),
                 report::read_adaptability_file(in / report::kAdaptabilityFile),
                 report::read_business_file(in / report::kBusinessFile), a.out, formats);
}

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::IoError ? kExitIo : kExitUsage; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluation metrics for AI agents: simulate task records, evaluate them, analyze and report."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "agentmetrics 0.1.0");

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Generate synthetic task records");
    simulate_cmd->add_option("--config", sim.config, "JSON config (defaults built in)")->check(CLI::ExistingFile);
    simulate_cmd->add_option("--seed", sim.seed, "Override the config seed");
    simulate_cmd->add_option("--mode", sim.mode, "appendix-d or table-calibrated");
    simulate_cmd->add_option("--n-test", sim.n_test, "Held-out tasks per cell for adaptability")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--out", sim.out, "Output directory")->required();

    EvaluateArgs ev;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Aggregate a task-level CSV into metric tables");
    evaluate_cmd->add_option("input", ev.input, "Task-level CSV")->required()->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--config", ev.config, "JSON config for domains and costs")->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--cost-model", ev.cost_model, "JSON cost model")->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--baseline-dtt", ev.baseline_dtt, "Baseline turnaround in seconds")
        ->check(CLI::PositiveNumber);
    evaluate_cmd->add_option("--baseline-ces", ev.baseline_ces, "Baseline resource units per success")
        ->check(CLI::PositiveNumber);
    evaluate_cmd->add_option("--out", ev.out, "Output directory")->required();

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "ANOVA, Tukey HSD, effect sizes, correlations, intervals");
    analyze_cmd->add_option("input", an.input, "Aggregate CSV or task-level CSV")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--config", an.config, "JSON config used when aggregating task input")
        ->check(CLI::ExistingFile);
    analyze_cmd->add_option("--grouping", an.grouping, "Sample unit")->check(CLI::IsMember({"cells", "tasks"}));
    analyze_cmd->add_option("--alpha", an.alpha, "Significance level")->check(CLI::Range(1e-6, 0.5));
    analyze_cmd->add_option("--out", an.out, "Output directory")->required();

    ReportArgs rep;
    auto* report_cmd = app.add_subcommand("report", "Text tables and charts from evaluate outputs");
    report_cmd->add_option("--in", rep.in, "Directory holding the evaluate and simulate outputs")->required();
    report_cmd->add_option("--out", rep.out, "Output directory")->required();
    report_cmd->add_option("--format", rep.formats, "csv, txt, svg-like (comma separated)")->delimiter(',');

    SimulateArgs pipe_sim;
    EvaluateArgs pipe_ev;
    std::vector<std::string> pipe_formats = {"csv", "txt", "svg"};
    std::string pipe_out;
    auto* pipeline_cmd = app.add_subcommand("pipeline", "simulate, evaluate, analyze and report in one run");
    pipeline_cmd->add_option("--config", pipe_sim.config, "JSON config")->check(CLI::ExistingFile);
    pipeline_cmd->add_option("--seed", pipe_sim.seed, "Override the config seed");
    pipeline_cmd->add_option("--mode", pipe_sim.mode, "appendix-d or table-calibrated");
    pipeline_cmd->add_option("--baseline-dtt", pipe_ev.baseline_dtt, "Baseline turnaround in seconds")
        ->check(CLI::PositiveNumber);
    pipeline_cmd->add_option("--baseline-ces", pipe_ev.baseline_ces, "Baseline resource units per success")
        ->check(CLI::PositiveNumber);
    pipeline_cmd->add_option("--format", pipe_formats, "csv, txt, svg-like (comma separated)")->delimiter(',');
    pipeline_cmd->add_option("--out", pipe_out, "Output directory")->required();

    auto* defaults_cmd = app.add_subcommand("defaults", "Print the built-in configuration as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate_cmd) {
            simulate(sim);
        } else if (*evaluate_cmd) {
            const SimConfig config = config_or_defaults(ev.config);
            evaluate(read_task_csv_file(ev.input), config, ev);
        } else if (*analyze_cmd) {
            analyze(an);
        } else if (*report_cmd) {
            report_from_dir(rep);
        } else if (*pipeline_cmd) {
            const Formats formats = parse_formats(pipe_formats);
            pipe_sim.out = pipe_out;
            const auto s = simulate(pipe_sim);
            pipe_ev.out = pipe_out;
            const auto e = evaluate(s.records, s.config, pipe_ev);
            write_stats(pipe_out, analysis::analyze_cells(e.cells));
            report_files(e.cells, e.overall, s.adaptability, e.business, pipe_out, formats);
        } else if (*defaults_cmd) {
            std::cout << dump_config(SimConfig::defaults());
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
