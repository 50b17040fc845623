#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "agentmetrics/analysis.hpp"
#include "agentmetrics/config.hpp"
#include "agentmetrics/error.hpp"
#include "agentmetrics/metrics.hpp"
#include "agentmetrics/report.hpp"
#include "agentmetrics/report_io.hpp"
#include "agentmetrics/simulator.hpp"
#include "agentmetrics/special_functions.hpp"
#include "agentmetrics/stats.hpp"
#include "agentmetrics/task_csv.hpp"

namespace py = pybind11;
using namespace agentmetrics;

namespace {

SimConfig make_config(const std::optional<std::string>& config_json, std::optional<std::uint64_t> seed,
                      const std::optional<std::string>& mode) {
    SimConfig c = config_json ? parse_config(*config_json) : SimConfig::defaults();
    if (seed) c.seed = *seed;
    if (mode) {
        const auto m = parse_sim_mode(*mode);
        if (!m) fail(ErrorKind::InvalidInput, "unknown mode '" + *mode + "'");
        c.mode = *m;
    }
    return c;
}

std::vector<TaskRecord> records_from(const std::string& task_csv) {
    std::istringstream in(task_csv);
    return read_task_csv(in, "<task csv>");
}

py::dict cell_dict(const MetricCell& c) {
    py::dict d;
    d["agent"] = c.agent.str();
    d["domain"] = c.domain.str();
    d["n_tasks"] = c.n_tasks;
    d["n_success"] = c.n_success;
    d["gcr"] = c.gcr;
    d["aix"] = c.aix;
    d["aix_weighted"] = c.aix_weighted;
    d["dtt_mean"] = c.dtt_mean;
    d["dtt_median"] = c.dtt_median;
    d["dtt_p95"] = c.dtt_p95;
    d["dtt_efficiency"] = c.dtt_efficiency;
    d["ces"] = c.ces;
    d["ces_efficiency"] = c.ces_efficiency;
    d["mtr"] = c.mtr;
    d["tdi_raw"] = c.tdi_raw;
    d["tdi_norm"] = c.tdi_norm;
    d["oas"] = c.oas;
    d["oas_weighted"] = c.oas_weighted;
    d["crs"] = c.crs;
    d["cqi"] = c.cqi;
    d["kpi_value"] = c.kpi_value;
    d["kpi_monetary"] = c.kpi_monetary.dollars();
    d["op_cost"] = c.op_cost.dollars();
    d["bie"] = c.bie;
    d["roi"] = c.roi;
    return d;
}

py::dict overall_dict(const OverallRow& r) {
    py::dict d;
    d["agent"] = r.agent.str();
    d["n_tasks"] = r.n_tasks;
    d["gcr"] = r.gcr;
    d["aix"] = r.aix;
    d["dtt_mean"] = r.dtt_mean;
    d["ces"] = r.ces;
    d["mtr"] = r.mtr;
    d["tdi_norm"] = r.tdi_norm;
    d["oas"] = r.oas;
    d["crs"] = r.crs;
    d["cqi"] = r.cqi;
    d["kpi_monetary"] = r.kpi_monetary;
    d["op_cost"] = r.op_cost;
    d["bie"] = r.bie;
    d["roi"] = r.roi;
    return d;
}

py::dict anova_dict(const stats::AnovaTable& a) {
    py::dict d;
    d["ss_between"] = a.ss_between;
    d["ss_within"] = a.ss_within;
    d["ss_total"] = a.ss_total;
    d["df_between"] = a.df_between;
    d["df_within"] = a.df_within;
    d["ms_between"] = a.ms_between;
    d["ms_within"] = a.ms_within;
    d["f"] = a.f_stat;
    d["p"] = a.p_value;
    return d;
}

std::vector<stats::Sample> samples_from(const std::map<std::string, std::vector<double>>& groups) {
    std::vector<stats::Sample> out;
    for (const auto& [label, values] : groups) out.push_back({label, values});
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Evaluation metrics, simulation and statistics for AI agents";

    static py::exception<Error> error_type(m, "AgentMetricsError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::IoError) {
                PyErr_SetString(PyExc_OSError, e.what());
            } else {
                PyErr_SetString(error_type.ptr(), e.what());
            }
        }
    });

    // Metric primitives.
    m.def("aix", py::overload_cast<std::int64_t, std::int64_t>(&metrics::aix), py::arg("total_steps"),
          py::arg("interventions"));
    m.def("tdi_normalize", &metrics::tdi_normalize, py::arg("raw"));
    m.def("oas", [](const std::vector<double>& scores) { return metrics::oas(scores); }, py::arg("scores"));
    m.def(
        "rater_weighted_score",
        [](int correctness, int completeness, int relevance, int presentation) {
            return metrics::rater_weighted_score({correctness, completeness, relevance, presentation});
        },
        py::arg("correctness"), py::arg("completeness"), py::arg("relevance"), py::arg("presentation"));
    m.def(
        "adaptability",
        [](double zero, double few) {
            const auto a = metrics::adaptability(zero, few);
            return py::make_tuple(a.ad, a.ar);
        },
        py::arg("zero_shot_gcr"), py::arg("few_shot_gcr"), "Returns (AD, AR percent).");
    m.def(
        "bie", [](double monetary, double cost) { return metrics::bie(Money::from_dollars(monetary), Money::from_dollars(cost)); },
        py::arg("kpi_monetary"), py::arg("op_cost"));
    m.def(
        "roi", [](double monetary, double cost) { return metrics::roi(Money::from_dollars(monetary), Money::from_dollars(cost)); },
        py::arg("kpi_monetary"), py::arg("op_cost"));

    // Simulation and evaluation over CSV text.
    m.def("default_config", [] { return dump_config(SimConfig::defaults()); },
          "Built-in configuration as JSON text.");
    m.def(
        "simulate",
        [](const std::optional<std::string>& config_json, std::optional<std::uint64_t> seed,
           const std::optional<std::string>& mode) {
            const auto records = generate(make_config(config_json, seed, mode));
            std::ostringstream out;
            write_task_csv(out, records);
            return out.str();
        },
        py::arg("config_json") = py::none(), py::arg("seed") = py::none(), py::arg("mode") = py::none(),
        "Task-level CSV text for the full grid.");
    m.def(
        "evaluate",
        [](const std::string& task_csv, const std::optional<std::string>& config_json,
           std::optional<double> baseline_dtt, std::optional<double> baseline_ces) {
            const SimConfig c = config_json ? parse_config(*config_json) : SimConfig::defaults();
            const report::EvalOptions opt{c.cost_model, c.complexity_weights, baseline_dtt, baseline_ces};
            const auto cells = report::aggregate_grid(records_from(task_csv), c.domains, opt);
            py::list out;
            for (const auto& cell : cells) out.append(cell_dict(cell));
            return out;
        },
        py::arg("task_csv"), py::arg("config_json") = py::none(), py::arg("baseline_dtt") = py::none(),
        py::arg("baseline_ces") = py::none(), "One dict per agent x domain cell.");
    m.def(
        "overall",
        [](const std::string& task_csv, const std::optional<std::string>& config_json) {
            const SimConfig c = config_json ? parse_config(*config_json) : SimConfig::defaults();
            const report::EvalOptions opt{c.cost_model, c.complexity_weights, {}, {}};
            const auto cells = report::aggregate_grid(records_from(task_csv), c.domains, opt);
            py::list out;
            for (const auto& row : report::aggregate_all(cells)) out.append(overall_dict(row));
            return out;
        },
        py::arg("task_csv"), py::arg("config_json") = py::none(), "Task-count weighted rows per agent.");

    // Statistics.
    m.def(
        "one_way_anova",
        [](const std::vector<std::vector<double>>& groups) {
            return anova_dict(stats::one_way_anova(std::span<const std::vector<double>>(groups)));
        },
        py::arg("groups"));
    m.def(
        "tukey_hsd",
        [](const std::map<std::string, std::vector<double>>& groups, double alpha) {
            py::list out;
            for (const auto& p : stats::tukey_hsd(samples_from(groups), alpha)) {
                py::dict d;
                d["a"] = p.group_a;
                d["b"] = p.group_b;
                d["mean_diff"] = p.mean_diff;
                d["q"] = p.q_stat;
                d["p"] = p.p_value;
                d["significant"] = p.significant;
                out.append(d);
            }
            return out;
        },
        py::arg("groups"), py::arg("alpha") = 0.05);
    m.def(
        "cohens_d",
        [](const std::vector<double>& a, const std::vector<double>& b) { return stats::cohens_d(a, b).d; },
        py::arg("a"), py::arg("b"));
    m.def(
        "pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return stats::pearson(x, y); },
        py::arg("x"), py::arg("y"));
    m.def(
        "wilson_interval",
        [](std::int64_t successes, std::int64_t n, double z) {
            const auto w = stats::wilson_interval(successes, n, z);
            return py::make_tuple(w.lo, w.hi);
        },
        py::arg("successes"), py::arg("n"), py::arg("z") = 1.96);
    m.def(
        "chi_square",
        [](const std::vector<std::vector<std::int64_t>>& table) {
            const auto r = stats::chi_square_independence(table);
            return py::make_tuple(r.chi2, r.df, r.p_value);
        },
        py::arg("table"), "Returns (chi2, df, p).");
    m.def("fleiss_kappa", &stats::fleiss_kappa, py::arg("counts"));
    m.def("krippendorff_alpha", &stats::krippendorff_alpha, py::arg("scores"),
          "Interval alpha; None marks a missing rating.");
    m.def("studentized_range_sf", &special::studentized_range_sf, py::arg("q"), py::arg("k"), py::arg("df"));
    m.def("studentized_range_quantile", &special::studentized_range_quantile, py::arg("p"), py::arg("k"),
          py::arg("df"));
    m.def(
        "analyze",
        [](const std::string& task_csv, const std::string& grouping) {
            const SimConfig c = SimConfig::defaults();
            const auto records = records_from(task_csv);
            analysis::StatReport r;
            if (grouping == "tasks") {
                r = analysis::analyze_tasks(records, c.cost_model);
            } else if (grouping == "cells") {
                const report::EvalOptions opt{c.cost_model, c.complexity_weights, {}, {}};
                r = analysis::analyze_cells(report::aggregate_grid(records, c.domains, opt));
            } else {
                fail(ErrorKind::InvalidInput, "grouping must be 'cells' or 'tasks'");
            }
            py::dict d;
            d["anova"] = anova_dict(r.anova);
            d["tukey_pairs"] = r.tukey.size();
            d["correlation_names"] = r.correlations.names;
            d["correlations"] = r.correlations.r;
            return d;
        },
        py::arg("task_csv"), py::arg("grouping") = "cells");
}
