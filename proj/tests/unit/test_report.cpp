#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "agentmetrics/error.hpp"
#include "agentmetrics/metrics.hpp"
#include "agentmetrics/report.hpp"
#include "agentmetrics/report_io.hpp"
#include "agentmetrics/simulator.hpp"
#include "agentmetrics/text_tables.hpp"
#include "test_support.hpp"

using namespace agentmetrics;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const SimConfig& config() {
    static const SimConfig c = SimConfig::defaults();
    return c;
}

report::EvalOptions options() { return {config().cost_model, config().complexity_weights, {}, {}}; }

const std::vector<MetricCell>& simulated_cells() {
    static const auto cells = report::aggregate_grid(generate(config()), config().domains, options());
    return cells;
}

MetricCell random_cell(std::mt19937_64& g, const DomainId& domain) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> n(1, 400);
    MetricCell c;
    c.agent = agents::Hybrid;
    c.domain = domain;
    c.n_tasks = n(g);
    c.n_success = std::uniform_int_distribution<std::int64_t>(0, c.n_tasks)(g);
    c.gcr = 100.0 * c.n_success / c.n_tasks;
    c.aix = u(g);
    c.aix_weighted = u(g);
    c.dtt_mean = 500.0 * u(g);
    c.dtt_median = 500.0 * u(g);
    c.dtt_p95 = 500.0 * u(g);
    if (c.n_success > 0) c.ces = 4000.0 * u(g);
    if (u(g) < 0.8) c.mtr = 100.0 * u(g);
    c.tdi_norm = u(g);
    c.tdi_raw = 2.0 * *c.tdi_norm - 1.0;
    c.oas = 1.0 + 9.0 * u(g);
    c.crs = 100.0 * u(g);
    c.cqi = 1.0 + 4.0 * u(g);
    c.kpi_monetary = Money::from_dollars(10000.0 * u(g));
    c.op_cost = Money::from_dollars(1.0 + 500.0 * u(g));
    c.bie = c.kpi_monetary.dollars() / c.op_cost.dollars();
    return c;
}

}  // namespace

TEST_CASE("aggregate_cell computes every metric for a cell") {
    std::vector<TaskRecord> v;
    for (int i = 0; i < 4; ++i) {
        auto r = testing::basic_record("t" + std::to_string(i), i < 3);
        r.domain = domains::Finance;
        r.total_steps = 10;
        r.interventions.clarification = i;  // aix 1, .9, .8, .7
        r.t_end = 100.0 * (i + 1);
        r.tokens = 1000;
        r.kpi_contribution = i < 3 ? 0.5 : 0.0;
        v.push_back(r);
    }
    DomainConfig finance;
    finance.task_count = 4;
    finance.kpi_conversion = Money::parse("1000");
    const auto c = report::aggregate_cell(v, finance, options());
    CHECK(c.agent == agents::ReAct);
    CHECK(c.domain == domains::Finance);
    CHECK(c.n_tasks == 4);
    CHECK(c.n_success == 3);
    CHECK(c.gcr == 75.0);
    CHECK_THAT(c.aix, WithinAbs(0.85, 1e-12));
    CHECK(c.dtt_mean == 250.0);
    CHECK(c.dtt_median == 250.0);
    CHECK(c.dtt_p95 == 400.0);
    CHECK(c.ces == 1000.0);
    CHECK_FALSE(c.mtr.has_value());  // nothing multistep
    CHECK_FALSE(c.tdi_raw.has_value());
    CHECK_FALSE(c.oas.has_value());
    CHECK_FALSE(c.dtt_efficiency.has_value());
    CHECK_THAT(c.kpi_value, WithinAbs(1.5, 1e-12));
    CHECK(c.kpi_monetary == Money::parse("1500"));
    CHECK(c.op_cost == metrics::operational_cost(v, config().cost_model));
    REQUIRE(c.bie.has_value());
    CHECK_THAT(*c.roi, WithinAbs(100.0 * (*c.bie - 1.0), 1e-9));

    auto opt = options();
    opt.baseline_dtt = 500.0;
    opt.baseline_ces = 2000.0;
    const auto e = report::aggregate_cell(v, finance, opt);
    CHECK(e.dtt_efficiency == 2.0);
    CHECK(e.ces_efficiency == 2.0);

    CHECK_THROWS_AS(report::aggregate_cell({}, finance, options()), Error);
    v[1].domain = domains::Legal;
    CHECK_THROWS_AS(report::aggregate_cell(v, finance, options()), Error);
}

TEST_CASE("aggregate_grid sorts cells and keeps unknown labels") {
    std::mt19937_64 g(71);
    auto v = testing::random_records(g, 300);
    std::shuffle(v.begin(), v.end(), g);
    const auto cells = report::aggregate_grid(v, config().domains, options());
    REQUIRE(std::is_sorted(cells.begin(), cells.end(), [](const MetricCell& a, const MetricCell& b) {
        return std::tie(a.agent, a.domain) < std::tie(b.agent, b.domain);
    }));
    std::int64_t total = 0;
    for (const auto& c : cells) total += c.n_tasks;
    CHECK(total == 300);
    CHECK(cells.back().agent.str() == "Planner-X");

    // A domain the config does not know is evaluated in dollars at 1:1.
    auto r = testing::basic_record();
    r.domain = DomainId("Retail");
    r.kpi_contribution = 12.5;
    const auto odd = report::aggregate_grid(std::vector<TaskRecord>{r}, config().domains, options());
    REQUIRE(odd.size() == 1);
    CHECK(odd[0].kpi_monetary == Money::parse("12.5"));
    CHECK(report::fallback_domain(7).task_count == 7);
}

TEST_CASE("overall roll-up weights by task count") {
    const auto cells = simulated_cells();
    const auto rows = report::aggregate_all(cells);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        double gcr = 0.0, weight = 0.0, ces = 0.0, succ = 0.0;
        for (const auto& c : cells) {
            if (c.agent != row.agent) continue;
            gcr += c.n_tasks * c.gcr;
            weight += c.n_tasks;
            ces += c.n_success * *c.ces;
            succ += c.n_success;
        }
        CHECK_THAT(row.gcr, WithinAbs(gcr / weight, 1e-9));
        CHECK_THAT(*row.ces, WithinAbs(ces / succ, 1e-9));
        CHECK(row.n_tasks == 750);
        // Weighted GCR is the pooled success rate.
        std::int64_t wins = 0;
        for (const auto& c : cells) {
            if (c.agent == row.agent) wins += c.n_success;
        }
        CHECK_THAT(row.gcr, WithinAbs(100.0 * wins / 750.0, 1e-9));
    }

    auto missing = cells;
    missing.erase(missing.begin());
    try {
        (void)report::aggregate_all(missing);
        FAIL("incomplete grid accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IncompleteGrid);
    }
}

TEST_CASE("weighted roll-ups lie between the cell extremes") {
    std::mt19937_64 g(72);
    const std::vector<DomainId> doms = {domains::Healthcare, domains::Finance, domains::Marketing, domains::Legal,
                                        domains::CustomerService};
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<MetricCell> cells;
        const std::size_t k = 1 + trial % doms.size();
        for (std::size_t d = 0; d < k; ++d) cells.push_back(random_cell(g, doms[d]));
        const auto counts = report::counts_from_cells(cells);
        const auto o = report::aggregate_overall(cells, counts);
        auto within = [&](double v, auto get) {
            double lo = 1e300, hi = -1e300;
            for (const auto& c : cells) {
                const std::optional<double> x = get(c);
                if (!x) continue;
                lo = std::min(lo, *x);
                hi = std::max(hi, *x);
            }
            return v >= lo - 1e-9 && v <= hi + 1e-9;
        };
        REQUIRE(within(o.gcr, [](const MetricCell& c) -> std::optional<double> { return c.gcr; }));
        REQUIRE(within(o.aix, [](const MetricCell& c) -> std::optional<double> { return c.aix; }));
        REQUIRE(within(o.dtt_mean, [](const MetricCell& c) -> std::optional<double> { return c.dtt_mean; }));
        REQUIRE(within(*o.oas, [](const MetricCell& c) { return c.oas; }));
        REQUIRE(within(*o.cqi, [](const MetricCell& c) { return c.cqi; }));
        if (o.ces) REQUIRE(within(*o.ces, [](const MetricCell& c) { return c.ces; }));
        if (o.mtr) REQUIRE(within(*o.mtr, [](const MetricCell& c) { return c.mtr; }));
        REQUIRE(within(*o.bie, [](const MetricCell& c) { return c.bie; }));
    }
}

TEST_CASE("published domain values roll up to the published overall values") {
    const auto cells = testing::published_cells();
    const auto rows = report::aggregate_all(cells);
    const auto expected = testing::published_overall();
    REQUIRE(rows.size() == expected.size());
    for (const auto& want : expected) {
        const auto got = std::find_if(rows.begin(), rows.end(), [&](const OverallRow& r) { return r.agent == want.agent; });
        REQUIRE(got != rows.end());
        INFO(want.agent.str());
        CHECK_THAT(got->gcr, WithinAbs(want.gcr, 0.01));
        CHECK_THAT(got->aix, WithinAbs(want.aix, 0.01));
        CHECK_THAT(got->dtt_mean, WithinAbs(want.dtt_mean, 0.01));
        CHECK_THAT(*got->oas, WithinAbs(*want.oas, 0.01));
    }
}

TEST_CASE("published business rows are internally consistent") {
    std::map<std::string, double> conversion;
    for (const auto& r : testing::read_fixture("kpi_conversion.csv")) conversion[r.at("domain")] = testing::num(r, "dollars_per_unit");
    for (const auto& r : testing::read_fixture("business_results.csv")) {
        INFO(r.at("agent") << " " << r.at("domain"));
        const Money monetary = Money::parse(r.at("monetary"));
        const Money cost = Money::parse(r.at("op_cost"));
        CHECK_THAT(metrics::bie(monetary, cost), WithinAbs(testing::num(r, "bie"), 0.01));
        DomainConfig d;
        d.kpi_conversion = Money::from_dollars(conversion.at(r.at("domain")));
        CHECK_THAT(metrics::kpi_to_monetary(d, testing::num(r, "kpi_value")).dollars(),
                   WithinAbs(monetary.dollars(), 1.0));
    }
    for (const auto& r : testing::read_fixture("adaptability_results.csv")) {
        const auto a = metrics::adaptability(testing::num(r, "zero_shot"), testing::num(r, "few_shot"));
        CHECK_THAT(a.ad, WithinAbs(testing::num(r, "ad"), 0.01));
        CHECK_THAT(a.ar, WithinAbs(testing::num(r, "ar"), 0.01));
    }
}

TEST_CASE("aggregate files round trip byte for byte") {
    const auto& cells = simulated_cells();
    std::ostringstream out;
    report::write_aggregate_csv(out, cells);
    std::istringstream in(out.str());
    const auto back = report::read_aggregate_csv(in);
    REQUIRE(back.size() == cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) CHECK(back[i] == report::at_declared_precision(cells[i]));
    std::ostringstream again;
    report::write_aggregate_csv(again, back);
    CHECK(again.str() == out.str());

    const auto overall = report::aggregate_all(cells);
    std::ostringstream o1;
    report::write_overall_csv(o1, overall);
    std::istringstream oin(o1.str());
    std::ostringstream o2;
    report::write_overall_csv(o2, report::read_overall_csv(oin));
    CHECK(o1.str() == o2.str());

    const auto adapt = generate_adaptability(config(), 50);
    std::ostringstream a1;
    report::write_adaptability_csv(a1, adapt);
    std::istringstream ain(a1.str());
    std::ostringstream a2;
    report::write_adaptability_csv(a2, report::read_adaptability_csv(ain));
    CHECK(a1.str() == a2.str());

    const auto business = report::business_rows(cells, config().domains);
    std::ostringstream b1;
    report::write_business_csv(b1, business);
    std::istringstream bin(b1.str());
    std::ostringstream b2;
    report::write_business_csv(b2, report::read_business_csv(bin));
    CHECK(b1.str() == b2.str());
}

TEST_CASE("random cells survive export and import") {
    std::mt19937_64 g(73);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<MetricCell> cells = {random_cell(g, domains::Legal)};
        std::ostringstream out;
        report::write_aggregate_csv(out, cells);
        std::istringstream in(out.str());
        const auto back = report::read_aggregate_csv(in);
        REQUIRE(back.size() == 1);
        REQUIRE(back[0] == report::at_declared_precision(cells[0]));
    }
}

TEST_CASE("aggregate readers report schema problems") {
    std::ostringstream out;
    report::write_aggregate_csv(out, simulated_cells());
    std::string text = out.str();
    // Third field of data row 1 is n_tasks.
    const auto row2 = text.find('\n') + 1;
    const auto f3 = text.find(',', text.find(',', row2) + 1) + 1;
    text.replace(f3, text.find(',', f3) - f3, "many");
    std::istringstream in(text);
    try {
        (void)report::read_aggregate_csv(in, "agg.csv");
        FAIL("bad row accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK_THAT(std::string(e.what()), ContainsSubstring("agg.csv"));
        CHECK_THAT(std::string(e.what()), ContainsSubstring("row 1"));
        CHECK_THAT(std::string(e.what()), ContainsSubstring(report::aggregate_header()[2]));
    }
    std::istringstream wrong("agent,domain\nReAct,Legal\n");
    CHECK_THROWS_AS(report::read_aggregate_csv(wrong), Error);
}

TEST_CASE("datasets export to files") {
    const auto dir = std::filesystem::temp_directory_path() / "agentmetrics_test_report";
    std::filesystem::remove_all(dir);
    report::Datasets data;
    data.cells = simulated_cells();
    data.overall = report::aggregate_all(data.cells);
    report::export_datasets(dir, data);
    CHECK(std::filesystem::exists(dir / report::kAggregateFile));
    CHECK(std::filesystem::exists(dir / report::kOverallFile));
    CHECK_FALSE(std::filesystem::exists(dir / report::kTaskLevelFile));
    CHECK(report::read_aggregate_file(dir / report::kAggregateFile).size() == 20);
    CHECK_THROWS_AS(report::read_overall_file(dir / "nope.csv"), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("text tables") {
    const auto t = report::render_table({"agent", "gcr"}, {{"ReAct", "79.33"}, {"Hybrid", "100.00"}});
    CHECK(t ==
          "agent      gcr\n"
          "--------------\n"
          "ReAct    79.33\n"
          "Hybrid  100.00\n");
    const auto overall = report::overall_table(report::aggregate_all(simulated_cells()));
    CHECK_THAT(overall, ContainsSubstring("Tool-Aug."));
    CHECK(overall.find(" \n") == std::string::npos);
    const auto domain = report::domain_table(simulated_cells());
    CHECK(std::count(domain.begin(), domain.end(), '\n') == 22);
}
