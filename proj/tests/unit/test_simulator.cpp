#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "agentmetrics/error.hpp"
#include "agentmetrics/metrics.hpp"
#include "agentmetrics/report.hpp"
#include "agentmetrics/simulator.hpp"
#include "agentmetrics/stats.hpp"

using namespace agentmetrics;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<TaskRecord>& default_run() {
    static const auto records = generate(SimConfig::defaults());
    return records;
}

std::vector<MetricCell> cells_of(const std::vector<TaskRecord>& records, const SimConfig& c) {
    const report::EvalOptions opt{c.cost_model, c.complexity_weights, {}, {}};
    return report::aggregate_grid(records, c.domains, opt);
}

}  // namespace

TEST_CASE("default grid size and validity") {
    const auto& v = default_run();
    CHECK(v.size() == 3000);
    std::set<std::string> ids;
    for (const auto& r : v) {
        INFO(r.task_id);
        REQUIRE(validate(r).empty());
        ids.insert(r.task_id);
    }
    CHECK(ids.size() == v.size());
    const auto finance = std::count_if(v.begin(), v.end(), [](const TaskRecord& r) {
        return r.agent == agents::Hybrid && r.domain == domains::Finance;
    });
    CHECK(finance == 150);
}

TEST_CASE("generation is deterministic and seed dependent") {
    auto c = SimConfig::defaults();
    CHECK(generate(c) == default_run());
    c.seed = 43;
    CHECK(generate(c) != default_run());
    c.mode = SimMode::Profile;
    CHECK(generate(c) == generate(c));
}

TEST_CASE("each cell is independent of the rest of the grid") {
    const auto c = SimConfig::defaults();
    const auto& all = default_run();
    for (const auto& [agent, profile] : c.agents) {
        for (const auto& [domain, dom] : c.domains) {
            std::vector<TaskRecord> slice;
            std::copy_if(all.begin(), all.end(), std::back_inserter(slice),
                         [&](const TaskRecord& r) { return r.agent == agent && r.domain == domain; });
            REQUIRE(generate_cell(c, agent, domain) == slice);
        }
    }

    auto finance_only = c;
    std::erase_if(finance_only.domains, [](const auto& d) { return d.first != domains::Finance; });
    std::vector<TaskRecord> slice;
    std::copy_if(all.begin(), all.end(), std::back_inserter(slice),
                 [](const TaskRecord& r) { return r.domain == domains::Finance; });
    CHECK(generate(finance_only) == slice);
}

TEST_CASE("calibrated cells land near their targets") {
    const auto c = SimConfig::defaults();
    int ok = 0;
    for (const auto& cell : cells_of(default_run(), c)) {
        const auto* target = c.calibration.find(cell.agent, cell.domain);
        REQUIRE(target != nullptr);
        const bool hit = std::abs(cell.gcr - target->gcr) <= 4.0 && std::abs(cell.aix - target->aix) <= 0.03 &&
                         std::abs(cell.dtt_mean - target->dtt) <= 0.08 * target->dtt;
        ok += hit ? 1 : 0;
    }
    CHECK(ok >= 19);
}

TEST_CASE("dependency invariants of generated records") {
    for (const auto& r : default_run()) {
        if (r.chain.self_recovered) REQUIRE(r.chain.had_initial_error);
        REQUIRE(r.chain.error_type.has_value() == r.chain.had_initial_error);
        REQUIRE(r.interventions.total() <= r.total_steps);
        REQUIRE(r.human_wait <= r.t_end - r.t_start);
        if (!r.success) REQUIRE(r.kpi_contribution == 0.0);
    }
    // CES over a set equals CES over its successes alone.
    const CostModel cost;
    std::vector<TaskRecord> wins;
    for (const auto& r : default_run()) {
        if (r.success) wins.push_back(r);
    }
    CHECK(metrics::ces(default_run(), cost) == metrics::ces(wins, cost));
}

TEST_CASE("cross-cell sign structure") {
    const auto cells = cells_of(default_run(), SimConfig::defaults());
    std::vector<double> gcr, crs, dtt, ces;
    for (const auto& c : cells) {
        gcr.push_back(c.gcr);
        crs.push_back(*c.crs);
        dtt.push_back(c.dtt_mean);
        ces.push_back(*c.ces);
    }
    CHECK(stats::pearson(gcr, crs) > 0.0);
    CHECK(stats::pearson(dtt, ces) > 0.0);
}

TEST_CASE("profile-mode targets combine agent base and domain modifiers") {
    auto c = SimConfig::defaults();
    c.mode = SimMode::Profile;
    const auto t = cell_target(c, agents::ReAct, domains::Healthcare);
    CHECK_THAT(t.gcr, WithinAbs(0.79, 1e-12));
    CHECK_THAT(t.few_shot - t.zero_shot, WithinAbs(0.22, 1e-12));
    const auto records = generate_cell(c, agents::ReAct, domains::Healthcare);
    CHECK(records.size() == 200);
    CHECK_THAT(metrics::gcr(records), WithinAbs(79.0, 4.0));
}

TEST_CASE("calibrated targets follow the calibration table") {
    const auto c = SimConfig::defaults();
    const auto t = cell_target(c, agents::Hybrid, domains::Marketing);
    CHECK_THAT(t.gcr, WithinAbs(0.93, 1e-12));
    CHECK_THAT(t.aix, WithinAbs(0.9652, 1e-12));
    CHECK_THAT(t.dtt, WithinAbs(142.62, 1e-12));

    auto missing = c;
    std::erase_if(missing.calibration.cells, [](const CalibrationCell& x) {
        return x.agent == agents::Hybrid && x.domain == domains::Marketing;
    });
    try {
        (void)cell_target(missing, agents::Hybrid, domains::Marketing);
        FAIL("expected CalibrationError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CalibrationError);
        CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("Marketing"));
    }
}

TEST_CASE("adaptability generation") {
    const auto c = SimConfig::defaults();
    const auto cells = generate_adaptability(c, 50);
    REQUIRE(cells.size() == 20);
    for (const auto& a : cells) {
        REQUIRE((a.gcr_zero_shot >= 0.0 && a.gcr_few_shot <= 1.0));
        REQUIRE(a.ad == a.gcr_few_shot - a.gcr_zero_shot);
        // n_test = 50 means proportions land on multiples of 0.02.
        REQUIRE_THAT(a.gcr_zero_shot * 50.0, WithinAbs(std::round(a.gcr_zero_shot * 50.0), 1e-9));
    }
    const auto hm = std::find_if(cells.begin(), cells.end(), [](const AdaptabilityCell& a) {
        return a.agent == agents::Hybrid && a.domain == domains::Marketing;
    });
    REQUIRE(hm != cells.end());
    CHECK_THAT(hm->gcr_zero_shot, WithinAbs(0.79, 0.021));
    CHECK_THAT(hm->gcr_few_shot, WithinAbs(1.0, 0.021));
    CHECK(generate_adaptability(c, 50) == cells);
    CHECK_THROWS_AS(generate_adaptability(c, 0), Error);
}

TEST_CASE("broken configs are rejected before generation") {
    auto c = SimConfig::defaults();
    c.domains.front().second.task_count = -1;
    try {
        (void)generate(c);
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConfigError);
    }
}
