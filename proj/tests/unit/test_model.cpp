#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "agentmetrics/model.hpp"
#include "test_support.hpp"

using namespace agentmetrics;

namespace {

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == rule; });
}

}  // namespace

TEST_CASE("labels keep canonical order and accept display spellings") {
    CHECK(parse_agent("Tool-Aug.") == agents::ToolAugmented);
    CHECK(parse_agent("Hybrid Agent") == agents::Hybrid);
    CHECK(parse_domain("Customer Service") == domains::CustomerService);
    CHECK(parse_agent("Planner-X").str() == "Planner-X");
    CHECK(agents::ReAct < agents::CoT);
    CHECK(agents::Hybrid < AgentId("AAA"));  // unknown labels sort after known ones
    CHECK(AgentId("AAA") < AgentId("BBB"));
    CHECK(domains::Legal < domains::CustomerService);
    CHECK(display_name(agents::ToolAugmented) == "Tool-Aug.");
    CHECK(display_name(domains::CustomerService) == "Customer Service");
}

TEST_CASE("validate flags each broken invariant") {
    SECTION("consistent record") { CHECK(validate(testing::basic_record()).empty()); }
    SECTION("timestamps out of order") {
        auto r = testing::basic_record();
        r.t_end = r.t_start - 1.0;
        CHECK(has_rule(validate(r), "timestamps"));
    }
    SECTION("interventions above steps") {
        auto r = testing::basic_record();
        r.total_steps = 5;
        r.interventions = {2, 2, 2};
        CHECK(has_rule(validate(r), "intervention bound"));
    }
    SECTION("wait longer than elapsed") {
        auto r = testing::basic_record();
        r.human_wait = 11.0;
        CHECK(has_rule(validate(r), "wait within elapsed time"));
    }
    SECTION("recovery without error") {
        auto r = testing::basic_record();
        r.chain.self_recovered = true;
        CHECK(has_rule(validate(r), "recovery requires an initial error"));
    }
    SECTION("error type without error") {
        auto r = testing::basic_record();
        r.chain.error_type = ErrorType::ContextLoss;
        CHECK(has_rule(validate(r), "present iff had_initial_error"));
    }
    SECTION("complexity band mismatch") {
        auto r = testing::basic_record();
        r.chain.chain_len = 7;
        r.chain.complexity_level = ComplexityLevel::L1;
        CHECK(has_rule(validate(r), "consistent with chain length bands"));
    }
    SECTION("rater score out of range") {
        auto r = testing::basic_record();
        RaterPanel p;
        p.raters[1].relevance = 11;
        r.rater_scores = p;
        CHECK(has_rule(validate(r), "scores in [1,10]"));
    }
    SECTION("non-finite values") {
        auto r = testing::basic_record();
        r.t_end = std::numeric_limits<double>::quiet_NaN();
        r.kpi_contribution = std::numeric_limits<double>::infinity();
        const auto v = validate(r);
        CHECK(has_rule(v, "finite values"));
        CHECK(has_rule(v, "finite value"));
    }
}

TEST_CASE("chain bands") {
    CHECK_FALSE(level_for_chain(2).has_value());
    CHECK(level_for_chain(3) == ComplexityLevel::L1);
    CHECK(level_for_chain(5) == ComplexityLevel::L1);
    CHECK(level_for_chain(6) == ComplexityLevel::L2);
    CHECK(level_for_chain(10) == ComplexityLevel::L2);
    CHECK(level_for_chain(11) == ComplexityLevel::L3);
}

TEST_CASE("random valid records pass validation") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 2000; ++i) {
        const auto r = testing::random_record(g, i);
        INFO("record " << i);
        REQUIRE(validate(r).empty());
    }
}

TEST_CASE("validate is total over arbitrary field combinations") {
    std::mt19937_64 g(12);
    std::uniform_int_distribution<std::int64_t> wide(-50, 50);
    std::uniform_real_distribution<double> real(-1e6, 1e6);
    const double specials[] = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity(), 0.0, -0.0};
    for (int i = 0; i < 2000; ++i) {
        TaskRecord r;
        r.task_id = (i % 3) ? "x" : "";
        r.total_steps = wide(g);
        r.interventions = {wide(g), wide(g), wide(g)};
        r.t_start = (i % 7 == 0) ? specials[i % 5] : real(g);
        r.t_end = (i % 11 == 0) ? specials[(i / 11) % 5] : real(g);
        r.human_wait = real(g);
        r.tokens = wide(g);
        r.api_calls = wide(g);
        r.chain.chain_len = wide(g);
        r.chain.self_recovered = i % 2;
        r.chain.had_initial_error = i % 3 == 0;
        if (i % 5 == 0) r.chain.error_type = ErrorType::AmbiguousInput;
        if (i % 4 == 0) r.collab_scores = CollabScores{static_cast<int>(wide(g)), 1, 1, 1, 1};
        REQUIRE_NOTHROW(validate(r));
    }
}

TEST_CASE("tool rubric scores") {
    CHECK(tool_score(ToolOutcome::OptimalUse) == 1.0);
    CHECK(tool_score(ToolOutcome::Misuse) == -1.0);
    CHECK(tool_score(ToolOutcome::IgnoredBetterTool) == -0.5);
    CHECK(tool_score(ToolOutcome::NoToolNeeded) == 0.0);
    for (auto o : {ToolOutcome::OptimalUse, ToolOutcome::Misuse, ToolOutcome::IgnoredBetterTool,
                   ToolOutcome::NoToolNeeded}) {
        CHECK(parse_tool_outcome_code(tool_outcome_code(o)) == o);
    }
    CHECK_FALSE(parse_tool_outcome_code('Z').has_value());
}

TEST_CASE("complexity weights by band") {
    ComplexityWeights w;
    CHECK(w.weight_for(1) == 1.0);
    CHECK(w.weight_for(5) == 1.0);
    CHECK(w.weight_for(6) == 1.5);
    CHECK(w.weight_for(15) == 1.5);
    CHECK(w.weight_for(16) == 2.0);
    w.medium = -1.0;
    CHECK_FALSE(w.problems().empty());
}

TEST_CASE("enum text round trips") {
    for (auto e : {ErrorType::AmbiguousInput, ErrorType::IntermediateStepFailure, ErrorType::ToolApiError,
                   ErrorType::ContextLoss}) {
        CHECK(parse_error_type(to_string(e)) == e);
    }
    for (auto l : {ComplexityLevel::L1, ComplexityLevel::L2, ComplexityLevel::L3}) {
        CHECK(parse_complexity_level(to_string(l)) == l);
    }
    for (auto u : {KpiUnit::Dollars, KpiUnit::PercentagePoints, KpiUnit::Hours}) {
        CHECK(parse_kpi_unit(to_string(u)) == u);
    }
}
